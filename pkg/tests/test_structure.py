from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sjlab import algebra as alg
from sjlab.catalog import build
from sjlab.exact import QQ, span, zero_space, full_space
from sjlab.fixtures import LEMMA2_NAMES, generated_ideal, lemma2_fixture, truncated_polynomial_algebra
from sjlab.structure import (
    StructureError, center, centroid, is_trivial_ideal, middle_nucleus, peirce,
)


def test_peirce_unit_only():
    A = build("jvf:p=0,q=2").algebra
    dec = peirce(A, [A.unit])
    assert dec.dims() == {"11": 3}


def test_peirce_d_t():
    cat = build("d_t:t=2")
    assert peirce(cat.algebra, cat.idempotents).dims() == {"11": 1, "12": 2, "22": 1}


def test_peirce_bilinear_form_mixed_part():
    cat = build("jvf:p=2,q=2")
    A = cat.algebra
    dec = peirce(A, cat.idempotents)
    # v = x1 with v^2 = 1; the mixed part is the orthogonal complement of v in V
    orth = span([alg.basis_vector(A, i) for i in (2, 3, 4)], A.dim)
    assert dec.component(1, 2) == orth


@pytest.mark.parametrize("spec", ["mat:m=1,n=1", "osp:n=1,m=1", "pn:n=2", "qn:n=2", "jgamma:n=2",
                                  "hull[k3]", "hull[k3,k3]", "sum[hull[k3],jvf:p=0,q=2]"])
def test_peirce_relations_on_catalog(spec):
    cat = build(spec)
    dec = peirce(cat.algebra, cat.idempotents)
    assert sum(dec.dims().values()) == cat.algebra.dim


def test_peirce_input_errors():
    cat = build("d_t:t=2")
    A = cat.algebra
    e1, e2 = cat.idempotents
    with pytest.raises(StructureError):
        peirce(A, [e1])
    with pytest.raises(StructureError):
        peirce(A, [e1, e1])
    with pytest.raises(StructureError):
        peirce(A, [alg.scale(Fraction(2), e1), e2])


def test_peirce_detects_non_jordan_eigenvalue():
    third = Fraction(1, 3)
    prods = {(0, 0): {0: 1}, (1, 1): {1: 1}, (0, 2): {2: third}, (2, 0): {2: third},
             (1, 2): {2: 1 - third}, (2, 1): {2: 1 - third}}
    A = alg.from_products(QQ, [0, 0, 0], prods, [1, 1, 0])
    with pytest.raises(StructureError):
        peirce(A, [alg.basis_vector(A, 0), alg.basis_vector(A, 1)])


def test_nucleus():
    T = truncated_polynomial_algebra(1, 4)
    assert middle_nucleus(T) == full_space(T.dim)
    M = build("mat:m=1,n=1").algebra
    assert middle_nucleus(M) == span([M.unit], M.dim)
    assert middle_nucleus(build("k3").algebra).dim == 0


def test_center():
    S = build("sum[mat:m=1,n=1,d_t:t=2]").algebra
    assert center(S).dim == 2
    assert center(alg.zero_algebra(1)) == full_space(1)
    M = build("qn:n=2").algebra
    assert center(M) == span([M.unit], M.dim)


def test_centroid():
    K = build("k3").algebra
    assert (centroid(K, 0).dim, centroid(K, 1).dim) == (1, 0)
    M = build("mat:m=1,n=1").algebra
    assert alg.identity_map(M) in centroid(M, 0)
    S = build("sum[mat:m=1,n=1,d_t:t=2,jvf:p=2,q=2]").algebra
    assert centroid(S, 0).dim == 3


def test_trivial_ideal_examples():
    A = build("jvf:p=2,q=2").algebra
    assert is_trivial_ideal(A, zero_space(A.dim)) == {"U_I_I_zero": True, "I_cubed_zero": True}
    assert is_trivial_ideal(A, full_space(A.dim)) == {"U_I_I_zero": False, "I_cubed_zero": False}
    N = alg.zero_algebra(1)
    assert is_trivial_ideal(N, full_space(1)) == {"U_I_I_zero": True, "I_cubed_zero": True}
    with pytest.raises(StructureError):
        is_trivial_ideal(A, span([alg.basis_vector(A, 1)], A.dim))


@pytest.mark.parametrize("name", LEMMA2_NAMES)
def test_lemma2_fixture(name):
    A, I, expected = lemma2_fixture(name)
    flags = is_trivial_ideal(A, I)
    assert flags["U_I_I_zero"] == flags["I_cubed_zero"] == expected


@given(st.integers(1, 2), st.integers(2, 4), st.data())
def test_lemma2_random_ideals(nvars, maxdeg, data):
    A = truncated_polynomial_algebra(nvars, maxdeg)
    gen = data.draw(st.lists(st.integers(-2, 2), min_size=A.dim, max_size=A.dim))
    I = generated_ideal(A, [alg.vector(A, gen)])
    flags = is_trivial_ideal(A, I)
    assert flags["U_I_I_zero"] == flags["I_cubed_zero"]
