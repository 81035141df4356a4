from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sjlab import algebra as alg
from sjlab.algebra import GradingError
from sjlab.catalog import build
from sjlab.derivations import (
    SolverError, SolverQuery, complete_to_ternary, is_ternary_derivation, lie_bracket,
    make_odd_gder_jvf, make_odd_gder_k3, gder_unit_kernel, solve_delta_der, solve_der,
    solve_gder, solve_gder_eq5, solve_tder, standard_decompose_gder, standard_decompose_tder,
    tder_closure,
)
from sjlab.maps import TernaryTriple
from sjlab.structure import centroid
from oracle import oracle_dim, oracle_gder_dim

h = Fraction(1, 2)

# dims frozen after agreement with the dense sympy oracle (see test_oracle_agreement)
FROZEN = {
    # spec: ((der0, tder0, centroid0, gder0), (der1, tder1, centroid1, gder1))
    "k3": ((3, 5, 1, 4), (2, 2, 0, 2)),
    "mat:m=1,n=1": ((3, 5, 1, 4), (2, 2, 0, 2)),
    "d_t:t=2": ((3, 5, 1, 4), (2, 2, 0, 2)),
    "jvf:p=0,q=2": ((3, 5, 1, 4), (0, 2, 0, 2)),
    "jvf:p=2,q=2": ((4, 6, 1, 5), (4, 4, 0, 4)),
    "hull[k3]": ((3, 5, 1, 4), (2, 2, 0, 2)),
}


def dims(A, p):
    return (solve_der(A, p).dim, solve_tder(A, p).dim, centroid(A, p).dim, solve_gder(A, p).dim)


@pytest.mark.parametrize("spec", sorted(FROZEN))
def test_frozen_dims(spec):
    A = build(spec).algebra
    assert (dims(A, 0), dims(A, 1)) == FROZEN[spec]


@pytest.mark.parametrize("spec", ["k3", "d_t:t=2", "jvf:p=0,q=2"])
def test_oracle_agreement(spec):
    A = build(spec).algebra
    for p in (0, 1):
        o = (oracle_dim(A, "der", p), oracle_dim(A, "tder", p), oracle_dim(A, "centroid", p),
             oracle_gder_dim(A, p))
        assert o == dims(A, p) == FROZEN[spec][p]


@pytest.fixture(scope="module")
def K():
    return build("k3").algebra


def test_der_k3(K):
    D0 = solve_der(K, 0)
    for M in D0.basis():
        assert not any(M.column(0))
        assert M.matrix[1][1] + M.matrix[2][2] == 0
    D1 = solve_der(K, 1)
    assert alg.zero_map(K, 1) in D1
    assert make_odd_gder_k3(K, 0, 0).is_zero()
    M = make_odd_gder_k3(K, 1, 0)
    assert M.column(0) == (0, 0, h) and M.column(1) == (1, 0, 0) and not any(M.column(2))
    assert M in D1 and make_odd_gder_k3(K, 3, -2) in D1


def test_delta(K):
    assert solve_delta_der(K, 1, 0) == solve_der(K, 0)
    with pytest.raises(SolverError):
        solve_delta_der(K, 0, 0)
    M = build("mat:m=1,n=1").algebra
    assert alg.identity_map(M) in solve_delta_der(M, h, 0)
    for p in (0, 1):
        T = solve_tder(K, p)
        for phi in solve_delta_der(K, h, p).basis():
            t = TernaryTriple(phi, phi.scaled(h), phi.scaled(h))
            assert t in T and is_ternary_derivation(K, t)


def test_tder_k3(K):
    T1 = solve_tder(K, 1)
    assert T1.dim == 2
    assert all(t.D == t.F == t.G for t in T1.basis())
    M = build("jvf:p=2,q=2").algebra
    I, Z = alg.identity_map(M), alg.zero_map(M)
    assert TernaryTriple(I, I, Z) in solve_tder(M, 0)
    assert TernaryTriple(I, Z, I) in solve_tder(M, 0)
    assert TernaryTriple(I, I, I) not in solve_tder(M, 0)


def test_tder_odd_jvf_shape():
    A = build("jvf:p=0,q=2").algebra
    T1 = solve_tder(A, 1)
    assert T1.dim == 2
    for t in T1.basis():
        assert t.F == t.G


def test_gder_contains_der():
    for spec in ("k3", "pn:n=2", "jvf:p=0,q=2"):
        A = build(spec).algebra
        for p in (0, 1):
            assert solve_gder(A, p).contains_space(solve_der(A, p))
    A = build("jvf:p=0,q=4").algebra
    assert solve_gder(A, 1).dim == 0


@pytest.mark.parametrize("spec", ["mat:m=1,n=1", "hull[k3]", "jvf:p=0,q=2"])
def test_eq5_matches_projection(spec):
    A = build(spec).algebra
    for p in (0, 1):
        assert solve_gder_eq5(A, p) == solve_gder(A, p)
        assert gder_unit_kernel(A, p).space == solve_der(A, p).space


def test_eq5_needs_unit(K):
    with pytest.raises(SolverError):
        solve_gder_eq5(K, 0)
    with pytest.raises(SolverError):
        SolverQuery(K, "gder_eq5", 0)


def test_complete_to_ternary():
    A = build("mat:m=1,n=1").algebra
    Z = alg.zero_map(A)
    assert complete_to_ternary(A, Z) == TernaryTriple(Z, Z, Z)
    I = alg.identity_map(A)
    t = complete_to_ternary(A, I)
    assert t.F == t.G == I.scaled(h)
    bad = alg.GradedLinearMap(0, tuple(tuple(Fraction(int(i == j == 1)) for j in range(4)) for i in range(4)))
    with pytest.raises(SolverError):
        complete_to_ternary(A, bad)


def test_delta_v_completion():
    A = build("jvf:p=0,q=2").algebra
    u1 = alg.basis_vector(A, 1)
    D = make_odd_gder_jvf(A, u1)
    assert D(A.unit) == u1
    assert D in solve_gder_eq5(A, 1)
    t = complete_to_ternary(A, D)
    assert t.F(A.unit) == alg.scale(h, u1)
    assert t in solve_tder(A, 1)
    assert standard_decompose_gder(A, D) is None
    assert standard_decompose_tder(A, t) is None
    assert make_odd_gder_jvf(A, alg.zero_vector(A)).is_zero()
    with pytest.raises(GradingError):
        make_odd_gder_jvf(A, A.unit)
    B = build("jvf:p=0,q=4").algebra
    assert make_odd_gder_jvf(B, alg.basis_vector(B, 1)) not in solve_gder_eq5(B, 1)


def test_standard_decompose():
    A = build("mat:m=1,n=1").algebra
    I = alg.identity_map(A)
    d = standard_decompose_gder(A, I)
    assert d.phi == I and d.d0.is_zero()
    D0 = solve_der(A, 0).basis()[0]
    d = standard_decompose_gder(A, D0)
    assert d.phi.is_zero() and d.d0 == D0
    r = standard_decompose_tder(A, TernaryTriple(D0, D0, D0))
    assert r.phi.is_zero() and r.chi.is_zero() and r.psi.is_zero() and r.d0 == D0
    Z = alg.zero_map(A)
    r = standard_decompose_tder(A, TernaryTriple(I, I, Z))
    assert r.phi == I and r.chi == I and r.psi.is_zero() and r.d0.is_zero()
    with pytest.raises(SolverError):
        standard_decompose_tder(A, TernaryTriple(I, I, I))


def test_brackets(K):
    D1 = solve_der(K, 1).basis()
    for x in D1:
        assert lie_bracket(x, x) == (x @ x).scaled(2)
    for x in solve_der(K, 0).basis():
        assert lie_bracket(x, x).is_zero()
    assert tder_closure(K) is None
    assert tder_closure(build("d_t:t=2").algebra) is None
    with pytest.raises(TypeError):
        lie_bracket(D1[0], solve_tder(K, 1).basis()[0])


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_k3_formula_family_is_der(a, b):
    K = build("k3").algebra
    assert make_odd_gder_k3(K, a, b) in solve_der(K, 1)


@given(st.lists(st.integers(-2, 2), min_size=2, max_size=2))
def test_ternary_membership_agrees_with_direct_check(cs):
    A = build("d_t:t=2").algebra
    T = solve_tder(A, 0)
    basis = T.basis()
    comb = TernaryTriple(*(m.scaled(Fraction(cs[0])) + n.scaled(Fraction(cs[1]))
                           for m, n in zip(basis[0].components(), basis[1].components())))
    assert is_ternary_derivation(A, comb)
    broken = TernaryTriple(comb.D + alg.identity_map(A), comb.F, comb.G)
    assert broken not in T and not is_ternary_derivation(A, broken)
