from hypothesis import given, strategies as st

from sjlab import algebra as alg
from sjlab.catalog import kaplansky
from sjlab.grassmann import (
    GrassmannElement as G, all_monomials, grassmann_envelope, j_gamma, monomial_product,
    partial_derivative, poisson_bracket,
)


def test_monomial_signs():
    assert monomial_product((2,), (1,)) == (-1, (1, 2))
    assert monomial_product((1,), (2,)) == (1, (1, 2))
    assert monomial_product((1, 3), (2,)) == (-1, (1, 2, 3))
    assert monomial_product((1,), (1, 2))[0] == 0
    assert G.make(3, {(3, 1): 1}).terms == (((1, 3), -1),)


def test_derivative_and_bracket():
    x1, x2 = G.generator(3, 1), G.generator(3, 2)
    f = x1 * x2
    assert partial_derivative(2, f) == -x1
    assert partial_derivative(1, f) == x2
    # {x1, x1} = -1 (odd f), {1, g} = 0
    assert poisson_bracket(x1, x1) == G.make(3, {(): -1})
    assert poisson_bracket(G.one(3), f).is_zero()


def test_printing():
    f = G.make(3, {(1, 3): 2, (): -1})
    assert str(f) == "-1∘1 + 2∘ξ1ξ3"


def test_j_gamma_products():
    A = j_gamma(2)
    assert A.dim == 8
    i = A.labels.index("~ξ1")
    one = A.labels.index("1")
    assert alg.multiply(A, alg.basis_vector(A, i), alg.basis_vector(A, i)) == alg.basis_vector(A, one)
    assert A.unit == alg.basis_vector(A, one)
    assert alg.check_supercommutative(A)
    assert alg.check_super_jordan(A)
    assert j_gamma(1).dim == 4 and alg.check_super_jordan(j_gamma(1))


def test_envelope_is_commutative_ordinary_algebra():
    E = grassmann_envelope(kaplansky(), 2)
    assert set(E.parity) == {0}
    assert alg.check_supercommutative(E)


elements = st.dictionaries(st.lists(st.integers(1, 3), max_size=3, unique=True).map(tuple),
                           st.integers(-3, 3), max_size=4)


@given(elements, elements, elements)
def test_grassmann_associative(a, b, c):
    x, y, z = G.make(3, a), G.make(3, b), G.make(3, c)
    assert (x * y) * z == x * (y * z)


@given(st.sampled_from(all_monomials(3)), st.sampled_from(all_monomials(3)))
def test_supercommutative_monomials(s, t):
    x, y = G.make(3, {s: 1}), G.make(3, {t: 1})
    sign = -1 if (len(s) % 2 and len(t) % 2) else 1
    assert x * y == (y * x).scaled(sign)
