"""Small test algebras: nilpotent commutative algebras with ideals, and a corrupted K3."""

from __future__ import annotations

from itertools import product

from . import algebra as alg
from .algebra import SuperAlgebra, from_products
from .catalog import kaplansky
from .exact import QQ, Field, span


def truncated_power_algebra(N: int, field: Field = QQ) -> SuperAlgebra:
    """``x P[x] / (x^N)`` on the basis ``x, x^2, ..., x^(N-1)``."""
    n = N - 1
    products = {(a, b): {a + b + 1: 1} for a in range(n) for b in range(n) if a + b + 1 < n}
    return from_products(field, [0] * n, products, None, [f"x^{a + 1}" for a in range(n)])


def truncated_polynomial_algebra(nvars: int, maxdeg: int, field: Field = QQ) -> SuperAlgebra:
    """Polynomials in ``nvars`` variables without constant term, modulo degree ``maxdeg + 1``.

    Commutative, associative and nilpotent; the basis is the monomials ordered
    by degree then exponent vector.
    """
    monos = [m for m in product(range(maxdeg + 1), repeat=nvars) if 1 <= sum(m) <= maxdeg]
    monos.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
    index = {m: t for t, m in enumerate(monos)}
    products = {}
    for a, m in enumerate(monos):
        for b, k in enumerate(monos):
            mk = tuple(x + y for x, y in zip(m, k))
            if mk in index:
                products[(a, b)] = {index[mk]: 1}
    names = "xyzuvw"
    labels = ["".join(names[v] * e for v, e in enumerate(m)) for m in monos]
    return from_products(field, [0] * len(monos), products, None, labels)


def quadratic_two_variable(field: Field = QQ) -> SuperAlgebra:
    """Polynomials in ``x, y`` without constant term, modulo degree 3."""
    return truncated_polynomial_algebra(2, 2, field)


def generated_ideal(A: SuperAlgebra, gens) -> "span":
    """Smallest ideal containing ``gens`` (closure under multiplication by basis elements)."""
    S = span(gens, A.dim, A.field)
    while True:
        more = list(S.rows)
        for v in S.rows:
            for i in range(A.dim):
                b = alg.basis_vector(A, i)
                more.append(alg.multiply(A, b, v))
                more.append(alg.multiply(A, v, b))
        T = span(more, A.dim, A.field)
        if T == S:
            return S
        S = T


# name -> (algebra builder, ideal generators as basis indices, expected I^3 == 0)
_LEMMA2 = {
    "zero2_whole": (lambda F: alg.zero_algebra(2, F), [0, 1], True),
    "trunc4_whole": (lambda F: truncated_power_algebra(4, F), [0], False),
    "trunc5_square": (lambda F: truncated_power_algebra(5, F), [1], True),
    "quad2_whole": (quadratic_two_variable, [0, 1], True),
    "trunc7_square": (lambda F: truncated_power_algebra(7, F), [1], False),
}
LEMMA2_NAMES = tuple(_LEMMA2)


def lemma2_fixture(name: str, field: Field = QQ):
    make, gens, expected = _LEMMA2[name]
    A = make(field)
    I = generated_ideal(A, [alg.basis_vector(A, g) for g in gens])
    return A, I, expected


def mutated_k3(field: Field = QQ) -> SuperAlgebra:
    """K3 with ``ez = ze = z`` instead of ``z/2``; still graded and supercommutative."""
    K = kaplansky(field)
    K = alg.with_structure_constant(K, 0, 1, {1: 1})
    return alg.with_structure_constant(K, 1, 0, {1: 1})
