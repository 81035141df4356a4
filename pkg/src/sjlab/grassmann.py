"""Finite Grassmann algebras, the bracket superalgebra J(Gamma_n), and envelopes.

Sign conventions used for ``J(Gamma_n) = Gamma + bar(Gamma)`` (``a, b``
homogeneous in ``Gamma``)::

    a . b       = ab
    a . bar(b)  = bar(ab)
    bar(a) . b  = (-1)^|b| bar(ab)
    bar(a) . bar(b) = (-1)^|b| {a, b}

with ``{f, g} = (-1)^|f| sum_j (d f / d xi_j)(d g / d xi_j)``.  With these
signs the product is supercommutative and ``1`` is the unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .exact import QQ, Field

Monomial = tuple  # strictly increasing generator indices, 1-based


def monomial_product(s: Monomial, t: Monomial) -> tuple[int, Monomial]:
    """``xi_S xi_T = sign * xi_{S u T}``; sign 0 when S and T share a generator."""
    if not s:
        return 1, t
    if not t:
        return 1, s
    ts = set(t)
    if any(i in ts for i in s):
        return 0, ()
    # inversions: pairs (a in S, b in T) with a > b
    inv = 0
    j = 0
    for a in s:
        while j < len(t) and t[j] < a:
            j += 1
        inv += j
    merged = tuple(sorted(s + t))
    return (-1 if inv % 2 else 1), merged


def all_monomials(n: int) -> list[Monomial]:
    """Monomials of Gamma_n by degree, then lexicographically."""
    out = []
    for d in range(n + 1):
        out.extend(combinations(range(1, n + 1), d))
    return out


def monomial_label(m: Monomial) -> str:
    return "".join(f"ξ{i}" for i in m) if m else "1"


@dataclass(frozen=True)
class GrassmannElement:
    """Element of Gamma_n as ``{monomial: coefficient}`` with zero terms dropped."""

    n: int
    terms: tuple  # sorted ((monomial, coeff), ...)
    field: Field = QQ

    @classmethod
    def make(cls, n: int, terms: dict, field: Field = QQ) -> "GrassmannElement":
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if any(not 1 <= i <= n for i in m):
                raise ValueError(f"monomial {m} uses a generator outside 1..{n}")
            if len(set(m)) != len(m):
                continue  # repeated generator: xi_i^2 = 0
            sign = 1
            # sort with sign of the permutation
            lst = list(m)
            for a in range(len(lst)):
                for b in range(len(lst) - 1 - a):
                    if lst[b] > lst[b + 1]:
                        lst[b], lst[b + 1] = lst[b + 1], lst[b]
                        sign = -sign
            key = tuple(lst)
            clean[key] = clean.get(key, field.zero) + field(c) * sign
        items = tuple(sorted(((m, c) for m, c in clean.items() if c), key=lambda t: (len(t[0]), t[0])))
        return cls(n, items, field)

    @classmethod
    def generator(cls, n: int, i: int, field: Field = QQ) -> "GrassmannElement":
        return cls.make(n, {(i,): 1}, field)

    @classmethod
    def one(cls, n: int, field: Field = QQ) -> "GrassmannElement":
        return cls.make(n, {(): 1}, field)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def parity(self) -> Optional[int]:
        ps = {len(m) % 2 for m, _ in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def __add__(self, other):
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d.get(m, self.field.zero) + c
        return GrassmannElement.make(self.n, d, self.field)

    def __neg__(self):
        return GrassmannElement(self.n, tuple((m, -c) for m, c in self.terms), self.field)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, s) -> "GrassmannElement":
        return GrassmannElement.make(self.n, {m: s * c for m, c in self.terms}, self.field)

    def __mul__(self, other):
        return grassmann_multiply(self, other)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            parts.append(f"{self.field.fmt(c)}∘{monomial_label(m)}")
        return " + ".join(parts)


def grassmann_multiply(f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
    if f.n != g.n:
        raise ValueError("different generator counts")
    out: dict = {}
    for s, a in f.terms:
        for t, b in g.terms:
            sign, m = monomial_product(s, t)
            if sign:
                out[m] = out.get(m, f.field.zero) + a * b * sign
    return GrassmannElement.make(f.n, out, f.field)


def monomial_derivative(j: int, m: Monomial) -> tuple[int, Monomial]:
    """Left derivative of a monomial: ``(sign, monomial)``, sign 0 if ``j`` is absent."""
    if j not in m:
        return 0, ()
    k = m.index(j)
    return (-1 if k % 2 else 1), m[:k] + m[k + 1:]


def partial_derivative(j: int, f: GrassmannElement) -> GrassmannElement:
    if not 1 <= j <= f.n:
        raise ValueError(f"generator index {j} outside 1..{f.n}")
    out: dict = {}
    for m, c in f.terms:
        sign, r = monomial_derivative(j, m)
        if sign:
            out[r] = out.get(r, f.field.zero) + c * sign
    return GrassmannElement.make(f.n, out, f.field)


def poisson_bracket(f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
    """``{f, g} = (-1)^|f| sum_j (df/dxi_j)(dg/dxi_j)`` for homogeneous ``f, g``."""
    if f.parity is None or g.parity is None:
        raise ValueError("bracket is defined on homogeneous elements")
    total = GrassmannElement.make(f.n, {}, f.field)
    for j in range(1, f.n + 1):
        total = total + grassmann_multiply(partial_derivative(j, f), partial_derivative(j, g))
    return -total if f.parity else total


def _monomial_bracket(n: int, s: Monomial, t: Monomial, field: Field) -> dict:
    a = GrassmannElement.make(n, {s: 1}, field)
    b = GrassmannElement.make(n, {t: 1}, field)
    return poisson_bracket(a, b).as_dict()


def j_gamma(n: int, field: Field = QQ):
    """The bracket superalgebra ``J(Gamma_n)`` of dimension ``2^(n+1)``.

    Basis: even part is Gamma_0 then bar(Gamma_1), odd part is Gamma_1 then
    bar(Gamma_0); bar elements carry labels prefixed with ``~``.
    """
    from .algebra import from_products

    monos = all_monomials(n)
    even_g = [m for m in monos if len(m) % 2 == 0]
    odd_g = [m for m in monos if len(m) % 2 == 1]
    order = [(m, False) for m in even_g] + [(m, True) for m in odd_g] + \
            [(m, False) for m in odd_g] + [(m, True) for m in even_g]
    index = {key: i for i, key in enumerate(order)}
    parity = [(len(m) + bar) % 2 for m, bar in order]
    labels = [("~" if bar else "") + monomial_label(m) for m, bar in order]
    products: dict = {}
    for (a, abar), i in index.items():
        for (b, bbar), j in index.items():
            sb = -1 if len(b) % 2 else 1
            out: dict = {}
            if not abar and not bbar:
                sign, m = monomial_product(a, b)
                if sign:
                    out[index[(m, False)]] = field(sign)
            elif not abar and bbar:
                sign, m = monomial_product(a, b)
                if sign:
                    out[index[(m, True)]] = field(sign)
            elif abar and not bbar:
                sign, m = monomial_product(a, b)
                if sign:
                    out[index[(m, True)]] = field(sign * sb)
            else:
                for m, c in _monomial_bracket(n, a, b, field).items():
                    out[index[(m, False)]] = c * sb
            if out:
                products[(i, j)] = out
    unit = [field.zero] * len(order)
    unit[index[((), False)]] = field.one
    return from_products(field, parity, products, unit, labels)


def grassmann_envelope(A, generators: int = 4):
    """Ordinary algebra ``G_0 (x) A_0 + G_1 (x) A_1`` over Gamma_g.

    Returns an algebra whose parity vector is all zeros; basis element
    ``xi_S (x) b`` is labelled ``"<S>|<label of b>"``.
    """
    from .algebra import from_products

    if generators < 1:
        raise ValueError("need at least one Grassmann generator")
    monos = all_monomials(generators)
    basis = [(m, i) for i in range(A.dim) for m in monos if len(m) % 2 == A.parity[i]]
    index = {key: t for t, key in enumerate(basis)}
    products: dict = {}
    for (s, i), p in index.items():
        for (t, j), q in index.items():
            sign, m = monomial_product(s, t)
            if not sign:
                continue
            out = {}
            for k, c in A.product_row(i, j):
                out[index[(m, k)]] = c * sign
            if out:
                products[(p, q)] = out
    labels = [f"{monomial_label(m)}|{A.label(i)}" for m, i in basis]
    return from_products(A.field, [0] * len(basis), products, None, labels)
