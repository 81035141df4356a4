"""Coordinates for spaces of homogeneous maps and of map triples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import GradedLinearMap, GradingError, SuperAlgebra
from .exact import Subspace, membership, span


class ParityBlock:
    """Unknown layout for maps of a fixed parity.

    Only entries ``(k, j)`` with ``parity(k) = parity(j) + pi`` can be nonzero;
    they are numbered row-major.
    """

    def __init__(self, A: SuperAlgebra, parity: int):
        self.algebra = A
        self.parity = parity
        n = A.dim
        self.entries = [(k, j) for k in range(n) for j in range(n)
                        if A.parity[k] == (A.parity[j] + parity) % 2]
        self.index = {e: t for t, e in enumerate(self.entries)}
        # for each column m: the (row k, variable index) pairs available
        self.by_column: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for t, (k, j) in enumerate(self.entries):
            self.by_column[j].append((k, t))

    @property
    def size(self) -> int:
        return len(self.entries)

    def to_map(self, vec: Sequence) -> GradedLinearMap:
        A = self.algebra
        z = A.field.zero
        m = [[z] * A.dim for _ in range(A.dim)]
        for (k, j), c in zip(self.entries, vec):
            m[k][j] = c
        return GradedLinearMap(self.parity, tuple(tuple(r) for r in m))

    def from_map(self, M: GradedLinearMap) -> tuple:
        A = self.algebra
        if M.n != A.dim:
            raise ValueError("map size does not match the algebra")
        for k in range(A.dim):
            for j in range(A.dim):
                if M.matrix[k][j] and (k, j) not in self.index:
                    raise GradingError(f"map has entry ({k}, {j}) outside parity block {self.parity}")
        return tuple(A.field(M.matrix[k][j]) for k, j in self.entries)


@dataclass(frozen=True)
class TernaryTriple:
    D: GradedLinearMap
    F: GradedLinearMap
    G: GradedLinearMap

    def __post_init__(self):
        nonzero = {m.parity for m in (self.D, self.F, self.G) if not m.is_zero()}
        if len(nonzero) > 1:
            raise GradingError("D, F, G must share one parity")

    @property
    def parity(self) -> int:
        for m in (self.D, self.F, self.G):
            if not m.is_zero():
                return m.parity
        return self.D.parity

    def components(self):
        return (self.D, self.F, self.G)

    def derived(self, A: SuperAlgebra) -> dict:
        """``c = D(1)/2, f = F(1), g = G(1), w = f - g`` (unital ``A`` only)."""
        if A.unit is None:
            raise ValueError("derived values need a unital algebra")
        u = A.unit
        h = A.field.half
        f, g = self.F(u), self.G(u)
        return {
            "c": tuple(h * x for x in self.D(u)),
            "f": f,
            "g": g,
            "w": tuple(a - b for a, b in zip(f, g)),
        }


MapLike = Union[GradedLinearMap, TernaryTriple]


@dataclass(frozen=True, eq=False)
class MapSpace:
    """Solution space of maps (``arity`` 1) or triples (``arity`` 3) of one parity."""

    kind: str
    algebra: SuperAlgebra
    parity: int
    arity: int
    space: Subspace
    block: ParityBlock

    @property
    def dim(self) -> int:
        return self.space.dim

    def element(self, vec) -> MapLike:
        s = self.block.size
        if self.arity == 1:
            return self.block.to_map(vec)
        return TernaryTriple(*(self.block.to_map(vec[t * s:(t + 1) * s]) for t in range(3)))

    def basis(self) -> list:
        return [self.element(v) for v in self.space.rows]

    def vector(self, x: MapLike) -> tuple:
        if self.arity == 1:
            if isinstance(x, TernaryTriple):
                raise TypeError("expected a map, got a triple")
            return self.block.from_map(x)
        if not isinstance(x, TernaryTriple):
            raise TypeError("expected a triple")
        return sum((self.block.from_map(m) for m in x.components()), ())

    def coords(self, x: MapLike):
        return membership(self.space, self.vector(x))

    def __contains__(self, x) -> bool:
        try:
            return self.coords(x) is not None
        except GradingError:
            return False

    def contains_space(self, other: "MapSpace") -> bool:
        return self.space.contains_space(other.space)

    def __eq__(self, other):
        if not isinstance(other, MapSpace):
            return NotImplemented
        return self.space == other.space and self.arity == other.arity and self.parity == other.parity

    def __hash__(self):
        return hash((self.space, self.arity, self.parity))

    def __repr__(self):
        return f"MapSpace({self.kind}, parity={self.parity}, dim={self.dim})"


def make_space(kind, A, parity, arity, vectors, block=None) -> MapSpace:
    block = block or ParityBlock(A, parity)
    return MapSpace(kind, A, parity, arity, span(vectors, arity * block.size, A.field), block)


def cached(A: SuperAlgebra, key, fn):
    c = A._cache
    if key not in c:
        c[key] = fn()
    return c[key]
