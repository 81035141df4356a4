"""Exact scalars and deterministic linear algebra over Q and F_p.

Scalars are ``fractions.Fraction`` for the rationals and :class:`ModP` for
prime fields.  Every subspace is kept in reduced row-echelon form with
strictly increasing pivots, so equal subspaces compare equal entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union


class FieldError(ValueError):
    pass


class DimensionError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class ModP:
    """Residue class modulo an odd prime, stored in ``[0, p-1]``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


Scalar = Union[Fraction, ModP]


class Field:
    """Base class for the two supported exact fields."""

    tag: str
    characteristic: int

    def __call__(self, x) -> Scalar:
        raise NotImplementedError

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    @property
    def half(self) -> Scalar:
        return self(Fraction(1, 2))

    def fmt(self, x: Scalar) -> str:
        raise NotImplementedError

    def parse(self, s: str) -> Scalar:
        return self(Fraction(s))

    def height(self, x: Scalar) -> int:
        """Bit size used to rank pivot candidates."""
        return 0

    def __repr__(self):
        return f"<field {self.tag}>"

    def __eq__(self, other):
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)


class Rationals(Field):
    tag = "Q"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, ModP):
            raise FieldError("cannot lift an F_p residue to Q")
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def fmt(self, x: Fraction) -> str:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def height(self, x: Fraction) -> int:
        return x.numerator.bit_length() + x.denominator.bit_length()


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if not _is_prime(p):
            raise FieldError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p
        self.tag = f"Fp:{p}"

    def __call__(self, x) -> ModP:
        if isinstance(x, ModP):
            if x.p != self.p:
                raise FieldError(f"residue mod {x.p} used in F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return ModP(int(x), self.p)

    def fmt(self, x: ModP) -> str:
        return str(self(x).v)

    def parse(self, s: str) -> ModP:
        return self(Fraction(s))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str) -> Field:
    """Parse ``"Q"``, ``"Fp:<p>"`` or the short form ``"F<p>"``."""
    t = tag.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("Fp:"):
        return GF(int(t[3:]))
    if t.startswith("F") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise FieldError(f"unknown field tag {tag!r}")


# --------------------------------------------------------------------------
# elimination

Vector = Sequence[Scalar]
SparseRow = Mapping[int, Scalar]


def _as_sparse(row, dim: int, field: Field) -> dict[int, Scalar]:
    if isinstance(row, Mapping):
        out = {}
        for c, v in row.items():
            if not 0 <= c < dim:
                raise DimensionError(f"column {c} outside ambient dimension {dim}")
            if v:
                out[c] = field(v)
        return out
    if len(row) != dim:
        raise DimensionError(f"row of length {len(row)} in ambient dimension {dim}")
    return {c: field(v) for c, v in enumerate(row) if v}


class _Reducer:
    """Incremental fully-reduced row basis.

    Each stored row has a pivot column holding 1 and every pivot column is
    zero in all other stored rows.  ``pivot_rule="height"`` picks the entry
    of least bit size as the new pivot (ties to the lowest column), which
    keeps rational growth down; ``"lowest"`` yields a true RREF once rows are
    sorted by pivot.
    """

    def __init__(self, field: Field, pivot_rule: str = "height"):
        self.field = field
        self.rows: dict[int, dict[int, Scalar]] = {}
        self.lowest = pivot_rule == "lowest"

    def reduce(self, row: dict[int, Scalar]) -> dict[int, Scalar]:
        rows = self.rows
        hits = [c for c in row if c in rows]
        for c in hits:
            f = row.get(c)
            if not f:
                continue
            for cc, v in rows[c].items():
                nv = row.get(cc, 0) - f * v
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        return row

    def add(self, row: dict[int, Scalar]) -> bool:
        row = self.reduce(dict(row))
        if not row:
            return False
        if self.lowest:
            piv = min(row)
        else:
            h = self.field.height
            piv = min(row, key=lambda c: (h(row[c]), c))
        inv = 1 / row[piv]
        if inv != 1:
            row = {c: v * inv for c, v in row.items()}
        for prow in self.rows.values():
            f = prow.get(piv)
            if f:
                for cc, v in row.items():
                    nv = prow.get(cc, 0) - f * v
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        self.rows[piv] = row
        return True


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``field^dim`` held by its canonical RREF basis."""

    field: Field
    dim_ambient: int
    rows: tuple[tuple[Scalar, ...], ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def basis(self) -> list[tuple[Scalar, ...]]:
        return list(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.dim_ambient == other.dim_ambient
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.dim_ambient, self.pivots, self.rows))

    def coords(self, v: Vector):
        return membership(self, v)

    def __contains__(self, v) -> bool:
        return membership(self, v) is not None

    def contains_space(self, other: "Subspace") -> bool:
        return all(membership(self, r) is not None for r in other.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.dim_ambient}, field={self.field.tag})"


def span(vectors: Iterable, dim: int, field: Field = QQ) -> Subspace:
    """Canonical echelon basis of the span of ``vectors``."""
    red = _Reducer(field, pivot_rule="lowest")
    for v in vectors:
        red.add(_as_sparse(v, dim, field))
    zero = field.zero
    pivots = tuple(sorted(red.rows))
    rows = []
    for p in pivots:
        r = red.rows[p]
        rows.append(tuple(r.get(c, zero) for c in range(dim)))
    return Subspace(field, dim, tuple(rows), pivots)


def full_space(dim: int, field: Field = QQ) -> Subspace:
    one, zero = field.one, field.zero
    rows = tuple(tuple(one if c == r else zero for c in range(dim)) for r in range(dim))
    return Subspace(field, dim, rows, tuple(range(dim)))


def zero_space(dim: int, field: Field = QQ) -> Subspace:
    return Subspace(field, dim, (), ())


def null_space(rows: Iterable, ambient_dim: int, field: Field = QQ) -> Subspace:
    """Solutions ``x`` of ``row . x = 0`` for every given row.

    Rows may be dense sequences or sparse ``{column: value}`` mappings.
    """
    red = _Reducer(field, pivot_rule="height")
    for r in rows:
        red.add(_as_sparse(r, ambient_dim, field))
    one = field.one
    pivot_rows = red.rows
    free = [c for c in range(ambient_dim) if c not in pivot_rows]
    free_set = set(free)
    kernel: dict[int, dict[int, Scalar]] = {f: {f: one} for f in free}
    for p, r in pivot_rows.items():
        for c, v in r.items():
            if c in free_set:
                kernel[c][p] = -v
    return span(kernel.values(), ambient_dim, field)


def rank(rows: Iterable, ambient_dim: int, field: Field = QQ) -> int:
    red = _Reducer(field)
    for r in rows:
        red.add(_as_sparse(r, ambient_dim, field))
    return len(red.rows)


def membership(space: Subspace, v: Vector):
    """Coordinates of ``v`` in the echelon basis, or ``None`` if ``v`` lies outside."""
    if len(v) != space.dim_ambient:
        raise DimensionError(f"vector of length {len(v)} vs ambient {space.dim_ambient}")
    field = space.field
    coords = tuple(field(v[p]) for p in space.pivots)
    for c in range(space.dim_ambient):
        acc = field.zero
        for k, r in zip(coords, space.rows):
            if k and r[c]:
                acc = acc + k * r[c]
        if acc != field(v[c]):
            return None
    return coords


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.dim_ambient != b.dim_ambient:
        raise DimensionError(f"ambient dimensions {a.dim_ambient} and {b.dim_ambient}")
    if a.field != b.field:
        raise FieldError(f"fields {a.field.tag} and {b.field.tag}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    return span(list(a.rows) + list(b.rows), a.dim_ambient, a.field)


def annihilator(a: Subspace) -> Subspace:
    return null_space(a.rows, a.dim_ambient, a.field)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    rows = list(annihilator(a).rows) + list(annihilator(b).rows)
    return null_space(rows, a.dim_ambient, a.field)


def solve_combination(generators: Sequence[Vector], target: Vector, field: Field = QQ):
    """Coefficients ``x`` with ``sum x_i * generators[i] == target``, or ``None``.

    Among all solutions the one vanishing on free generators is returned.
    """
    g = len(generators)
    dim = len(target)
    # columns = generators, augmented by -target; look for kernel vector with last coord 1
    rows = []
    for c in range(dim):
        row = {i: generators[i][c] for i in range(g) if generators[i][c]}
        if target[c]:
            row[g] = -field(target[c])
        if row:
            rows.append(row)
    red = _Reducer(field, pivot_rule="lowest")
    for r in rows:
        red.add(_as_sparse(r, g + 1, field))
    if g in red.rows:
        return None  # forces t = 0
    x = [field.zero] * g
    for p, r in red.rows.items():
        x[p] = -r.get(g, field.zero)
    return tuple(x)
