"""Superalgebras given by structure constants, and graded linear maps on them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .exact import QQ, Field, FieldError, Scalar, field_from_tag
from . import grassmann


class GradingError(ValueError):
    pass


class UnsupportedCheck(RuntimeError):
    pass


Vec = tuple  # dense coordinate tuple of scalars


@dataclass(frozen=True, eq=False)
class SuperAlgebra:
    """Finite-dimensional superalgebra ``b_i b_j = sum_k c[i][j][k] b_k``.

    ``table`` is the sparse list of nonzero ``(i, j, k, c)`` sorted by
    ``(i, j, k)``.  Even basis elements come first.
    """

    field: Field
    parity: tuple[int, ...]
    table: tuple[tuple[int, int, int, Scalar], ...]
    unit: Optional[tuple[Scalar, ...]] = None
    labels: Optional[tuple[str, ...]] = None
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.parity)
        if any(p not in (0, 1) for p in self.parity):
            raise GradingError("parity entries must be 0 or 1")
        if list(self.parity) != sorted(self.parity):
            raise GradingError("even basis elements must precede odd ones")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("one label per basis element")
        rows: dict[tuple[int, int], list] = {}
        for i, j, k, c in self.table:
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise ValueError(f"table index out of range: {(i, j, k)}")
            if self.field(c) != c:
                raise FieldError(f"structure constant {c!r} not in {self.field.tag}")
            if c and self.parity[k] != (self.parity[i] + self.parity[j]) % 2:
                raise GradingError(f"b{i}*b{j} has a component on b{k} of the wrong parity")
            if c:
                rows.setdefault((i, j), []).append((k, c))
        object.__setattr__(self, "_rows", {key: tuple(v) for key, v in rows.items()})
        if self.unit is not None:
            if len(self.unit) != n:
                raise ValueError("unit has wrong length")
            if any(self.unit[k] and self.parity[k] for k in range(n)):
                raise GradingError("unit must be even")
            u = self.unit
            for j in range(n):
                b = basis_vector(self, j)
                if multiply(self, u, b) != b or multiply(self, b, u) != b:
                    raise ValueError(f"declared unit does not act as identity on b{j}")

    @property
    def dim(self) -> int:
        return len(self.parity)

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i}"

    def product_row(self, i: int, j: int):
        """Sparse ``b_i b_j`` as a tuple of ``(k, c)``."""
        return self._rows.get((i, j), ())

    def even_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == 0]

    def odd_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.parity) if p == 1]

    def __repr__(self):
        return (
            f"SuperAlgebra(dim={self.dim}, even={len(self.even_indices())}, "
            f"field={self.field.tag}, unital={self.is_unital})"
        )


def from_products(
    field: Field,
    parity: Sequence[int],
    products: dict,
    unit=None,
    labels=None,
) -> SuperAlgebra:
    """Build an algebra from ``{(i, j): {k: c}}`` (or dense vectors as values)."""
    entries = []
    n = len(parity)
    for (i, j), val in products.items():
        items = val.items() if isinstance(val, dict) else enumerate(val)
        for k, c in items:
            c = field(c)
            if c:
                entries.append((i, j, k, c))
    entries.sort(key=lambda t: t[:3])
    u = tuple(field(x) for x in unit) if unit is not None else None
    lab = tuple(labels) if labels is not None else None
    if len(parity) != n:
        raise ValueError
    return SuperAlgebra(field, tuple(parity), tuple(entries), u, lab)


def zero_vector(A: SuperAlgebra) -> Vec:
    return (A.field.zero,) * A.dim


def basis_vector(A: SuperAlgebra, i: int) -> Vec:
    z, o = A.field.zero, A.field.one
    return tuple(o if k == i else z for k in range(A.dim))


def vector(A: SuperAlgebra, coeffs) -> Vec:
    """Coerce a dense sequence or ``{index: value}`` mapping into a coordinate tuple."""
    if isinstance(coeffs, dict):
        v = [A.field.zero] * A.dim
        for k, c in coeffs.items():
            v[k] = A.field(c)
        return tuple(v)
    if len(coeffs) != A.dim:
        raise ValueError(f"expected {A.dim} coordinates, got {len(coeffs)}")
    return tuple(A.field(c) for c in coeffs)


def add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def scale(s, a: Vec) -> Vec:
    return tuple(s * x for x in a)


def parity_of(A: SuperAlgebra, v: Vec) -> Optional[int]:
    """0 or 1 for a nonzero homogeneous vector, 0 for zero, ``None`` if mixed."""
    ps = {A.parity[k] for k, c in enumerate(v) if c}
    if not ps:
        return 0
    if len(ps) == 1:
        return ps.pop()
    return None


def multiply(A: SuperAlgebra, a: Vec, b: Vec) -> Vec:
    if len(a) != A.dim or len(b) != A.dim:
        raise ValueError("coordinate vectors must have length dim A")
    out = [A.field.zero] * A.dim
    nb = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in nb:
            xy = x * y
            for k, c in A.product_row(i, j):
                out[k] = out[k] + xy * c
    return tuple(out)


def associator(A: SuperAlgebra, x: Vec, y: Vec, z: Vec) -> Vec:
    """``(xy)z - x(yz)``."""
    return sub(multiply(A, multiply(A, x, y), z), multiply(A, x, multiply(A, y, z)))


# --------------------------------------------------------------------------
# graded linear maps


@dataclass(frozen=True)
class GradedLinearMap:
    """Homogeneous endomorphism; ``matrix[k][j]`` is the b_k-coordinate of the image of b_j."""

    parity: int
    matrix: tuple[tuple[Scalar, ...], ...]

    @property
    def n(self) -> int:
        return len(self.matrix)

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self.matrix)

    def __call__(self, v: Vec) -> Vec:
        return tuple(sum((r[j] * x for j, x in enumerate(v) if x), r[0] * 0) for r in self.matrix)

    def __matmul__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        n = self.n
        cols = [other.column(j) for j in range(n)]
        m = tuple(
            tuple(
                sum((self.matrix[i][k] * cols[j][k] for k in range(n) if self.matrix[i][k]), self.matrix[i][0] * 0)
                for j in range(n)
            )
            for i in range(n)
        )
        return GradedLinearMap((self.parity + other.parity) % 2, m)

    def __add__(self, other):
        if other.parity != self.parity:
            raise GradingError("adding maps of different parity")
        return GradedLinearMap(
            self.parity,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)),
        )

    def __sub__(self, other):
        if other.parity != self.parity:
            raise GradingError("subtracting maps of different parity")
        return GradedLinearMap(
            self.parity,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)),
        )

    def __neg__(self):
        return GradedLinearMap(self.parity, tuple(tuple(-a for a in r) for r in self.matrix))

    def scaled(self, s) -> "GradedLinearMap":
        return GradedLinearMap(self.parity, tuple(tuple(s * a for a in r) for r in self.matrix))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def flat(self) -> tuple:
        """Row-major entries."""
        return tuple(a for r in self.matrix for a in r)


def map_from_columns(A: SuperAlgebra, parity: int, columns: Sequence[Vec]) -> GradedLinearMap:
    n = A.dim
    m = tuple(tuple(columns[j][k] for j in range(n)) for k in range(n))
    return checked_map(A, parity, m)


def checked_map(A: SuperAlgebra, parity: int, matrix) -> GradedLinearMap:
    for k in range(A.dim):
        for j in range(A.dim):
            if matrix[k][j] and A.parity[k] != (A.parity[j] + parity) % 2:
                raise GradingError(f"entry ({k}, {j}) violates parity {parity}")
    return GradedLinearMap(parity, tuple(tuple(A.field(x) for x in r) for r in matrix))


def identity_map(A: SuperAlgebra) -> GradedLinearMap:
    z, o = A.field.zero, A.field.one
    return GradedLinearMap(0, tuple(tuple(o if i == j else z for j in range(A.dim)) for i in range(A.dim)))


def zero_map(A: SuperAlgebra, parity: int = 0) -> GradedLinearMap:
    z = A.field.zero
    return GradedLinearMap(parity, tuple((z,) * A.dim for _ in range(A.dim)))


def _left_matrix(A: SuperAlgebra, a: Vec):
    cols = [multiply(A, a, basis_vector(A, j)) for j in range(A.dim)]
    return tuple(tuple(cols[j][k] for j in range(A.dim)) for k in range(A.dim))


def left_mult(A: SuperAlgebra, a: Vec) -> GradedLinearMap:
    """``L_a : x -> a x`` for homogeneous ``a``."""
    p = parity_of(A, a)
    if p is None:
        raise GradingError("left multiplication needs a homogeneous element")
    return GradedLinearMap(p, _left_matrix(A, a))


def right_mult(A: SuperAlgebra, a: Vec) -> GradedLinearMap:
    p = parity_of(A, a)
    if p is None:
        raise GradingError("right multiplication needs a homogeneous element")
    cols = [multiply(A, basis_vector(A, j), a) for j in range(A.dim)]
    return map_from_columns(A, p, cols)


def u_operator(A: SuperAlgebra, x: Vec) -> GradedLinearMap:
    """``U_x = 2 L_x^2 - L_{x^2}``."""
    L = left_mult(A, x)
    Lxx = left_mult(A, multiply(A, x, x))
    LL = L @ L
    two = A.field(2)
    return GradedLinearMap(
        0, tuple(tuple(two * a - b for a, b in zip(r, s)) for r, s in zip(LL.matrix, Lxx.matrix))
    )


# --------------------------------------------------------------------------
# identity checks


@dataclass
class JordanCheck:
    ok: bool
    violations: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def _env_mul(A: SuperAlgebra, x, y):
    """Product in G (x) A of ``(monomial, vector)`` pairs; ``None`` is zero."""
    if x is None or y is None:
        return None
    sign, mono = grassmann.monomial_product(x[0], y[0])
    if sign == 0:
        return None
    v = multiply(A, x[1], y[1])
    if not any(v):
        return None
    if sign < 0:
        v = tuple(-c for c in v)
    return (mono, v)


def check_super_jordan(A: SuperAlgebra, max_violations: int = 5) -> JordanCheck:
    """Supercommutativity on basis pairs plus the linearized Jordan identity.

    The identity
    ``((xz)y)w + ((xw)y)z + ((zw)y)x = (xz)(yw) + (xw)(yz) + (zw)(xy)``
    is evaluated in the Grassmann envelope, where argument slot ``s`` carries
    generator ``s+1`` when its basis element is odd.  It is symmetric in
    ``x, z, w``, so only sorted index triples are visited.
    """
    if A.field.characteristic == 3:
        raise UnsupportedCheck("linearized Jordan identity needs 3 invertible (characteristic 3)")
    n = A.dim
    bad = []
    for i in range(n):
        for j in range(i, n):
            bi, bj = basis_vector(A, i), basis_vector(A, j)
            lhs = multiply(A, bi, bj)
            rhs = multiply(A, bj, bi)
            if A.parity[i] and A.parity[j]:
                rhs = tuple(-c for c in rhs)
            if lhs != rhs:
                bad.append(("supercommutativity", (i, j)))
                if len(bad) >= max_violations:
                    return JordanCheck(False, bad)
    zero = zero_vector(A)

    def elem(idx, slot):
        mono = (slot + 1,) if A.parity[idx] else ()
        return (mono, basis_vector(A, idx))

    def acc(total, term, sign):
        if term is None:
            return
        mono, v = term
        if sign < 0:
            v = tuple(-c for c in v)
        total[mono] = add(total.get(mono, zero), v)

    for i, k, l in combinations_with_replacement(range(n), 3):
        for j in range(n):
            x, y, z, w = elem(i, 0), elem(j, 1), elem(k, 2), elem(l, 3)
            xz, xw, zw = _env_mul(A, x, z), _env_mul(A, x, w), _env_mul(A, z, w)
            total: dict = {}
            acc(total, _env_mul(A, _env_mul(A, xz, y), w), 1)
            acc(total, _env_mul(A, _env_mul(A, xw, y), z), 1)
            acc(total, _env_mul(A, _env_mul(A, zw, y), x), 1)
            acc(total, _env_mul(A, xz, _env_mul(A, y, w)), -1)
            acc(total, _env_mul(A, xw, _env_mul(A, y, z)), -1)
            acc(total, _env_mul(A, zw, _env_mul(A, x, y)), -1)
            if any(any(v) for v in total.values()):
                bad.append(("jordan", (i, j, k, l)))
                if len(bad) >= max_violations:
                    return JordanCheck(False, bad)
    return JordanCheck(not bad, bad)


def check_supercommutative(A: SuperAlgebra) -> bool:
    for i in range(A.dim):
        for j in range(i, A.dim):
            bi, bj = basis_vector(A, i), basis_vector(A, j)
            s = -1 if A.parity[i] and A.parity[j] else 1
            if multiply(A, bi, bj) != scale(A.field(s), multiply(A, bj, bi)):
                return False
    return True


# --------------------------------------------------------------------------
# constructions


def _assemble(field: Field, blocks: list[tuple[SuperAlgebra, int]], extra_unit: bool):
    """Merge algebras block-diagonally, keeping even-before-odd ordering.

    Returns ``(parity, labels, products, embeddings)`` where ``embeddings[b][i]``
    is the new index of basis element ``i`` of block ``b``.
    """
    order = []
    if extra_unit:
        order.append((None, None, 0))
    for par in (0, 1):
        for b, (A, _) in enumerate(blocks):
            for i in range(A.dim):
                if A.parity[i] == par:
                    order.append((b, i, par))
    embed = [dict() for _ in blocks]
    for new, (b, i, _) in enumerate(order):
        if b is not None:
            embed[b][i] = new
    parity = [p for _, _, p in order]
    labels = []
    for b, i, _ in order:
        if b is None:
            labels.append("1")
        else:
            A, tag = blocks[b]
            lab = A.label(i)
            labels.append(f"{lab}_{tag}" if len(blocks) > 1 else lab)
    products: dict = {}
    for b, (A, _) in enumerate(blocks):
        m = embed[b]
        for i, j, k, c in A.table:
            products.setdefault((m[i], m[j]), {})[m[k]] = c
    return parity, labels, products, embed


def direct_sum(A: SuperAlgebra, B: SuperAlgebra) -> SuperAlgebra:
    if A.field != B.field:
        raise FieldError("direct sum over different fields")
    parity, labels, products, embed = _assemble(A.field, [(A, 1), (B, 2)], False)
    unit = None
    if A.unit is not None and B.unit is not None:
        u = [A.field.zero] * len(parity)
        for blk, (C, m) in enumerate([(A, embed[0]), (B, embed[1])]):
            for i, c in enumerate(C.unit):
                u[m[i]] = c
        unit = u
    S = from_products(A.field, parity, products, unit, labels)
    S._cache["embeddings"] = tuple(tuple(embed[b][i] for i in range(X.dim)) for b, X in enumerate((A, B)))
    return S


def unital_hull(parts: Sequence[SuperAlgebra], field: Field = None) -> SuperAlgebra:
    """Adjoin a new even unit to the direct sum of ``parts`` (index 0, label ``"1"``)."""
    if field is None:
        field = parts[0].field if parts else QQ
    for P in parts:
        if P.field != field:
            raise FieldError("unital hull over different fields")
    blocks = [(P, b + 1) for b, P in enumerate(parts)]
    parity, labels, products, embed = _assemble(field, blocks, True)
    n = len(parity)
    one = field.one
    for j in range(n):
        products.setdefault((0, j), {})[j] = one
        products.setdefault((j, 0), {})[j] = one
    unit = [field.zero] * n
    unit[0] = one
    H = from_products(field, parity, products, unit, labels)
    H._cache["embeddings"] = tuple(tuple(embed[b][i] for i in range(P.dim)) for b, P in enumerate(parts))
    return H


def zero_algebra(dim: int = 0, field: Field = QQ, parity=None) -> SuperAlgebra:
    par = tuple(parity) if parity is not None else (0,) * dim
    return SuperAlgebra(field, par, ())


# --------------------------------------------------------------------------
# JSON file format


def to_json_dict(A: SuperAlgebra) -> dict:
    f = A.field
    return {
        "field": f.tag,
        "dim": A.dim,
        "parity": list(A.parity),
        "labels": list(A.labels) if A.labels else [f"b{i}" for i in range(A.dim)],
        "unit": [f.fmt(c) for c in A.unit] if A.unit is not None else None,
        "table": [[i, j, k, f.fmt(c)] for i, j, k, c in A.table],
    }


def dumps(A: SuperAlgebra) -> str:
    return json.dumps(to_json_dict(A), indent=1)


def from_json_dict(d: dict) -> SuperAlgebra:
    field = field_from_tag(d["field"])
    n = int(d["dim"])
    parity = tuple(int(p) for p in d["parity"])
    if len(parity) != n:
        raise ValueError("parity length differs from dim")
    table = []
    for i, j, k, s in d["table"]:
        c = field.parse(str(s))
        if c:
            table.append((int(i), int(j), int(k), c))
    if [t[:3] for t in table] != sorted(t[:3] for t in table):
        raise ValueError("table entries must be sorted by (i, j, k)")
    unit = None
    if d.get("unit") is not None:
        unit = tuple(field.parse(str(s)) for s in d["unit"])
    labels = tuple(d["labels"]) if d.get("labels") else None
    return SuperAlgebra(field, parity, tuple(table), unit, labels)


def loads(text: str) -> SuperAlgebra:
    return from_json_dict(json.loads(text))


def with_structure_constant(A: SuperAlgebra, i: int, j: int, values: dict) -> SuperAlgebra:
    """Copy of ``A`` with the product ``b_i b_j`` replaced by ``values`` (``{k: c}``)."""
    products: dict = {}
    for a, b, k, c in A.table:
        products.setdefault((a, b), {})[k] = c
    products[(i, j)] = {k: A.field(c) for k, c in values.items()}
    unit = A.unit
    try:
        return from_products(A.field, A.parity, products, unit, A.labels)
    except ValueError:
        return from_products(A.field, A.parity, products, None, A.labels)
