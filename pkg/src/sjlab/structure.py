"""Peirce decomposition, middle nucleus, center, centroid and trivial ideals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import algebra as alg
from .algebra import SuperAlgebra
from .constraints import LEFT, OUT, RIGHT, identity_rows
from .exact import Subspace, null_space, span, subspace_sum
from .maps import MapSpace, ParityBlock, cached


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class PeirceDecomposition:
    idempotents: tuple
    components: dict  # (i, j) with i <= j, 1-based -> Subspace

    def dims(self) -> dict:
        return {f"{i}{j}": s.dim for (i, j), s in sorted(self.components.items())}

    def component(self, i: int, j: int) -> Subspace:
        return self.components[(min(i, j), max(i, j))]


def _eigen_rows(A: SuperAlgebra, e, lam):
    """Rows of ``(L_e - lam) x = 0``."""
    L = alg.left_mult(A, e).matrix
    rows = []
    for k in range(A.dim):
        row = {j: L[k][j] - (lam if j == k else 0) for j in range(A.dim)}
        row = {j: c for j, c in row.items() if c}
        if row:
            rows.append(row)
    return rows


def _product_space(A: SuperAlgebra, U: Subspace, V: Subspace) -> Subspace:
    return span((alg.multiply(A, u, v) for u in U.rows for v in V.rows), A.dim, A.field)


def peirce(A: SuperAlgebra, idempotents: Sequence) -> PeirceDecomposition:
    """Peirce components ``J_ii = {x : x e_i = x}``, ``J_ij = {x : x e_i = x e_j = x/2}``.

    The idempotents must be even, pairwise orthogonal and sum to the unit.
    """
    F = A.field
    es = [alg.vector(A, e) for e in idempotents]
    if not es:
        raise StructureError("need at least one idempotent")
    total = alg.zero_vector(A)
    for a, e in enumerate(es):
        if alg.parity_of(A, e) != 0:
            raise StructureError(f"idempotent {a + 1} is not even")
        if alg.multiply(A, e, e) != e:
            raise StructureError(f"element {a + 1} is not idempotent")
        for b in range(a + 1, len(es)):
            if any(alg.multiply(A, e, es[b])):
                raise StructureError(f"idempotents {a + 1} and {b + 1} are not orthogonal")
        total = alg.add(total, e)
    if A.unit is None or total != A.unit:
        raise StructureError("idempotents do not sum to the unit")

    m = len(es)
    one, half, zero = F.one, F.half, F.zero
    comps = {}
    for i in range(m):
        for j in range(i, m):
            rows = []
            for k in range(m):
                lam = one if (k == i == j) else half if k in (i, j) else zero
                rows += _eigen_rows(A, es[k], lam)
            comps[(i + 1, j + 1)] = null_space(rows, A.dim, F)
    if sum(s.dim for s in comps.values()) != A.dim or \
            span((v for s in comps.values() for v in s.rows), A.dim, F).dim != A.dim:
        raise StructureError("Peirce components do not exhaust the space (non-Jordan input?)")
    dec = PeirceDecomposition(tuple(es), comps)
    _check_peirce_relations(A, dec)
    return dec


def _check_peirce_relations(A: SuperAlgebra, dec: PeirceDecomposition) -> None:
    """``J_ii J_jj = J_ii J_jk = J_ij J_kl = 0`` for distinct indices, and the containments
    ``J_ii^2 in J_ii``, ``J_ii J_ij in J_ij``, ``J_ij J_jk in J_ik``, ``J_ij^2 in J_ii + J_jj``."""
    m = len(dec.idempotents)
    C = dec.component
    idx = range(1, m + 1)

    def zero(U, V, what):
        if _product_space(A, U, V).dim:
            raise StructureError(f"Peirce relation {what} = 0 fails")

    def inside(U, V, W, what):
        if not W.contains_space(_product_space(A, U, V)):
            raise StructureError(f"Peirce containment {what} fails")

    for i in idx:
        inside(C(i, i), C(i, i), C(i, i), f"J{i}{i}^2 in J{i}{i}")
        for j in idx:
            if j == i:
                continue
            zero(C(i, i), C(j, j), f"J{i}{i}J{j}{j}")
            inside(C(i, i), C(i, j), C(i, j), f"J{i}{i}J{i}{j} in J{i}{j}")
            inside(C(i, j), C(i, j), subspace_sum(C(i, i), C(j, j)), f"J{i}{j}^2")
            for k in idx:
                if k in (i, j):
                    continue
                zero(C(i, i), C(j, k), f"J{i}{i}J{j}{k}")
                inside(C(i, j), C(j, k), C(i, k), f"J{i}{j}J{j}{k} in J{i}{k}")
                for l in idx:
                    if l in (i, j) or {k, l} & {i, j}:
                        continue
                    zero(C(i, j), C(k, l), f"J{i}{j}J{k}{l}")


def _associator_rows(A: SuperAlgebra, slot: int):
    """Linear conditions on ``w`` for ``(b_i, w, b_j)`` (slot 1), ``(w, b_i, b_j)`` (slot 0)
    or ``(b_i, b_j, w)`` (slot 2) to vanish over all basis pairs."""
    n = A.dim
    zero = A.field.zero
    rows = []
    bas = [alg.basis_vector(A, t) for t in range(n)]
    for i in range(n):
        for j in range(n):
            cols = []
            for t in range(n):
                args = [bas[i], bas[j]]
                args.insert(slot, bas[t])
                cols.append(alg.associator(A, *args))
            for k in range(n):
                row = {t: cols[t][k] for t in range(n) if cols[t][k] != zero}
                if row:
                    rows.append(row)
    return rows


def middle_nucleus(A: SuperAlgebra) -> Subspace:
    """``W(A) = {w : (x, w, y) = 0 for all x, y}``."""
    return cached(A, "nucleus", lambda: null_space(_associator_rows(A, 1), A.dim, A.field))


def center(A: SuperAlgebra) -> Subspace:
    """Elements with ``(w, x, y) = (x, w, y) = (x, y, w) = 0``.

    For supercommutative input the first and last families are sign images of
    each other; all three are imposed anyway.
    """
    def run():
        rows = _associator_rows(A, 0) + _associator_rows(A, 1) + _associator_rows(A, 2)
        return null_space(rows, A.dim, A.field)
    return cached(A, "center", run)


def centroid(A: SuperAlgebra, parity: int) -> MapSpace:
    """Maps ``phi`` of the given parity with ``phi(xy) = phi(x)y = (-1)^{|x| pi} x phi(y)``."""
    def run():
        block = ParityBlock(A, parity)
        one = A.field.one
        rows = list(identity_rows(A, block, [(OUT, 0, one), (LEFT, 0, -one)]))
        rows += identity_rows(A, block, [(OUT, 0, one), (RIGHT, 0, -one)])
        return MapSpace("centroid", A, parity, 1, null_space(rows, block.size, A.field), block)
    return cached(A, ("centroid", parity), run)


def is_ideal(A: SuperAlgebra, I: Subspace) -> bool:
    for v in I.rows:
        for i in range(A.dim):
            b = alg.basis_vector(A, i)
            if alg.multiply(A, b, v) not in I or alg.multiply(A, v, b) not in I:
                return False
    return True


def is_trivial_ideal(A: SuperAlgebra, I: Subspace) -> dict:
    """Report ``{"U_I_I_zero", "I_cubed_zero"}`` for an ideal ``I``.

    ``U_I I`` is spanned by ``U_{a,b} c`` with ``U_{a,b} = U_{a+b} - U_a - U_b``
    over basis vectors of ``I`` (homogeneous components taken separately);
    ``I^3`` by ``(ab)c`` and ``a(bc)``.
    """
    if I.dim_ambient != A.dim:
        raise StructureError("ideal lives in a space of the wrong dimension")
    if not is_ideal(A, I):
        raise StructureError("subspace is not an ideal")
    gens = _homogeneous_parts(A, I)
    u_zero = True
    for a in range(len(gens)):
        for b in range(a, len(gens)):
            x, y = gens[a], gens[b]
            if a == b:
                U = _u_map(A, x)
            else:
                U = _sub_maps(_sub_maps(_u_map(A, alg.add(x, y)), _u_map(A, x)), _u_map(A, y))
            if any(any(_apply(U, c)) for c in gens):
                u_zero = False
                break
        if not u_zero:
            break
    cube_zero = True
    for x in gens:
        for y in gens:
            xy = alg.multiply(A, x, y)
            for z in gens:
                if any(alg.multiply(A, xy, z)) or any(alg.multiply(A, x, alg.multiply(A, y, z))):
                    cube_zero = False
                    break
            if not cube_zero:
                break
        if not cube_zero:
            break
    return {"U_I_I_zero": u_zero, "I_cubed_zero": cube_zero}


def _homogeneous_parts(A: SuperAlgebra, I: Subspace) -> list:
    out = []
    z = A.field.zero
    for v in I.rows:
        for p in (0, 1):
            w = tuple(c if A.parity[k] == p else z for k, c in enumerate(v))
            if any(w):
                out.append(w)
    return out


def _u_map(A: SuperAlgebra, x):
    """Matrix of ``2 L_x^2 - L_{x^2}``; ``x`` need not be homogeneous."""
    L = alg._left_matrix(A, x)
    Lxx = alg._left_matrix(A, alg.multiply(A, x, x))
    n = A.dim
    two = A.field(2)
    return tuple(
        tuple(two * sum((L[i][k] * L[k][j] for k in range(n)), A.field.zero) - Lxx[i][j] for j in range(n))
        for i in range(n)
    )


def _sub_maps(M, N):
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(M, N))


def _apply(M, v):
    return tuple(sum((r[j] * v[j] for j in range(len(v)) if v[j]), v[0] * 0) for r in M)


def structure_report(A: SuperAlgebra, idempotents=None) -> dict:
    out = {
        "center_dim": center(A).dim,
        "nucleus_dim": middle_nucleus(A).dim,
        "centroid_dims": [centroid(A, 0).dim, centroid(A, 1).dim],
    }
    if idempotents is not None and A.is_unital:
        out["peirce"] = {"dims": peirce(A, idempotents).dims()}
    return out
