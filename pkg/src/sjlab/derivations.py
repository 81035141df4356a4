"""Solvers for derivations, delta-derivations, ternary and generalized derivations.

Every solver returns a :class:`~sjlab.maps.MapSpace` whose echelon basis lives
in the grading block of the requested parity (triples flatten as D, F, G).
Results are cached on the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import algebra as alg
from .algebra import GradedLinearMap, GradingError, SuperAlgebra
from .constraints import LEFT, OUT, RIGHT, unit_corrected_rows, identity_rows
from .exact import membership, null_space, solve_combination, span
from .maps import MapSpace, ParityBlock, TernaryTriple, cached
from .structure import centroid


class SolverError(ValueError):
    pass


def _check_parity(parity):
    if parity not in (0, 1):
        raise SolverError(f"parity must be 0 or 1, got {parity!r}")


def _solve(A, parity, kind, arity, terms):
    block = ParityBlock(A, parity)
    rows = identity_rows(A, block, terms)
    return MapSpace(kind, A, parity, arity, null_space(rows, arity * block.size, A.field), block)


def solve_der(A: SuperAlgebra, parity: int) -> MapSpace:
    """Superderivations ``D(xy) = D(x)y + (-1)^{|x||D|} x D(y)``."""
    _check_parity(parity)
    one = A.field.one
    return cached(A, ("der", parity), lambda: _solve(
        A, parity, "der", 1, [(OUT, 0, one), (LEFT, 0, -one), (RIGHT, 0, -one)]))


def solve_delta_der(A: SuperAlgebra, delta, parity: int) -> MapSpace:
    """delta-derivations ``D(xy) = delta (D(x)y + (-1)^{|x||D|} x D(y))``, ``delta != 0``."""
    _check_parity(parity)
    d = A.field(delta)
    if not d:
        raise SolverError("delta must be nonzero")
    if d == A.field.one:
        return solve_der(A, parity)
    return cached(A, ("delta", d, parity), lambda: _solve(
        A, parity, "delta_der", 1, [(OUT, 0, A.field.one), (LEFT, 0, -d), (RIGHT, 0, -d)]))


def solve_tder(A: SuperAlgebra, parity: int) -> MapSpace:
    """Triples with ``D(xy) = F(x)y + (-1)^{|x||G|} x G(y)``."""
    _check_parity(parity)
    one = A.field.one
    return cached(A, ("tder", parity), lambda: _solve(
        A, parity, "tder", 3, [(OUT, 0, one), (LEFT, 1, -one), (RIGHT, 2, -one)]))


def solve_gder(A: SuperAlgebra, parity: int) -> MapSpace:
    """First components of ternary derivations."""
    def run():
        T = solve_tder(A, parity)
        s = T.block.size
        space = span((v[:s] for v in T.space.rows), s, A.field)
        return MapSpace("gder", A, parity, 1, space, T.block)
    _check_parity(parity)
    return cached(A, ("gder", parity), run)


def solve_gder_eq5(A: SuperAlgebra, parity: int) -> MapSpace:
    """Generalized derivations through the unit-corrected Leibniz rule with ``c = D(1)/2``."""
    _check_parity(parity)
    if A.unit is None:
        raise SolverError("the unit-corrected characterization needs a unital algebra")

    def run():
        block = ParityBlock(A, parity)
        space = null_space(unit_corrected_rows(A, block), block.size, A.field)
        return MapSpace("gder_eq5", A, parity, 1, space, block)
    return cached(A, ("gder5", parity), run)


# --------------------------------------------------------------------------
# direct checks and constructions


def _sign(A, i, p):
    return -1 if (A.parity[i] and p) else 1


def is_ternary_derivation(A: SuperAlgebra, t: TernaryTriple) -> bool:
    """Evaluate the ternary identity on all basis pairs."""
    p = t.parity
    for i in range(A.dim):
        bi = alg.basis_vector(A, i)
        Fi = t.F(bi)
        for j in range(A.dim):
            bj = alg.basis_vector(A, j)
            lhs = t.D(alg.multiply(A, bi, bj))
            rhs = alg.add(alg.multiply(A, Fi, bj), alg.scale(_sign(A, i, p), alg.multiply(A, bi, t.G(bj))))
            if lhs != rhs:
                return False
    return True


def left_mult_with_parity(A: SuperAlgebra, a, parity: int) -> GradedLinearMap:
    """``L_a`` tagged with ``parity`` (needed when ``a = 0``)."""
    p = alg.parity_of(A, a)
    if any(a) and p != parity:
        raise GradingError("element parity does not match")
    return GradedLinearMap(parity, alg._left_matrix(A, a))


def complete_to_ternary(A: SuperAlgebra, D: GradedLinearMap) -> TernaryTriple:
    """``(D, D - L_c, D - L_c)`` with ``c = D(1)/2`` for a generalized derivation ``D``."""
    if A.unit is None:
        raise SolverError("completion needs a unital algebra")
    if D not in solve_gder_eq5(A, D.parity):
        raise SolverError("map is not a generalized derivation")
    c = alg.scale(A.field.half, D(A.unit))
    Lc = left_mult_with_parity(A, c, D.parity)
    E = D - Lc
    return TernaryTriple(D, E, E)


def make_odd_gder_k3(A: SuperAlgebra, alpha, beta) -> GradedLinearMap:
    """``D(e) = -beta/2 z + alpha/2 w``, ``D(z) = alpha e``, ``D(w) = beta e`` on K3 (basis e, z, w)."""
    F = A.field
    a, b = F(alpha), F(beta)
    h = F.half
    cols = [(F.zero, -h * b, h * a), (a, F.zero, F.zero), (b, F.zero, F.zero)]
    return alg.map_from_columns(A, 1, cols)


def bilinear_form(A: SuperAlgebra, x, y):
    """``f(x, y)`` read off as the unit coefficient of ``xy`` for ``x, y`` in ``V``."""
    k = next(i for i, c in enumerate(A.unit) if c)
    return alg.multiply(A, x, y)[k] / A.unit[k]


def make_odd_gder_jvf(A: SuperAlgebra, v) -> GradedLinearMap:
    """``D_v(1) = v`` and ``D_v(x) = f(x, v)/2 . 1`` for ``x`` in ``V``.

    Expects the catalog layout of ``J(V, f)`` with ``V_0 = 0`` (unit first, then
    the odd basis of ``V``).
    """
    if A.unit is None:
        raise SolverError("J(V, f) is unital")
    v = alg.vector(A, v)
    if any(c for k, c in enumerate(v) if A.parity[k] == 0):
        raise GradingError("v must be odd")
    h = A.field.half
    cols = []
    for j in range(A.dim):
        bj = alg.basis_vector(A, j)
        if bj == A.unit:
            cols.append(v)
        elif A.parity[j] == 1:
            cols.append(alg.scale(h * bilinear_form(A, bj, v), A.unit))
        else:
            raise SolverError("expected V_0 = 0")
    return alg.map_from_columns(A, 1, cols)


# --------------------------------------------------------------------------
# brackets


def _bracket_maps(X: GradedLinearMap, Y: GradedLinearMap) -> GradedLinearMap:
    XY, YX = X @ Y, Y @ X
    return XY + YX if (X.parity and Y.parity) else XY - YX


def lie_bracket(x, y):
    """``[X, Y] = XY - (-1)^{|X||Y|} YX``, componentwise on triples."""
    if isinstance(x, TernaryTriple) and isinstance(y, TernaryTriple):
        return TernaryTriple(*(_bracket_maps(a, b) for a, b in zip(x.components(), y.components())))
    if isinstance(x, GradedLinearMap) and isinstance(y, GradedLinearMap):
        return _bracket_maps(x, y)
    raise TypeError("bracket needs two maps or two triples")


def tder_closure(A: SuperAlgebra) -> Optional[tuple]:
    """Check ``[TDer_p, TDer_q] in TDer_{p+q}`` on basis elements.

    Returns ``None`` on success, else ``(p, a, q, b)`` for the first failing pair.
    """
    spaces = [solve_tder(A, 0), solve_tder(A, 1)]
    bases = [S.basis() for S in spaces]
    for p in (0, 1):
        for q in (p, 1):
            for a, x in enumerate(bases[p]):
                for b, y in enumerate(bases[q]):
                    if q == p and b < a:
                        continue
                    z = lie_bracket(x, y)
                    if z not in spaces[(p + q) % 2]:
                        return (p, a, q, b)
    return None


# --------------------------------------------------------------------------
# standard forms


@dataclass(frozen=True)
class GDerDecomposition:
    phi: GradedLinearMap
    d0: GradedLinearMap
    phi_coords: tuple
    d0_coords: tuple


@dataclass(frozen=True)
class TDerDecomposition:
    phi: GradedLinearMap
    chi: GradedLinearMap
    psi: GradedLinearMap
    d0: GradedLinearMap
    chi_coords: tuple
    psi_coords: tuple
    d0_coords: tuple


def _combine(S: MapSpace, coords):
    F = S.algebra.field
    out = [F.zero] * S.block.size
    for c, row in zip(coords, S.space.rows):
        if c:
            for t, x in enumerate(row):
                out[t] += c * x
    return S.block.to_map(out)


def standard_decompose_gder(A: SuperAlgebra, D: GradedLinearMap) -> Optional[GDerDecomposition]:
    """``D = phi + D0`` with ``phi`` in the centroid and ``D0`` a derivation, or ``None``."""
    p = D.parity
    C, Der = centroid(A, p), solve_der(A, p)
    try:
        target = C.block.from_map(D)
    except GradingError:
        return None
    sol = solve_combination(list(C.space.rows) + list(Der.space.rows), target, A.field)
    if sol is None:
        return None
    a, b = tuple(sol[:C.dim]), tuple(sol[C.dim:])
    return GDerDecomposition(_combine(C, a), _combine(Der, b), a, b)


def standard_decompose_tder(A: SuperAlgebra, t: TernaryTriple) -> Optional[TDerDecomposition]:
    """``(phi + D0, chi + D0, psi + D0)`` with ``phi = chi + psi`` central, or ``None``.

    Raises if the triple is not a ternary derivation.
    """
    if not is_ternary_derivation(A, t):
        raise SolverError("triple fails the ternary identity")
    p = t.parity
    C, Der = centroid(A, p), solve_der(A, p)
    s = C.block.size
    z = (A.field.zero,) * s
    gens = [c + c + z for c in C.space.rows]
    gens += [c + z + c for c in C.space.rows]
    gens += [d + d + d for d in Der.space.rows]
    try:
        target = sum((C.block.from_map(m) for m in t.components()), ())
    except GradingError:
        return None
    sol = solve_combination(gens, target, A.field)
    if sol is None:
        return None
    k = C.dim
    chi_c, psi_c, d_c = tuple(sol[:k]), tuple(sol[k:2 * k]), tuple(sol[2 * k:])
    chi, psi = _combine(C, chi_c), _combine(C, psi_c)
    return TDerDecomposition(chi + psi, chi, psi, _combine(Der, d_c), chi_c, psi_c, d_c)


def first_nonstandard(A: SuperAlgebra, S: MapSpace) -> Optional[int]:
    """Index of the first basis element of a GDer or TDer space that is not standard."""
    for a, x in enumerate(S.basis()):
        if S.arity == 3:
            ok = standard_decompose_tder(A, x) is not None
        else:
            ok = standard_decompose_gder(A, x) is not None
        if not ok:
            return a
    return None


def gder_unit_kernel(A: SuperAlgebra, parity: int) -> MapSpace:
    """``{D in GDer : D(1) = 0}`` computed by intersecting with the hyperplanes."""
    from .exact import intersection

    G = solve_gder(A, parity)
    block = G.block
    # D(1)_k = sum_m D[k][m] u_m
    per_k: dict = {}
    for t, (k, m) in enumerate(block.entries):
        if A.unit[m]:
            per_k.setdefault(k, {})[t] = A.unit[m]
    rows = [per_k[k] for k in sorted(per_k)]
    H = null_space(rows, block.size, A.field)
    return MapSpace("gder_unit_kernel", A, parity, 1, intersection(G.space, H), block)


# --------------------------------------------------------------------------
# query dispatch

KINDS = ("der", "delta_der", "tder", "gder", "gder_eq5", "centroid")


@dataclass(frozen=True)
class SolverQuery:
    algebra: SuperAlgebra
    kind: str
    parity: int
    delta: object = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SolverError(f"unknown solver kind {self.kind!r}")
        _check_parity(self.parity)
        if self.kind == "delta_der":
            if self.delta is None or not self.algebra.field(self.delta):
                raise SolverError("delta_der needs a nonzero delta")
        if self.kind == "gder_eq5" and self.algebra.unit is None:
            raise SolverError("gder_eq5 needs a unital algebra")

    def run(self) -> MapSpace:
        A, p = self.algebra, self.parity
        if self.kind == "der":
            return solve_der(A, p)
        if self.kind == "delta_der":
            return solve_delta_der(A, self.delta, p)
        if self.kind == "tder":
            return solve_tder(A, p)
        if self.kind == "gder":
            return solve_gder(A, p)
        if self.kind == "gder_eq5":
            return solve_gder_eq5(A, p)
        return centroid(A, p)


def coordinates(S: MapSpace, x):
    return membership(S.space, S.vector(x))
