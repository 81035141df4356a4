"""Named Jordan superalgebras with their canonical orthogonal idempotents.

Spec strings::

    k3                      Kaplansky superalgebra
    d_t:t=2                 D_t, t != 0
    jvf:p=2,q=2             J(V, f), dim V_0 = p (identity Gram), dim V_1 = q (symplectic)
    mat:m=1,n=1             M_{m,n}^(+)
    osp:n=1,m=1             osp(n, 2m) as symmetric matrices
    pn:n=2                  P(n)
    qn:n=2                  Q(n)
    jgamma:n=2              J(Gamma_n)
    hull[k3,k3]             unital hull
    sum[hull[k3],jvf:p=0,q=2]   direct sum
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import algebra as alg
from .algebra import SuperAlgebra, from_products
from .exact import QQ, Field, Subspace, membership, rank, span
from .grassmann import j_gamma


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogSpec:
    name: str
    params: tuple = ()  # sorted (key, value-string) pairs
    parts: tuple = ()  # component specs for hull / sum

    def param(self, key, default=None):
        return dict(self.params).get(key, default)

    def __str__(self):
        if self.name in ("hull", "sum"):
            return f"{self.name}[{','.join(str(p) for p in self.parts)}]"
        if not self.params:
            return self.name
        order = _PARAM_ORDER.get(self.name, ())
        keys = sorted(dict(self.params), key=lambda k: (order.index(k) if k in order else 99, k))
        d = dict(self.params)
        return f"{self.name}:" + ",".join(f"{k}={d[k]}" for k in keys)


_PARAM_ORDER = {"d_t": ("t",), "jvf": ("p", "q"), "mat": ("m", "n"), "osp": ("n", "m"),
                "pn": ("n",), "qn": ("n",), "jgamma": ("n",)}


@dataclass(frozen=True, eq=False)
class CatalogAlgebra:
    """A built algebra together with its idempotent system."""

    spec: str
    algebra: SuperAlgebra
    idempotents: tuple = ()
    parts: tuple = ()  # CatalogAlgebra components for hull / sum
    meta: dict = dc_field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.spec.split(":")[0].split("[")[0]


# --------------------------------------------------------------------------
# spec-string parsing


def _split_top(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise CatalogError(f"unbalanced brackets in {s!r}")
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise CatalogError(f"unbalanced brackets in {s!r}")
    out.append(cur)
    # "jvf:p=0,q=2" splits into "jvf:p=0" and "q=2"; glue parameters back on
    merged: list[str] = []
    for piece in out:
        if merged and re.fullmatch(r"\w+=[^\[\],]*", piece):
            merged[-1] += "," + piece
        else:
            merged.append(piece)
    return merged


def parse_spec(text: str) -> CatalogSpec:
    s = "".join(text.split())
    if not s:
        raise CatalogError("empty spec")
    if "[" in s:
        head, _, rest = s.partition("[")
        if head not in ("hull", "sum") or not rest.endswith("]"):
            raise CatalogError(f"bad composite spec {text!r}")
        inner = rest[:-1]
        parts = tuple(parse_spec(p) for p in _split_top(inner)) if inner else ()
        if head == "sum" and len(parts) < 2:
            raise CatalogError("sum[...] needs at least two components")
        return CatalogSpec(head, (), parts)
    name, _, args = s.partition(":")
    params = {}
    if args:
        # parameters may be separated by commas only at this level
        for item in args.split(","):
            if "=" not in item:
                raise CatalogError(f"parameter {item!r} lacks '='")
            k, v = item.split("=", 1)
            params[k] = v
    if name not in _BUILDERS:
        raise CatalogError(f"unknown algebra {name!r}; known: {', '.join(sorted(_BUILDERS))}")
    allowed = _PARAM_ORDER.get("mat" if name == "mat_plus" else name, ())
    extra = sorted(set(params) - set(allowed))
    if extra:
        raise CatalogError(f"{name} does not take parameter(s) {', '.join(extra)}")
    return CatalogSpec(name, tuple(sorted(params.items())), ())


# --------------------------------------------------------------------------
# small dense matrix helpers (entries are field scalars)


def _mzero(N, field):
    return [[field.zero] * N for _ in range(N)]


def _mmul(A, B):
    N = len(A)
    z = A[0][0] * 0 if N else 0
    return [[sum((A[i][k] * B[k][j] for k in range(N) if A[i][k]), z) for j in range(N)] for i in range(N)]


def _mT(A):
    return [list(r) for r in zip(*A)]


def _unit_matrix(N, i, j, field):
    M = _mzero(N, field)
    M[i][j] = field.one
    return M


def _blocks(X, r):
    return ([row[:r] for row in X[:r]], [row[r:] for row in X[:r]],
            [row[:r] for row in X[r:]], [row[r:] for row in X[r:]])


def _join(a, b, c, d):
    return [ra + rb for ra, rb in zip(a, b)] + [rc + rd for rc, rd in zip(c, d)]


def _neg(A):
    return [[-x for x in r] for r in A]


def _supertranspose(X, r):
    a, b, c, d = _blocks(X, r)
    return _join(_mT(a), _mT(c), _neg(_mT(b)), _mT(d))


def _flat(M):
    return tuple(x for r in M for x in r)


def _label_matrix(M, field) -> str:
    parts = []
    N = len(M)
    for i in range(N):
        for j in range(N):
            c = M[i][j]
            if not c:
                continue
            name = f"E{i + 1}{j + 1}" if N < 10 else f"E{i + 1},{j + 1}"
            if c == 1:
                parts.append(("+", name))
            elif c == -1:
                parts.append(("-", name))
            else:
                parts.append(("+", f"{field.fmt(c)}{name}"))
    s = "".join(sg + nm for sg, nm in parts)
    return s[1:] if s.startswith("+") else s


def _matrix_jordan(field: Field, N: int, r: int, mats: Sequence, idempotent_mats: Sequence):
    """Jordan superalgebra on the span of homogeneous ``N x N`` matrices under ``a o b``.

    Matrix parity: rows/columns ``< r`` are even.  Basis = echelon basis of the
    even span followed by that of the odd span.
    """
    def mpar(M):
        ps = {int((i >= r) != (j >= r)) for i in range(N) for j in range(N) if M[i][j]}
        if len(ps) > 1:
            raise CatalogError("inhomogeneous matrix in basis")
        return ps.pop() if ps else 0

    even = span([_flat(M) for M in mats if mpar(M) == 0], N * N, field)
    odd = span([_flat(M) for M in mats if mpar(M) == 1], N * N, field)
    basis = [list(v) for v in even.rows] + [list(v) for v in odd.rows]
    parity = [0] * even.dim + [1] * odd.dim
    as_mat = [[b[i * N:(i + 1) * N] for i in range(N)] for b in basis]
    half = field.half
    n_even = even.dim

    def coords(M):
        f = _flat(M)
        if not any(f):
            return [field.zero] * len(basis)
        p = mpar(M)
        space = even if p == 0 else odd
        c = membership(space, f)
        if c is None:
            raise CatalogError("matrix span is not closed under the Jordan product")
        out = [field.zero] * len(basis)
        off = 0 if p == 0 else n_even
        for t, x in enumerate(c):
            out[off + t] = x
        return out

    products = {}
    for i, X in enumerate(as_mat):
        for j, Y in enumerate(as_mat):
            s = -1 if parity[i] and parity[j] else 1
            XY, YX = _mmul(X, Y), _mmul(Y, X)
            P = [[half * (a + s * b) for a, b in zip(r1, r2)] for r1, r2 in zip(XY, YX)]
            v = coords(P)
            if any(v):
                products[(i, j)] = v
    ident = [[field.one if i == j else field.zero for j in range(N)] for i in range(N)]
    unit = coords(ident)
    labels = [_label_matrix(M, field) for M in as_mat]
    A = from_products(field, parity, products, unit, labels)
    idem = tuple(tuple(coords(E)) for E in idempotent_mats)
    return A, idem


# --------------------------------------------------------------------------
# builders


def _int_param(spec, key, minimum=None):
    raw = spec.param(key)
    if raw is None:
        raise CatalogError(f"{spec.name} requires parameter {key}")
    try:
        v = int(raw)
    except ValueError:
        raise CatalogError(f"parameter {key}={raw!r} is not an integer") from None
    if minimum is not None and v < minimum:
        raise CatalogError(f"{spec.name} requires {key} >= {minimum}")
    return v


def kaplansky(field: Field = QQ) -> SuperAlgebra:
    """K_3 on the basis (e, z, w)."""
    h = field.half
    e, z, w = 0, 1, 2
    products = {
        (e, e): {e: 1},
        (e, z): {z: h}, (z, e): {z: h},
        (e, w): {w: h}, (w, e): {w: h},
        (z, w): {e: 1}, (w, z): {e: -1},
    }
    return from_products(field, (0, 1, 1), products, None, ("e", "z", "w"))


def _build_k3(spec, field):
    A = kaplansky(field)
    return CatalogAlgebra(str(spec), A, (alg.basis_vector(A, 0),))


def d_t(t, field: Field = QQ) -> SuperAlgebra:
    """D_t on (e1, e2, x, y); ``x y = e1 + t e2 = -y x``."""
    t = field(t)
    if not t:
        raise CatalogError("D_t requires t != 0")
    h = field.half
    e1, e2, x, y = range(4)
    products = {
        (e1, e1): {e1: 1}, (e2, e2): {e2: 1},
        (e1, x): {x: h}, (x, e1): {x: h}, (e2, x): {x: h}, (x, e2): {x: h},
        (e1, y): {y: h}, (y, e1): {y: h}, (e2, y): {y: h}, (y, e2): {y: h},
        (x, y): {e1: 1, e2: t}, (y, x): {e1: -1, e2: -t},
    }
    one = field.one
    return from_products(field, (0, 0, 1, 1), products, (one, one, 0, 0), ("e1", "e2", "x", "y"))


def _build_d_t(spec, field):
    raw = spec.param("t")
    if raw is None:
        raise CatalogError("d_t requires parameter t")
    try:
        t = field.parse(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise CatalogError(f"bad t={raw!r}: {exc}") from None
    A = d_t(t, field)
    return CatalogAlgebra(str(spec), A, (alg.basis_vector(A, 0), alg.basis_vector(A, 1)))


def standard_symplectic(q: int, field: Field = QQ):
    """Gram matrix with ``f(u_i, v_i) = 1 = -f(v_i, u_i)`` on the basis ``u1, v1, u2, v2, ...``."""
    if q % 2:
        raise CatalogError("a skew form on an odd-dimensional space is degenerate")
    G = [[field.zero] * q for _ in range(q)]
    for i in range(0, q, 2):
        G[i][i + 1] = field.one
        G[i + 1][i] = -field.one
    return G


def bilinear_form_algebra(gram_even, gram_odd, field: Field = QQ) -> SuperAlgebra:
    """J(V, f) = P1 + V with ``v w = f(v, w) 1``.

    ``gram_even`` must be symmetric and ``gram_odd`` skew; the block-diagonal
    form must be non-degenerate.
    """
    p, q = len(gram_even), len(gram_odd)
    G0 = [[field(x) for x in r] for r in gram_even]
    G1 = [[field(x) for x in r] for r in gram_odd]
    for i in range(p):
        for j in range(p):
            if G0[i][j] != G0[j][i]:
                raise CatalogError("form on V_0 must be symmetric")
    for i in range(q):
        for j in range(q):
            if G1[i][j] != -G1[j][i]:
                raise CatalogError("form on V_1 must be skew-symmetric")
    if rank(G0, p, field) != p or rank(G1, q, field) != q:
        raise CatalogError("bilinear form is degenerate")
    n = 1 + p + q
    products = {(0, j): {j: 1} for j in range(n)}
    for j in range(1, n):
        products[(j, 0)] = {j: 1}
    for a in range(p):
        for b in range(p):
            if G0[a][b]:
                products[(1 + a, 1 + b)] = {0: G0[a][b]}
    for a in range(q):
        for b in range(q):
            if G1[a][b]:
                products[(1 + p + a, 1 + p + b)] = {0: G1[a][b]}
    parity = [0] * (1 + p) + [1] * q
    odd_names = []
    for i in range(q):
        odd_names.append(("u" if i % 2 == 0 else "v") + str(i // 2 + 1))
    labels = ["1"] + [f"x{i + 1}" for i in range(p)] + odd_names
    unit = [field.one] + [field.zero] * (n - 1)
    return from_products(field, parity, products, unit, labels)


def _build_jvf(spec, field):
    p = _int_param(spec, "p", 0)
    q = _int_param(spec, "q", 0)
    if p + q == 0:
        raise CatalogError("J(V, f) needs V != 0")
    G0 = [[field.one if i == j else field.zero for j in range(p)] for i in range(p)]
    A = bilinear_form_algebra(G0, standard_symplectic(q, field), field)
    if p >= 1:
        # v = x1 has v^2 = 1
        one, v = alg.basis_vector(A, 0), alg.basis_vector(A, 1)
        h = field.half
        idem = (alg.scale(h, alg.add(one, v)), alg.scale(h, alg.sub(one, v)))
    else:
        idem = (A.unit,)
    return CatalogAlgebra(str(spec), A, idem, meta={"gram_even": G0, "gram_odd": standard_symplectic(q, field)})


def _build_mat(spec, field):
    m = _int_param(spec, "m", 1)
    n = _int_param(spec, "n", 1)
    N = m + n
    mats = [_unit_matrix(N, i, j, field) for i in range(N) for j in range(N)]
    idem = [_unit_matrix(N, i, i, field) for i in range(N)]
    A, ids = _matrix_jordan(field, N, m, mats, idem)
    return CatalogAlgebra(str(spec), A, ids)


def _symmetric_span(field, N, star):
    """Echelon basis (as matrices) of ``{X : star(X) = X}`` via the fixed space of ``star``."""
    from .exact import null_space

    rows = []
    cols = []
    for i in range(N):
        for j in range(N):
            S = star(_unit_matrix(N, i, j, field))
            cols.append(_flat(S))
    # (star - id) x = 0, rows indexed by output entry
    for out in range(N * N):
        row = {}
        for inp in range(N * N):
            c = cols[inp][out] - (1 if inp == out else 0)
            if c:
                row[inp] = c
        if row:
            rows.append(row)
    H = null_space(rows, N * N, field)
    return [[list(v[i * N:(i + 1) * N]) for i in range(N)] for v in H.rows]


def osp_star(n: int, m: int, field: Field):
    """``X -> U^{-1} X^{st} U`` with ``U = diag(I_n, [[0, I_m], [-I_m, 0]])``."""
    N = n + 2 * m
    U = _mzero(N, field)
    Ui = _mzero(N, field)
    for i in range(n):
        U[i][i] = Ui[i][i] = field.one
    for i in range(m):
        U[n + i][n + m + i] = field.one
        U[n + m + i][n + i] = -field.one
        Ui[n + i][n + m + i] = -field.one
        Ui[n + m + i][n + i] = field.one
    return lambda X: _mmul(_mmul(Ui, _supertranspose(X, n)), U)


def p_star(n: int):
    """``[[a, b], [c, d]] -> [[d^t, -b^t], [c^t, a^t]]``."""
    def star(X):
        a, b, c, d = _blocks(X, n)
        return _join(_mT(d), _neg(_mT(b)), _mT(c), _mT(a))
    return star


def _build_osp(spec, field):
    n = _int_param(spec, "n", 1)
    m = _int_param(spec, "m", 1)
    N = n + 2 * m
    mats = _symmetric_span(field, N, osp_star(n, m, field))
    idem = [_unit_matrix(N, i, i, field) for i in range(n)]
    for i in range(m):
        E = _unit_matrix(N, n + i, n + i, field)
        E[n + m + i][n + m + i] = field.one
        idem.append(E)
    A, ids = _matrix_jordan(field, N, n, mats, idem)
    return CatalogAlgebra(str(spec), A, ids)


def _paired_idempotents(n, field):
    out = []
    for i in range(n):
        E = _unit_matrix(2 * n, i, i, field)
        E[n + i][n + i] = field.one
        out.append(E)
    return out


def _build_pn(spec, field):
    n = _int_param(spec, "n", 2)
    mats = _symmetric_span(field, 2 * n, p_star(n))
    A, ids = _matrix_jordan(field, 2 * n, n, mats, _paired_idempotents(n, field))
    return CatalogAlgebra(str(spec), A, ids)


def _build_qn(spec, field):
    n = _int_param(spec, "n", 2)
    N = 2 * n
    mats = []
    for i in range(n):
        for j in range(n):
            E = _unit_matrix(N, i, j, field)
            E[n + i][n + j] = field.one
            mats.append(E)
            O = _unit_matrix(N, i, n + j, field)
            O[n + i][j] = field.one
            mats.append(O)
    A, ids = _matrix_jordan(field, N, n, mats, _paired_idempotents(n, field))
    return CatalogAlgebra(str(spec), A, ids)


def _build_jgamma(spec, field):
    n = _int_param(spec, "n", 0)
    A = j_gamma(n, field)
    if n == 0:
        return CatalogAlgebra(str(spec), A, (A.unit,), meta={"simple": False})
    # e1, e2 = (1 +- bar(xi_1)) / 2
    one = alg.basis_vector(A, A.labels.index("1"))
    xb = alg.basis_vector(A, A.labels.index("~ξ1"))
    h = field.half
    idem = (alg.scale(h, alg.add(one, xb)), alg.scale(h, alg.sub(one, xb)))
    return CatalogAlgebra(str(spec), A, idem, meta={"simple": n >= 2})


def _build_hull(spec, field):
    parts = [build(p, field) for p in spec.parts]
    H = alg.unital_hull([P.algebra for P in parts], field)
    embeds = H._cache["embeddings"]
    idem = []
    for P, m in zip(parts, embeds):
        for e in P.idempotents:
            v = [field.zero] * H.dim
            for i, c in enumerate(e):
                v[m[i]] = c
            idem.append(tuple(v))
    e0 = H.unit
    for e in idem:
        e0 = alg.sub(e0, e)
    return CatalogAlgebra(str(spec), H, (e0, *idem), tuple(parts))


def _build_sum(spec, field):
    parts = [build(p, field) for p in spec.parts]
    S = parts[0].algebra
    idem = [tuple(e) for e in parts[0].idempotents]
    for P in parts[1:]:
        S2 = alg.direct_sum(S, P.algebra)
        ma, mb = S2._cache["embeddings"]
        new = []
        for e in idem:
            v = [field.zero] * S2.dim
            for i, c in enumerate(e):
                v[ma[i]] = c
            new.append(tuple(v))
        for e in P.idempotents:
            v = [field.zero] * S2.dim
            for i, c in enumerate(e):
                v[mb[i]] = c
            new.append(tuple(v))
        S, idem = S2, new
    # overall embeddings of each component
    return CatalogAlgebra(str(spec), S, tuple(idem), tuple(parts), meta={"blocks": _sum_blocks(parts)})


def _sum_blocks(parts):
    """Index sets of each summand inside the direct sum (even part first, then odd)."""
    offsets_even, offsets_odd = [], []
    ne = sum(len(P.algebra.even_indices()) for P in parts)
    e = o = 0
    blocks = []
    for P in parts:
        A = P.algebra
        ev = list(range(e, e + len(A.even_indices())))
        od = list(range(ne + o, ne + o + len(A.odd_indices())))
        e += len(A.even_indices())
        o += len(A.odd_indices())
        blocks.append(tuple(ev + od))
    return tuple(blocks)


_BUILDERS: dict[str, Callable] = {
    "k3": _build_k3,
    "d_t": _build_d_t,
    "jvf": _build_jvf,
    "mat": _build_mat,
    "mat_plus": _build_mat,
    "osp": _build_osp,
    "pn": _build_pn,
    "qn": _build_qn,
    "jgamma": _build_jgamma,
    "hull": _build_hull,
    "sum": _build_sum,
}

DESCRIPTIONS = {
    "k3": "Kaplansky superalgebra K3 (dim 3, non-unital)",
    "d_t": "D_t, parameter t != 0 (dim 4)",
    "jvf": "J(V,f) with p = dim V0, q = dim V1 (standard forms)",
    "mat": "M_{m,n}^(+), m, n > 0",
    "osp": "osp(n, 2m) symmetric matrices",
    "pn": "P(n) = trp(n, n)",
    "qn": "Q(n) = M_n[u]^(+)",
    "jgamma": "Grassmann bracket superalgebra J(Gamma_n), dim 2^(n+1)",
    "hull": "unital hull hull[A,B,...]",
    "sum": "direct sum sum[A,B,...]",
}


def build(spec, field: Field = QQ, check_idempotents: bool = True) -> CatalogAlgebra:
    """Build a catalog algebra from a spec string or :class:`CatalogSpec`."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if spec.name == "hull":
        cat = _build_hull(spec, field)
    elif spec.name == "sum":
        cat = _build_sum(spec, field)
    else:
        cat = _BUILDERS[spec.name](spec, field)
    if check_idempotents:
        check_idempotent_system(cat.algebra, cat.idempotents, require_unit=cat.algebra.is_unital)
    return cat


def check_idempotent_system(A: SuperAlgebra, idempotents, require_unit: bool = True) -> None:
    for a, e in enumerate(idempotents):
        if alg.parity_of(A, e) != 0:
            raise CatalogError(f"idempotent {a} is not even")
        if alg.multiply(A, e, e) != tuple(e):
            raise CatalogError(f"element {a} is not idempotent")
        for b in range(a + 1, len(idempotents)):
            if any(alg.multiply(A, e, idempotents[b])):
                raise CatalogError(f"idempotents {a} and {b} are not orthogonal")
    if require_unit:
        if A.unit is None:
            raise CatalogError("algebra has no unit")
        total = alg.zero_vector(A)
        for e in idempotents:
            total = alg.add(total, e)
        if total != A.unit:
            raise CatalogError("idempotents do not sum to the unit")


def canonical_idempotents(cat: CatalogAlgebra) -> list:
    if not cat.algebra.is_unital:
        raise CatalogError(f"{cat.spec} is not unital; no idempotent decomposition of 1")
    return [tuple(e) for e in cat.idempotents]
