"""Independent dense oracle: builds the defining identities symbolically with sympy
and reads dimensions off the rank of the coefficient matrix.

Shares nothing with the package solvers except the structure-constant table.
"""

import sympy as sp


def _table(A):
    n = A.dim
    T = [[[sp.Integer(0)] * n for _ in range(n)] for _ in range(n)]
    for i, j, k, c in A.table:
        T[i][j][k] = sp.Rational(c.numerator, c.denominator)
    return T


def _mul(T, x, y):
    n = len(x)
    out = [sp.Integer(0)] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            for k in range(n):
                if T[i][j][k]:
                    out[k] += x[i] * y[j] * T[i][j][k]
    return out


def _unknown_map(A, parity, name):
    n = A.dim
    syms = []
    M = sp.zeros(n, n)
    for k in range(n):
        for j in range(n):
            if A.parity[k] == (A.parity[j] + parity) % 2:
                s = sp.Symbol(f"{name}_{k}_{j}")
                syms.append(s)
                M[k, j] = s
    return M, syms


def _dim(eqs, syms):
    eqs = [sp.expand(e) for e in eqs if sp.expand(e) != 0]
    if not eqs:
        return len(syms)
    M, _ = sp.linear_eq_to_matrix(eqs, syms)
    return len(syms) - M.rank()


def _apply(M, v):
    return list(M * sp.Matrix(v))


def _basis(n, i):
    return [sp.Integer(1) if k == i else sp.Integer(0) for k in range(n)]


def oracle_dim(A, kind, parity, delta=1):
    """Dimension of der / delta / tder / centroid solutions of the given parity."""
    n = A.dim
    T = _table(A)
    D, sd = _unknown_map(A, parity, "D")
    syms = list(sd)
    if kind == "tder":
        Fm, sf = _unknown_map(A, parity, "F")
        G, sg = _unknown_map(A, parity, "G")
        syms += sf + sg
    eqs = []
    delta = sp.Rational(delta)
    for i in range(n):
        bi = _basis(n, i)
        s = -1 if (A.parity[i] and parity) else 1
        for j in range(n):
            bj = _basis(n, j)
            lhs = _apply(D, _mul(T, bi, bj))
            if kind in ("der", "delta"):
                d = 1 if kind == "der" else delta
                r1 = _mul(T, _apply(D, bi), bj)
                r2 = _mul(T, bi, _apply(D, bj))
                eqs += [lhs[k] - d * (r1[k] + s * r2[k]) for k in range(n)]
            elif kind == "tder":
                r1 = _mul(T, _apply(Fm, bi), bj)
                r2 = _mul(T, bi, _apply(G, bj))
                eqs += [lhs[k] - r1[k] - s * r2[k] for k in range(n)]
            elif kind == "centroid":
                r1 = _mul(T, _apply(D, bi), bj)
                r2 = _mul(T, bi, _apply(D, bj))
                eqs += [lhs[k] - r1[k] for k in range(n)]
                eqs += [lhs[k] - s * r2[k] for k in range(n)]
            else:
                raise ValueError(kind)
    return _dim(eqs, syms)


def oracle_gder_dim(A, parity):
    """Rank of the D-projection of the ternary solution space, by sympy nullspace."""
    n = A.dim
    T = _table(A)
    D, sd = _unknown_map(A, parity, "D")
    Fm, sf = _unknown_map(A, parity, "F")
    G, sg = _unknown_map(A, parity, "G")
    syms = sd + sf + sg
    eqs = []
    for i in range(n):
        s = -1 if (A.parity[i] and parity) else 1
        for j in range(n):
            bi, bj = _basis(n, i), _basis(n, j)
            lhs = _apply(D, _mul(T, bi, bj))
            r1 = _mul(T, _apply(Fm, bi), bj)
            r2 = _mul(T, bi, _apply(G, bj))
            eqs += [lhs[k] - r1[k] - s * r2[k] for k in range(n)]
    eqs = [e for e in (sp.expand(e) for e in eqs) if e != 0]
    M, _ = sp.linear_eq_to_matrix(eqs, syms)
    ns = M.nullspace()
    if not ns:
        return 0
    P = sp.Matrix.hstack(*[v[:len(sd), :] for v in ns])
    return P.rank()
