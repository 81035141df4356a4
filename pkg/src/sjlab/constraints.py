"""Linear constraint rows for identities of the shape

    sum_t coef_t * X_t(b_i b_j)  +  coef'_t * Y_t(b_i) b_j  +  coef''_t * s_ij b_i Z_t(b_j) = 0

over all ordered basis pairs ``(i, j)``, where ``X, Y, Z`` are unknown maps
living in numbered blocks of one :class:`~sjlab.maps.ParityBlock` layout and
``s_ij = (-1)^(|b_i| pi)``.

Rows are produced per pair ``(i, j)`` in lexicographic order and, inside a
pair, per output coordinate ``k`` in increasing order.
"""

from __future__ import annotations

from typing import Iterator

from .algebra import SuperAlgebra
from .maps import ParityBlock

# term kinds
OUT = "out"      # X(b_i b_j)
LEFT = "left"    # Y(b_i) b_j
RIGHT = "right"  # s_ij * b_i Z(b_j)


def identity_rows(A: SuperAlgebra, block: ParityBlock, terms) -> Iterator[dict]:
    """Yield sparse rows for the identity described by ``terms``.

    ``terms`` is a list of ``(kind, block_number, coefficient)``.
    """
    n = A.dim
    size = block.size
    by_col = block.by_column
    pi = block.parity
    zero = A.field.zero
    prod = A.product_row
    for i in range(n):
        s = -1 if (A.parity[i] and pi) else 1
        for j in range(n):
            acc: dict[int, dict[int, object]] = {}

            def put(k, var, c):
                row = acc.get(k)
                if row is None:
                    row = acc[k] = {}
                row[var] = row.get(var, zero) + c

            for kind, blk, coef in terms:
                off = blk * size
                if kind == OUT:
                    for m, c in prod(i, j):
                        cc = coef * c
                        for k, var in by_col[m]:
                            put(k, off + var, cc)
                elif kind == LEFT:
                    for l, var in by_col[i]:
                        for k, c in prod(l, j):
                            put(k, off + var, coef * c)
                else:
                    for l, var in by_col[j]:
                        for k, c in prod(i, l):
                            put(k, off + var, s * coef * c)
            for k in sorted(acc):
                row = {v: c for v, c in acc[k].items() if c}
                if row:
                    yield row


def triple_products(A: SuperAlgebra):
    """Cache of ``(b_i b_k) b_j + b_i (b_k b_j)`` as sparse dicts, keyed ``(i, k, j)``."""
    key = "_jordan_triple"
    if key in A._cache:
        return A._cache[key]
    zero = A.field.zero
    prod = A.product_row
    n = A.dim
    table = {}
    for i in range(n):
        for k in range(n):
            ik = prod(i, k)
            for j in range(n):
                out: dict = {}
                for m, c in ik:
                    for r, d in prod(m, j):
                        out[r] = out.get(r, zero) + c * d
                for m, c in prod(k, j):
                    for r, d in prod(i, m):
                        out[r] = out.get(r, zero) + c * d
                out = {r: c for r, c in out.items() if c}
                if out:
                    table[(i, k, j)] = out
    A._cache[key] = table
    return table


def unit_corrected_rows(A: SuperAlgebra, block: ParityBlock) -> Iterator[dict]:
    """Rows of ``D(xy) - D(x)y - s x D(y) + s ((x c) y + x (c y)) = 0``, ``c = D(1)/2``."""
    if A.unit is None:
        raise ValueError("the unit-corrected identity needs a unital algebra")
    n = A.dim
    pi = block.parity
    zero = A.field.zero
    half = A.field.half
    prod = A.product_row
    by_col = block.by_column
    trip = triple_products(A)
    # c = sum over vars (k, m) with u_m != 0 of (1/2) u_m D_{k,m} b_k
    cvars = [(k, var, half * A.unit[m]) for m in range(n) if A.unit[m] for k, var in by_col[m]]
    for i in range(n):
        s = -1 if (A.parity[i] and pi) else 1
        for j in range(n):
            acc: dict[int, dict] = {}

            def put(k, var, c):
                row = acc.get(k)
                if row is None:
                    row = acc[k] = {}
                row[var] = row.get(var, zero) + c

            for m, c in prod(i, j):
                for k, var in by_col[m]:
                    put(k, var, c)
            for l, var in by_col[i]:
                for k, c in prod(l, j):
                    put(k, var, -c)
            for l, var in by_col[j]:
                for k, c in prod(i, l):
                    put(k, var, -s * c)
            for kk, var, w in cvars:
                t = trip.get((i, kk, j))
                if t:
                    for r, c in t.items():
                        put(r, var, s * w * c)
            for k in sorted(acc):
                row = {v: c for v, c in acc[k].items() if c}
                if row:
                    yield row
