"""Pure-Python sparse integer kernels.

Matrices are passed around as ``(nrows, ncols, data)`` where ``data`` maps
``(row, col)`` to a nonzero Python int.  Arbitrary precision, no overflow.
"""

IS_COMPILED = False


def matmul(nrows_a, ncols_a, da, ncols_b, db):
    """Sparse product of an (nrows_a x ncols_a) and an (ncols_a x ncols_b) matrix."""
    if not da or not db:
        return {}
    b_rows = {}
    for (j, k), w in db.items():
        b_rows.setdefault(j, []).append((k, w))
    acc = {}
    get = acc.get
    for (i, j), v in da.items():
        row = b_rows.get(j)
        if row is None:
            continue
        for k, w in row:
            key = (i, k)
            acc[key] = get(key, 0) + v * w
    return {key: v for key, v in acc.items() if v}


def kron(nrows_a, ncols_a, da, nrows_b, ncols_b, db):
    """Kronecker product, A-index outer and B-index inner (row-major)."""
    out = {}
    for (i, j), v in da.items():
        ri = i * nrows_b
        cj = j * ncols_b
        for (k, l), w in db.items():
            out[(ri + k, cj + l)] = v * w
    return out
