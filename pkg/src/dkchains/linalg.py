"""Exact integer linear algebra: Smith normal form, linear systems, homology.

All computations are over Z with arbitrary-precision integers; every
decomposition is verified by multiplying back before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .intmat import IntMatrix


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V = S with S diagonal, d_1 | d_2 | ..., U and V unimodular."""
    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    @property
    def diagonal(self):
        n = min(self.s.nrows, self.s.ncols)
        return [self.s[(i, i)] for i in range(n)]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a, dst, src, c):
    # row_dst += c * row_src
    rs = a[src]
    rd = a[dst]
    for k, v in enumerate(rs):
        if v:
            rd[k] += c * v


def _add_col(a, dst, src, c):
    for row in a:
        v = row[src]
        if v:
            row[dst] += c * v


def _negate_row(a, i):
    a[i] = [-v for v in a[i]]


def _negate_col(a, j):
    for row in a:
        row[j] = -row[j]


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Diagonalize over Z with smallest-pivot elimination, tracking transforms."""
    nr, nc = m.shape
    a = m.to_rows()
    u = IntMatrix.identity(nr).to_rows()
    ui = IntMatrix.identity(nr).to_rows()
    v = IntMatrix.identity(nc).to_rows()
    vi = IntMatrix.identity(nc).to_rows()

    def row_add(dst, src, c):
        _add_row(a, dst, src, c)
        _add_row(u, dst, src, c)
        _add_col(ui, src, dst, -c)

    def col_add(dst, src, c):
        _add_col(a, dst, src, c)
        _add_col(v, dst, src, c)
        _add_row(vi, src, dst, -c)

    def row_swap(i, j):
        _swap_rows(a, i, j)
        _swap_rows(u, i, j)
        _swap_cols(ui, i, j)

    def col_swap(i, j):
        _swap_cols(a, i, j)
        _swap_cols(v, i, j)
        _swap_rows(vi, i, j)

    def row_neg(i):
        _negate_row(a, i)
        _negate_row(u, i)
        _negate_col(ui, i)

    for s in range(min(nr, nc)):
        while True:
            # smallest nonzero pivot in the trailing block
            best = None
            for i in range(s, nr):
                row = a[i]
                for j in range(s, nc):
                    w = row[j]
                    if w and (best is None or abs(w) < best[0]):
                        best = (abs(w), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != s:
                row_swap(s, pi)
            if pj != s:
                col_swap(s, pj)
            p = a[s][s]
            done = True
            for i in range(s + 1, nr):
                if a[i][s]:
                    q = a[i][s] // p
                    row_add(i, s, -q)
                    if a[i][s]:
                        done = False
            for j in range(s + 1, nc):
                if a[s][j]:
                    q = a[s][j] // p
                    col_add(j, s, -q)
                    if a[s][j]:
                        done = False
            if not done:
                continue
            # force the divisibility chain: fold a non-divisible entry in
            p = a[s][s]
            culprit = None
            for i in range(s + 1, nr):
                for j in range(s + 1, nc):
                    if a[i][j] % p:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            row_add(s, culprit, 1)
        if s < min(nr, nc) and a[s][s] < 0:
            row_neg(s)
        if s < min(nr, nc) and a[s][s] == 0:
            break

    def as_matrix(rows, nrows, ncols):
        data = {(i, j): v for i, row in enumerate(rows)
                for j, v in enumerate(row) if v}
        return IntMatrix(nrows, ncols, data)

    dec = SmithDecomposition(
        u=as_matrix(u, nr, nr), s=as_matrix(a, nr, nc),
        v=as_matrix(v, nc, nc),
        u_inv=as_matrix(ui, nr, nr), v_inv=as_matrix(vi, nc, nc))
    _verify_snf(m, dec)
    return dec


def _verify_snf(m, dec):
    if dec.u @ m @ dec.v != dec.s:
        raise AssertionError("SNF product identity failed")
    if dec.u @ dec.u_inv != IntMatrix.identity(m.nrows):
        raise AssertionError("U inverse check failed")
    if dec.v @ dec.v_inv != IntMatrix.identity(m.ncols):
        raise AssertionError("V inverse check failed")
    diag = dec.diagonal
    for i in range(len(diag) - 1):
        if diag[i + 1] and (diag[i] == 0 or diag[i + 1] % diag[i]):
            raise AssertionError("divisibility chain violated")
    for (i, j), v in dec.s.data.items():
        if i != j:
            raise AssertionError("S not diagonal")


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel (always saturated)."""
    dec = smith_normal_form(m)
    r = dec.rank
    cols = list(range(r, m.ncols))
    basis = dec.v.submatrix(range(m.ncols), cols)
    if not (m @ basis).is_zero():
        raise AssertionError("kernel basis check failed")
    return basis


def solve(a: IntMatrix, b: IntMatrix):
    """An integer X with a @ X = b, or None; the result is re-verified."""
    if a.nrows != b.nrows:
        raise ValueError("incompatible shapes in solve")
    dec = smith_normal_form(a)
    c = dec.u @ b
    diag = dec.diagonal
    r = dec.rank
    ydata = {}
    for (i, j), w in c.data.items():
        if i < r:
            d = diag[i]
            if w % d:
                return None
            ydata[(i, j)] = w // d
        else:
            return None  # nonzero entry outside the image rows
    y = IntMatrix(a.ncols, b.ncols, ydata)
    x = dec.v @ y
    if a @ x != b:
        raise AssertionError("solve substitution check failed")
    return x


def solve_integer_system(a: IntMatrix, b):
    """Vector-level wrapper: b is a list of ints; returns a list or None."""
    x = solve(a, IntMatrix.column(b))
    return None if x is None else x.column_vector(0)


def invert_unimodular(m: IntMatrix):
    """Exact inverse of a square matrix invertible over Z, or None."""
    if m.nrows != m.ncols:
        return None
    dec = smith_normal_form(m)
    if dec.diagonal != [1] * m.nrows:
        return None
    inv = dec.v @ dec.u
    if m @ inv != IntMatrix.identity(m.nrows) or inv @ m != IntMatrix.identity(m.nrows):
        raise AssertionError("unimodular inverse check failed")
    return inv


@dataclass
class HomologyGroup:
    """H = Z^free_rank (+) sum of Z/d for d in torsion, with presentation data."""
    free_rank: int
    torsion: list
    cycle_basis: IntMatrix = field(repr=False)
    _u: IntMatrix = field(repr=False)
    _diag: list = field(repr=False)

    @property
    def kept_indices(self):
        k = self.cycle_basis.ncols
        r = sum(1 for d in self._diag if d)
        kept = [i for i in range(r) if self._diag[i] > 1]
        kept.extend(range(r, k))
        return kept

    def reduce(self, vecs: IntMatrix) -> IntMatrix:
        """Map cycle-basis coordinate columns to presentation coordinates."""
        y = self._u @ vecs
        kept = self.kept_indices
        out = y.submatrix(kept, range(vecs.ncols))
        data = {}
        for (i, j), v in out.data.items():
            d = self._diag[kept[i]] if kept[i] < len(self._diag) else 0
            w = v % d if d > 1 else v
            if w:
                data[(i, j)] = w
        return IntMatrix(len(kept), vecs.ncols, data)

    def generator_cycles(self) -> IntMatrix:
        """Cycle representatives (chain coordinates) of the generators."""
        uinv = invert_unimodular(self._u)
        gens = uinv.submatrix(range(uinv.nrows), self.kept_indices)
        return self.cycle_basis @ gens

    def __eq__(self, other):
        return (isinstance(other, HomologyGroup)
                and self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion


def homology_of_maps(d_out: IntMatrix, d_in: IntMatrix) -> HomologyGroup:
    """Homology ker(d_out)/im(d_in) for consecutive maps with d_out @ d_in = 0."""
    if not (d_out @ d_in).is_zero():
        raise ValueError("maps do not compose to zero")
    kern = kernel_basis(d_out)
    rel = solve(kern, d_in)
    if rel is None:
        raise AssertionError("image does not lie in the kernel")
    dec = smith_normal_form(rel)
    diag = dec.diagonal
    r = dec.rank
    torsion = [d for d in diag if d > 1]
    return HomologyGroup(
        free_rank=kern.ncols - r, torsion=torsion,
        cycle_basis=kern, _u=dec.u, _diag=diag)
