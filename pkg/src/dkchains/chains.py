"""Non-negatively graded integer chain complexes, maps, tensors, homotopies.

The simplicial level index is reused as the homological degree; a complex
truncated at max_degree carries no information above it, and every map
records the top degree (valid_range) on which it is trustworthy.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .intmat import IntMatrix, assemble_blocks
from .simplicial import SimplicialModule, TruncationError


class DegreeRangeError(ValueError):
    """Requested degree exceeds the trustworthy truncation range."""


@dataclass
class ChainComplex:
    max_degree: int
    ranks: list
    diffs: list  # diffs[n]: rank[n-1] x rank[n] for 1 <= n <= max_degree
    name: str = ""

    def rank(self, n):
        return self.ranks[n]

    def d(self, n):
        if not 1 <= n <= self.max_degree:
            raise DegreeRangeError(f"no differential in degree {n}")
        return self.diffs[n]

    def check_d_squared(self):
        for n in range(2, self.max_degree + 1):
            if not (self.d(n - 1) @ self.d(n)).is_zero():
                raise AssertionError(f"d^2 != 0 at degree {n} in {self.name}")

    def serialize(self):
        lines = [f"max_degree {self.max_degree}",
                 "ranks " + " ".join(str(r) for r in self.ranks)]
        for n in range(1, self.max_degree + 1):
            lines.append(f"d {n}")
            for row in self.d(n).to_rows():
                lines.append(" ".join(str(v) for v in row))
        return "\n".join(lines) + "\n"


def complex_from_diffs(ranks, diffs, name=""):
    """Build and check a complex from rank list and matrices d_1..d_D."""
    d = len(ranks) - 1
    full = [None] + list(diffs)
    if len(full) != d + 1:
        raise ValueError("need exactly max_degree differentials")
    c = ChainComplex(d, list(ranks), full, name=name)
    for n in range(1, d + 1):
        if c.d(n).shape != (ranks[n - 1], ranks[n]):
            raise ValueError(f"differential shape wrong in degree {n}")
    c.check_d_squared()
    return c


def single_term_complex(degree, max_degree, name=None):
    """Z concentrated in one degree."""
    ranks = [1 if n == degree else 0 for n in range(max_degree + 1)]
    diffs = [IntMatrix.zeros(ranks[n - 1], ranks[n])
             for n in range(1, max_degree + 1)]
    return complex_from_diffs(ranks, diffs,
                              name=name or f"Z[deg {degree}]")


@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    levels: list
    valid_range: int = None
    name: str = ""

    def __post_init__(self):
        if self.valid_range is None:
            self.valid_range = min(self.source.max_degree,
                                   self.target.max_degree)

    def level(self, n):
        return self.levels[n]

    @classmethod
    def identity(cls, c):
        return cls(c, c, [IntMatrix.identity(r) for r in c.ranks])

    @classmethod
    def zero(cls, source, target):
        return cls(source, target,
                   [IntMatrix.zeros(rt, rs)
                    for rs, rt in zip(source.ranks, target.ranks)])

    def compose(self, other):
        """self after other."""
        vr = min(self.valid_range, other.valid_range)
        return ChainMap(other.source, self.target,
                        [f @ g for f, g in zip(self.levels, other.levels)],
                        valid_range=vr)

    def __add__(self, other):
        return ChainMap(self.source, self.target,
                        [a + b for a, b in zip(self.levels, other.levels)],
                        valid_range=min(self.valid_range, other.valid_range))

    def __sub__(self, other):
        return ChainMap(self.source, self.target,
                        [a - b for a, b in zip(self.levels, other.levels)],
                        valid_range=min(self.valid_range, other.valid_range))

    def chain_map_defect(self, n):
        """target.d_n @ f_n - f_{n-1} @ source.d_n."""
        return (self.target.d(n) @ self.levels[n]
                - self.levels[n - 1] @ self.source.d(n))

    def is_chain_map(self, top=None):
        top = self.valid_range if top is None else top
        return all(self.chain_map_defect(n).is_zero()
                   for n in range(1, top + 1))

    def equal_on_range(self, other, top=None):
        top = min(self.valid_range, other.valid_range) if top is None else top
        return all(self.levels[n] == other.levels[n] for n in range(top + 1))

    def serialize(self):
        lines = [f"valid_range {self.valid_range}"]
        for n in range(self.valid_range + 1):
            lines.append(f"level {n}")
            for row in self.levels[n].to_rows():
                lines.append(" ".join(str(v) for v in row))
        return "\n".join(lines) + "\n"


@dataclass
class ChainHomotopy:
    """Witness h with d h + h d = f - g on degrees <= valid_range - 1."""
    f: ChainMap
    g: ChainMap
    levels: list  # levels[n]: target rank n+1 x source rank n
    valid_range: int

    def verify(self):
        src, tgt = self.f.source, self.f.target
        for n in range(self.valid_range):
            defect = self.f.levels[n] - self.g.levels[n]
            defect = defect - tgt.d(n + 1) @ self.levels[n]
            if n >= 1:
                defect = defect - self.levels[n - 1] @ src.d(n)
            if not defect.is_zero():
                return False
        return True


# -- chain functors on simplicial modules ----------------------------

def unnormalized_chains(a: SimplicialModule, check=True) -> ChainComplex:
    """Alternating-sum-of-faces complex on the levels of a."""
    diffs = []
    for n in range(1, a.max_degree + 1):
        d = IntMatrix.zeros(a.ranks[n - 1], a.ranks[n])
        for i in range(n + 1):
            d = d + a.face(n, i).scale((-1) ** i)
        diffs.append(d)
    c = complex_from_diffs(a.ranks, diffs, name=f"C({a.name})")
    if check:
        c.check_d_squared()
    return c


@dataclass
class NormalizedChains:
    """Both models of the normalized chains of one simplicial module."""
    quotient: ChainComplex
    projection: ChainMap       # C(A) -> quotient
    section: ChainMap          # quotient -> C(A), projection o section = id
    moore: ChainComplex = None
    moore_inclusion: ChainMap = None  # moore -> C(A)
    comparison: ChainMap = None       # moore -> quotient, unimodular levelwise
    degenerate_span: list = field(repr=False, default=None)


def _degenerate_basis_indices(a, n):
    """Basis indices at level n hit by a degeneracy, when degeneracies are
    basis-to-basis (single entry 1 per column); None if they are not."""
    if n == 0:
        return []
    hit = set()
    for i in range(n):
        mat = a.degeneracy(n - 1, i)
        cols = {}
        for (r, c), v in mat.data.items():
            if v != 1 or c in cols:
                return None
            cols[c] = r
        if len(cols) != mat.ncols:
            return None
        hit.update(cols.values())
    return sorted(hit)


def normalized_chains(a: SimplicialModule, moore=True) -> NormalizedChains:
    c = unnormalized_chains(a)
    d = a.max_degree
    projections = []
    sections = []
    spans = []
    for n in range(d + 1):
        span = IntMatrix.zeros(a.ranks[n], 0)
        if n >= 1:
            for i in range(n):
                span = span.hstack(a.degeneracy(n - 1, i))
        spans.append(span)
        degen = _degenerate_basis_indices(a, n)
        if degen is not None:
            # degeneracies send basis to basis: the quotient is spanned by
            # the nondegenerate basis elements, no normal form needed
            degen_set = set(degen)
            keep = [k for k in range(a.ranks[n]) if k not in degen_set]
            projections.append(IntMatrix(
                len(keep), a.ranks[n],
                {(i, k): 1 for i, k in enumerate(keep)}))
            sections.append(IntMatrix(
                a.ranks[n], len(keep),
                {(k, i): 1 for i, k in enumerate(keep)}))
            continue
        dec = linalg.smith_normal_form(span)
        r = dec.rank
        if any(v != 1 for v in dec.diagonal[:r]):
            raise AssertionError(
                "degenerate subgroup is not a direct summand")
        projections.append(dec.u.submatrix(range(r, a.ranks[n]),
                                           range(a.ranks[n])))
        sections.append(dec.u_inv.submatrix(range(a.ranks[n]),
                                            range(r, a.ranks[n])))

    q_ranks = [p.nrows for p in projections]
    q_diffs = [projections[n - 1] @ c.d(n) @ sections[n]
               for n in range(1, d + 1)]
    quotient = complex_from_diffs(q_ranks, q_diffs, name=f"N({a.name})")
    result = NormalizedChains(
        quotient=quotient,
        projection=ChainMap(c, quotient, projections, name="projection"),
        section=ChainMap(quotient, c, sections, name="section"),
        degenerate_span=spans,
    )
    if not moore:
        return result

    kernels = [IntMatrix.identity(a.ranks[0])]
    for n in range(1, d + 1):
        stacked = a.face(n, 0)
        for i in range(1, n):
            stacked = stacked.vstack(a.face(n, i))
        kernels.append(linalg.kernel_basis(stacked))
    m_ranks = [k.ncols for k in kernels]
    m_diffs = []
    for n in range(1, d + 1):
        sol = linalg.solve(kernels[n - 1], a.face(n, n) @ kernels[n])
        if sol is None:
            raise AssertionError("Moore differential failed to restrict")
        m_diffs.append(sol.scale((-1) ** n))
    moore_cx = complex_from_diffs(m_ranks, m_diffs, name=f"Moore({a.name})")

    comparison_levels = []
    for n in range(d + 1):
        m = projections[n] @ kernels[n]
        if linalg.invert_unimodular(m) is None:
            raise AssertionError(
                f"Moore/quotient comparison not unimodular at level {n}")
        comparison_levels.append(m)

    result.moore = moore_cx
    result.moore_inclusion = ChainMap(moore_cx, c, kernels,
                                      name="moore-inclusion")
    result.comparison = ChainMap(moore_cx, quotient, comparison_levels,
                                 name="comparison")
    return result


# -- tensor structure ------------------------------------------------

def tensor_blocks(ranks1, ranks2, n):
    """Blocks (p, q, offset, size) of degree n of the tensor, ascending p."""
    blocks = []
    offset = 0
    for p in range(n + 1):
        q = n - p
        if p < len(ranks1) and q < len(ranks2):
            size = ranks1[p] * ranks2[q]
            blocks.append((p, q, offset, size))
            offset += size
    return blocks


def block_offset(ranks1, ranks2, n, p):
    for bp, _, off, _ in tensor_blocks(ranks1, ranks2, n):
        if bp == p:
            return off
    raise KeyError(f"no block p={p} in degree {n}")


def tensor_chain(c1: ChainComplex, c2: ChainComplex) -> ChainComplex:
    """Graded tensor product with the Koszul sign on the second differential."""
    if c1.max_degree != c2.max_degree:
        raise TruncationError("tensor factors must share max_degree")
    dmax = c1.max_degree
    ranks = [sum(size for _, _, _, size in tensor_blocks(c1.ranks, c2.ranks, n))
             for n in range(dmax + 1)]
    diffs = []
    for n in range(1, dmax + 1):
        placements = []
        tgt_blocks = {p: off
                      for p, _, off, _ in tensor_blocks(c1.ranks, c2.ranks, n - 1)}
        for p, q, off, _ in tensor_blocks(c1.ranks, c2.ranks, n):
            if p >= 1 and (p - 1) in tgt_blocks:
                block = c1.d(p).kron(IntMatrix.identity(c2.ranks[q]))
                placements.append((tgt_blocks[p - 1], off, block))
            if q >= 1 and p in tgt_blocks:
                block = IntMatrix.identity(c1.ranks[p]).kron(c2.d(q))
                placements.append((tgt_blocks[p], off,
                                   block.scale((-1) ** p)))
        diffs.append(assemble_blocks(ranks[n - 1], ranks[n], placements))
    c = ChainComplex(dmax, ranks, [None] + diffs,
                     name=f"({c1.name})(x)({c2.name})")
    c.check_d_squared()
    return c


def tensor_chain_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """Degreewise tensor of two chain maps (both of degree zero, no signs)."""
    src = tensor_chain(f.source, g.source)
    tgt = tensor_chain(f.target, g.target)
    levels = []
    for n in range(src.max_degree + 1):
        placements = []
        tgt_offsets = {p: off for p, _, off, _ in
                       tensor_blocks(f.target.ranks, g.target.ranks, n)}
        for p, q, off, _ in tensor_blocks(f.source.ranks, g.source.ranks, n):
            if p in tgt_offsets:
                placements.append((tgt_offsets[p], off,
                                   f.levels[p].kron(g.levels[q])))
        levels.append(assemble_blocks(tgt.ranks[n], src.ranks[n], placements))
    return ChainMap(src, tgt, levels,
                    valid_range=min(f.valid_range, g.valid_range))


def koszul_swap(c1: ChainComplex, c2: ChainComplex) -> ChainMap:
    """x(x)y -> (-1)^{pq} y(x)x on bidegree (p, q)."""
    src = tensor_chain(c1, c2)
    tgt = tensor_chain(c2, c1)
    levels = []
    for n in range(src.max_degree + 1):
        data = {}
        for p, q, off, _ in tensor_blocks(c1.ranks, c2.ranks, n):
            toff = block_offset(c2.ranks, c1.ranks, n, q)
            sign = (-1) ** (p * q)
            r1, r2 = c1.ranks[p], c2.ranks[q]
            for i in range(r1):
                for j in range(r2):
                    data[(toff + j * r1 + i, off + i * r2 + j)] = sign
        levels.append(IntMatrix(tgt.ranks[n], src.ranks[n], data))
    return ChainMap(src, tgt, levels)


def associator(c1, c2, c3) -> ChainMap:
    """Reindexing ((C1 (x) C2) (x) C3) -> (C1 (x) (C2 (x) C3)), no signs."""
    left_inner = tensor_chain(c1, c2)
    right_inner = tensor_chain(c2, c3)
    src = tensor_chain(left_inner, c3)
    tgt = tensor_chain(c1, right_inner)
    levels = []
    for n in range(src.max_degree + 1):
        data = {}
        for p in range(n + 1):
            for q in range(n - p + 1):
                r = n - p - q
                rp, rq, rr = c1.ranks[p], c2.ranks[q], c3.ranks[r]
                if rp * rq * rr == 0:
                    continue
                soff = (block_offset(left_inner.ranks, c3.ranks, n, p + q)
                        + block_offset(c1.ranks, c2.ranks, p + q, p) * rr)
                toff = (block_offset(c1.ranks, right_inner.ranks, n, p)
                        + block_offset(c2.ranks, c3.ranks, q + r, q))
                for i in range(rp):
                    for j in range(rq):
                        for k in range(rr):
                            s_idx = soff + (i * rq + j) * rr + k
                            t_idx = (toff + i * right_inner.ranks[q + r]
                                     + j * rr + k)
                            data[(t_idx, s_idx)] = 1
        levels.append(IntMatrix(tgt.ranks[n], src.ranks[n], data))
    return ChainMap(src, tgt, levels)


def middle_koszul_swap(cx, cy, cz, cw, sign_fn=None) -> ChainMap:
    """((X(x)Y)(x)(Z(x)W)) -> ((X(x)Z)(x)(Y(x)W)) with sign (-1)^{|y||z|}.

    sign_fn(|y|, |z|) overrides the sign, for fault-injection tests only.
    """
    sxy, szw = tensor_chain(cx, cy), tensor_chain(cz, cw)
    txz, tyw = tensor_chain(cx, cz), tensor_chain(cy, cw)
    src = tensor_chain(sxy, szw)
    tgt = tensor_chain(txz, tyw)
    levels = []
    for n in range(src.max_degree + 1):
        data = {}
        for p in range(n + 1):
            for q in range(n - p + 1):
                for r in range(n - p - q + 1):
                    s = n - p - q - r
                    rp, rq = cx.ranks[p], cy.ranks[q]
                    rr, rs = cz.ranks[r], cw.ranks[s]
                    if rp * rq * rr * rs == 0:
                        continue
                    soff = (block_offset(sxy.ranks, szw.ranks, n, p + q)
                            + block_offset(cx.ranks, cy.ranks, p + q, p)
                            * szw.ranks[r + s]
                            + block_offset(cz.ranks, cw.ranks, r + s, r))
                    toff = (block_offset(txz.ranks, tyw.ranks, n, p + r)
                            + block_offset(cx.ranks, cz.ranks, p + r, p)
                            * tyw.ranks[q + s]
                            + block_offset(cy.ranks, cw.ranks, q + s, q))
                    sign = sign_fn(q, r) if sign_fn else (-1) ** (q * r)
                    for ix in range(rp):
                        for iy in range(rq):
                            for iz in range(rr):
                                for iw in range(rs):
                                    s_idx = (soff
                                             + (ix * rq + iy)
                                             * szw.ranks[r + s]
                                             + iz * rs + iw)
                                    t_idx = (toff
                                             + (ix * rr + iz)
                                             * tyw.ranks[q + s]
                                             + iy * rs + iw)
                                    data[(t_idx, s_idx)] = sign
        levels.append(IntMatrix(tgt.ranks[n], src.ranks[n], data))
    return ChainMap(src, tgt, levels)


# -- homotopy solving ------------------------------------------------

_JOINT_LIMIT = 3000  # max rows/cols of the assembled joint system


def solve_homotopy(f: ChainMap, g: ChainMap):
    """An integer h with d h + h d = f - g on degrees < valid_range, or None.

    Solves degree by degree; when the greedy sweep gets stuck it retries
    with the fully coupled linear system (for problems of moderate size).
    """
    if f.source is not g.source and f.source.ranks != g.source.ranks:
        raise ValueError("homotopy endpoints need a common source")
    vr = min(f.valid_range, g.valid_range)
    src, tgt = f.source, f.target
    diff = [f.levels[n] - g.levels[n] for n in range(vr + 1)]

    levels = []
    prev = None
    ok = True
    for n in range(vr):
        rhs = diff[n]
        if n >= 1 and prev is not None:
            rhs = rhs - prev @ src.d(n)
        sol = linalg.solve(tgt.d(n + 1), rhs)
        if sol is None:
            ok = False
            break
        levels.append(sol)
        prev = sol
    if ok:
        h = ChainHomotopy(f, g, levels, vr)
        if not h.verify():
            raise AssertionError("greedy homotopy failed verification")
        return h
    return _solve_homotopy_joint(f, g, vr)


def _solve_homotopy_joint(f, g, vr):
    src, tgt = f.source, f.target
    unknown_shapes = [(tgt.ranks[n + 1], src.ranks[n]) for n in range(vr)]
    col_offsets = []
    total_cols = 0
    for rows, cols in unknown_shapes:
        col_offsets.append(total_cols)
        total_cols += rows * cols
    row_offsets = []
    total_rows = 0
    for n in range(vr):
        row_offsets.append(total_rows)
        total_rows += tgt.ranks[n] * src.ranks[n]
    if total_rows > _JOINT_LIMIT or total_cols > _JOINT_LIMIT:
        return None
    placements = []
    rhs_placements = []
    for n in range(vr):
        # row-major vectorization: vec(A X B) = (A kron B^T) vec(X)
        d_next = tgt.d(n + 1)
        placements.append((row_offsets[n], col_offsets[n],
                           d_next.kron(IntMatrix.identity(src.ranks[n]))))
        if n >= 1:
            block = IntMatrix.identity(tgt.ranks[n]).kron(
                src.d(n).transpose())
            placements.append((row_offsets[n], col_offsets[n - 1], block))
        vec = _vec_rowmajor(f.levels[n] - g.levels[n])
        rhs_placements.append((row_offsets[n], 0, vec))
    big = assemble_blocks(total_rows, total_cols, placements)
    rhs = assemble_blocks(total_rows, 1, rhs_placements)
    sol = linalg.solve(big, rhs)
    if sol is None:
        return None
    levels = []
    for n, (rows, cols) in enumerate(unknown_shapes):
        data = {}
        for (i, _), v in sol.data.items():
            local = i - col_offsets[n]
            if 0 <= local < rows * cols:
                data[(local // cols, local % cols)] = v
        levels.append(IntMatrix(rows, cols, data))
    h = ChainHomotopy(f, g, levels, vr)
    if not h.verify():
        raise AssertionError("joint homotopy failed verification")
    return h


def _vec_rowmajor(m: IntMatrix) -> IntMatrix:
    return IntMatrix(m.nrows * m.ncols, 1,
                     {(i * m.ncols + j, 0): v for (i, j), v in m.data.items()})


# -- homology --------------------------------------------------------

def homology(c: ChainComplex, n):
    """H_n as free rank plus invariant factors; needs degree n+1 in range."""
    if n < 0 or n + 1 > c.max_degree:
        raise DegreeRangeError(
            f"H_{n} needs degrees up to {n + 1}, truncation is {c.max_degree}")
    d_out = c.d(n) if n >= 1 else IntMatrix.zeros(0, c.ranks[0])
    d_in = c.d(n + 1)
    return linalg.homology_of_maps(d_out, d_in)


def induced_map_on_homology(f: ChainMap, n):
    """Matrix of H_n(f) in the presentation coordinates of both sides."""
    if n + 1 > f.valid_range:
        raise DegreeRangeError("map not trustworthy up to degree n+1")
    hs = homology(f.source, n)
    ht = homology(f.target, n)
    gens = hs.generator_cycles()
    image = linalg.solve(ht.cycle_basis, f.levels[n] @ gens)
    if image is None:
        raise AssertionError("chain map failed to preserve cycles")
    return ht.reduce(image)
