"""Alexander-Whitney and shuffle maps on chains of simplicial modules.

Both maps are produced as explicit integer matrices, in the unnormalized
and the normalized (quotient-model) setting, together with the composite
comparison maps that express strict compatibility of the coalgebra
structure (Alexander-Whitney) with the algebra structure (shuffle).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chains import (ChainMap, TruncationError, assemble_blocks,
                     block_offset, koszul_swap, middle_koszul_swap,
                     normalized_chains, tensor_blocks, tensor_chain,
                     tensor_chain_map, unnormalized_chains)
from .intmat import IntMatrix
from .report import VerificationReport
from .simplicial import (SimplicialModule, constant_z, degeneracy_composite,
                         first_faces, last_faces, middle_swap_levels, swap,
                         tensor)


@dataclass(frozen=True)
class ShuffleTable:
    """All (k, l)-shuffles with their inversion signs.

    Each entry is (alpha, beta, sign): alpha and beta are the complementary
    ascending index sets partitioning {0, .., k+l-1} with |alpha| = k, and
    sign is (-1)^{#inversions between alpha and beta}.
    """
    k: int
    l: int
    entries: tuple

    def __len__(self):
        return len(self.entries)


def enumerate_shuffles(k, l) -> ShuffleTable:
    entries = []
    positions = tuple(range(k + l))
    for alpha in itertools.combinations(positions, k):
        in_alpha = set(alpha)
        beta = tuple(x for x in positions if x not in in_alpha)
        inversions = sum(1 for a in alpha for b in beta if a > b)
        entries.append((alpha, beta, (-1) ** inversions))
    return ShuffleTable(k, l, tuple(entries))


# -- raw (unnormalized) levels ---------------------------------------

def aw_levels(a: SimplicialModule, b: SimplicialModule) -> list:
    """Matrices of the Alexander-Whitney map C(A(x)B)_n -> (C(A)(x)C(B))_n.

    The bidegree-(p, q) component of degree n = p + q is
    (iterated last face)^q (x) (iterated zeroth face)^p.
    """
    levels = []
    for n in range(a.max_degree + 1):
        placements = []
        for p, q, off, _ in tensor_blocks(a.ranks, b.ranks, n):
            block = last_faces(a, n, n - p).kron(first_faces(b, n, n - q))
            placements.append((off, 0, block))
        total = sum(size for _, _, _, size in
                    tensor_blocks(a.ranks, b.ranks, n))
        levels.append(assemble_blocks(total, a.ranks[n] * b.ranks[n],
                                      placements))
    return levels


def shuffle_levels(a: SimplicialModule, b: SimplicialModule,
                   table_fn=enumerate_shuffles) -> list:
    """Matrices of the shuffle map (C(A)(x)C(B))_n -> C(A(x)B)_n.

    On bidegree (p, q) the map is the signed sum over (p, q)-shuffles
    (alpha, beta) of s_beta (x) s_alpha, degeneracies applied lowest first.
    """
    levels = []
    for n in range(a.max_degree + 1):
        placements = []
        for p, q, off, _ in tensor_blocks(a.ranks, b.ranks, n):
            acc = IntMatrix.zeros(a.ranks[n] * b.ranks[n],
                                  a.ranks[p] * b.ranks[q])
            for alpha, beta, sign in table_fn(p, q).entries:
                term = degeneracy_composite(a, p, beta).kron(
                    degeneracy_composite(b, q, alpha))
                acc = acc + term.scale(sign)
            placements.append((0, off, acc))
        total = sum(size for _, _, _, size in
                    tensor_blocks(a.ranks, b.ranks, n))
        levels.append(assemble_blocks(a.ranks[n] * b.ranks[n], total,
                                      placements))
    return levels


# -- public chain maps -----------------------------------------------

class NormalizedCache:
    """Memoizes quotient-model normalized chains per simplicial module."""

    def __init__(self):
        self._data = {}

    def get(self, a: SimplicialModule):
        key = id(a)
        if key not in self._data:
            self._data[key] = (a, normalized_chains(a, moore=False))
        return self._data[key][1]


def _normalize_map(raw_levels, nc_src, nc_tgt_proj_levels, src, tgt,
                   check_descent=True, label="map"):
    """Conjugate raw levels by section/projection, checking well-definedness."""
    levels = [nc_tgt_proj_levels[n] @ raw_levels[n]
              @ nc_src.section.levels[n]
              for n in range(len(raw_levels))]
    if check_descent:
        for n, span in enumerate(nc_src.degenerate_span):
            if span.ncols and not (
                    nc_tgt_proj_levels[n] @ raw_levels[n] @ span).is_zero():
                raise AssertionError(
                    f"{label} does not descend to normalized chains "
                    f"at degree {n}")
    return ChainMap(src, tgt, levels)


def aw_map(a: SimplicialModule, b: SimplicialModule, normalized=False,
           verify=True, cache=None, product=None) -> ChainMap:
    """The Alexander-Whitney chain map C(A(x)B) -> C(A)(x)C(B).

    With normalized=True, the induced map N(A(x)B) -> N(A)(x)N(B) on the
    degeneracy quotients (well-definedness is checked).  product, when
    given, must be tensor(a, b) and avoids rebuilding it.
    """
    if a.max_degree != b.max_degree:
        raise TruncationError("factors must share max_degree")
    raw = aw_levels(a, b)
    if product is None:
        product = tensor(a, b)
    if not normalized:
        f = ChainMap(unnormalized_chains(product),
                     tensor_chain(unnormalized_chains(a),
                                  unnormalized_chains(b)),
                     raw, name="aw")
    else:
        cache = cache or NormalizedCache()
        nc_a, nc_b = cache.get(a), cache.get(b)
        nc_ab = cache.get(product)
        proj = tensor_chain_map(nc_a.projection, nc_b.projection)
        f = _normalize_map(raw, nc_ab, proj.levels, nc_ab.quotient,
                           tensor_chain(nc_a.quotient, nc_b.quotient),
                           label="aw")
        f.name = "aw-normalized"
    if verify and not f.is_chain_map():
        raise AssertionError("Alexander-Whitney map is not a chain map")
    return f


def shuffle_map(a: SimplicialModule, b: SimplicialModule, normalized=False,
                verify=True, cache=None, product=None,
                table_fn=enumerate_shuffles) -> ChainMap:
    """The shuffle chain map C(A)(x)C(B) -> C(A(x)B).

    With normalized=True, the induced map N(A)(x)N(B) -> N(A(x)B).
    table_fn overrides shuffle enumeration, for fault-injection tests only.
    """
    if a.max_degree != b.max_degree:
        raise TruncationError("factors must share max_degree")
    raw = shuffle_levels(a, b, table_fn=table_fn)
    if product is None:
        product = tensor(a, b)
    if not normalized:
        f = ChainMap(tensor_chain(unnormalized_chains(a),
                                  unnormalized_chains(b)),
                     unnormalized_chains(product),
                     raw, name="shuffle")
    else:
        cache = cache or NormalizedCache()
        nc_a, nc_b = cache.get(a), cache.get(b)
        nc_ab = cache.get(product)
        # source sections/degenerate spans blockwise from the two factors
        sect = tensor_chain_map(nc_a.section, nc_b.section)
        levels = [nc_ab.projection.levels[n] @ raw[n] @ sect.levels[n]
                  for n in range(len(raw))]
        for n in range(len(raw)):
            for p, q, off, _ in tensor_blocks(a.ranks, b.ranks, n):
                span_a = nc_a.degenerate_span[p]
                span_b = nc_b.degenerate_span[q]
                for blk in (span_a.kron(IntMatrix.identity(b.ranks[q])),
                            IntMatrix.identity(a.ranks[p]).kron(span_b)):
                    if not blk.ncols:
                        continue
                    placed = assemble_blocks(
                        sum(s for _, _, _, s in
                            tensor_blocks(a.ranks, b.ranks, n)),
                        blk.ncols, [(off, 0, blk)])
                    if not (nc_ab.projection.levels[n] @ raw[n]
                            @ placed).is_zero():
                        raise AssertionError(
                            "shuffle map does not descend to normalized "
                            f"chains at degree {n}")
        f = ChainMap(tensor_chain(nc_a.quotient, nc_b.quotient),
                     nc_ab.quotient, levels, name="shuffle-normalized")
    if verify and not f.is_chain_map():
        raise AssertionError("shuffle map is not a chain map")
    return f


# -- the compatibility composites ------------------------------------

class BialgebraInstance:
    """One four-tuple (X, Y, Z, W) with all derived objects memoized.

    lhs: interleave with the shuffle map, reshuffle the simplicial middle
    factors, then split with Alexander-Whitney:
        (AW o C(mid-swap) o shuffle) :
            C(X(x)Y) (x) C(Z(x)W)  ->  C(X(x)Z) (x) C(Y(x)W)
    rhs: split both factors first, interchange with the signed middle
    swap of complexes, then interleave pairwise:
        ((shuffle (x) shuffle) o mid-koszul o (AW (x) AW))
    The structure assertion is lhs = rhs, entrywise over Z.
    """

    def __init__(self, x, y, z, w):
        if not (x.max_degree == y.max_degree == z.max_degree
                == w.max_degree):
            raise TruncationError("all four factors must share max_degree")
        self.x, self.y, self.z, self.w = x, y, z, w
        self.max_degree = x.max_degree
        self.ab = tensor(x, y)
        self.cd = tensor(z, w)
        self.xz = tensor(x, z)
        self.yw = tensor(y, w)
        self.cache = NormalizedCache()
        self._mid = None

    @property
    def names(self):
        return [m.name for m in (self.x, self.y, self.z, self.w)]

    def mid_levels(self):
        if self._mid is None:
            self._mid = middle_swap_levels(self.x, self.y, self.z, self.w)
        return self._mid

    def lhs(self, normalized=False, table_fn=enumerate_shuffles) -> ChainMap:
        nab_raw = shuffle_levels(self.ab, self.cd, table_fn=table_fn)
        aw_raw = aw_levels(self.xz, self.yw)
        mid = self.mid_levels()
        if not normalized:
            src = tensor_chain(unnormalized_chains(self.ab),
                               unnormalized_chains(self.cd))
            tgt = tensor_chain(unnormalized_chains(self.xz),
                               unnormalized_chains(self.yw))
            levels = [aw_raw[n] @ mid[n] @ nab_raw[n]
                      for n in range(self.max_degree + 1)]
            return ChainMap(src, tgt, levels, name="bialgebra-lhs")
        c = self.cache
        nc_ab, nc_cd = c.get(self.ab), c.get(self.cd)
        nc_xz, nc_yw = c.get(self.xz), c.get(self.yw)
        nc_4src = c.get(tensor(self.ab, self.cd))
        nc_4tgt = c.get(tensor(self.xz, self.yw))
        sect_src = tensor_chain_map(nc_ab.section, nc_cd.section)
        proj_tgt = tensor_chain_map(nc_xz.projection, nc_yw.projection)
        # (N aw) o (N mid) o (N shuffle), each induced map written P f J;
        # each factor descends, which aw_map/shuffle_map verify separately
        levels = [proj_tgt.levels[n] @ aw_raw[n] @ nc_4tgt.section.levels[n]
                  @ nc_4tgt.projection.levels[n] @ mid[n]
                  @ nc_4src.section.levels[n] @ nc_4src.projection.levels[n]
                  @ nab_raw[n] @ sect_src.levels[n]
                  for n in range(self.max_degree + 1)]
        src = tensor_chain(nc_ab.quotient, nc_cd.quotient)
        tgt = tensor_chain(nc_xz.quotient, nc_yw.quotient)
        return ChainMap(src, tgt, levels, name="bialgebra-lhs-normalized")

    def rhs(self, normalized=False, sign_fn=None,
            table_fn=enumerate_shuffles) -> ChainMap:
        c = self.cache
        aw1 = aw_map(self.x, self.y, normalized, verify=False, cache=c,
                     product=self.ab)
        aw2 = aw_map(self.z, self.w, normalized, verify=False, cache=c,
                     product=self.cd)
        sh1 = shuffle_map(self.x, self.z, normalized, verify=False, cache=c,
                          product=self.xz, table_fn=table_fn)
        sh2 = shuffle_map(self.y, self.w, normalized, verify=False, cache=c,
                          product=self.yw, table_fn=table_fn)
        if normalized:
            cx, cy = c.get(self.x).quotient, c.get(self.y).quotient
            cz, cw = c.get(self.z).quotient, c.get(self.w).quotient
        else:
            cx, cy = unnormalized_chains(self.x), unnormalized_chains(self.y)
            cz, cw = unnormalized_chains(self.z), unnormalized_chains(self.w)
        mk = middle_koszul_swap(cx, cy, cz, cw, sign_fn=sign_fn)
        f = tensor_chain_map(sh1, sh2).compose(mk).compose(
            tensor_chain_map(aw1, aw2))
        f.name = "bialgebra-rhs" + ("-normalized" if normalized else "")
        return f

    def check(self, normalized=False, max_level=None,
              sign_fn=None, table_fn=enumerate_shuffles) -> VerificationReport:
        top = self.max_degree if max_level is None else max_level
        label = "bialgebra-normalized" if normalized else "bialgebra"
        rep = VerificationReport(label, objects=self.names, max_level=top)
        lhs = self.lhs(normalized, table_fn=table_fn)
        rhs = self.rhs(normalized, sign_fn=sign_fn, table_fn=table_fn)
        for n in range(top + 1):
            diff = lhs.levels[n] - rhs.levels[n]
            if not diff.is_zero():
                key = min(diff.data)
                rep.fail(n, f"entry {key} @degree {n}",
                         lhs.levels[n][key], rhs.levels[n][key])
        return rep.finish()


def bialgebra_check(x, y, z, w, normalized=False,
                    max_level=None) -> VerificationReport:
    return BialgebraInstance(x, y, z, w).check(normalized, max_level)


# -- unit coherence --------------------------------------------------

def _unit_contraction(nu_quot, na_quot, left, scale):
    """The reindexing N(unit)(x)N(A) -> N(A) (or the right-hand variant)."""
    first, second = (nu_quot, na_quot) if left else (na_quot, nu_quot)
    src = tensor_chain(first, second)
    levels = []
    for n in range(na_quot.max_degree + 1):
        p = 0 if left else n
        off = block_offset(first.ranks, second.ranks, n, p)
        data = {(i, off + i): scale for i in range(na_quot.ranks[n])}
        levels.append(IntMatrix(na_quot.ranks[n], src.ranks[n], data))
    return ChainMap(src, na_quot, levels)


def unit_coherence_check(a: SimplicialModule,
                         unit_scale=1) -> VerificationReport:
    """Left/right unit diagrams for normalized Alexander-Whitney and shuffle.

    The monoidal unit is the constant simplicial module Z, whose normalized
    chains are Z in degree 0.  unit_scale replaces the canonical unit
    isomorphism by its multiple, for fault-injection tests only.
    """
    rep = VerificationReport("unit-coherence", objects=[a.name],
                             max_level=a.max_degree)
    u = constant_z(a.max_degree)
    cache = NormalizedCache()
    na = cache.get(a).quotient
    nu = cache.get(u).quotient
    if nu.ranks != [1] + [0] * a.max_degree:
        rep.fail(0, "normalized unit is Z in degree 0", nu.ranks,
                 [1] + [0] * a.max_degree)
        return rep.finish()

    for left in (True, False):
        side = "left" if left else "right"
        pair = (u, a) if left else (a, u)
        prod = tensor(*pair)
        # the canonical simplicial iso unit(x)A = A is a basis reindexing
        # that normalizes to the identity in these coordinates
        ncp = cache.get(prod).quotient
        contr = _unit_contraction(nu, na, left, unit_scale)
        aw = aw_map(*pair, normalized=True, cache=cache, verify=False)
        comp = contr.compose(aw)
        for n in range(a.max_degree + 1):
            if comp.levels[n] != IntMatrix.identity(na.ranks[n]):
                rep.fail(n, f"{side} counit diagram @degree {n}",
                         list(comp.levels[n].entries())[:3],
                         "identity")
        sh = shuffle_map(*pair, normalized=True, cache=cache, verify=False)
        ins = ChainMap(na, contr.source,
                       [m.transpose().scale(unit_scale)
                        for m in contr.levels])
        comp = sh.compose(ins)
        for n in range(a.max_degree + 1):
            if comp.levels[n] != IntMatrix.identity(ncp.ranks[n]):
                rep.fail(n, f"{side} unit diagram @degree {n}",
                         list(comp.levels[n].entries())[:3],
                         "identity")
    return rep.finish()


# -- symmetry --------------------------------------------------------

def chains_of_map(f, normalized=False, cache=None) -> ChainMap:
    """The chain map induced by a simplicial map, raw or on the quotient."""
    if not normalized:
        return ChainMap(unnormalized_chains(f.source, check=False),
                        unnormalized_chains(f.target, check=False),
                        list(f.levels))
    cache = cache or NormalizedCache()
    nc_s, nc_t = cache.get(f.source), cache.get(f.target)
    levels = [nc_t.projection.levels[n] @ f.levels[n]
              @ nc_s.section.levels[n]
              for n in range(f.source.max_degree + 1)]
    return ChainMap(nc_s.quotient, nc_t.quotient, levels)


def shuffle_symmetry_check(a: SimplicialModule, b: SimplicialModule,
                           normalized=False, cache=None,
                           table_fn=enumerate_shuffles) -> VerificationReport:
    """The shuffle map intertwines the signed and the simplicial swap.

    Applying the factor swap after shuffling must agree with shuffling
    the swapped factors after the Koszul-signed transposition of chains.
    """
    label = ("shuffle-symmetry-normalized" if normalized
             else "shuffle-symmetry")
    rep = VerificationReport(label, objects=[a.name, b.name],
                             max_level=a.max_degree)
    cache = cache or NormalizedCache()
    sh_ab = shuffle_map(a, b, normalized=normalized, verify=False,
                        cache=cache, table_fn=table_fn)
    sh_ba = shuffle_map(b, a, normalized=normalized, verify=False,
                        cache=cache, table_fn=table_fn)
    sw = chains_of_map(swap(a, b), normalized=normalized, cache=cache)
    lhs = sw.compose(sh_ab)
    rhs = sh_ba.compose(_koszul_between(sh_ab, sh_ba, normalized, cache, a, b))
    for n in range(a.max_degree + 1):
        diff = lhs.levels[n] - rhs.levels[n]
        if not diff.is_zero():
            key = min(diff.data)
            rep.fail(n, f"entry {key} @degree {n}",
                     lhs.levels[n][key], rhs.levels[n][key])
    return rep.finish()


def _koszul_between(sh_ab, sh_ba, normalized, cache, a, b):
    if normalized:
        return koszul_swap(cache.get(a).quotient, cache.get(b).quotient)
    return koszul_swap(unnormalized_chains(a, check=False),
                       unnormalized_chains(b, check=False))


def aw_symmetry_defect(a: SimplicialModule, b: SimplicialModule,
                       normalized=False, cache=None):
    """The two composites whose disagreement measures AW cocommutativity.

    Returns (lhs, rhs) with lhs = Koszul swap after AW on A(x)B and
    rhs = AW on B(x)A after the induced swap of chains.  They are chain
    homotopic but not equal.
    """
    cache = cache or NormalizedCache()
    aw_ab = aw_map(a, b, normalized=normalized, verify=False, cache=cache)
    aw_ba = aw_map(b, a, normalized=normalized, verify=False, cache=cache)
    sw = chains_of_map(swap(a, b), normalized=normalized, cache=cache)
    ks = _koszul_between(aw_ab, aw_ba, normalized, cache, a, b)
    return ks.compose(aw_ab), aw_ba.compose(sw)
