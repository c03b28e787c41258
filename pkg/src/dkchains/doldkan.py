"""The inverse equivalence to normalized chains, and structure transfer.

gamma builds the simplicial module whose level n is the direct sum of
copies of C_k indexed by the monotone surjections [n] ->> [k]; together
with normalized chains it forms an adjoint equivalence, realized here by
explicit unit/counit matrices that are inverted exactly over Z.  On top
of the adjunction, the lax/colax comparison maps are transported between
the two functors and the compatibility composites are re-checked there.
"""
from __future__ import annotations

from dataclasses import dataclass

from .chains import (ChainComplex, ChainMap,
                     middle_koszul_swap, tensor_chain, tensor_chain_map)
from .delta import DeltaMorphism, all_monotone_maps, canonical_factorization, compose
from .ezaw import NormalizedCache, aw_map, shuffle_map
from .intmat import IntMatrix, assemble_blocks
from .linalg import invert_unimodular
from .report import VerificationReport
from .simplicial import (SimplicialMap, SimplicialModule, apply_word,
                         middle_swap_levels, tensor, tensor_map, validate)


def surjections(n, k):
    """All monotone surjections [n] ->> [k], in lexicographic order."""
    return [f for f in all_monotone_maps(n, k)
            if len(set(f.values)) == k + 1]


def _epi_mono(theta: DeltaMorphism):
    """Factor theta = mono o epi with epi surjective and mono injective."""
    image = sorted(set(theta.values))
    pos = {v: i for i, v in enumerate(image)}
    k = len(image) - 1
    epi = DeltaMorphism(theta.source_rank, k,
                        tuple(pos[v] for v in theta.values))
    mono = DeltaMorphism(k, theta.target_rank, tuple(image))
    return epi, mono


def gamma_summands(c: ChainComplex, n):
    """[(eta, offset)] for level n: surjections [n] ->> [k], k ascending."""
    out = []
    offset = 0
    for k in range(n + 1):
        for eta in surjections(n, k):
            out.append((eta, offset))
            offset += c.ranks[k]
    return out


def _gamma_structure(c, summands_src, summands_tgt, rank_src, rank_tgt,
                     alpha):
    """Matrix of the contravariant action of alpha: [m] -> [n]."""
    tgt_offset = {eta.values: off for eta, off in summands_tgt}
    placements = []
    for eta, off in summands_src:
        k = eta.target_rank
        epi, mono = _epi_mono(compose(eta, alpha))
        if mono.is_identity():
            placements.append((tgt_offset[epi.values], off,
                               IntMatrix.identity(c.ranks[k])))
        elif mono.values == tuple(range(k)):
            # the injection omitting the top element carries the signed
            # differential; every other injection contributes zero
            placements.append((tgt_offset[epi.values], off,
                               c.d(k).scale((-1) ** k)))
    return assemble_blocks(rank_tgt, rank_src, placements)


def gamma(c: ChainComplex, check=True, name=None) -> SimplicialModule:
    """The surjection-indexed simplicial module of a nonneg. complex."""
    dmax = c.max_degree
    summands = [gamma_summands(c, n) for n in range(dmax + 1)]
    ranks = []
    labels = []
    for n in range(dmax + 1):
        total = 0
        lab = []
        for eta, _ in summands[n]:
            k = eta.target_rank
            total += c.ranks[k]
            tag = "".join(str(v) for v in eta.values)
            lab.extend(f"{tag}|{i}" for i in range(c.ranks[k]))
        ranks.append(total)
        labels.append(lab)
    faces = {}
    degens = {}
    for n in range(1, dmax + 1):
        for i in range(n + 1):
            faces[(n, i)] = _gamma_structure(
                c, summands[n], summands[n - 1], ranks[n], ranks[n - 1],
                DeltaMorphism.coface(i, n))
    for n in range(dmax):
        for i in range(n + 1):
            degens[(n, i)] = _gamma_structure(
                c, summands[n], summands[n + 1], ranks[n], ranks[n + 1],
                DeltaMorphism.codegeneracy(i, n))
    a = SimplicialModule(dmax, ranks, faces, degens, labels,
                         name=name or f"gamma({c.name})")
    if check:
        rep = validate(a)
        if not rep.passed:
            raise AssertionError(
                f"gamma output fails simplicial identities: "
                f"{rep.witnesses[0].label}")
    return a


def gamma_map(f: ChainMap, source_module=None,
              target_module=None) -> SimplicialMap:
    """The simplicial map induced on the surjection-indexed modules."""
    src = source_module or gamma(f.source)
    tgt = target_module or gamma(f.target)
    levels = []
    for n in range(f.source.max_degree + 1):
        placements = []
        src_sum = gamma_summands(f.source, n)
        tgt_sum = {eta.values: off
                   for eta, off in gamma_summands(f.target, n)}
        for eta, off in src_sum:
            placements.append((tgt_sum[eta.values], off,
                               f.levels[eta.target_rank]))
        levels.append(assemble_blocks(tgt.ranks[n], src.ranks[n],
                                      placements))
    return SimplicialMap(src, tgt, levels)


@dataclass
class AdjunctionData:
    """Unit/counit matrices of the equivalence at one test object."""
    unit: SimplicialMap = None        # A -> gamma(N(A))
    unit_inv: SimplicialMap = None    # gamma(N(A)) -> A
    counit: ChainMap = None           # N(gamma(C)) -> C
    counit_inv: ChainMap = None       # C -> N(gamma(C))


class DoldKan:
    """Shared-workspace builder for the equivalence and its transfers.

    Normalized chains are memoized per module, gamma modules and
    unit/counit data per object, so composites built in different checks
    agree bit-for-bit.
    """

    def __init__(self):
        self.cache = NormalizedCache()
        self._gammas = {}
        self._units = {}
        self._counits = {}
        self._moore_sections = {}

    # -- functors ----------------------------------------------------

    def normalized(self, a: SimplicialModule) -> ChainComplex:
        return self.cache.get(a).quotient

    def normalized_map(self, f: SimplicialMap) -> ChainMap:
        nc_s = self.cache.get(f.source)
        nc_t = self.cache.get(f.target)
        levels = [nc_t.projection.levels[n] @ f.levels[n]
                  @ nc_s.section.levels[n]
                  for n in range(f.source.max_degree + 1)]
        return ChainMap(nc_s.quotient, nc_t.quotient, levels)

    def gamma(self, c: ChainComplex) -> SimplicialModule:
        key = id(c)
        if key not in self._gammas:
            self._gammas[key] = (c, gamma(c))
        return self._gammas[key][1]

    # -- unit and counit ---------------------------------------------

    def moore_section(self, a: SimplicialModule):
        """Section of the quotient projection landing in the Moore
        subcomplex (intersection of the kernels of all but the last face).

        Composing any section with (1 - s_{n-1}d_{n-1})..(1 - s_0 d_0)
        retracts it into the Moore part without changing its projection.
        """
        key = id(a)
        if key not in self._moore_sections:
            nc = self.cache.get(a)
            levels = []
            for n in range(a.max_degree + 1):
                f = IntMatrix.identity(a.ranks[n])
                for j in range(n):
                    f = (IntMatrix.identity(a.ranks[n])
                         - a.degeneracy(n - 1, j) @ a.face(n, j)) @ f
                levels.append(f @ nc.section.levels[n])
            self._moore_sections[key] = (a, levels)
        return self._moore_sections[key][1]

    def unit(self, a: SimplicialModule) -> AdjunctionData:
        key = id(a)
        if key in self._units:
            return self._units[key][1]
        nc = self.cache.get(a)
        g = self.gamma(nc.quotient)
        moore = self.moore_section(a)
        inv_levels = []
        for n in range(a.max_degree + 1):
            placements = []
            for eta, off in gamma_summands(nc.quotient, n):
                k = eta.target_rank
                word = canonical_factorization(eta)
                placements.append((0, off, apply_word(a, word) @ moore[k]))
            inv_levels.append(assemble_blocks(a.ranks[n], g.ranks[n],
                                              placements))
        levels = []
        for n, m in enumerate(inv_levels):
            inv = invert_unimodular(m)
            if inv is None:
                raise AssertionError(
                    f"adjunction unit not invertible at level {n}")
            levels.append(inv)
        data = AdjunctionData(unit=SimplicialMap(a, g, levels),
                              unit_inv=SimplicialMap(g, a, inv_levels))
        self._units[key] = (a, data)
        return data

    def counit(self, c: ChainComplex) -> AdjunctionData:
        key = id(c)
        if key in self._counits:
            return self._counits[key][1]
        g = self.gamma(c)
        nc = self.cache.get(g)
        levels = []
        for n in range(c.max_degree + 1):
            ident_off = None
            for eta, off in gamma_summands(c, n):
                if eta.is_identity():
                    ident_off = off
            proj = IntMatrix(c.ranks[n], g.ranks[n],
                             {(i, ident_off + i): 1
                              for i in range(c.ranks[n])})
            levels.append(proj @ nc.section.levels[n])
        eps = ChainMap(nc.quotient, c, levels)
        inv_levels = []
        for n, m in enumerate(levels):
            inv = invert_unimodular(m)
            if inv is None:
                raise AssertionError(
                    f"adjunction counit not invertible at level {n}")
            inv_levels.append(inv)
        data = AdjunctionData(counit=eps,
                              counit_inv=ChainMap(c, nc.quotient,
                                                  inv_levels))
        self._counits[key] = (c, data)
        return data

    def triangle_check(self, a: SimplicialModule = None,
                       c: ChainComplex = None) -> VerificationReport:
        """Both triangle identities of the adjunction, at a test object."""
        objects = [x.name for x in (a, c) if x is not None]
        top = (a or c).max_degree
        rep = VerificationReport("adjunction-triangles", objects=objects,
                                 max_level=top)
        if a is not None:
            u = self.unit(a)
            na = self.normalized(a)
            eps = self.counit(na).counit
            comp = eps.compose(self.normalized_map(u.unit))
            for n in range(top + 1):
                if comp.levels[n] != IntMatrix.identity(na.ranks[n]):
                    rep.fail(n, f"N-side triangle @level {n}",
                             list(comp.levels[n].entries())[:3], "identity")
            if not u.unit.is_simplicial():
                rep.fail(0, "unit is a simplicial map", "defect", "zero")
        if c is not None:
            g = self.gamma(c)
            eps = self.counit(c).counit
            u = self.unit(g)
            comp = gamma_map(eps, source_module=self.gamma(eps.source),
                             target_module=g).compose(u.unit)
            for n in range(top + 1):
                if comp.levels[n] != IntMatrix.identity(g.ranks[n]):
                    rep.fail(n, f"gamma-side triangle @level {n}",
                             list(comp.levels[n].entries())[:3], "identity")
            if not eps.is_chain_map():
                rep.fail(0, "counit is a chain map", "defect", "zero")
        return rep.finish()

    # -- structure transfer ------------------------------------------

    def lax_on_gamma(self, x: ChainComplex, y: ChainComplex,
                     product: ChainComplex = None) -> SimplicialMap:
        """gamma(X) (x) gamma(Y) -> gamma(X (x) Y), transported from the
        Alexander-Whitney comparison through unit and counit."""
        gx, gy = self.gamma(x), self.gamma(y)
        t = tensor(gx, gy)
        eta = self.unit(t).unit
        aw = aw_map(gx, gy, normalized=True, verify=False,
                    cache=self.cache, product=t)
        txy = product if product is not None else tensor_chain(x, y)
        eps_pair = tensor_chain_map(self.counit(x).counit,
                                    self.counit(y).counit)
        mid = gamma_map(aw, source_module=eta.target,
                        target_module=self.gamma(aw.target))
        last = gamma_map(eps_pair, source_module=mid.target,
                         target_module=self.gamma(txy))
        return last.compose(mid).compose(eta)

    def colax_on_gamma(self, x: ChainComplex, y: ChainComplex,
                       product: ChainComplex = None) -> SimplicialMap:
        """gamma(X (x) Y) -> gamma(X) (x) gamma(Y), transported from the
        shuffle comparison through the inverted unit and counit."""
        gx, gy = self.gamma(x), self.gamma(y)
        t = tensor(gx, gy)
        phi = self.unit(t).unit_inv
        sh = shuffle_map(gx, gy, normalized=True, verify=False,
                         cache=self.cache, product=t)
        txy = product if product is not None else tensor_chain(x, y)
        eps_inv_pair = tensor_chain_map(self.counit(x).counit_inv,
                                        self.counit(y).counit_inv)
        first = gamma_map(eps_inv_pair, source_module=self.gamma(txy),
                          target_module=self.gamma(eps_inv_pair.target))
        mid = gamma_map(sh, source_module=first.target,
                        target_module=phi.source)
        return phi.compose(mid).compose(first)

    def roundtrip_colax(self, a: SimplicialModule,
                        b: SimplicialModule) -> ChainMap:
        """Transfer the colax comparison to gamma and back; the result
        must coincide with the Alexander-Whitney map on N(A (x) B)."""
        na, nb = self.normalized(a), self.normalized(b)
        eta_a, eta_b = self.unit(a).unit, self.unit(b).unit
        txy = tensor_chain(na, nb)
        lax = self.lax_on_gamma(na, nb, product=txy)
        psi = lax.compose(tensor_map(eta_a, eta_b))
        eps = self.counit(txy).counit
        return eps.compose(self.normalized_map(psi))

    def gamma_bialgebra_check(self, x, y, z, w,
                              max_level=None) -> VerificationReport:
        """The compatibility composites for the transported pair on gamma."""
        top = x.max_degree if max_level is None else max_level
        rep = VerificationReport(
            "gamma-bialgebra",
            objects=[c.name for c in (x, y, z, w)], max_level=top)
        mk = middle_koszul_swap(x, y, z, w)
        txy, tzw = tensor_chain(x, y), tensor_chain(z, w)
        txz, tyw = tensor_chain(x, z), tensor_chain(y, w)
        lax_in = self.lax_on_gamma(txy, tzw, product=mk.source)
        colax_out = self.colax_on_gamma(txz, tyw, product=mk.target)
        g_mk = gamma_map(mk, source_module=self.gamma(mk.source),
                         target_module=self.gamma(mk.target))
        lhs = colax_out.compose(g_mk).compose(lax_in)

        colax_xy = self.colax_on_gamma(x, y, product=txy)
        colax_zw = self.colax_on_gamma(z, w, product=tzw)
        lax_xz = self.lax_on_gamma(x, z, product=txz)
        lax_yw = self.lax_on_gamma(y, w, product=tyw)
        swap = middle_swap_levels(self.gamma(x), self.gamma(y),
                                  self.gamma(z), self.gamma(w))
        split = tensor_map(colax_xy, colax_zw)
        join = tensor_map(lax_xz, lax_yw)
        rhs_levels = [join.levels[n] @ swap[n] @ split.levels[n]
                      for n in range(top + 1)]
        for n in range(top + 1):
            diff = lhs.levels[n] - rhs_levels[n]
            if not diff.is_zero():
                key = min(diff.data)
                rep.fail(n, f"entry {key} @level {n}",
                         lhs.levels[n][key], rhs_levels[n][key])
        return rep.finish()


def identity_functor_bialgebra_check(x, y, z, w) -> VerificationReport:
    """Self-test of the compatibility harness with the identity functor.

    With identity lax/colax structures both composites reduce to the
    signed middle interchange, so any discrepancy here indicates a bug in
    the harness plumbing rather than in a transported structure.
    """
    rep = VerificationReport(
        "identity-bialgebra", objects=[c.name for c in (x, y, z, w)],
        max_level=x.max_degree)
    mk = middle_koszul_swap(x, y, z, w)
    txy, tzw = tensor_chain(x, y), tensor_chain(z, w)
    txz, tyw = tensor_chain(x, z), tensor_chain(y, w)
    lhs = (ChainMap.identity(tensor_chain(txz, tyw))
           .compose(mk)
           .compose(ChainMap.identity(tensor_chain(txy, tzw))))
    rhs = (tensor_chain_map(ChainMap.identity(txz),
                            ChainMap.identity(tyw))
           .compose(middle_koszul_swap(x, y, z, w))
           .compose(tensor_chain_map(ChainMap.identity(txy),
                                     ChainMap.identity(tzw))))
    for n in range(x.max_degree + 1):
        if lhs.levels[n] != rhs.levels[n]:
            rep.fail(n, f"identity-functor composites differ @level {n}",
                     list(lhs.levels[n].entries())[:3],
                     list(rhs.levels[n].entries())[:3])
    return rep.finish()
