"""Simplicial rings from monoid nerves and their induced chain algebras.

The shuffle comparison turns the chains of a simplicial ring into a
differential graded algebra; the Alexander-Whitney comparison is then a
morphism of algebras from the chains of a tensor product of rings to the
tensor product of their chain algebras.  Both facts are verified by
explicit matrix identities here.
"""
from __future__ import annotations

from dataclasses import dataclass

import itertools

from .chains import (ChainComplex, ChainMap, TruncationError, associator,
                     block_offset, middle_koszul_swap, tensor_chain_map,
                     unnormalized_chains)
from .ezaw import NormalizedCache, aw_map, enumerate_shuffles, shuffle_map
from .intmat import IntMatrix
from .report import VerificationReport
from .simplicial import (SimplicialMap, free_on_nerve, middle_swap_levels,
                         tensor, validate_monoid)


class RingConstructionError(ValueError):
    """The multiplication data does not form a simplicial ring."""


@dataclass
class SimplicialRing:
    """Simplicial module with a levelwise associative unital product.

    mult[n] maps the tensor-square level n (row-major basis) to level n;
    unit[n] is the coordinate column of the unit element of level n.
    """
    module: SimplicialModule
    mult: list
    unit: list

    @property
    def max_degree(self):
        return self.module.max_degree

    def mult_map(self) -> SimplicialMap:
        return SimplicialMap(tensor(self.module, self.module), self.module,
                             self.mult)

    def check(self):
        a = self.module
        dmax = a.max_degree
        if not self.mult_map().is_simplicial():
            raise RingConstructionError(
                "multiplication is not a simplicial map")
        for n in range(dmax + 1):
            r = a.ranks[n]
            m = self.mult[n]
            left = m @ m.kron(IntMatrix.identity(r))
            right = m @ IntMatrix.identity(r).kron(m)
            if left != right:
                raise RingConstructionError(
                    f"multiplication not associative at level {n}")
            u = IntMatrix(r, 1, {(i, 0): v
                                 for i, v in enumerate(self.unit[n]) if v})
            if (m @ u.kron(IntMatrix.identity(r)) != IntMatrix.identity(r)
                    or m @ IntMatrix.identity(r).kron(u)
                    != IntMatrix.identity(r)):
                raise RingConstructionError(
                    f"unit is not two-sided at level {n}")
        for n in range(dmax):
            for i in range(n + 1):
                u = IntMatrix(a.ranks[n], 1,
                              {(k, 0): v
                               for k, v in enumerate(self.unit[n]) if v})
                un1 = IntMatrix(a.ranks[n + 1], 1,
                                {(k, 0): v
                                 for k, v in enumerate(self.unit[n + 1])
                                 if v})
                if a.degeneracy(n, i) @ u != un1:
                    raise RingConstructionError(
                        f"degeneracy s{i} does not preserve the unit "
                        f"at level {n}")
        return self


def ring_from_nerve(table, max_degree, name=None) -> SimplicialRing:
    """Pointwise product on the nerve of a commutative monoid."""
    e = validate_monoid(table)
    m = len(table)
    for x in range(m):
        for y in range(m):
            if table[x][y] != table[y][x]:
                raise RingConstructionError(
                    "pointwise nerve product needs a commutative monoid")
    module = free_on_nerve(table, max_degree, name=name)
    mult = []
    unit = []
    for n in range(max_degree + 1):
        basis = list(itertools.product(range(m), repeat=n))
        index = {t: k for k, t in enumerate(basis)}
        r = len(basis)
        data = {}
        for i, t in enumerate(basis):
            for j, u in enumerate(basis):
                prod = tuple(table[x][y] for x, y in zip(t, u))
                data[(index[prod], i * r + j)] = data.get(
                    (index[prod], i * r + j), 0) + 1
        mult.append(IntMatrix(r, r * r, data))
        unit.append([1 if t == (e,) * n else 0 for t in basis])
    return SimplicialRing(module, mult, unit).check()


def tensor_ring(a: SimplicialRing, b: SimplicialRing) -> SimplicialRing:
    """Componentwise product on the levelwise tensor of two rings."""
    module = tensor(a.module, b.module)
    swap = middle_swap_levels(a.module, b.module, a.module, b.module)
    mult = [a.mult[n].kron(b.mult[n]) @ swap[n]
            for n in range(module.max_degree + 1)]
    unit = []
    for n in range(module.max_degree + 1):
        rb = b.module.ranks[n]
        unit.append([a.unit[n][i] * b.unit[n][j]
                     for i in range(a.module.ranks[n]) for j in range(rb)])
    return SimplicialRing(module, mult, unit)


@dataclass
class DGAlgebra:
    """Chain complex with an associative unital chain-map product."""
    complex: ChainComplex
    product: ChainMap      # tensor_chain(complex, complex) -> complex
    unit: list             # coordinates of the unit cycle in degree 0
    name: str = ""

    def _insert_unit(self, left=True):
        """The map x -> unit (x) x (or x (x) unit) into the tensor square."""
        c = self.complex
        levels = []
        for n in range(c.max_degree + 1):
            p = 0 if left else n
            src_rank = c.ranks[n]
            data = {}
            off = block_offset(c.ranks, c.ranks, n, p)
            for i, v in enumerate(self.unit):
                if not v:
                    continue
                for j in range(src_rank):
                    if left:
                        data[(off + i * c.ranks[n] + j, j)] = v
                    else:
                        data[(off + j * c.ranks[0] + i, j)] = v
            levels.append(IntMatrix(self.product.source.ranks[n],
                                    src_rank, data))
        return ChainMap(c, self.product.source, levels)

    def check(self, top=None):
        c = self.complex
        top = c.max_degree if top is None else top
        if not self.product.is_chain_map(top):
            raise RingConstructionError("product is not a chain map")
        left = self.product.compose(
            tensor_chain_map(self.product, ChainMap.identity(c)))
        right = self.product.compose(
            tensor_chain_map(ChainMap.identity(c), self.product)).compose(
            associator(c, c, c))
        for n in range(top + 1):
            if left.levels[n] != right.levels[n]:
                raise RingConstructionError(
                    f"product not associative in degree {n}")
        for n in range(top + 1):
            for ins in (self._insert_unit(True), self._insert_unit(False)):
                comp = self.product.compose(ins)
                if comp.levels[n] != IntMatrix.identity(c.ranks[n]):
                    raise RingConstructionError(
                        f"unit not neutral in degree {n}")
        return self


def to_dga(r: SimplicialRing, normalized=False, cache=None, top=None,
           table_fn=enumerate_shuffles) -> DGAlgebra:
    """The chain algebra of a simplicial ring: shuffle, then multiply."""
    a = r.module
    cache = cache or NormalizedCache()
    sh = shuffle_map(a, a, normalized=normalized, verify=False,
                     cache=cache, table_fn=table_fn)
    mm = r.mult_map()
    if normalized:
        nc = cache.get(a)
        nc_t = cache.get(tensor(a, a))
        mult_levels = [nc.projection.levels[n] @ mm.levels[n]
                       @ nc_t.section.levels[n]
                       for n in range(a.max_degree + 1)]
        chains_mult = ChainMap(sh.target, nc.quotient, mult_levels)
        c = nc.quotient
        unit_cycle = (nc.projection.levels[0]
                      @ IntMatrix(a.ranks[0], 1,
                                  {(i, 0): v
                                   for i, v in enumerate(r.unit[0]) if v}))
    else:
        c = unnormalized_chains(a)
        chains_mult = ChainMap(sh.target, c, mm.levels)
        unit_cycle = IntMatrix(a.ranks[0], 1,
                               {(i, 0): v
                                for i, v in enumerate(r.unit[0]) if v})
    product = chains_mult.compose(sh)
    dga = DGAlgebra(c, product,
                    unit_cycle.column_vector(0),
                    name=f"dga({a.name})")
    return dga.check(top)


def check_aw_multiplicative(a: SimplicialRing, b: SimplicialRing,
                            max_level=None,
                            table_fn=enumerate_shuffles
                            ) -> VerificationReport:
    """Alexander-Whitney as an algebra morphism on normalized chains.

    The chains of the tensor ring carry the shuffle-induced product; the
    target carries the tensor-algebra product of the two factors.  The
    comparison map must intertwine them, which is the multiplicative
    shadow of the lax/colax compatibility composites.
    """
    if a.max_degree != b.max_degree:
        raise TruncationError("rings must share max_degree")
    top = a.max_degree if max_level is None else max_level
    rep = VerificationReport(
        "aw-multiplicative", objects=[a.module.name, b.module.name],
        max_level=top)
    cache = NormalizedCache()
    ab = tensor_ring(a, b)
    dga_ab = to_dga(ab, normalized=True, cache=cache, top=top,
                    table_fn=table_fn)
    dga_a = to_dga(a, normalized=True, cache=cache, top=top,
                   table_fn=table_fn)
    dga_b = to_dga(b, normalized=True, cache=cache, top=top,
                   table_fn=table_fn)
    aw = aw_map(a.module, b.module, normalized=True, verify=False,
                cache=cache, product=ab.module)
    mk = middle_koszul_swap(dga_a.complex, dga_b.complex,
                            dga_a.complex, dga_b.complex)
    lhs = aw.compose(dga_ab.product)
    rhs = (tensor_chain_map(dga_a.product, dga_b.product)
           .compose(mk)
           .compose(tensor_chain_map(aw, aw)))
    for n in range(top + 1):
        diff = lhs.levels[n] - rhs.levels[n]
        if not diff.is_zero():
            key = min(diff.data)
            rep.fail(n, f"entry {key} @degree {n}",
                     lhs.levels[n][key], rhs.levels[n][key])
    return rep.finish()
