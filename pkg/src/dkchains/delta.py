"""Morphisms of the simplex category: monotone maps, operator words, rewriting.

A monotone map [q] -> [p] and a word in the coface/codegeneracy generators
are two views of the same morphism; ``canonical_factorization`` and
``normalize`` mediate between them.  Words are stored in composition order:
``generators[0]`` is the outermost (last applied) generator.
"""
from __future__ import annotations

from dataclasses import dataclass

FACE = "face"    # coface: the injection [n-1] -> [n] missing index i
DEGEN = "degen"  # codegeneracy: the surjection [n+1] -> [n] doubling index j


class CompositionError(ValueError):
    """Raised when ranks of composed morphisms or generators do not match."""


@dataclass(frozen=True)
class DeltaMorphism:
    """Weakly monotone map [source_rank] -> [target_rank]."""
    source_rank: int
    target_rank: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.source_rank + 1:
            raise ValueError("values length must be source_rank + 1")
        for a, b in zip(self.values, self.values[1:]):
            if a > b:
                raise ValueError("values must be weakly increasing")
        if self.values and not (0 <= self.values[0]
                                and self.values[-1] <= self.target_rank):
            raise ValueError("values out of range")

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(range(n + 1)))

    @classmethod
    def coface(cls, i, n):
        """The injection [n-1] -> [n] whose image misses i."""
        if not 0 <= i <= n:
            raise ValueError("coface index out of range")
        return cls(n - 1, n, tuple(v for v in range(n + 1) if v != i))

    @classmethod
    def codegeneracy(cls, j, n):
        """The surjection [n+1] -> [n] sending both j and j+1 to j."""
        if not 0 <= j <= n:
            raise ValueError("codegeneracy index out of range")
        vals = list(range(j + 1)) + [j] + list(range(j + 1, n + 1))
        return cls(n + 1, n, tuple(vals))

    def __call__(self, x):
        return self.values[x]

    def is_identity(self):
        return (self.source_rank == self.target_rank
                and self.values == tuple(range(self.source_rank + 1)))


def compose(f: DeltaMorphism, g: DeltaMorphism) -> DeltaMorphism:
    """The composite applying g first, then f."""
    if f.source_rank != g.target_rank:
        raise CompositionError(
            f"cannot compose [{g.source_rank}]->[{g.target_rank}] "
            f"then [{f.source_rank}]->[{f.target_rank}]")
    return DeltaMorphism(g.source_rank, f.target_rank,
                         tuple(f.values[v] for v in g.values))


def all_monotone_maps(q, p):
    """Every weakly monotone [q] -> [p], in lexicographic order."""
    out = []

    def rec(prefix, lo):
        if len(prefix) == q + 1:
            out.append(DeltaMorphism(q, p, tuple(prefix)))
            return
        for v in range(lo, p + 1):
            rec(prefix + [v], v)

    rec([], 0)
    return out


@dataclass(frozen=True)
class OperatorWord:
    """A word in cofaces/codegeneracies, read left to right as composition."""
    source_rank: int
    generators: tuple
    canonical: bool = False

    def __post_init__(self):
        self.target_rank  # validates rank compatibility

    @property
    def target_rank(self):
        # walk right to left from the source rank
        rank = self.source_rank
        for kind, idx in reversed(self.generators):
            if kind == FACE:
                if not 0 <= idx <= rank + 1:
                    raise CompositionError(f"coface index {idx} at rank {rank}")
                rank += 1
            elif kind == DEGEN:
                if not (rank >= 1 and 0 <= idx <= rank - 1):
                    raise CompositionError(
                        f"codegeneracy index {idx} at rank {rank}")
                rank -= 1
            else:
                raise ValueError(f"unknown generator kind {kind!r}")
        return rank

    def evaluate(self) -> DeltaMorphism:
        """The underlying monotone map."""
        f = DeltaMorphism.identity(self.source_rank)
        for kind, idx in reversed(self.generators):
            if kind == FACE:
                g = DeltaMorphism.coface(idx, f.target_rank + 1)
            else:
                g = DeltaMorphism.codegeneracy(idx, f.target_rank - 1)
            f = compose(g, f)
        return f

    def concat(self, other: OperatorWord) -> OperatorWord:
        """self after other (other is applied first)."""
        if other.target_rank != self.source_rank:
            raise CompositionError("rank mismatch in word concatenation")
        return OperatorWord(other.source_rank,
                            self.generators + other.generators)


def canonical_factorization(f: DeltaMorphism) -> OperatorWord:
    """The unique word e^{i_s}..e^{i_1} n^{j_1}..n^{j_t} equal to f."""
    doubled = [j for j in range(f.source_rank)
               if f.values[j] == f.values[j + 1]]
    image = set(f.values)
    skipped = [i for i in range(f.target_rank + 1) if i not in image]
    gens = ([(FACE, i) for i in reversed(skipped)]
            + [(DEGEN, j) for j in doubled])
    word = OperatorWord(f.source_rank, tuple(gens), canonical=True)
    assert word.target_rank == f.target_rank
    return word


def _find_violation(gens):
    for m in range(len(gens) - 1):
        (ka, a), (kb, b) = gens[m], gens[m + 1]
        if ka == DEGEN and kb == FACE:
            return m
        if ka == FACE and kb == FACE and a <= b:
            return m
        if ka == DEGEN and kb == DEGEN and a >= b:
            return m
    return None


def normalize(w: OperatorWord) -> OperatorWord:
    """Canonical form via the simplicial identities, leftmost violation first."""
    gens = list(w.generators)
    while True:
        m = _find_violation(gens)
        if m is None:
            break
        (ka, a), (kb, b) = gens[m], gens[m + 1]
        if ka == DEGEN and kb == FACE:
            if b < a:
                repl = [(FACE, b), (DEGEN, a - 1)]
            elif b in (a, a + 1):
                repl = []
            else:
                repl = [(FACE, b - 1), (DEGEN, a)]
        elif ka == FACE:
            repl = [(FACE, b + 1), (FACE, a)]
        else:
            repl = [(DEGEN, b), (DEGEN, a + 1)]
        gens[m:m + 2] = repl
    return OperatorWord(w.source_rank, tuple(gens), canonical=True)


def commute_faces_past_degeneracies(kind, power, indices, level):
    """Push a power of the first/last face across a degeneracy word.

    ``indices`` is the sorted index set of the degeneracy word
    s_{a_k}..s_{a_1} landing at ``level``; returns the surviving index set
    and the face power that emerges on the right.
    """
    cur = sorted(indices)
    if cur and not (0 <= cur[0] and cur[-1] <= level - 1):
        raise ValueError("degeneracy indices out of range for level")
    if power > level:
        raise ValueError("face power exceeds level")
    if kind == "front":
        residual = 0
        for _ in range(power):
            if cur and cur[0] == 0:
                cur = [x - 1 for x in cur[1:]]
            else:
                cur = [x - 1 for x in cur]
                residual += 1
        return tuple(cur), residual
    if kind == "back":
        residual = 0
        top = level
        for _ in range(power):
            n_cur = top
            cancelled = False
            for m in range(len(cur) - 1, -1, -1):
                if cur[m] == n_cur - 1:
                    del cur[m]
                    cancelled = True
                    break
                n_cur -= 1
            if not cancelled:
                residual += 1
            top -= 1
        return tuple(cur), residual
    raise ValueError(f"kind must be 'front' or 'back', got {kind!r}")


def action_word(tokens, level) -> OperatorWord:
    """Operator word for a face/degeneracy action on level-``level`` simplices.

    ``tokens`` is the textual syntax: whitespace-separated ``d<i>``/``s<j>``
    read left to right as composition order of the action (rightmost acts
    first).  The returned word is the corresponding morphism of the simplex
    category, target rank ``level``.
    """
    if isinstance(tokens, str):
        tokens = tokens.split()
    gens = []
    for tok in reversed(tokens):
        if len(tok) < 2 or tok[0] not in "ds" or not tok[1:].isdigit():
            raise ValueError(f"bad operator token {tok!r}")
        idx = int(tok[1:])
        gens.append((FACE, idx) if tok[0] == "d" else (DEGEN, idx))
    # walk from the target rank (the level acted on) down to the source rank
    rank = level
    for kind, _ in gens:
        rank += -1 if kind == FACE else 1
        if rank < 0:
            raise CompositionError("action drops below level 0")
    word = OperatorWord(rank, tuple(gens))
    if word.target_rank != level:
        raise CompositionError("action does not land at the given level")
    return word
