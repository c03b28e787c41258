"""Truncated simplicial abelian groups with explicit face/degeneracy matrices."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .delta import (FACE, DeltaMorphism, OperatorWord, all_monotone_maps,
                    compose)
from .intmat import IntMatrix
from .report import VerificationReport


class TruncationError(ValueError):
    """Operands have incompatible max degrees."""


@dataclass
class SimplicialModule:
    """Levelwise free abelian group, levels 0..max_degree.

    faces[(n, i)] is the matrix of d_i: level n -> level n-1;
    degens[(n, i)] that of s_i: level n -> level n+1.
    """
    max_degree: int
    ranks: list
    faces: dict
    degens: dict
    basis_labels: list = field(default=None, repr=False)
    name: str = ""

    def rank(self, n):
        return self.ranks[n]

    def face(self, n, i):
        return self.faces[(n, i)]

    def degeneracy(self, n, i):
        return self.degens[(n, i)]

    def label(self, n, idx):
        if self.basis_labels is not None:
            return self.basis_labels[n][idx]
        return f"e{n}_{idx}"

    def serialize(self):
        """Deterministic text form for golden tests."""
        lines = [f"max_degree {self.max_degree}",
                 "ranks " + " ".join(str(r) for r in self.ranks)]
        for n in range(1, self.max_degree + 1):
            for i in range(n + 1):
                lines.append(f"face {n} {i}")
                for row in self.faces[(n, i)].to_rows():
                    lines.append(" ".join(str(v) for v in row))
        for n in range(self.max_degree):
            for i in range(n + 1):
                lines.append(f"degeneracy {n} {i}")
                for row in self.degens[(n, i)].to_rows():
                    lines.append(" ".join(str(v) for v in row))
        return "\n".join(lines) + "\n"


@dataclass
class SimplicialMap:
    source: SimplicialModule
    target: SimplicialModule
    levels: list

    def level(self, n):
        return self.levels[n]

    @classmethod
    def identity(cls, a):
        return cls(a, a, [IntMatrix.identity(r) for r in a.ranks])

    def compose(self, other):
        """self after other."""
        return SimplicialMap(other.source, self.target,
                             [f @ g for f, g in zip(self.levels, other.levels)])

    def is_simplicial(self, max_level=None):
        top = self.source.max_degree if max_level is None else max_level
        for n in range(1, top + 1):
            for i in range(n + 1):
                lhs = self.levels[n - 1] @ self.source.face(n, i)
                rhs = self.target.face(n, i) @ self.levels[n]
                if lhs != rhs:
                    return False
        for n in range(top):
            for i in range(n + 1):
                lhs = self.levels[n + 1] @ self.source.degeneracy(n, i)
                rhs = self.target.degeneracy(n, i) @ self.levels[n]
                if lhs != rhs:
                    return False
        return True


def free_on_standard_simplex(p, max_degree, name=None):
    """Linearization of the standard p-simplex, truncated at max_degree.

    Level n has basis the monotone maps [n] -> [p] in lexicographic order;
    structure maps are precomposition with the cofaces/codegeneracies.
    """
    basis = [all_monotone_maps(n, p) for n in range(max_degree + 1)]
    index = [{f.values: k for k, f in enumerate(level)} for level in basis]
    ranks = [len(level) for level in basis]
    faces = {}
    degens = {}
    for n in range(1, max_degree + 1):
        for i in range(n + 1):
            eps = DeltaMorphism.coface(i, n)
            targets = [index[n - 1][compose(x, eps).values] for x in basis[n]]
            faces[(n, i)] = IntMatrix.permutation(targets, nrows=ranks[n - 1])
    for n in range(max_degree):
        for i in range(n + 1):
            eta = DeltaMorphism.codegeneracy(i, n)
            targets = [index[n + 1][compose(x, eta).values] for x in basis[n]]
            degens[(n, i)] = IntMatrix.permutation(targets, nrows=ranks[n + 1])
    labels = [[''.join(str(v) for v in f.values) for f in level]
              for level in basis]
    return SimplicialModule(max_degree, ranks, faces, degens, labels,
                            name=name or f"delta:{p}")


def constant_z(max_degree):
    """The monoidal unit: Z at every level, all structure maps the identity."""
    a = free_on_standard_simplex(0, max_degree, name="const:Z")
    return a


class MonoidTableError(ValueError):
    """The multiplication table is not an associative unital monoid."""


def _monoid_unit(table):
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    raise MonoidTableError("no two-sided unit")


def validate_monoid(table):
    n = len(table)
    if any(len(row) != n for row in table):
        raise MonoidTableError("table is not square")
    e = _monoid_unit(table)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise MonoidTableError(
                        f"not associative at ({a},{b},{c})")
    return e


def free_on_nerve(table, max_degree, name=None):
    """Linearized nerve of a finite monoid given by its multiplication table."""
    e = validate_monoid(table)
    m = len(table)
    basis = [list(itertools.product(range(m), repeat=n))
             for n in range(max_degree + 1)]
    index = [{t: k for k, t in enumerate(level)} for level in basis]
    ranks = [len(level) for level in basis]
    faces = {}
    degens = {}
    for n in range(1, max_degree + 1):
        for i in range(n + 1):
            targets = []
            for t in basis[n]:
                if i == 0:
                    u = t[1:]
                elif i == n:
                    u = t[:-1]
                else:
                    u = t[:i - 1] + (table[t[i - 1]][t[i]],) + t[i + 1:]
                targets.append(index[n - 1][u])
            faces[(n, i)] = IntMatrix.permutation(targets, nrows=ranks[n - 1])
    for n in range(max_degree):
        for i in range(n + 1):
            targets = [index[n + 1][t[:i] + (e,) + t[i:]] for t in basis[n]]
            degens[(n, i)] = IntMatrix.permutation(targets, nrows=ranks[n + 1])
    labels = [["(" + ",".join(str(x) for x in t) + ")" for t in level]
              for level in basis]
    return SimplicialModule(max_degree, ranks, faces, degens, labels,
                            name=name or f"nerve:{m}")


def tensor(a: SimplicialModule, b: SimplicialModule) -> SimplicialModule:
    """Levelwise tensor product; basis order is row-major (a outer, b inner)."""
    if a.max_degree != b.max_degree:
        raise TruncationError("tensor factors must share max_degree")
    d = a.max_degree
    ranks = [ra * rb for ra, rb in zip(a.ranks, b.ranks)]
    faces = {(n, i): a.face(n, i).kron(b.face(n, i))
             for n in range(1, d + 1) for i in range(n + 1)}
    degens = {(n, i): a.degeneracy(n, i).kron(b.degeneracy(n, i))
              for n in range(d) for i in range(n + 1)}
    labels = None
    if a.basis_labels is not None and b.basis_labels is not None:
        labels = [[f"{la}*{lb}" for la in a.basis_labels[n]
                   for lb in b.basis_labels[n]] for n in range(d + 1)]
    return SimplicialModule(d, ranks, faces, degens, labels,
                            name=f"({a.name})x({b.name})")


def tensor_map(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    return SimplicialMap(tensor(f.source, g.source),
                         tensor(f.target, g.target),
                         [fl.kron(gl) for fl, gl in zip(f.levels, g.levels)])


def swap(a: SimplicialModule, b: SimplicialModule) -> SimplicialMap:
    """The symmetry A (x) B -> B (x) A: a levelwise basis transposition."""
    if a.max_degree != b.max_degree:
        raise TruncationError("swap factors must share max_degree")
    levels = []
    for ra, rb in zip(a.ranks, b.ranks):
        targets = [j * ra + i for i in range(ra) for j in range(rb)]
        levels.append(IntMatrix.permutation(targets, nrows=ra * rb))
    return SimplicialMap(tensor(a, b), tensor(b, a), levels)


def middle_swap_levels(x, y, z, w) -> list:
    """Levelwise permutation matrices of the middle-factor interchange."""
    levels = []
    for n in range(x.max_degree + 1):
        rx, ry, rz, rw = (x.ranks[n], y.ranks[n], z.ranks[n], w.ranks[n])
        targets = []
        for ix in range(rx):
            for iy in range(ry):
                for iz in range(rz):
                    for iw in range(rw):
                        targets.append(((ix * rz + iz) * ry + iy) * rw + iw)
        levels.append(IntMatrix.permutation(targets, nrows=rx * ry * rz * rw))
    return levels


def middle_swap(x, y, z, w) -> SimplicialMap:
    """(X(x)Y)(x)(Z(x)W) -> (X(x)Z)(x)(Y(x)W), permuting the middle factors."""
    src = tensor(tensor(x, y), tensor(z, w))
    tgt = tensor(tensor(x, z), tensor(y, w))
    return SimplicialMap(src, tgt, middle_swap_levels(x, y, z, w))


def induced_map(f: DeltaMorphism, max_degree) -> SimplicialMap:
    """The map Z[standard simplex] -> Z[standard simplex] induced by f."""
    a = free_on_standard_simplex(f.source_rank, max_degree)
    b = free_on_standard_simplex(f.target_rank, max_degree)
    levels = []
    for n in range(max_degree + 1):
        src_basis = all_monotone_maps(n, f.source_rank)
        tgt_index = {g.values: k
                     for k, g in enumerate(all_monotone_maps(n, f.target_rank))}
        targets = [tgt_index[compose(f, x).values] for x in src_basis]
        levels.append(IntMatrix.permutation(targets, nrows=b.ranks[n]))
    return SimplicialMap(a, b, levels)


# -- operator-word evaluation ----------------------------------------

def apply_word(a: SimplicialModule, word: OperatorWord) -> IntMatrix:
    """Matrix of the contravariant action of a simplex-category word.

    A word [q] -> [p] acts on level-p elements producing level-q elements.
    """
    level = word.target_rank
    mat = IntMatrix.identity(a.ranks[level])
    for kind, idx in word.generators:
        if kind == FACE:
            mat = a.face(level, idx) @ mat
            level -= 1
        else:
            mat = a.degeneracy(level, idx) @ mat
            level += 1
    return mat


def degeneracy_composite(a: SimplicialModule, level, indices) -> IntMatrix:
    """Matrix of s_{i_k}..s_{i_1} (indices ascending, lowest applied first)."""
    mat = IntMatrix.identity(a.ranks[level])
    cur = level
    for idx in sorted(indices):
        mat = a.degeneracy(cur, idx) @ mat
        cur += 1
    return mat


def last_faces(a: SimplicialModule, level, count) -> IntMatrix:
    """Matrix of the iterated last face, index decreasing per application."""
    mat = IntMatrix.identity(a.ranks[level])
    cur = level
    for _ in range(count):
        mat = a.face(cur, cur) @ mat
        cur -= 1
    return mat


def first_faces(a: SimplicialModule, level, count) -> IntMatrix:
    """Matrix of the iterated zeroth face."""
    mat = IntMatrix.identity(a.ranks[level])
    cur = level
    for _ in range(count):
        mat = a.face(cur, 0) @ mat
        cur -= 1
    return mat


# -- validation ------------------------------------------------------

def validate(a: SimplicialModule) -> VerificationReport:
    """Check the five simplicial-identity clauses at every truncated level."""
    rep = VerificationReport("simplicial-identities", objects=[a.name],
                             max_level=a.max_degree)
    d = a.max_degree

    def record(level, label, lhs, rhs):
        if lhs != rhs:
            diff = lhs - rhs
            key = min(diff.data)
            rep.fail(level, label,
                     lhs[key], rhs[key])

    for n in range(2, d + 1):
        for j in range(n + 1):
            for i in range(j):
                record(n, f"d{i} d{j} = d{j-1} d{i} @level {n}",
                       a.face(n - 1, i) @ a.face(n, j),
                       a.face(n - 1, j - 1) @ a.face(n, i))
    for n in range(d - 1):
        for i in range(n + 1):
            for j in range(i, n + 1):
                record(n, f"s{i} s{j} = s{j+1} s{i} @level {n}",
                       a.degeneracy(n + 1, i) @ a.degeneracy(n, j),
                       a.degeneracy(n + 1, j + 1) @ a.degeneracy(n, i))
    for n in range(d):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = a.face(n + 1, i) @ a.degeneracy(n, j)
                if i < j:
                    record(n, f"d{i} s{j} = s{j-1} d{i} @level {n}",
                           lhs, a.degeneracy(n - 1, j - 1) @ a.face(n, i))
                elif i in (j, j + 1):
                    record(n, f"d{i} s{j} = 1 @level {n}",
                           lhs, IntMatrix.identity(a.ranks[n]))
                else:
                    record(n, f"d{i} s{j} = s{j} d{i-1} @level {n}",
                           lhs, a.degeneracy(n - 1, j) @ a.face(n, i - 1))
    for (n, i), mat in a.faces.items():
        if mat.shape != (a.ranks[n - 1], a.ranks[n]):
            rep.fail(n, f"face d{i} shape @level {n}", mat.shape,
                     (a.ranks[n - 1], a.ranks[n]))
    for (n, i), mat in a.degens.items():
        if mat.shape != (a.ranks[n + 1], a.ranks[n]):
            rep.fail(n, f"degeneracy s{i} shape @level {n}", mat.shape,
                     (a.ranks[n + 1], a.ranks[n]))
    return rep.finish()
