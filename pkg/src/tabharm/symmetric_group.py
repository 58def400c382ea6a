"""Permutations, standard tableaux, Young's seminormal representation, and
a brute-force character oracle for multiplicities.

Standard tableaux are stored as chains of partitions (one box added per
level); the tableau ordering used everywhere is the last-letter order:
compare the shapes below the top level, latest level first, ascending.
This is the ordering under which restriction to smaller symmetric groups
is block-structured.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .combinatorics import Partition, dim_specht
from .sparse import SparseFactor
from .tabloids import TabloidSpace, act

ORACLE_LIMIT = 6


class Permutation:
    """Permutation of {1,...,n}; images[i-1] = sigma(i)."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        imgs = list(range(1, n + 1))
        imgs[a - 1], imgs[b - 1] = b, a
        return cls(imgs)

    @classmethod
    def adjacent(cls, n: int, i: int) -> "Permutation":
        return cls.transposition(n, i, i + 1)

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        imgs = list(range(1, n + 1))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + type(cycle)((cycle[0],))):
                imgs[a - 1] = b
        return cls(imgs)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(x) = self(other(x))
        return Permutation(self.images[o - 1] for o in other.images)

    def inverse(self) -> "Permutation":
        imgs = [0] * self.n
        for i, img in enumerate(self.images):
            imgs[img - 1] = i + 1
        return Permutation(imgs)

    def is_identity(self) -> bool:
        return all(img == i + 1 for i, img in enumerate(self.images))

    def adjacent_word(self) -> list:
        """Indices i1,...,ik with self = s_{i1} * s_{i2} * ... * s_{ik}."""
        imgs = list(self.images)
        collected = []
        changed = True
        while changed:
            changed = False
            for i in range(len(imgs) - 1):
                if imgs[i] > imgs[i + 1]:
                    imgs[i], imgs[i + 1] = imgs[i + 1], imgs[i]
                    collected.append(i + 1)
                    changed = True
        # imgs is now sorted: self * s_{c1} * ... * s_{ck} = identity,
        # hence self = s_{ck} * ... * s_{c1}.
        return collected[::-1]

    def cycle_type(self) -> Partition:
        seen = [False] * self.n
        lengths = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            length = 0
            x = start
            while not seen[x - 1]:
                seen[x - 1] = True
                x = self(x)
                length += 1
            lengths.append(length)
        return Partition(sorted(lengths, reverse=True))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation{self.images}"


@dataclass(frozen=True)
class StandardTableau:
    """A standard Young tableau as a chain of partitions; chain[l-1] is the
    shape after placing entries 1..l."""

    chain: tuple

    @property
    def shape(self) -> Partition:
        return self.chain[-1]

    @property
    def n(self) -> int:
        return len(self.chain)

    def sort_key(self):
        # Last-letter order: shapes below the top, latest first, ascending.
        return tuple(tuple(p) for p in reversed(self.chain[:-1]))

    def box_at(self, level: int):
        """(row, col) of the entry `level`, 0-based."""
        cur = self.chain[level - 1]
        prev = self.chain[level - 2] if level >= 2 else Partition(())
        for row in range(len(cur)):
            if row >= len(prev) or cur[row] != prev[row]:
                return row, cur[row] - 1
        raise AssertionError("invalid chain")

    def content_at(self, level: int) -> int:
        row, col = self.box_at(level)
        return col - row

    def axial_distance(self, i: int) -> int:
        """Signed axial distance from entry i to entry i+1."""
        return self.content_at(i + 1) - self.content_at(i)

    def apply_adjacent(self, i: int):
        """The tableau with entries i and i+1 swapped, or None if that is
        not standard (|axial distance| < 2)."""
        if abs(self.axial_distance(i)) < 2:
            return None
        prev = self.chain[i - 2] if i >= 2 else Partition(())
        row_next, _ = self.box_at(i + 1)
        swapped = prev.add_box(row_next)
        chain = self.chain[:i - 1] + (swapped,) + self.chain[i:]
        return StandardTableau(chain)

    def parent(self) -> "StandardTableau":
        return StandardTableau(self.chain[:-1])

    def rows(self) -> list:
        """Entry layout, for display."""
        out = [[] for _ in self.shape]
        for level in range(1, self.n + 1):
            row, _ = self.box_at(level)
            out[row].append(level)
        return out

    def __repr__(self):
        return "StandardTableau(" + "/".join(" ".join(map(str, r)) for r in self.rows()) + ")"


@lru_cache(maxsize=None)
def standard_tableaux(shape) -> tuple:
    """All standard tableaux of a shape, in last-letter order."""
    shape = Partition(shape)
    if shape.n == 0:
        return (StandardTableau((Partition(()),)),)
    if shape.n == 1:
        return (StandardTableau((shape,)),)
    out = []
    for row in shape.removable_corners():
        for sub in standard_tableaux(shape.remove_box(row)):
            out.append(StandardTableau(sub.chain + (shape,)))
    out.sort(key=StandardTableau.sort_key)
    assert len(out) == dim_specht(shape)
    return tuple(out)


def minimal_tableau(shape) -> StandardTableau:
    """First tableau of the shape in last-letter order: repeatedly remove
    the topmost removable corner."""
    shape = Partition(shape)
    chain = [shape]
    cur = shape
    while cur.n > 1:
        cur = cur.remove_box(cur.removable_corners()[0])
        chain.append(cur)
    return StandardTableau(tuple(reversed(chain)))


@lru_cache(maxsize=None)
def seminormal_matrix(mu, i: int):
    """Matrix of the adjacent transposition s_i = (i, i+1) in Young's
    seminormal representation of shape mu, rows/columns indexed by
    standard tableaux in last-letter order.

    Column T has 1/d on the diagonal (d the axial distance from i to i+1
    in T) and, when s_i T is standard, a coupling to it: 1 below the
    diagonal (d > 0) or 1 - 1/d^2 above it (d < 0).
    """
    mu = Partition(mu)
    if not 1 <= i <= mu.n - 1:
        raise ValueError(f"generator index {i} out of range for n={mu.n}")
    tabs = standard_tableaux(mu)
    pos = {t: k for k, t in enumerate(tabs)}
    dim = len(tabs)
    mat = [[mpq(0)] * dim for _ in range(dim)]
    for col, t in enumerate(tabs):
        d = t.axial_distance(i)
        mat[col][col] = mpq(1, d)
        other = t.apply_adjacent(i)
        if other is not None:
            coupling = mpq(1) if d > 0 else 1 - mpq(1, d * d)
            mat[pos[other]][col] = coupling
    return mat


def rep_matrix(mu, sigma: Permutation):
    """Seminormal matrix of an arbitrary permutation (product over an
    adjacent-transposition word)."""
    mu = Partition(mu)
    dim = dim_specht(mu)
    out = [[mpq(1) if a == b else mpq(0) for b in range(dim)] for a in range(dim)]
    for i in sigma.adjacent_word():
        gen = seminormal_matrix(mu, i)
        out = [[sum((out[a][k] * gen[k][b] for k in range(dim)), mpq(0))
                for b in range(dim)] for a in range(dim)]
    return out


def character(mu, sigma: Permutation):
    mat = rep_matrix(mu, sigma)
    return sum((mat[k][k] for k in range(len(mat))), mpq(0))


def jm_matrix(j: int, space: TabloidSpace) -> SparseFactor:
    """Jucys-Murphy element X_j = sum of (i j) for i < j acting on the
    tabloid space, in the standard basis. Symmetric, integer entries."""
    if not 2 <= j <= space.n:
        raise ValueError(f"jm_matrix needs 2 <= j <= {space.n}")
    counts = {}
    for i in range(1, j):
        perm = space.transposition_permutation(i, j)
        for col, row in enumerate(perm):
            counts[(row, col)] = counts.get((row, col), 0) + 1
    entries = sorted((r, c, v) for (r, c), v in counts.items())
    return SparseFactor(space.size, entries)


def jm_row_values(space: TabloidSpace, j: int, indices, vec_get):
    """Values of X_j . v at the given element indices, where vec_get(t)
    returns v at element index t. Uses (i j) being involutions."""
    perms = [space.transposition_permutation(i, j) for i in range(1, j)]
    out = []
    for r in indices:
        total = None
        for perm in perms:
            val = vec_get(perm[r])
            total = val if total is None else total + val
        out.append(total)
    return out


class OracleScaleError(ValueError):
    pass


def _conjugacy_classes(j: int):
    """(cycle type, class size, representative in S_j) triples."""
    from .combinatorics import partitions_of

    out = []
    for ctype in partitions_of(j):
        z = 1
        mult = {}
        for part in ctype:
            mult[part] = mult.get(part, 0) + 1
        for part, m in mult.items():
            z *= part ** m * factorial(m)
        size = factorial(j) // z
        cycles = []
        start = 1
        for part in ctype:
            cycles.append(tuple(range(start, start + part)))
            start += part
        out.append((ctype, size, Permutation.from_cycles(j, cycles)))
    return out


_space_cache = {}


def _space(shape) -> TabloidSpace:
    shape = Partition(shape)
    if shape not in _space_cache:
        _space_cache[shape] = TabloidSpace(shape)
    return _space_cache[shape]


def multiplicity_oracle(lam, mu, j: int, limit: int = ORACLE_LIMIT) -> int:
    """Multiplicity of the irreducible of shape mu in the tabloid module of
    shape lam restricted to S_j, by direct character averaging:
    (1/j!) * sum over sigma in S_j of fix(sigma) * chi_mu(sigma).

    Deliberately brute force so it is independent of the Kostka counting
    path. Exact rational arithmetic; the result must come out an integer.
    """
    lam, mu = Partition(lam), Partition(mu)
    n = lam.n
    if mu.n != j or j > n:
        raise ValueError(f"need |mu| = j <= |lam|, got |mu|={mu.n}, j={j}, |lam|={n}")
    if j > limit:
        raise OracleScaleError(f"oracle scale exceeded: j={j} > limit {limit}")
    space = _space(lam)
    total = mpq(0)
    for _, size, rep in _conjugacy_classes(j):
        embedded = Permutation(tuple(rep.images) + tuple(range(j + 1, n + 1)))
        fixed = sum(1 for t in space.elements if act(embedded, t) == t)
        total += size * fixed * character(mu, rep)
    total = total / factorial(j)
    assert total.denominator == 1, "character average must be an integer"
    result = int(total)
    assert result >= 0
    return result
