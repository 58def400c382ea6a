"""Tabloids of a given shape, their enumeration, and the S_n action.

A tabloid is an assignment of {1,...,n} to the rows of a Young diagram,
order within rows irrelevant. The enumeration is fixed: tabloids are
ordered lexicographically by the word (row(n), row(n-1), ..., row(1)),
which makes indices reproducible and puts the three tabloids of shape
(2,1) in the order used by the worked change-of-basis fixtures.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .combinatorics import Partition, to_partition
from .sparse import SparseFactor


class Tabloid:
    """Rows of disjoint entry sets partitioning {1,...,n}; canonical form
    stores each row as a sorted tuple."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        self.rows = tuple(tuple(sorted(r)) for r in rows)
        self._hash = hash(self.rows)

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def shape(self) -> tuple:
        return tuple(len(r) for r in self.rows)

    def row_of(self, entry: int) -> int:
        """0-based row index holding `entry`."""
        for i, r in enumerate(self.rows):
            if entry in r:
                return i
        raise ValueError(f"{entry} not in tabloid")

    def __eq__(self, other):
        return isinstance(other, Tabloid) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Tabloid(" + " | ".join(" ".join(map(str, r)) for r in self.rows) + ")"


@dataclass(frozen=True)
class OrbitKey:
    """Identifies the orbit of a tabloid under S_j (permuting {1,...,j}):
    the rows holding the untouched entries j+1,...,n."""

    level: int
    assignment: tuple  # row index of entry e, for e = level+1, ..., n

    @classmethod
    def of(cls, tabloid: Tabloid, level: int) -> "OrbitKey":
        n = tabloid.n
        return cls(level, tuple(tabloid.row_of(e) for e in range(level + 1, n + 1)))


class TabloidSpace:
    """All tabloids of one partition shape with a fixed index map."""

    def __init__(self, shape):
        shape = Partition(shape)
        if shape.n < 1:
            raise ValueError("tabloid space needs n >= 1")
        self.shape = shape
        self.n = shape.n
        self.elements = tuple(self._enumerate(shape))
        self.index = {t: i for i, t in enumerate(self.elements)}
        self.size = len(self.elements)
        assert self.size == space_size(shape)
        self._transposition_cache = {}

    @staticmethod
    def _enumerate(shape):
        # Assign entries n, n-1, ..., 1 to rows with remaining capacity,
        # trying rows in ascending order: lexicographic in the word
        # (row(n), ..., row(1)).
        n = shape.n
        rows = [[] for _ in shape]
        capacity = list(shape)
        out = []

        def place(entry):
            if entry == 0:
                out.append(Tabloid(rows))
                return
            for i in range(len(shape)):
                if capacity[i]:
                    capacity[i] -= 1
                    rows[i].append(entry)
                    place(entry - 1)
                    rows[i].pop()
                    capacity[i] += 1

        place(n)
        return out

    def index_of(self, tabloid: Tabloid) -> int:
        return self.index[tabloid]

    def act_index(self, sigma, idx: int) -> int:
        return self.index[act(sigma, self.elements[idx])]

    def transposition_permutation(self, a: int, b: int) -> list:
        """Index permutation of the transposition (a b): position t maps to
        the index of (a b) applied to element t."""
        key = (min(a, b), max(a, b))
        if key not in self._transposition_cache:
            a, b = key
            perm = []
            for t in self.elements:
                rows = [set(r) for r in t.rows]
                ra = t.row_of(a)
                rb = t.row_of(b)
                if ra != rb:
                    rows[ra].discard(a)
                    rows[ra].add(b)
                    rows[rb].discard(b)
                    rows[rb].add(a)
                perm.append(self.index[Tabloid(rows)])
            self._transposition_cache[key] = perm
        return self._transposition_cache[key]

    def orbit_keys(self, level: int) -> list:
        """OrbitKey at `level` for every element, by element index."""
        return [OrbitKey.of(t, level) for t in self.elements]

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"TabloidSpace(shape={tuple(self.shape)}, size={self.size})"


def space_size(shape) -> int:
    shape = Partition(shape)
    denom = 1
    for p in shape:
        denom *= factorial(p)
    return factorial(shape.n) // denom


def enumerate_tabloids(shape) -> TabloidSpace:
    return TabloidSpace(shape)


def act(sigma, tabloid: Tabloid) -> Tabloid:
    """Apply a permutation entrywise and recanonicalize."""
    if sigma.n != tabloid.n:
        raise ValueError(f"permutation of {sigma.n} cannot act on tabloid of {tabloid.n}")
    return Tabloid(tuple(sigma(e) for e in row) for row in tabloid.rows)


def permutation_matrix(sigma, space: TabloidSpace) -> SparseFactor:
    """0/1 matrix of the action in the standard basis: entry (i, j) = 1
    when sigma sends element j to element i."""
    entries = []
    for j in range(space.size):
        entries.append((space.act_index(sigma, j), j, 1))
    entries.sort()
    return SparseFactor(space.size, entries)


def orbits_under(space: TabloidSpace, level: int):
    """Group element indices into S_level orbits.

    Returns a list of (OrbitKey, shape_tag, sorted index list) triples,
    ordered by smallest element index. The shape tag is the partition of
    `level` formed by the row counts of the remaining entries 1..level,
    i.e. the shape reached by removing entries n, n-1, ..., level+1 one at
    a time.
    """
    if not 1 <= level <= space.n:
        raise ValueError(f"level must be in 1..{space.n}")
    groups = {}
    for i, key in enumerate(space.orbit_keys(level)):
        groups.setdefault(key, []).append(i)
    out = []
    for key, members in groups.items():
        remaining = list(space.shape)
        for row in key.assignment:
            remaining[row] -= 1
        tag = to_partition(remaining)
        assert space_size(tag) == len(members)
        out.append((key, tag, sorted(members)))
    out.sort(key=lambda item: item[2][0])
    return out


@lru_cache(maxsize=None)
def orbit_shape_multiset(shape, level: int) -> tuple:
    """Multiset of orbit shape tags of S_level on the tabloids of `shape`,
    computed structurally (no tabloid enumeration): repeatedly remove one
    box from each distinct row length.

    Returns sorted ((tag, multiplicity), ...).
    """
    shape = Partition(shape)
    if not 1 <= level <= shape.n:
        raise ValueError(f"level must be in 1..{shape.n}")
    current = {shape: 1}
    for _ in range(shape.n - level):
        nxt = {}
        for nu, count in current.items():
            for row in range(len(nu)):
                child = to_partition(nu[:row] + (nu[row] - 1,) + nu[row + 1:])
                nxt[child] = nxt.get(child, 0) + count
        current = nxt
    return tuple(sorted(current.items()))
