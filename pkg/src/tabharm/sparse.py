"""Sparse square matrices used as change-of-basis factors, with the
operation accounting used throughout: applying a factor costs one
multiplication per stored entry whose value is not 1, and one addition per
accumulation after the first into an output slot. Entries exactly equal
to 1 are free multiplications; zero entries are never stored.
"""

from dataclasses import dataclass, field


@dataclass
class OpCount:
    multiplications: int = 0
    additions: int = 0

    @property
    def total(self) -> int:
        return self.multiplications + self.additions

    def __add__(self, other: "OpCount") -> "OpCount":
        return OpCount(self.multiplications + other.multiplications,
                       self.additions + other.additions)

    def __iadd__(self, other: "OpCount") -> "OpCount":
        self.multiplications += other.multiplications
        self.additions += other.additions
        return self


@dataclass
class SparseFactor:
    """Square sparse matrix stored as (row, col, value) triples."""

    size: int
    entries: list = field(default_factory=list)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def column_counts(self) -> list:
        counts = [0] * self.size
        for _, c, _ in self.entries:
            counts[c] += 1
        return counts

    def max_column_nnz(self) -> int:
        return max(self.column_counts(), default=0)

    def row_counts(self) -> list:
        counts = [0] * self.size
        for r, _, _ in self.entries:
            counts[r] += 1
        return counts

    def op_cost(self) -> OpCount:
        """Data-independent cost of one matrix-vector product."""
        mults = sum(1 for _, _, v in self.entries if v != 1)
        adds = sum(c - 1 for c in self.row_counts() if c > 0)
        return OpCount(mults, adds)

    def apply(self, vec, ops: OpCount | None = None) -> list:
        """Matrix-vector product, accumulating op counts if given."""
        if len(vec) != self.size:
            raise ValueError(f"vector length {len(vec)} != factor size {self.size}")
        out = [None] * self.size
        mults = adds = 0
        for r, c, v in self.entries:
            if v == 1:
                term = vec[c]
            else:
                term = v * vec[c]
                mults += 1
            if out[r] is None:
                out[r] = term
            else:
                out[r] = out[r] + term
                adds += 1
        zero = 0 * vec[0] if self.size else 0
        result = [zero if x is None else x for x in out]
        if ops is not None:
            ops.multiplications += mults
            ops.additions += adds
        return result

    def to_dense(self, zero=0) -> list:
        dense = [[zero] * self.size for _ in range(self.size)]
        for r, c, v in self.entries:
            dense[r][c] = dense[r][c] + v
        return dense

    def transpose(self) -> "SparseFactor":
        return SparseFactor(self.size, sorted((c, r, v) for r, c, v in self.entries))

    def blocks(self) -> list:
        """Connected components of the row/column incidence graph, as
        (rows, cols) index lists. For a permuted block-diagonal invertible
        matrix these are exactly the blocks."""
        parent = list(range(2 * self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for r, c, _ in self.entries:
            a, b = find(r), find(self.size + c)
            if a != b:
                parent[a] = b
        comps = {}
        for r, c, _ in self.entries:
            comps.setdefault(find(r), [set(), set()])
        for r, c, _ in self.entries:
            root = find(r)
            comps[root][0].add(r)
            comps[root][1].add(c)
        return [(sorted(rows), sorted(cols)) for rows, cols in comps.values()]


def from_dense(dense, drop_tol=None) -> SparseFactor:
    size = len(dense)
    entries = []
    for r in range(size):
        for c in range(size):
            v = dense[r][c]
            if drop_tol is None:
                if v != 0:
                    entries.append((r, c, v))
            elif abs(v) > drop_tol:
                entries.append((r, c, v))
    return SparseFactor(size, entries)
