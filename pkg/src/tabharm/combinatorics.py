"""Integer-partition combinatorics underlying the transform bounds.

Everything here is exact integer arithmetic: dominance order, Kostka
numbers, standard tableau counts (straight and skew), and the derived
quantities D(l, r), M(n, k), N(k) that bound multiplicities for
single-hook shapes.
"""

from functools import lru_cache, reduce
from math import factorial
from operator import mul


class Partition(tuple):
    """A partition: weakly decreasing tuple of positive integers.

    Behaves as a plain tuple (hashable, lexicographically comparable);
    construction validates shape. The empty partition of 0 is allowed.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(f"partition parts must be positive, got {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"partition parts must be weakly decreasing, got {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def parts(self) -> tuple:
        return tuple(self)

    def contains(self, other) -> bool:
        """Componentwise containment of Young diagrams."""
        if len(other) > len(self):
            return False
        return all(o <= s for s, o in zip(self, other))

    def removable_corners(self) -> list:
        """Row indices whose last box can be removed leaving a partition."""
        rows = []
        for i in range(len(self)):
            below = self[i + 1] if i + 1 < len(self) else 0
            if self[i] > below:
                rows.append(i)
        return rows

    def addable_rows(self) -> list:
        """Row indices where one box can be added leaving a partition."""
        rows = [i for i in range(len(self)) if i == 0 or self[i] < self[i - 1]]
        rows.append(len(self))
        return rows

    def remove_box(self, row: int) -> "Partition":
        parts = list(self)
        parts[row] -= 1
        if parts[row] == 0:
            parts.pop(row)
        return Partition(parts)

    def add_box(self, row: int) -> "Partition":
        parts = list(self)
        if row == len(parts):
            parts.append(1)
        else:
            parts[row] += 1
        return Partition(parts)

    def content(self, row: int) -> int:
        """Content (column - row) of the box added at the end of `row`."""
        col = self[row] if row < len(self) else 0
        return col - row


class WeakComposition(tuple):
    """A sequence of nonnegative integers; zeros and ordering are free."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"composition parts must be nonnegative, got {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)


class SkewShape:
    """A skew diagram outer/inner; valid only when outer contains inner."""

    def __init__(self, outer, inner):
        self.outer = Partition(outer)
        self.inner = Partition(inner)

    @property
    def valid(self) -> bool:
        return self.outer.contains(self.inner)

    @property
    def size(self) -> int:
        return self.outer.n - self.inner.n

    def rows(self) -> list:
        """Per-row (start_col, end_col) spans of the skew boxes."""
        spans = []
        for i, outer_len in enumerate(self.outer):
            inner_len = self.inner[i] if i < len(self.inner) else 0
            spans.append((inner_len, outer_len))
        return spans

    def __repr__(self):
        return f"SkewShape({tuple(self.outer)}/{tuple(self.inner)})"


def to_partition(alpha) -> Partition:
    """Sort the positive parts of a weak composition into a partition."""
    return Partition(sorted((p for p in alpha if p > 0), reverse=True))


def dominates(lam, mu) -> bool:
    """True iff every prefix sum of lam is <= the matching prefix sum of mu."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"dominance needs equal sizes, got {lam} and {mu}")
    total_l = total_m = 0
    for j in range(max(len(lam), len(mu))):
        total_l += lam[j] if j < len(lam) else 0
        total_m += mu[j] if j < len(mu) else 0
        if total_l > total_m:
            return False
    return True


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple:
    """All partitions of n (first part <= max_part), lexicographically descending."""
    if n < 0:
        return ()
    if max_part is None:
        max_part = n
    if n == 0:
        return (Partition(()),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


@lru_cache(maxsize=None)
def kostka(mu, lam) -> int:
    """Number of fillings of mu with lam_i copies of i, rows weakly and
    columns strictly increasing. Zero unless lam is dominated by mu.

    Counted as chains of partitions adding one horizontal strip per
    letter, memoized on (shape so far, letter index).
    """
    mu, lam = Partition(mu), Partition(lam)
    if mu.n != lam.n:
        raise ValueError(f"kostka needs equal sizes, got {tuple(mu)} and {tuple(lam)}")
    if mu.n == 0:
        return 1
    if not dominates(lam, mu):
        return 0

    memo = {}

    def strips(shape, size):
        # All partitions shape' with shape <= shape' <= mu, |shape'| - |shape| = size,
        # and shape'[i] <= shape[i-1] for i >= 1 (no two new boxes share a column).
        results = []

        def extend(row, built, remaining):
            if remaining == 0:
                results.append(tuple(built) + shape[row:] if row <= len(shape) else tuple(built))
                return
            if row >= len(mu):
                return
            cur = shape[row] if row < len(shape) else 0
            hi = mu[row]
            if row > 0:
                prev_old = shape[row - 1] if row - 1 < len(shape) else 0
                hi = min(hi, prev_old)  # strip condition
                hi = min(hi, built[row - 1])  # keep weakly decreasing
            lo = cur
            for new_len in range(lo, hi + 1):
                if new_len - cur <= remaining:
                    extend(row + 1, built + [new_len], remaining - (new_len - cur))

        extend(0, [], size)
        return [tuple(p for p in r if p > 0) for r in results]

    def count(shape, idx):
        if idx == len(lam):
            return 1 if shape == tuple(mu) else 0
        key = (shape, idx)
        if key not in memo:
            memo[key] = sum(count(s, idx + 1) for s in strips(shape, lam[idx]))
        return memo[key]

    return count((), 0)


@lru_cache(maxsize=None)
def dim_specht(mu) -> int:
    """Number of standard Young tableaux of shape mu (hook length formula)."""
    mu = Partition(mu)
    if mu.n == 0:
        return 1
    conj = [0] * mu[0]
    for p in mu:
        for j in range(p):
            conj[j] += 1
    hooks = (mu[i] - j + conj[j] - i - 1 for i in range(len(mu)) for j in range(mu[i]))
    return factorial(mu.n) // reduce(mul, hooks, 1)


def _skew_key(shape: SkewShape):
    # Canonical key: row spans of nonempty rows, columns shifted so the
    # leftmost box sits at column 0. Counts are translation invariant.
    spans = [(a, b) for a, b in shape.rows() if b > a]
    if not spans:
        return ()
    shift = min(a for a, _ in spans)
    return tuple((a - shift, b - shift) for a, b in spans)


@lru_cache(maxsize=None)
def _skew_count_from_spans(spans: tuple) -> int:
    """Standard fillings of a skew diagram given by per-row column spans.

    Uses the determinant identity  d = N! * det[ 1 / (outer_i - inner_j - i + j)! ]
    over exact rationals, evaluated fraction-free with integers.
    """
    if not spans:
        return 1
    size = sum(b - a for a, b in spans)
    rows = len(spans)
    # Recover outer/inner row lengths from the spans.
    inner = [a for a, _ in spans]
    outer = [b for _, b in spans]
    # Integer matrix: row i scaled by (outer_i - i + rows)!, so
    # M[i][j] = (outer_i - i + rows)! / (outer_i - inner_j - i + j)!  (0 if negative).
    scale = [factorial(outer[i] - i + rows) for i in range(rows)]
    mat = []
    for i in range(rows):
        row = []
        for j in range(rows):
            k = outer[i] - inner[j] - i + j
            row.append(0 if k < 0 else scale[i] // factorial(k))
        mat.append(row)
    det = _int_det(mat)
    num = factorial(size) * det
    den = reduce(mul, scale, 1)
    assert num % den == 0, "skew count identity must divide exactly"
    count = num // den
    assert count >= 0
    return count


def _int_det(mat: list) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    m = [row[:] for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def num_standard_skew(shape: SkewShape) -> int:
    """Number of standard skew tableaux; 0 when inner is not contained."""
    if not shape.valid:
        return 0
    return _skew_count_from_spans(_skew_key(shape))


def dominating_set(l: int, r: int) -> list:
    """D(l, r): partitions of l with first part >= r, lexicographically descending."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r > l:
        return []
    return [mu for mu in partitions_of(l) if (mu[0] if mu else 0) >= r]


def falling_factorial(n: int, k: int) -> int:
    """(n)_k = n (n-1) ... (n-k+1)."""
    if not 1 <= k <= n:
        raise ValueError(f"falling_factorial needs 1 <= k <= n, got n={n}, k={k}")
    return reduce(mul, range(n - k + 1, n + 1), 1)


def _hook_restriction_multiplicity(mu, n: int, k: int) -> int:
    """d_{mu/(n-k-1)} + k * d_{mu/(n-k)} for mu a partition of n-1."""
    mu = Partition(mu)
    first = num_standard_skew(SkewShape(mu, (n - k - 1,) if n - k - 1 > 0 else ()))
    second = num_standard_skew(SkewShape(mu, (n - k,)))
    return first + k * second


@lru_cache(maxsize=None)
def m_bound(n: int, k: int) -> int:
    """M(n, k): the maximum restriction multiplicity for the hook shape
    (n-k, 1, ..., 1), taken over partitions in D(n-1, n-k-1)."""
    if not 1 <= k < n:
        raise ValueError(f"m_bound needs 1 <= k < n, got n={n}, k={k}")
    return max(_hook_restriction_multiplicity(mu, n, k) for mu in dominating_set(n - 1, n - k - 1))


@lru_cache(maxsize=None)
def n_bound(k: int) -> int:
    """N(k): stabilized maximum of M(n, k) over n > k.

    M(n, k) is non-decreasing in n and eventually constant; we stop at the
    first n >= 3k + 3 where it repeats. The margin is conservative, not a
    proved threshold.
    """
    if k < 1:
        raise ValueError("n_bound needs k >= 1")
    best = 0
    prev = None
    n = k + 1
    while True:
        cur = m_bound(n, k)
        if prev is not None and cur < prev:
            raise AssertionError(f"M(n,{k}) decreased at n={n}; stabilization logic is unsound")
        best = max(best, cur)
        if n >= 3 * k + 3 and cur == prev:
            return best
        prev = cur
        n += 1
