"""Bound quantities for factored transforms, computed structurally.

Multiplicities come from the orbit-branching recursion plus Young's rule
(Kostka numbers), deliberately sharing no code with the basis
construction, so that verifying a constructed plan against these numbers
is a genuine cross-check.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

from .combinatorics import (
    Partition,
    dim_specht,
    dominating_set,
    falling_factorial,
    kostka,
    n_bound,
    num_standard_skew,
    partitions_of,
    to_partition,
    SkewShape,
)
from .sparse import OpCount
from .tabloids import orbit_shape_multiset


@lru_cache(maxsize=None)
def restriction_multiplicities(nu) -> tuple:
    """Multiplicities of the irreducibles of S_{j-1} in the tabloid module
    of shape nu (a partition of j) restricted to S_{j-1}: one orbit per
    row of nu, Young's rule within each. Returns ((mu, mult), ...)."""
    nu = Partition(nu)
    out = {}
    for row in range(len(nu)):
        child = to_partition(nu[:row] + (nu[row] - 1,) + nu[row + 1:])
        for mu in partitions_of(nu.n - 1):
            k = kostka(mu, child)
            if k:
                out[mu] = out.get(mu, 0) + k
    return tuple(sorted(out.items()))


def phi(lam, j: int) -> int:
    """Sum over S_j-orbits of (multiplicity^2 * irreducible dimension),
    the nonzero-entry bound for the level-j factor."""
    lam = Partition(lam)
    if not 2 <= j <= lam.n:
        raise ValueError(f"phi needs 2 <= j <= {lam.n}")
    total = 0
    for tag, count in orbit_shape_multiset(lam, j):
        total += count * sum(mult * mult * dim_specht(mu)
                             for mu, mult in restriction_multiplicities(tag))
    return total


def k_max(lam, j: int) -> int:
    """Maximum multiplicity over S_j-orbits and irreducibles: the
    per-column nonzero bound for the level-j factor."""
    lam = Partition(lam)
    if not 2 <= j <= lam.n:
        raise ValueError(f"k_max needs 2 <= j <= {lam.n}")
    best = 0
    for tag, _ in orbit_shape_multiset(lam, j):
        for _, mult in restriction_multiplicities(tag):
            best = max(best, mult)
    return best


def top_level_multiplicities(lam) -> dict:
    """Multiplicity of each irreducible in the full tabloid module (Young's
    rule at the top of the chain)."""
    lam = Partition(lam)
    out = {}
    for mu in partitions_of(lam.n):
        count = kostka(mu, lam)
        if count:
            out[mu] = count
    return out


def hook_multiplicity(mu, n: int, k: int) -> int:
    """d_{mu/(n-k-1)} + k * d_{mu/(n-k)} for mu a partition of n-1; zero
    when mu lies outside D(n-1, n-k-1)."""
    mu = Partition(mu)
    if mu.n != n - 1 or (mu[0] if mu else 0) < n - k - 1:
        return 0
    inner_small = (n - k - 1,) if n - k - 1 > 0 else ()
    return (num_standard_skew(SkewShape(mu, inner_small))
            + k * num_standard_skew(SkewShape(mu, (n - k,))))


@lru_cache(maxsize=None)
def d_cubed(j: int) -> int:
    """Sum of cubed irreducible dimensions of S_j."""
    return sum(dim_specht(mu) ** 3 for mu in partitions_of(j))


def clausen_chain_bound(n: int) -> int:
    """Operation bound for the regular module along the full subgroup
    chain: 2 * sum over j of j^2 * (n!/j!) * d^3(S_{j-1})."""
    total = 0
    for j in range(2, n + 1):
        total += j * j * (factorial(n) // factorial(j)) * d_cubed(j - 1)
    return 2 * total


def two_row_bound(n: int, k: int) -> int:
    """4 (n-1) C(n, k), the operation bound for shape (n-k, k)."""
    if 2 * k > n:
        raise ValueError(f"two_row_bound needs k <= n/2, got n={n}, k={k}")
    return 4 * (n - 1) * comb(n, k)


def hook_bound(n: int, k: int) -> int:
    """2 N(k) (n-1) (n)_k, the operation bound for shape (n-k, 1, ..., 1)."""
    if not 1 <= k < n:
        raise ValueError(f"hook_bound needs 1 <= k < n, got n={n}, k={k}")
    return 2 * n_bound(k) * (n - 1) * falling_factorial(n, k)


def refined_hook_level_bound(n: int, k: int) -> int:
    """Column-sum form of the top-level bound for hooks: the restriction
    multiplicity of each irreducible times its dimension, summed over
    D(n-1, n-k-1). Equals the module dimension (n)_k by dimension
    conservation; reported as data."""
    if not 1 <= k < n:
        raise ValueError(f"refined bound needs 1 <= k < n, got n={n}, k={k}")
    return sum(hook_multiplicity(mu, n, k) * dim_specht(mu)
               for mu in dominating_set(n - 1, n - k - 1))


# ---------------------------------------------------------------------------
# verification against a constructed plan


@dataclass
class LevelBound:
    level: int
    phi: int
    k_max: int
    nnz: int
    max_column_nnz: int

    @property
    def phi_ok(self) -> bool:
        return self.nnz <= self.phi

    @property
    def k_ok(self) -> bool:
        return self.max_column_nnz <= self.k_max

    @property
    def slack(self) -> int:
        return self.phi - self.nnz


@dataclass
class BoundReport:
    shape: tuple
    size: int
    normalization: str
    levels: list
    omega: OpCount
    naive_bound: int
    specialized: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_document(self) -> dict:
        return {
            "shape": list(self.shape),
            "size": self.size,
            "normalization": self.normalization,
            "levels": [
                {
                    "level": lb.level,
                    "phi": lb.phi,
                    "k_max": lb.k_max,
                    "nnz": lb.nnz,
                    "max_column_nnz": lb.max_column_nnz,
                    "phi_ok": lb.phi_ok,
                    "k_ok": lb.k_ok,
                    "slack": lb.slack,
                }
                for lb in self.levels
            ],
            "omega": {"multiplications": self.omega.multiplications,
                      "additions": self.omega.additions,
                      "total": self.omega.total},
            "naive_bound": self.naive_bound,
            "specialized": self.specialized,
            "violations": self.violations,
            "ok": self.ok,
        }


def _is_hook(shape: Partition) -> bool:
    return len(shape) >= 2 and all(p == 1 for p in shape[1:])


def verify(plan_) -> BoundReport:
    """Re-derive every inequality from the plan's raw factor counts.

    Checks the per-level nonzero and per-column bounds, the chain
    operation bound, and whichever specialized bounds apply to the shape.
    Failures are recorded as data, not raised.
    """
    shape = Partition(plan_.shape)
    n = shape.n
    m = plan_.size
    levels = []
    violations = []
    omega = OpCount()
    phi_total = 0
    for level, factor in enumerate(plan_.factors, start=2):
        level_phi = phi(shape, level)
        level_k = k_max(shape, level)
        phi_total += level_phi
        omega += factor.op_cost()
        lb = LevelBound(level, level_phi, level_k, factor.nnz, factor.max_column_nnz())
        levels.append(lb)
        if not lb.phi_ok:
            violations.append(f"level {level}: nnz {lb.nnz} > phi {lb.phi}")
        if not lb.k_ok:
            violations.append(
                f"level {level}: column nnz {lb.max_column_nnz} > k_max {lb.k_max}")

    specialized = {}
    if n >= 2:
        chain_bound = 2 * phi_total
        specialized["chain_operation_bound"] = chain_bound
        if not omega.total < chain_bound:
            violations.append(f"omega {omega.total} >= chain bound {chain_bound}")
    if len(shape) == 2:
        bound = two_row_bound(n, shape[1])
        specialized["two_row_bound"] = bound
        if not omega.total < bound:
            violations.append(f"omega {omega.total} >= two-row bound {bound}")
    if _is_hook(shape):
        k = len(shape) - 1
        bound = hook_bound(n, k)
        specialized["hook_bound"] = bound
        specialized["refined_hook_level_value"] = refined_hook_level_bound(n, k)
        if not omega.total < bound:
            violations.append(f"omega {omega.total} >= hook bound {bound}")
    if shape == tuple([1] * n) and n >= 2:
        bound = clausen_chain_bound(n)
        specialized["regular_chain_bound"] = bound
        identity = n * n * d_cubed(n - 1)
        specialized["regular_phi_identity"] = identity
        if phi(shape, n) != identity:
            violations.append(
                f"phi at top level {phi(shape, n)} != n^2 d^3 identity {identity}")
        if not omega.total < bound:
            violations.append(f"omega {omega.total} >= regular chain bound {bound}")

    return BoundReport(tuple(shape), m, plan_.normalization, levels, omega,
                       2 * m * m, specialized, violations)
