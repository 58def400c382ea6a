"""Transform plans: assembled factor chains, forward/inverse application
with operation counts, the dense path for comparison, and plan-file
serialization.

Operation accounting: one multiplication per stored factor entry whose
value is not 1, one addition per accumulation after the first into an
output slot. Counts are data independent (zero input entries are still
processed).
"""

import json
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import exact_linalg as ela
from .adapted_basis import LEADING_ONE, BasisChain, build_chain
from .combinatorics import Partition
from .sparse import OpCount, SparseFactor
from .symmetric_group import StandardTableau
from .tabloids import OrbitKey

PLAN_FORMAT = "tabharm-plan"


@dataclass
class SpectrumComponent:
    shape: tuple
    copy: int
    indices: list  # flat coefficient positions, one per chain of the shape
    coefficients: list

    @property
    def energy(self):
        return sum((abs(c) ** 2 for c in self.coefficients), 0 * abs(self.coefficients[0]))


@dataclass
class Spectrum:
    coefficients: list
    components: list

    @property
    def total_energy(self):
        return sum((c.energy for c in self.components),
                   0 * abs(self.coefficients[0]) if self.coefficients else 0)


@dataclass
class TransformPlan:
    shape: Partition
    size: int
    normalization: str
    arithmetic: str
    factors: list  # SparseFactor, levels 2..n in order
    inverse_factors: list
    output_labels: list  # (OrbitKey, StandardTableau, copy) per row of B_n
    chain: BasisChain | None = None
    _dense: list | None = field(default=None, repr=False)

    @property
    def total_nnz(self) -> int:
        return sum(f.nnz for f in self.factors)

    def components_template(self):
        groups = {}
        for idx, (_, label, copy) in enumerate(self.output_labels):
            groups.setdefault((tuple(label.shape), copy), []).append(idx)
        return sorted(groups.items(), key=lambda kv: (tuple(-p for p in kv[0][0]), kv[0][1]))

    def dense_matrix(self) -> list:
        """The dense change-of-basis matrix, as the product of the factors
        applied column by column to the identity."""
        if self._dense is None:
            zero = mpq(0) if self.arithmetic == "exact" else 0.0
            one = mpq(1) if self.arithmetic == "exact" else 1.0
            cols = []
            for c in range(self.size):
                vec = [zero] * self.size
                vec[c] = one
                for factor in self.factors:
                    vec = factor.apply(vec)
                cols.append(vec)
            self._dense = [[cols[c][r] for c in range(self.size)] for r in range(self.size)]
        return self._dense

    def dense_factor(self) -> SparseFactor:
        entries = []
        for r, row in enumerate(self.dense_matrix()):
            for c, v in enumerate(row):
                if (v != 0) if self.arithmetic == "exact" else abs(v) > 1e-12:
                    entries.append((r, c, v))
        return SparseFactor(self.size, entries)


def plan(shape, normalization: str = LEADING_ONE, arithmetic: str | None = None) -> TransformPlan:
    shape = Partition(shape)
    if shape.n < 1:
        raise ValueError("plan needs a nonempty shape")
    chain = build_chain(shape, normalization, arithmetic)
    labels = [(v.orbit, v.label, v.copy) for v in chain.bases[-1]]
    return TransformPlan(shape, chain.size, chain.normalization, chain.arithmetic,
                         chain.factors, chain.inverse_factors, labels, chain)


def _spectrum_from_flat(plan_: TransformPlan, coeffs: list) -> Spectrum:
    components = []
    for (shape, copy), indices in plan_.components_template():
        components.append(SpectrumComponent(shape, copy, indices,
                                            [coeffs[i] for i in indices]))
    return Spectrum(coeffs, components)


def apply_transform(plan_: TransformPlan, f) -> tuple:
    """Apply the factored transform; returns (Spectrum, OpCount)."""
    if len(f) != plan_.size:
        raise ValueError(f"vector length {len(f)} != module size {plan_.size}")
    ops = OpCount()
    vec = list(f)
    for factor in plan_.factors:
        vec = factor.apply(vec, ops)
    return _spectrum_from_flat(plan_, vec), ops


def apply_naive(plan_: TransformPlan, f) -> tuple:
    """Apply the dense change-of-basis matrix in one step."""
    if len(f) != plan_.size:
        raise ValueError(f"vector length {len(f)} != module size {plan_.size}")
    ops = OpCount()
    vec = plan_.dense_factor().apply(list(f), ops)
    return _spectrum_from_flat(plan_, vec), ops


def inverse_transform(plan_: TransformPlan, spectrum) -> list:
    """Recover the input vector from a spectrum (or flat coefficients)."""
    coeffs = spectrum.coefficients if isinstance(spectrum, Spectrum) else list(spectrum)
    if len(coeffs) != plan_.size:
        raise ValueError(f"coefficient length {len(coeffs)} != module size {plan_.size}")
    vec = list(coeffs)
    for factor in reversed(plan_.inverse_factors):
        vec = factor.apply(vec)
    return vec


# ---------------------------------------------------------------------------
# serialization


def plan_to_document(plan_: TransformPlan) -> dict:
    factors = []
    for level, factor in enumerate(plan_.factors, start=2):
        if plan_.arithmetic == "exact":
            entries = [[r, c, int(v.numerator), int(v.denominator)]
                       for r, c, v in factor.entries]
        else:
            entries = [[r, c, float(v)] for r, c, v in factor.entries]
        factors.append({"level": level, "entries": entries})
    labels = [{"orbit": list(orbit.assignment), "chain": [list(p) for p in label.chain],
               "copy": copy}
              for orbit, label, copy in plan_.output_labels]
    return {
        "format": PLAN_FORMAT,
        "shape": list(plan_.shape),
        "size": plan_.size,
        "normalization": plan_.normalization,
        "arithmetic": plan_.arithmetic,
        "output_labels": labels,
        "factors": factors,
    }


def save_plan(plan_: TransformPlan, path) -> None:
    with open(path, "w") as fh:
        json.dump(plan_to_document(plan_), fh)
        fh.write("\n")


def _invert_sparse(factor: SparseFactor, exact: bool) -> SparseFactor:
    """Invert a permuted block-diagonal factor block by block; blocks are
    the connected components of its incidence graph."""
    lookup = {}
    for r, c, v in factor.entries:
        lookup[(r, c)] = v
    entries = []
    for rows, cols in factor.blocks():
        if len(rows) != len(cols):
            raise ValueError("factor is not invertible: non-square block")
        if exact:
            block = [[lookup.get((r, c), mpq(0)) for c in cols] for r in rows]
            inv = ela.invert(block)
            for a, c in enumerate(cols):
                for b, r in enumerate(rows):
                    if inv[a][b] != 0:
                        entries.append((c, r, inv[a][b]))
        else:
            import numpy as np

            block = np.array([[float(lookup.get((r, c), 0.0)) for c in cols] for r in rows])
            inv = np.linalg.inv(block)
            for a, c in enumerate(cols):
                for b, r in enumerate(rows):
                    if abs(inv[a][b]) > 1e-14:
                        entries.append((c, r, float(inv[a][b])))
    entries.sort()
    return SparseFactor(factor.size, entries)


def plan_from_document(doc: dict) -> TransformPlan:
    if doc.get("format") != PLAN_FORMAT:
        raise ValueError(f"not a plan document (format={doc.get('format')!r})")
    shape = Partition(doc["shape"])
    size = int(doc["size"])
    arithmetic = doc["arithmetic"]
    exact = arithmetic == "exact"
    factors = []
    for fdoc in doc["factors"]:
        entries = []
        for entry in fdoc["entries"]:
            if exact:
                r, c, num, den = entry
                entries.append((int(r), int(c), mpq(int(num), int(den))))
            else:
                r, c, v = entry
                entries.append((int(r), int(c), float(v)))
        factors.append(SparseFactor(size, entries))
    inverse_factors = [_invert_sparse(f, exact) for f in factors]
    labels = []
    for ldoc in doc["output_labels"]:
        orbit = OrbitKey(shape.n, tuple(int(x) for x in ldoc["orbit"]))
        chain = tuple(Partition(p) for p in ldoc["chain"])
        labels.append((orbit, StandardTableau(chain), int(ldoc["copy"])))
    return TransformPlan(shape, size, doc["normalization"], arithmetic,
                         factors, inverse_factors, labels, None)


def load_plan(path) -> TransformPlan:
    with open(path) as fh:
        return plan_from_document(json.load(fh))
