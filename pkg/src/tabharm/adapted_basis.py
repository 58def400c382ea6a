"""Construction of the chain of orbital symmetry-adapted bases.

Level by level: group the previous basis vectors by (current-level orbit,
label chain so far); each group spans one frequency space, which the
Jucys-Murphy operator X_j splits into integer eigenspaces, one per box
that can be added to the chain's shape. One distinguished chain per new
shape (the last-letter-minimal tableau) is seeded directly from its
eigenspace; every other chain of that shape is obtained by transporting
the seed vectors with adjacent transpositions, so that per irreducible
copy the generators act by exactly the seminormal (or orthogonal)
representation matrices.

Factors C(B_j, B_{j-1}) come out permuted block diagonal, one block per
(orbit, previous-label) group, by inverting each group's coefficient
matrix. Exact rational arithmetic is used for modest sizes, dense float
arrays above that (and always for the orthonormal normalization, whose
scalings are irrational).
"""

from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from . import exact_linalg as ela
from .combinatorics import Partition
from .sparse import SparseFactor
from .symmetric_group import (
    StandardTableau,
    jm_row_values,
    minimal_tableau,
    seminormal_matrix,
    standard_tableaux,
)
from .tabloids import OrbitKey, TabloidSpace, space_size

LEADING_ONE = "leading-one"
ORTHONORMAL = "orthonormal"

EXACT_MAX_N = 8
EXACT_MAX_SIZE = 1000

EIGENVALUE_TOL = 1e-6
FLOAT_DROP_TOL = 1e-12


class ChainConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class FloatVec:
    """Float vector stored on the sorted element-index set of its orbit."""

    indices: np.ndarray
    values: np.ndarray


@dataclass
class LabeledBasisVector:
    coords: object  # dict[int, mpq] (exact) or FloatVec
    orbit: OrbitKey
    label: StandardTableau
    copy: int

    def dense(self, size: int) -> list:
        if isinstance(self.coords, FloatVec):
            out = [0.0] * size
            for idx, val in zip(self.coords.indices, self.coords.values):
                out[int(idx)] = float(val)
            return out
        out = [mpq(0)] * size
        for idx, val in self.coords.items():
            out[idx] = val
        return out

    def orbit_representative(self) -> int:
        # Any stored index works: the stored index set is contained in one
        # orbit at every later level (orbits only coarsen up the chain).
        if isinstance(self.coords, FloatVec):
            return int(self.coords.indices[0])
        return min(self.coords)


@dataclass
class FrequencySpaceRecord:
    level: int
    orbit: OrbitKey
    label: StandardTableau
    dimension: int


@dataclass
class BasisChain:
    shape: Partition
    space: TabloidSpace
    normalization: str
    arithmetic: str
    bases: list = field(default_factory=list)  # bases[j-1] is B_j
    factors: list = field(default_factory=list)  # factors[j-2] is C(B_j, B_{j-1})
    inverse_factors: list = field(default_factory=list)
    records: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def size(self) -> int:
        return self.space.size

    def records_at(self, level: int) -> list:
        return [r for r in self.records if r.level == level]

    def coords_in_basis(self, standard_coords: list, level: int) -> list:
        """Coordinates with respect to B_level of a vector given in the
        standard basis, via the factor chain."""
        vec = list(standard_coords)
        for factor in self.factors[: level - 1]:
            vec = factor.apply(vec)
        return vec


def pick_arithmetic(shape, normalization: str, arithmetic: str | None) -> str:
    shape = Partition(shape)
    if arithmetic is None:
        if normalization == ORTHONORMAL:
            return "float"
        if shape.n <= EXACT_MAX_N and space_size(shape) <= EXACT_MAX_SIZE:
            return "exact"
        return "float"
    if arithmetic not in ("exact", "float"):
        raise ValueError(f"unknown arithmetic {arithmetic!r}")
    if arithmetic == "exact" and normalization == ORTHONORMAL:
        raise ValueError("orthonormal normalization requires float arithmetic")
    return arithmetic


# ---------------------------------------------------------------------------
# exact backend: vectors are dicts index -> mpq


class _ExactGroupSolver:
    def __init__(self, vectors):
        d = len(vectors)
        support = sorted(set().union(*[v.keys() for v in vectors]))
        pivot_rows = []
        reduced = []  # (unit-pivot row over group coords, pivot position)
        for r in support:
            row = [v.get(r, mpq(0)) for v in vectors]
            for vec, piv in reduced:
                if row[piv] != 0:
                    f = row[piv]
                    row = [a - f * b for a, b in zip(row, vec)]
            piv = next((k for k, a in enumerate(row) if a != 0), None)
            if piv is None:
                continue
            inv = 1 / row[piv]
            reduced.append(([a * inv for a in row], piv))
            pivot_rows.append(r)
            if len(pivot_rows) == d:
                break
        if len(pivot_rows) != d:
            raise ChainConstructionError("group vectors are linearly dependent")
        self.pivot_rows = pivot_rows
        self._solver = ela.ExactSolver(
            [[vectors[t].get(r, mpq(0)) for t in range(d)] for r in pivot_rows])

    def coeffs(self, vec):
        return self._solver.solve([vec.get(r, mpq(0)) for r in self.pivot_rows])

    def coeffs_from_rows(self, row_values):
        return self._solver.solve(row_values)


class _ExactBackend:
    arithmetic = "exact"

    def __init__(self, space: TabloidSpace, normalization: str):
        self.space = space
        self.normalization = normalization

    def unit_vector(self, idx: int, orbit_indices):
        return {idx: mpq(1)}

    def combine(self, coord_list, coeffs, orbit_indices):
        out = {}
        for coeff, vec in zip(coeffs, coord_list):
            if coeff == 0:
                continue
            for idx, val in vec.items():
                out[idx] = out.get(idx, mpq(0)) + coeff * val
        return {idx: v for idx, v in out.items() if v != 0}

    def group_solver(self, vectors, orbit_indices):
        return _ExactGroupSolver([v.coords for v in vectors])

    def jm_restricted(self, level: int, vectors, solver, orbit_indices):
        d = len(vectors)
        columns = []
        for t in range(d):
            coords = vectors[t].coords
            vals = jm_row_values(self.space, level, solver.pivot_rows,
                                 lambda idx, c=coords: c.get(idx, mpq(0)))
            columns.append(solver.coeffs_from_rows(vals))
        return [[columns[t][u] for t in range(d)] for u in range(d)]

    def eigensplit(self, R, wanted_contents):
        d = len(R)
        out = {}
        for c in wanted_contents:
            shifted = [[R[a][b] - (c if a == b else 0) for b in range(d)] for a in range(d)]
            out[c] = [self._leading_one(v) for v in ela.kernel_basis(shifted)]
        return out

    @staticmethod
    def _leading_one(coeffs):
        lead = next(v for v in coeffs if v != 0)
        return [v / lead for v in coeffs]

    def transport(self, vec, perm, d_axial, orbit_indices):
        out = {perm[idx]: val for idx, val in vec.items()}
        inv_d = mpq(1, d_axial)
        for idx, val in vec.items():
            out[idx] = out.get(idx, mpq(0)) - inv_d * val
        if d_axial < 0:
            inv = 1 / (1 - mpq(1, d_axial * d_axial))
            return {i: v * inv for i, v in out.items() if v != 0}
        return {i: v for i, v in out.items() if v != 0}

    def local_perm(self, orbit_indices, a: int, b: int):
        return self.space.transposition_permutation(a, b)

    def block_matrices(self, columns):
        d = len(columns)
        E = [[columns[col][row] for col in range(d)] for row in range(d)]
        return ela.invert(E), E

    @staticmethod
    def entry_nonzero(v) -> bool:
        return v != 0


# ---------------------------------------------------------------------------
# float backend: vectors are FloatVec on per-orbit index sets


class _FloatGroupSolver:
    def __init__(self, G, orthonormal: bool, orbit_indices):
        self.G = G
        self.orbit_indices = orbit_indices
        self._pinv = G.T if orthonormal else np.linalg.pinv(G)

    def coeffs(self, vec: FloatVec):
        return self._pinv @ _on_orbit(vec, self.orbit_indices)


def _on_orbit(vec: FloatVec, orbit_indices):
    if vec.values.shape == orbit_indices.shape and np.array_equal(vec.indices, orbit_indices):
        return vec.values
    values = np.zeros(len(orbit_indices))
    values[np.searchsorted(orbit_indices, vec.indices)] = vec.values
    return values


class _FloatBackend:
    arithmetic = "float"

    def __init__(self, space: TabloidSpace, normalization: str):
        self.space = space
        self.normalization = normalization
        self._perm_cache = {}

    def unit_vector(self, idx: int, orbit_indices):
        values = np.zeros(len(orbit_indices))
        values[int(np.searchsorted(orbit_indices, idx))] = 1.0
        return FloatVec(orbit_indices, values)

    def combine(self, coord_list, coeffs, orbit_indices):
        values = np.zeros(len(orbit_indices))
        for coeff, vec in zip(coeffs, coord_list):
            values[np.searchsorted(orbit_indices, vec.indices)] += float(coeff) * vec.values
        return FloatVec(orbit_indices, values)

    def group_solver(self, vectors, orbit_indices):
        G = np.zeros((len(orbit_indices), len(vectors)))
        for t, vec in enumerate(vectors):
            G[np.searchsorted(orbit_indices, vec.coords.indices), t] = vec.coords.values
        return _FloatGroupSolver(G, self.normalization == ORTHONORMAL, orbit_indices)

    def jm_restricted(self, level: int, vectors, solver, orbit_indices):
        G = solver.G
        XjG = np.zeros_like(G)
        for i in range(1, level):
            XjG += G[self.local_perm(orbit_indices, i, level), :]
        if self.normalization == ORTHONORMAL:
            return G.T @ XjG
        return np.linalg.lstsq(G, XjG, rcond=None)[0]

    def local_perm(self, orbit_indices, a: int, b: int):
        key = (id(orbit_indices), min(a, b), max(a, b))
        if key not in self._perm_cache:
            gperm = self.space.transposition_permutation(a, b)
            mapped = np.array([gperm[int(idx)] for idx in orbit_indices])
            self._perm_cache[key] = np.searchsorted(orbit_indices, mapped)
        return self._perm_cache[key]

    def eigensplit(self, R, wanted_contents):
        R = np.asarray(R, dtype=float)
        out = {}
        if self.normalization == ORTHONORMAL:
            sym_err = float(np.max(np.abs(R - R.T))) if R.size else 0.0
            if sym_err > 1e-8:
                raise ChainConstructionError(
                    f"restricted operator not symmetric (error {sym_err:.2e})")
            evals, evecs = np.linalg.eigh(R)
            rounded = np.round(evals)
            if evals.size and np.max(np.abs(evals - rounded)) > EIGENVALUE_TOL:
                worst = evals[np.argmax(np.abs(evals - rounded))]
                raise ChainConstructionError(
                    f"eigenvalue {worst!r} not within {EIGENVALUE_TOL} of an integer")
            for c in wanted_contents:
                cols = [k for k in range(len(evals)) if int(rounded[k]) == c]
                out[c] = [self._canonical_sign(evecs[:, k]) for k in cols]
            return out
        for c in wanted_contents:
            shifted = R - c * np.eye(len(R))
            out[c] = [self._leading_one(v) for v in
                      ela.float_kernel_basis(shifted, tol=EIGENVALUE_TOL)]
        return out

    @staticmethod
    def _canonical_sign(v):
        scale = np.max(np.abs(v))
        for x in v:
            if abs(x) > 1e-8 * scale:
                return v if x > 0 else -v
        return v

    @staticmethod
    def _leading_one(v):
        v = np.asarray(v)
        scale = np.max(np.abs(v))
        lead = next(x for x in v if abs(x) > 1e-10 * scale)
        return v / lead

    def transport(self, vec: FloatVec, perm, d_axial, orbit_indices):
        values = _on_orbit(vec, orbit_indices)
        out = np.zeros_like(values)
        out[perm] = values
        out -= values / d_axial
        if self.normalization == ORTHONORMAL:
            out /= np.sqrt(1.0 - 1.0 / (d_axial * d_axial))
        elif d_axial < 0:
            out /= 1.0 - 1.0 / (d_axial * d_axial)
        return FloatVec(orbit_indices, out)

    def block_matrices(self, columns):
        E = np.column_stack(columns)
        if self.normalization == ORTHONORMAL:
            return E.T, E
        return np.linalg.inv(E), E

    @staticmethod
    def entry_nonzero(v) -> bool:
        return abs(v) > FLOAT_DROP_TOL


# ---------------------------------------------------------------------------
# driver


def build_chain(shape, normalization: str = LEADING_ONE, arithmetic: str | None = None,
                space: TabloidSpace | None = None) -> BasisChain:
    """Build bases B_1..B_n, factors C(B_j, B_{j-1}), and frequency records
    for the tabloid module of the given shape."""
    shape = Partition(shape)
    if normalization not in (LEADING_ONE, ORTHONORMAL):
        raise ValueError(f"unknown normalization {normalization!r}")
    arithmetic = pick_arithmetic(shape, normalization, arithmetic)
    if space is None:
        space = TabloidSpace(shape)
    backend = (_ExactBackend if arithmetic == "exact" else _FloatBackend)(space, normalization)

    n, m = space.n, space.size
    chain = BasisChain(shape, space, normalization, arithmetic)

    base_label = StandardTableau((Partition((1,)),))
    vectors = []
    for idx in range(m):
        okey = OrbitKey(1, tuple(space.elements[idx].row_of(e) for e in range(2, n + 1)))
        vectors.append(LabeledBasisVector(backend.unit_vector(idx, np.array([idx])),
                                          okey, base_label, 0))
        chain.records.append(FrequencySpaceRecord(1, okey, base_label, 1))
    chain.bases.append(vectors)

    for level in range(2, n + 1):
        vectors = _build_level(chain, backend, level, vectors)
        chain.bases.append(vectors)

    return chain


def _build_level(chain: BasisChain, backend, level: int, prev: list) -> list:
    space = chain.space
    m = space.size

    element_orbit = space.orbit_keys(level)
    orbit_members = {}
    for idx, okey in enumerate(element_orbit):
        orbit_members.setdefault(okey, []).append(idx)
    orbit_indices = {okey: np.array(members) for okey, members in orbit_members.items()}
    orbit_first = {okey: members[0] for okey, members in orbit_members.items()}

    # Group previous vectors by (orbit at this level, label chain).
    groups = OrderedDict()
    for pos, vec in enumerate(prev):
        okey = element_orbit[vec.orbit_representative()]
        groups.setdefault((okey, vec.label.chain), []).append((pos, vec))

    # Determine which groups seed the distinguished chain of each shape.
    shapes_in_orbit = {}
    for okey, lab_chain in groups:
        shapes_in_orbit.setdefault(okey, set()).add(Partition(lab_chain[-1]))
    seeds_wanted = {}
    for okey, shapes in shapes_in_orbit.items():
        candidates = set()
        for nu in shapes:
            for row in nu.addable_rows():
                candidates.add(nu.add_box(row))
        for mu in candidates:
            t0 = minimal_tableau(mu)
            gk = (okey, t0.chain[:-1])
            if gk in groups:
                seeds_wanted.setdefault(gk, []).append(t0)

    solvers = {}

    def solver_for(gk):
        if gk not in solvers:
            solvers[gk] = backend.group_solver([v for _, v in groups[gk]],
                                               orbit_indices[gk[0]])
        return solvers[gk]

    # Seed distinguished chains from Jucys-Murphy eigenspaces.
    new_by_chain = OrderedDict()  # (okey, label chain) -> list of vectors
    seed_coeffs = {}  # id(vector) -> coefficient list in its parent group
    for gk, tableaux in sorted(seeds_wanted.items(), key=lambda kv: groups[kv[0]][0][0]):
        okey = gk[0]
        members = [v for _, v in groups[gk]]
        solver = solver_for(gk)
        R = backend.jm_restricted(level, members, solver, orbit_indices[okey])
        wanted = {t0.content_at(level): t0 for t0 in tableaux}
        split = backend.eigensplit(R, sorted(wanted))
        member_coords = [v.coords for v in members]
        for content in sorted(wanted):
            t0 = wanted[content]
            for copy, coeffs in enumerate(split.get(content, [])):
                coords = backend.combine(member_coords, coeffs, orbit_indices[okey])
                vec = LabeledBasisVector(coords, okey, t0, copy)
                new_by_chain.setdefault((okey, t0.chain), []).append(vec)
                seed_coeffs[id(vec)] = coeffs

    # Transport the seeds to every other chain of the same shape.
    for (okey, chain0) in list(new_by_chain):
        mu = Partition(chain0[-1])
        tabs = standard_tableaux(mu)
        assert tabs[0].chain == chain0, "seed must be the last-letter-minimal tableau"
        oidx = orbit_indices[okey]
        for t_next, t_from, i in _transport_tree(tabs, level):
            d = t_from.axial_distance(i)
            perm = backend.local_perm(oidx, i, i + 1)
            built = [
                LabeledBasisVector(backend.transport(src.coords, perm, d, oidx),
                                   okey, t_next, copy)
                for copy, src in enumerate(new_by_chain[(okey, t_from.chain)])
            ]
            new_by_chain[(okey, t_next.chain)] = built

    all_new = [v for vecs in new_by_chain.values() for v in vecs]
    if len(all_new) != len(prev):
        raise ChainConstructionError(
            f"level {level}: built {len(all_new)} vectors, expected {len(prev)}")

    all_new.sort(key=lambda v: (orbit_first[v.orbit],
                                tuple(-p for p in v.label.shape),
                                v.label.sort_key(),
                                v.copy))
    position = {id(v): k for k, v in enumerate(all_new)}
    by_parent = {}
    for v in all_new:
        by_parent.setdefault((v.orbit, v.label.chain[:-1]), []).append(v)

    # Assemble the factor and its inverse, block per group.
    entries = []
    inv_entries = []
    for gk, members in groups.items():
        member_positions = [pos for pos, _ in members]
        rows = by_parent.get(gk, [])
        if len(rows) != len(members):
            raise ChainConstructionError(
                f"level {level}, orbit {gk[0].assignment}, chain {gk[1]}: "
                f"block has {len(members)} inputs but {len(rows)} outputs")
        columns = []
        for v in rows:
            coeffs = seed_coeffs.get(id(v))
            if coeffs is None:
                coeffs = solver_for(gk).coeffs(v.coords)
            columns.append(coeffs)
        C_block, E_block = backend.block_matrices(columns)
        for a, v in enumerate(rows):
            r = position[id(v)]
            for b, col in enumerate(member_positions):
                val = C_block[a][b]
                if backend.entry_nonzero(val):
                    entries.append((r, col, _clean(val)))
                val = E_block[b][a]
                if backend.entry_nonzero(val):
                    inv_entries.append((col, r, _clean(val)))
    entries.sort()
    inv_entries.sort()
    chain.factors.append(SparseFactor(m, entries))
    chain.inverse_factors.append(SparseFactor(m, inv_entries))

    for (okey, lab_chain), vecs in new_by_chain.items():
        chain.records.append(FrequencySpaceRecord(level, okey, vecs[0].label, len(vecs)))

    return all_new


def _clean(val):
    if isinstance(val, (np.floating, float)):
        return float(val)
    return val


def _transport_tree(tabs, level: int):
    """BFS tree over the standard tableaux of one shape, rooted at the
    minimal tableau; edges are adjacent transpositions. Yields
    (tableau, source, generator index) in construction order."""
    seen = {tabs[0]}
    order = []
    queue = [tabs[0]]
    while queue:
        cur = queue.pop(0)
        for i in range(1, level):
            nxt = cur.apply_adjacent(i)
            if nxt is not None and nxt not in seen:
                seen.add(nxt)
                order.append((nxt, cur, i))
                queue.append(nxt)
    if len(seen) != len(tabs):
        raise ChainConstructionError("standard tableaux not connected by adjacent moves")
    return order


# ---------------------------------------------------------------------------
# reporting helpers


def frequency_dimensions(records: list, level: int) -> dict:
    """(orbit, shape) -> frequency-space dimension at the given level. All
    chains of one shape share a dimension; this is checked."""
    out = {}
    for rec in records:
        if rec.level != level:
            continue
        key = (rec.orbit, tuple(rec.label.shape))
        if key in out and out[key] != rec.dimension:
            raise AssertionError(f"inconsistent frequency dimensions at {key}")
        out[key] = rec.dimension
    return out


def orthogonal_matrix(mu, i: int):
    """Young's orthogonal representation matrix of s_i (floats): same
    diagonal as the seminormal form, symmetric couplings sqrt(1 - 1/d^2)."""
    mu = Partition(mu)
    tabs = standard_tableaux(mu)
    pos = {t: k for k, t in enumerate(tabs)}
    dim = len(tabs)
    mat = np.zeros((dim, dim))
    for col, t in enumerate(tabs):
        d = t.axial_distance(i)
        mat[col][col] = 1.0 / d
        other = t.apply_adjacent(i)
        if other is not None:
            mat[pos[other]][col] = np.sqrt(1.0 - 1.0 / (d * d))
    return mat


@dataclass
class AdaptedBasisReport:
    level: int
    checked_generators: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_adapted(chain: BasisChain, level: int, tol: float = 1e-8) -> AdaptedBasisReport:
    """Check that each generator s_i (i < level) acts block diagonally on
    B_level along (orbit, shape, copy) cells, with every block equal to
    the representation matrix of its shape."""
    basis = chain.bases[level - 1]
    m = chain.size
    exact = chain.arithmetic == "exact" and chain.normalization == LEADING_ONE
    violations = []

    rep_cache = {}
    pos_cache = {}

    def rep_entry(mu, i, row_t, col_t):
        mu = tuple(mu)
        if (mu, i) not in rep_cache:
            if chain.normalization == ORTHONORMAL:
                rep_cache[(mu, i)] = orthogonal_matrix(mu, i)
            else:
                rep_cache[(mu, i)] = seminormal_matrix(mu, i)
            pos_cache[mu] = {t: k for k, t in enumerate(standard_tableaux(mu))}
        mat = rep_cache[(mu, i)]
        return mat[pos_cache[mu][row_t]][pos_cache[mu][col_t]]

    for i in range(1, level):
        perm = chain.space.transposition_permutation(i, i + 1)
        for col, v in enumerate(basis):
            dense = v.dense(m)
            moved = [None] * m
            for idx, val in enumerate(dense):
                moved[perm[idx]] = val
            coords = chain.coords_in_basis(moved, level)
            for row, w in enumerate(basis):
                got = coords[row]
                same_cell = (w.orbit == v.orbit and w.label.shape == v.label.shape
                             and w.copy == v.copy)
                expected = rep_entry(v.label.shape, i, w.label, v.label) if same_cell else 0
                if exact:
                    bad = got != expected
                else:
                    bad = abs(float(got) - float(expected)) > tol
                if bad:
                    violations.append((i, row, col, expected, got))
    return AdaptedBasisReport(level, level - 1, violations)
