"""Survey-data ingestion: top-k choices (subsets) and top-k rankings map
to indicator weights on tabloids.

Dataset documents are JSON: {"n": ..., "k": ..., "mode": "subset" or
"ranking", "records": [{"selection": [...], "weight": w}, ...]}. Items
are 1-indexed; weights are nonnegative and default to 1.
"""

import json
from dataclasses import dataclass

from .combinatorics import Partition
from .tabloids import Tabloid, TabloidSpace

SUBSET = "subset"
RANKING = "ranking"


class DatasetError(ValueError):
    """Malformed dataset; message carries the offending record index."""


@dataclass
class Dataset:
    n: int
    k: int
    mode: str
    records: list  # (selection tuple, weight)

    @property
    def shape(self) -> Partition:
        return dataset_shape(self.n, self.k, self.mode)


def dataset_shape(n: int, k: int, mode: str) -> Partition:
    if mode == SUBSET:
        if 2 * k > n:
            raise DatasetError(f"subset mode needs k <= n/2, got n={n}, k={k}")
        return Partition((n - k, k))
    if mode == RANKING:
        if k >= n:
            raise DatasetError(f"ranking mode needs k < n, got n={n}, k={k}")
        return Partition((n - k,) + (1,) * k)
    raise DatasetError(f"unknown mode {mode!r}")


def parse_dataset(doc: dict) -> Dataset:
    try:
        n = int(doc["n"])
        k = int(doc["k"])
        mode = doc["mode"]
        raw_records = doc.get("records", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetError(f"dataset document missing or malformed field: {exc}") from exc
    if mode not in (SUBSET, RANKING):
        raise DatasetError(f"unknown mode {mode!r}")
    records = []
    for idx, rec in enumerate(raw_records):
        try:
            selection = tuple(int(x) for x in rec["selection"])
            weight = float(rec.get("weight", 1.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise DatasetError(f"record {idx}: malformed ({exc})") from exc
        if len(selection) != k:
            raise DatasetError(f"record {idx}: selection has {len(selection)} items, expected k={k}")
        if len(set(selection)) != len(selection):
            raise DatasetError(f"record {idx}: duplicate item in selection {selection}")
        for item in selection:
            if not 1 <= item <= n:
                raise DatasetError(f"record {idx}: item {item} out of range 1..{n}")
        if weight < 0:
            raise DatasetError(f"record {idx}: negative weight {weight}")
        records.append((selection, weight))
    dataset_shape(n, k, mode)  # validate n/k/mode combination
    return Dataset(n, k, mode, records)


def load_dataset(path) -> Dataset:
    with open(path) as fh:
        return parse_dataset(json.load(fh))


def record_tabloid(dataset: Dataset, selection) -> Tabloid:
    """Tabloid for one record. Subset mode: chosen items fill the second
    row. Ranking mode: the item ranked r goes to row r+1, the unchosen
    items to row 1."""
    chosen = set(selection)
    rest = [x for x in range(1, dataset.n + 1) if x not in chosen]
    if dataset.mode == SUBSET:
        return Tabloid((tuple(rest), tuple(selection)))
    return Tabloid((tuple(rest),) + tuple((item,) for item in selection))


def ingest(dataset: Dataset, space: TabloidSpace | None = None) -> list:
    """Aggregate record weights into a vector over the tabloid space."""
    if space is None:
        space = TabloidSpace(dataset.shape)
    elif tuple(space.shape) != tuple(dataset.shape):
        raise DatasetError(f"space shape {tuple(space.shape)} does not match "
                           f"dataset shape {tuple(dataset.shape)}")
    f = [0.0] * space.size
    for selection, weight in dataset.records:
        f[space.index_of(record_tabloid(dataset, selection))] += weight
    return f
