"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 bound violation or
verification failure.
"""

import json
import sys

import click
from gmpy2 import mpq

from . import bounds as bounds_mod
from .adapted_basis import LEADING_ONE, ORTHONORMAL, build_chain, verify_adapted
from .combinatorics import Partition, falling_factorial, n_bound, partitions_of
from .data import DatasetError, ingest, load_dataset
from .tabloids import TabloidSpace, space_size
from .transform import (
    apply_naive,
    apply_transform,
    inverse_transform,
    load_plan,
    plan,
    plan_to_document,
    save_plan,
)

DEFAULT_SIZE_CAP = 10 ** 6


class CliError(click.ClickException):
    exit_code = 1


class VerificationFailure(click.ClickException):
    exit_code = 2


def _parse_shape(text: str) -> Partition:
    try:
        return Partition(int(p) for p in text.split(","))
    except ValueError as exc:
        raise CliError(f"bad shape {text!r}: {exc}") from exc


def _guard_size(shape: Partition, cap: int) -> None:
    size = space_size(shape)
    if size > cap:
        raise CliError(f"tabloid space of shape {tuple(shape)} has {size} elements, "
                       f"above the cap {cap}; raise --max-size to proceed")


def _emit(doc: dict, fmt: str, human) -> None:
    if fmt == "json":
        click.echo(json.dumps(doc, indent=2, default=float))
    else:
        human(doc)


@click.group()
def main():
    """Factored harmonic transforms on tabloid spaces."""
    click.exceptions.UsageError.exit_code = 1


@main.command("enumerate")
@click.option("--shape", required=True, help="comma-separated partition, e.g. 3,1,1")
@click.option("--max-size", default=DEFAULT_SIZE_CAP, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["human", "json"]), default="human")
def enumerate_cmd(shape, max_size, fmt):
    """List the tabloids of a shape with their fixed indices."""
    shape = _parse_shape(shape)
    _guard_size(shape, max_size)
    space = TabloidSpace(shape)
    doc = {"shape": list(shape), "size": space.size,
           "elements": [[list(row) for row in t.rows] for t in space.elements]}

    def human(doc):
        click.echo(f"shape {tuple(shape)}: {space.size} tabloids")
        for i, t in enumerate(space.elements):
            click.echo(f"{i:6d}  " + " | ".join(" ".join(map(str, row)) for row in t.rows))

    _emit(doc, fmt, human)


@main.command("plan")
@click.option("--shape", required=True)
@click.option("--orthonormal", is_flag=True, help="orthonormal normalization (float factors)")
@click.option("--out", type=click.Path(), default=None, help="write the plan file here")
@click.option("--max-size", default=DEFAULT_SIZE_CAP, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["human", "json"]), default="human")
def plan_cmd(shape, orthonormal, out, max_size, fmt):
    """Build a factored transform plan for a shape."""
    shape = _parse_shape(shape)
    _guard_size(shape, max_size)
    normalization = ORTHONORMAL if orthonormal else LEADING_ONE
    plan_ = plan(shape, normalization)
    if out:
        save_plan(plan_, out)
    doc = {
        "shape": list(shape),
        "size": plan_.size,
        "normalization": plan_.normalization,
        "arithmetic": plan_.arithmetic,
        "factors": [{"level": lvl, "nnz": f.nnz}
                    for lvl, f in enumerate(plan_.factors, start=2)],
        "total_nnz": plan_.total_nnz,
        "written_to": out,
    }

    def human(doc):
        click.echo(f"plan for shape {tuple(shape)}: size {plan_.size}, "
                   f"{plan_.normalization}, {plan_.arithmetic} arithmetic")
        for f in doc["factors"]:
            click.echo(f"  level {f['level']:3d}: nnz {f['nnz']}")
        click.echo(f"  total nnz {doc['total_nnz']}")
        if out:
            click.echo(f"  plan written to {out}")

    _emit(doc, fmt, human)


@main.command("analyze")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
@click.option("--shape", default=None, help="assert the dataset maps to this shape")
@click.option("--mode", type=click.Choice(["subset", "ranking"]), default=None,
              help="override the dataset's mode")
@click.option("--plan", "plan_path", type=click.Path(exists=True), default=None)
@click.option("--orthonormal", is_flag=True)
@click.option("--max-size", default=DEFAULT_SIZE_CAP, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["human", "json"]), default="human")
def analyze_cmd(data_path, shape, mode, plan_path, orthonormal, max_size, fmt):
    """Ingest a dataset, run the transform, and report spectrum + bounds."""
    try:
        dataset = load_dataset(data_path)
        if mode:
            dataset.mode = mode
        target_shape = dataset.shape
    except (DatasetError, json.JSONDecodeError, OSError, KeyError) as exc:
        raise CliError(f"cannot read dataset: {exc}") from exc
    if shape is not None and _parse_shape(shape) != target_shape:
        raise CliError(f"dataset maps to shape {tuple(target_shape)}, not {shape}")
    _guard_size(target_shape, max_size)

    if plan_path:
        plan_ = load_plan(plan_path)
        if tuple(plan_.shape) != tuple(target_shape):
            raise CliError(f"plan is for shape {tuple(plan_.shape)}, "
                           f"dataset needs {tuple(target_shape)}")
    else:
        normalization = ORTHONORMAL if orthonormal else LEADING_ONE
        plan_ = plan(target_shape, normalization)

    try:
        f = ingest(dataset, plan_.chain.space if plan_.chain else None)
    except DatasetError as exc:
        raise CliError(str(exc)) from exc
    if plan_.arithmetic == "exact":
        f_in = [mpq(int(x)) if float(x) == int(x) else mpq(x) for x in f]
    else:
        f_in = f
    spectrum, ops = apply_transform(plan_, f_in)
    report = bounds_mod.verify(plan_)

    norm_sq = sum(float(x) * float(x) for x in f)
    components = [{
        "shape": list(c.shape),
        "copy": c.copy,
        "coefficients": [float(x) for x in c.coefficients],
        "energy": float(c.energy),
    } for c in spectrum.components]
    doc = {
        "shape": list(target_shape),
        "size": plan_.size,
        "normalization": plan_.normalization,
        "records": len(dataset.records),
        "input_energy": norm_sq,
        "components": components,
        "op_count": {"multiplications": ops.multiplications,
                     "additions": ops.additions, "total": ops.total},
        "bound_report": report.to_document(),
    }

    def human(doc):
        click.echo(f"shape {tuple(target_shape)}, {len(dataset.records)} records, "
                   f"size {plan_.size}")
        click.echo(f"ops: {ops.multiplications} mult + {ops.additions} add = {ops.total}")
        click.echo(f"input energy {norm_sq:.6g}")
        for c in components:
            click.echo(f"  component shape {tuple(c['shape'])} copy {c['copy']}: "
                       f"energy {c['energy']:.6g}")
        click.echo("bounds: " + ("all hold" if report.ok else "VIOLATED"))
        for v in report.violations:
            click.echo(f"  {v}")

    _emit(doc, fmt, human)
    if not report.ok:
        raise VerificationFailure("bound verification failed")


@main.group("bounds")
def bounds_group():
    """Bound tables and verification."""


@bounds_group.command("table")
@click.option("--k-max", "kmax", default=13, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["human", "json"]), default="human")
def bounds_table(kmax, fmt):
    """Stabilized bound coefficients N(k) against the naive quadratic cost."""
    rows = []
    for k in range(2, kmax + 1):
        rows.append({"k": k, "n_bound": n_bound(k),
                     "bound": f"{n_bound(k)}(n-1)(n)_{k}",
                     "naive": f"((n)_{k})^2"})
    doc = {"rows": rows}

    def human(doc):
        click.echo(f"{'k':>3}  {'bound':<24} {'naive':<16}")
        for row in rows:
            click.echo(f"{row['k']:>3}  {row['bound']:<24} {row['naive']:<16}")

    _emit(doc, fmt, human)


@bounds_group.command("verify")
@click.option("--shape", required=True)
@click.option("--orthonormal", is_flag=True)
@click.option("--max-size", default=DEFAULT_SIZE_CAP, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["human", "json"]), default="human")
def bounds_verify(shape, orthonormal, max_size, fmt):
    """Build a plan and check every bound against its factors."""
    shape = _parse_shape(shape)
    _guard_size(shape, max_size)
    normalization = ORTHONORMAL if orthonormal else LEADING_ONE
    plan_ = plan(shape, normalization)
    report = bounds_mod.verify(plan_)
    doc = report.to_document()

    def human(doc):
        click.echo(f"shape {tuple(shape)}: size {report.size}, "
                   f"omega {report.omega.total}, naive bound {report.naive_bound}")
        for lb in report.levels:
            click.echo(f"  level {lb.level:3d}: nnz {lb.nnz:6d} <= phi {lb.phi:6d}  "
                       f"col {lb.max_column_nnz:4d} <= K {lb.k_max:4d}  "
                       f"[{'ok' if lb.phi_ok and lb.k_ok else 'FAIL'}]")
        for name, value in report.specialized.items():
            click.echo(f"  {name}: {value}")
        click.echo("all bounds hold" if report.ok else "BOUND VIOLATIONS:")
        for v in report.violations:
            click.echo(f"  {v}")

    _emit(doc, fmt, human)
    if not report.ok:
        raise VerificationFailure("bound verification failed")


@main.command("selftest")
@click.option("--max-n", "max_n", default=5, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["human", "json"]), default="human")
def selftest(max_n, fmt):
    """Run the built-in invariant battery up to a given module size."""
    from .combinatorics import kostka
    from .symmetric_group import multiplicity_oracle

    checks = []

    def record(name, ok, detail=""):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    fixture = plan((2, 1))
    expected_first = [(0, 0, mpq(1, 2)), (0, 1, mpq(1, 2)), (1, 0, mpq(1, 2)),
                      (1, 1, mpq(-1, 2)), (2, 2, mpq(1))]
    record("change-of-basis fixture (2,1)", fixture.factors[0].entries == expected_first)

    for n in range(2, max_n + 1):
        for lam in partitions_of(n):
            plan_ = plan(lam)
            report = bounds_mod.verify(plan_)
            record(f"bounds {tuple(lam)}", report.ok, "; ".join(report.violations))
            f = [mpq(3 * i * i - 7 * i + 1, i + 2) for i in range(plan_.size)]
            spec, _ = apply_transform(plan_, f)
            record(f"round trip {tuple(lam)}", inverse_transform(plan_, spec) == f)
            if n <= 4:
                chain = plan_.chain
                rep = verify_adapted(chain, n)
                record(f"adapted basis {tuple(lam)}", rep.ok, f"{len(rep.violations)} violations")

    for n in range(2, min(max_n, 5) + 1):
        ok = all(multiplicity_oracle(lam, mu, n) == kostka(mu, lam)
                 for lam in partitions_of(n) for mu in partitions_of(n))
        record(f"kostka vs character oracle n={n}", ok)

    failures = [c for c in checks if not c["ok"]]
    doc = {"checks": checks, "failures": len(failures)}

    def human(doc):
        for c in checks:
            mark = "ok  " if c["ok"] else "FAIL"
            detail = f"  ({c['detail']})" if c["detail"] and not c["ok"] else ""
            click.echo(f"{mark} {c['name']}{detail}")
        click.echo(f"{len(checks) - len(failures)}/{len(checks)} checks passed")

    _emit(doc, fmt, human)
    if failures:
        raise VerificationFailure(f"{len(failures)} selftest checks failed")


if __name__ == "__main__":
    main()
