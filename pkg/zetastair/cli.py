# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
The ``zetastair`` command: plot-ready tables for every module, as CSV or JSON.

Group options (``--format``, ``--out``, ``--precision`` ...) go before the subcommand::

    zetastair --format json --out t1.json trivial-zeros --n-min 126 --n-max 128

Exit codes: 0 on success, 2 on usage or domain errors, 1 on internal failures.
"""
import json
import logging
import os
import sys
from pathlib import Path
from typing import Dict, NamedTuple, Optional

import click
import numpy as np
import pandas as pd

from . import __version__
from .base import (
    CorruptCacheError,
    DomainError,
    NoSignChangeError,
    RangeError,
    SetTag,
    StaircaseError,
)
from .config import cache_dir_plugged, debug_enabled, is_debug, workers_plugged
from .gram import event_trace, gram_point, scan_istantons
from .mehta_dyson import (
    MAX_SPECTRUM_SIZE,
    build_system,
    commutator_check,
    eigen_sym,
    hamiltonian_identity,
    ladder_commutators,
    ladder_residuals,
    zero_sum_residual,
)
from .operator_t import build_operator_t, gt_residual, spectrum_report
from .recipe import Column, Recipe
from .staircase import (
    mean_gap,
    mean_staircase,
    real_zero_images,
    t_star,
    t_star_star,
    to_unit_disk,
)
from .zcache import build_cache, cache_path
from .zetaline import count_zeros, psi

log = logging.getLogger(__name__)

#: Height range the table subcommands over ``t`` accept.
TABLE_T_RANGE = (10.0, 2000.0)
#: Errors the user can fix by changing the arguments.
USER_ERRORS = (DomainError, NoSignChangeError, CorruptCacheError)


class Report(NamedTuple):
    """What a subcommand hands to the writers."""

    rows: pd.DataFrame
    meta: Dict
    #: Named side tables, written as ``<stem>.<name>.csv`` or as JSON keys.
    extras: Optional[Dict[str, pd.DataFrame]] = None


class _UserFailure(click.ClickException):
    exit_code = 2


class _InternalFailure(click.ClickException):
    exit_code = 1


TRIVIAL_ZEROS = Recipe(
    Column(t_star, "t_star", needs="n"),
    Column(t_star_star, "t_star_star", needs="n"),
    Column(lambda n: gram_point(n - 1).height, "gram_point", needs="n"),
    Column(mean_gap, "mean_gap", needs="t_star"),
    name="trivial_zeros",
)
STAIRCASE = Recipe(
    Column(mean_staircase, "mean_staircase", needs="t"),
    Column(count_zeros, "count_zeros", needs="t"),
    Column(
        lambda n: np.asarray(n) - 0.5,
        "count_zeros_minus_half",
        needs="count_zeros",
        vectorized=True,
    ),
    name="staircase",
)
COS_PSI = Recipe(
    Column(lambda t: np.cos(psi(t)), "cos_psi_smooth", needs="t"),
    Column(lambda t: np.cos(psi(t, include_arg=True)), "cos_psi_full", needs="t"),
    name="cospsi",
)
Z_PLANE = Recipe(
    Column(lambda s: to_unit_disk(s).real, "re_z", needs="s"),
    Column(lambda s: to_unit_disk(s).imag, "im_z", needs="s"),
    name="zplane",
)


def _check_n_range(n_min: int, n_max: int):
    if n_min < 1 or n_max < n_min:
        raise DomainError(f"Invalid index range [{n_min}, {n_max}], need 1 <= n-min <= n-max.")


def _check_t_range(t_min: float, t_max: float):
    lo, hi = TABLE_T_RANGE
    if not lo <= t_min < t_max <= hi:
        raise RangeError(
            f"Invalid height range [{t_min:g}, {t_max:g}], need {lo:g} <= t-min < t-max <= {hi:g}."
        )


def _checks_table(checks: Dict[str, float]) -> pd.DataFrame:
    return pd.DataFrame(
        {"check": list(checks), "value": [float(v) for v in checks.values()]}
    )


## Writers


def _jsonable(value, precision: int):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(f"{value:.{precision}g}")
    if isinstance(value, dict):
        return {k: _jsonable(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v, precision) for v in value]
    if isinstance(value, Path):
        return str(value)
    return value


def _records(df: pd.DataFrame, precision: int):
    return [
        {k: _jsonable(v, precision) for k, v in row.items()}
        for row in df.to_dict(orient="records")
    ]


def to_csv(df: pd.DataFrame, precision: int) -> str:
    """Header row, ``.`` decimals, ``%.{precision}g`` floats, ``\\n`` line endings."""
    return df.to_csv(index=False, float_format=f"%.{precision}g", lineterminator="\n")


def to_json(report: Report, precision: int) -> str:
    doc = {
        "meta": _jsonable(report.meta, precision),
        "rows": _records(report.rows, precision),
    }
    for name, df in (report.extras or {}).items():
        doc[name] = _records(df, precision)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_report(report: Report, fmt: str, out: Optional[Path], precision: int):
    """
    Emit `report` to `out` (stdout if `None`).

    CSV side tables go next to `out` as ``<stem>.<name>.csv``; on stdout they follow
    the main table, each after a ``# <name>`` line.
    """
    extras = report.extras or {}
    if fmt == "json":
        text = to_json(report, precision)
        if out is None:
            click.echo(text, nl=False)
        else:
            out.write_text(text, encoding="utf-8")
        return

    if out is None:
        click.echo(to_csv(report.rows, precision), nl=False)
        for name, df in extras.items():
            click.echo(f"# {name}")
            click.echo(to_csv(df, precision), nl=False)
        return

    out.write_text(to_csv(report.rows, precision), encoding="utf-8")
    for name, df in extras.items():
        sidecar = out.with_name(f"{out.stem}.{name}.csv")
        sidecar.write_text(to_csv(df, precision), encoding="utf-8")
        log.info("Wrote side table %r to %s.", name, sidecar)


class _ExitCodeGroup(click.Group):
    """Maps library errors onto exit codes, logging salvaged :term:`jetsam`."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except USER_ERRORS as ex:
            raise _UserFailure(str(ex)) from ex
        except Exception as ex:
            jetsam = getattr(ex, "jetsam", None)
            if jetsam is not None:
                jetsam.log_salvaged()
            log.error("Internal failure: %s", ex, exc_info=is_debug())
            kind = "" if isinstance(ex, StaircaseError) else f"{type(ex).__name__}: "
            raise _InternalFailure(f"{kind}{ex}") from ex


@click.group(cls=_ExitCodeGroup, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, message="%(prog)s %(version)s")
@click.option("-v", "--verbose", count=True, help="More logging (repeat for DEBUG).")
@click.option("--debug/--no-debug", default=None, help="Log salvaged jetsam in ERROR.")
@click.option(
    "--workers",
    type=click.IntRange(min=1),
    default=None,
    help="Shards for zero & Gram scans [default: CPU count].",
)
@click.option(
    "--cache-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Zero-cache directory [default: $STAIRCASE_CACHE_DIR or ~/.cache/zetastair].",
)
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Output file [default: stdout].",
)
@click.option(
    "--precision",
    type=click.IntRange(6, 15),
    default=10,
    show_default=True,
    help="Significant digits printed.",
)
@click.pass_context
def cli(ctx, verbose, debug, workers, cache_dir, fmt, out, precision):
    """Trivial zeros of the mean staircase, zeta zeros, Gram violations & the Dyson ladder."""
    logging.basicConfig(
        level=max(logging.WARNING - 10 * verbose, logging.DEBUG),
        format="%(asctime)s %(levelname)s:%(name)s:%(message)s",
    )
    if debug is not None:
        ctx.with_resource(debug_enabled(debug))
    ## Unlike the library, the command fans out by default.
    ctx.params["workers"] = workers = workers or os.cpu_count() or 1
    ctx.with_resource(workers_plugged(workers))
    ctx.with_resource(cache_dir_plugged(cache_dir))
    ctx.obj = {"format": fmt, "out": out, "precision": precision}


@cli.result_callback()
@click.pass_context
def _emit(ctx, report: Report, **_group_params):
    opts = ctx.obj
    meta = {
        "version": __version__,
        "subcommand": ctx.invoked_subcommand,
        "config": {
            **ctx.params,
            **{k: v for k, v in report.meta.items() if k != "checks"},
        },
    }
    if "checks" in report.meta:
        meta["checks"] = report.meta["checks"]
    write_report(report._replace(meta=meta), opts["format"], opts["out"], opts["precision"])


def _n_range(fn):
    fn = click.option("--n-max", type=int, default=10, show_default=True)(fn)
    return click.option("--n-min", type=int, default=1, show_default=True)(fn)


def _t_range(t_max_default: float):
    def decorate(fn):
        fn = click.option(
            "--t-max", type=float, default=t_max_default, show_default=True
        )(fn)
        return click.option("--t-min", type=float, default=10.0, show_default=True)(fn)

    return decorate


_samples = click.option(
    "--samples", type=click.IntRange(min=2), default=200, show_default=True
)
_size = click.option(
    "--size", "size", type=int, default=20, show_default=True, help="Dyson size N."
)


@cli.command("trivial-zeros")
@_n_range
def trivial_zeros_cmd(n_min, n_max):
    """Both trivial-zero sets, the Gram point g_(n-1) and the mean gap, per n."""
    _check_n_range(n_min, n_max)
    rows = TRIVIAL_ZEROS.compute(
        {"n": np.arange(n_min, n_max + 1)},
        ["n", "t_star", "t_star_star", "gram_point", "mean_gap"],
    )
    return Report(rows, {"n_min": n_min, "n_max": n_max})


@cli.command("staircase")
@_t_range(100.0)
@_samples
def staircase_cmd(t_min, t_max, samples):
    """The mean staircase against the zero count N(t) and N(t) - 1/2."""
    _check_t_range(t_min, t_max)
    rows = STAIRCASE.compute(
        {"t": np.linspace(t_min, t_max, samples)},
        ["t", "mean_staircase", "count_zeros", "count_zeros_minus_half"],
    )
    return Report(rows, {"t_min": t_min, "t_max": t_max, "samples": samples})


@cli.command("cospsi")
@_t_range(100.0)
@_samples
def cospsi_cmd(t_min, t_max, samples):
    """cos Ψ(t) without and with the arg ζ term."""
    _check_t_range(t_min, t_max)
    rows = COS_PSI.compute(
        {"t": np.linspace(t_min, t_max, samples)},
        ["t", "cos_psi_smooth", "cos_psi_full"],
    )
    return Report(rows, {"t_min": t_min, "t_max": t_max, "samples": samples})


@cli.command("istantons")
@click.option("--t-max", type=float, default=300.0, show_default=True)
@click.option(
    "--trace-samples",
    type=click.IntRange(min=2),
    default=41,
    show_default=True,
    help="Critical-line samples around each event for the `trace` side table.",
)
def istantons_cmd(t_max, trace_samples):
    """Gram-law violation events, plus Im ζ and S(t) traced around each."""
    _check_t_range(TABLE_T_RANGE[0], t_max)
    events = scan_istantons(t_max)
    rows = pd.DataFrame(
        events, columns=["gram_index", "center_t", "width", "phase_sign", "violations"]
    )
    trace = pd.DataFrame(
        [
            (ev.gram_index, s.t, s.zeta_im, s.s_fluct)
            for ev in events
            for s in event_trace(ev, samples=trace_samples)
        ],
        columns=["gram_index", "t", "im_zeta", "s_fluct"],
    )
    counts = {"events": len(events), "raw_violations": int(rows["violations"].sum())}
    return Report(rows, {"t_max": t_max, **counts}, {"trace": trace})


@cli.command("dyson")
@_size
def dyson_cmd(size):
    """Spectrum of H with the commutator, ladder and identity residuals."""
    if size > MAX_SPECTRUM_SIZE:
        raise RangeError(f"Dyson reports contracted for N <= {MAX_SPECTRUM_SIZE}, got: {size}")
    system = build_system(size)
    eigenvalues = eigen_sym(system.h_matrix).eigenvalues
    k = np.arange(1, size + 1)
    rows = pd.DataFrame(
        {"k": k, "eigenvalue": eigenvalues, "deviation": np.abs(eigenvalues - k)}
    )
    eig_res, down_res, ground = ladder_residuals(system)
    raising, lowering = ladder_commutators(system)
    checks = {
        "max_integer_deviation": float(rows["deviation"].max()),
        "commutator_max_abs": float(np.max(np.abs(commutator_check(system)))),
        "zero_sum_residual": zero_sum_residual(system),
        "ladder_eigen_residual": eig_res,
        "ladder_lowering_residual": down_res,
        "ladder_ground_residual": ground,
        "hamiltonian_identity": hamiltonian_identity(system),
        "raising_commutator": raising,
        "lowering_commutator": lowering,
    }
    return Report(rows, {"size": size, "checks": checks}, {"checks": _checks_table(checks)})


@cli.command("operator-t")
@_size
def operator_t_cmd(size):
    """Spectrum of T against the trivial zeros, for both sets."""
    if size > MAX_SPECTRUM_SIZE:
        raise RangeError(f"Operator T reports contracted for N <= {MAX_SPECTRUM_SIZE}, got: {size}")
    system = build_system(size)
    blocks, checks = [], {}
    for tag in SetTag:
        op = build_operator_t(system, tag)
        report = spectrum_report(op)
        report.insert(0, "set", tag.value)
        blocks.append(report)
        tail = report["rel_diff"].to_numpy()[9:]
        checks[f"{tag.value}_gt_residual"] = gt_residual(op)
        checks[f"{tag.value}_rel_diff_nonincreasing"] = bool(np.all(np.diff(tail) <= 0))
    rows = pd.concat(blocks, ignore_index=True)
    return Report(rows, {"size": size, "checks": checks}, {"checks": _checks_table(checks)})


@cli.command("zplane")
@_n_range
def zplane_cmd(n_min, n_max):
    """Both trivial-zero sets and the real zeros s = -2n mapped by z = 1 - 1/s."""
    _check_n_range(n_min, n_max)
    ns = np.arange(n_min, n_max + 1)
    blocks = []
    for kind, height in (("first", t_star), ("second", t_star_star)):
        s = np.array([complex(0.5, height(n)) for n in ns])
        block = Z_PLANE.compute({"s": s, "n": ns}, ["n", "re_z", "im_z"])
        block.insert(0, "kind", kind)
        blocks.append(block)
    real = [(n, z) for n, z in real_zero_images(n_max) if n >= n_min]
    blocks.append(
        pd.DataFrame(
            {
                "kind": "real_zero",
                "n": [n for n, _ in real],
                "re_z": [z.real for _, z in real],
                "im_z": [z.imag for _, z in real],
            }
        )
    )
    rows = pd.concat(blocks, ignore_index=True)
    return Report(rows, {"n_min": n_min, "n_max": n_max})


@cli.command("cache-zeros")
@_t_range(300.0)
def cache_zeros_cmd(t_min, t_max):
    """Scan the true zeros in a height range into the persistent cache."""
    _check_t_range(t_min, t_max)
    path = cache_path()
    cache = build_cache(t_min, t_max, path)
    rows = pd.DataFrame(cache.records, columns=["index", "height"])
    return Report(rows, {"cache": path, "t_min": cache.t_min, "t_max": cache.t_max})


def main(argv=None):
    """Console entry point."""
    cli.main(args=argv, prog_name="zetastair")


if __name__ == "__main__":
    sys.exit(main())
