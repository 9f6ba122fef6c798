"""Command-line front end.

Every command is deterministic given its flags.  Tables are comma-separated
with a header row, preceded by ``#`` comment lines carrying the run
manifest (command, resolved configuration, seed, version); the one
non-deterministic field, wall-clock duration, goes only to the sidecar
manifest file.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import configparser
import io
import logging
import math
import re
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .ar1 import DEFAULT_BURN_IN, Ar1Params, as_series, simulate
from .bayes import (
    G_PRIOR,
    NATURAL_CONJUGATE,
    PRIOR_KINDS,
    TRUNCATED_NORMAL,
    PriorSpec,
    bayes_estimator,
    centered_interval,
    posterior_for_prior,
)
from .diagnostics import normality_tests, phillips_perron, residuals
from .estimators import METHODS, cls, cmle, mle, mme
from .experiments import (
    DEFAULT_SEED,
    TRAINING_SOURCES,
    SimulationConfig,
    bias_config,
    comparison_config,
    run_bias_study,
    run_estimator_comparison,
    run_sensitivity_study,
    sensitivity_config,
    training_hyperparams,
)

__all__ = ["main", "read_series", "RunManifest"]

log = logging.getLogger("ar1bayes")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3
MIN_ANALYZE_LENGTH = 20


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: Optional[int]
    version: str = __version__
    outputs: list = field(default_factory=list)
    duration_s: Optional[float] = None

    def header(self) -> str:
        """Deterministic comment block placed at the top of every table."""
        lines = [f"# command: {self.command}", f"# version: {self.version}", f"# seed: {self.seed}"]
        lines += [f"# config.{k}: {_fmt_value(v)}" for k, v in sorted(self.config.items())]
        return "\n".join(lines) + "\n"

    def text(self) -> str:
        lines = [f"command = {self.command}", f"version = {self.version}", f"seed = {self.seed}"]
        lines += [f"config.{k} = {_fmt_value(v)}" for k, v in sorted(self.config.items())]
        lines.append("outputs = " + ", ".join(self.outputs))
        lines.append(f"duration_s = {self.duration_s:.3f}")
        return "\n".join(lines) + "\n"


def _fmt_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


# -- input ----------------------------------------------------------------------


def read_series(path, column=None) -> np.ndarray:
    """Read one column of observations from a comma or whitespace file.

    Blank lines and lines starting with ``#`` are skipped.  A first data
    line that does not parse as numbers is taken as a header.  ``column``
    is a header name or a 0-based index; by default the column named
    ``value`` is used if present, else the last column.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise DataError(f"{path} is not UTF-8 text") from exc
    header, col, values = None, None, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f for f in re.split(r"[,\s]+", line) if f]
        if col is None:
            if header is None and not values and not _numeric(fields):
                header = fields
                continue
            col = _resolve_column(column, header, len(fields), path)
        if col >= len(fields):
            raise DataError(f"{path}, line {lineno}: expected at least {col + 1} fields, got {len(fields)}")
        try:
            v = float(fields[col])
        except ValueError:
            raise DataError(f"{path}, line {lineno}: cannot parse {fields[col]!r} as a number") from None
        if not math.isfinite(v):
            raise DataError(f"{path}, line {lineno}: non-finite value {fields[col]!r}")
        values.append(v)
    if not values:
        raise DataError(f"{path}: no observations found")
    return np.array(values)


def _numeric(fields) -> bool:
    try:
        [float(f) for f in fields]
    except ValueError:
        return False
    return True


def _resolve_column(column, header, width, path) -> int:
    if column is None:
        if header and "value" in header:
            return header.index("value")
        return width - 1
    if column.lstrip("-").isdigit():
        return int(column)
    if header and column in header:
        return header.index(column)
    raise UsageError(f"column {column!r} not found in {path}")


# -- output ---------------------------------------------------------------------


class _Formatter:
    def __init__(self, precision):
        self.precision = precision

    def __call__(self, v) -> str:
        if isinstance(v, (int, np.integer)) or isinstance(v, str):
            return str(v)
        if self.precision is None:
            return repr(float(v))
        return f"{v:.{self.precision}f}"


def _table(manifest: RunManifest, columns, rows, fmt, notes=()) -> str:
    out = io.StringIO()
    out.write(manifest.header())
    for note in notes:
        out.write(f"# {note}\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) for v in row) + "\n")
    return out.getvalue()


def _write(path: Path, text: str, manifest: RunManifest):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from exc
    manifest.outputs.append(str(path))


def _emit(args, manifest: RunManifest, name: str, text: str):
    """Write into the --out directory, or to stdout when none is given."""
    if args.out is None:
        sys.stdout.write(text + "\n")
    else:
        _write(Path(args.out) / name, text, manifest)


def _finish(args, manifest: RunManifest, started: float, sidecar: Optional[Path] = None):
    manifest.duration_s = time.perf_counter() - started
    if sidecar is None and args.out is not None:
        sidecar = Path(args.out) / "manifest.txt"
    if sidecar is not None:
        manifest.outputs.append(str(sidecar))
        try:
            sidecar.parent.mkdir(parents=True, exist_ok=True)
            sidecar.write_text(manifest.text(), encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {sidecar}: {exc.strerror or exc}") from exc


# -- configuration --------------------------------------------------------------

_CONFIG_KEYS = {
    "phi_grid": "floats", "lengths": "ints", "replications": "int", "burn_in": "int",
    "sigma_eps2": "float", "base_seed": "int", "priors": "strs", "training": "str",
    "prob": "float", "g": "float", "g_location": "float", "repeats": "int",
}


def _parse_list(text: str, kind):
    items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    return tuple(kind(t) for t in items)


def _convert(key: str, raw: str):
    kind = _CONFIG_KEYS[key]
    try:
        if kind == "floats":
            return _parse_list(raw, float)
        if kind == "ints":
            return _parse_list(raw, int)
        if kind == "strs":
            return _parse_list(raw, str)
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        return raw.strip()
    except ValueError:
        raise UsageError(f"config key {key!r}: cannot parse {raw!r}") from None


def load_config(path, section: str) -> dict:
    """Read ``[simulation]`` and the command's own section; later wins."""
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except configparser.Error as exc:
        raise UsageError(f"malformed config {path}: {exc}") from exc
    values = {}
    for name in ("simulation", section):
        if not parser.has_section(name):
            continue
        for key, raw in parser.items(name):
            if key not in _CONFIG_KEYS:
                raise UsageError(f"unknown config key {key!r} in [{name}]")
            values[key] = _convert(key, raw)
    return values


def _flag_overrides(args) -> dict:
    over = {}
    if getattr(args, "phi", None) is not None:
        over["phi_grid"] = _convert("phi_grid", args.phi)
    if getattr(args, "length", None) is not None:
        over["lengths"] = _convert("lengths", args.length)
    for flag, key in (("replications", "replications"), ("burn_in", "burn_in"),
                      ("sigma2", "sigma_eps2"), ("seed", "base_seed"), ("g", "g"),
                      ("training", "training"), ("prob", "prob"), ("repeats", "repeats")):
        v = getattr(args, flag, None)
        if v is not None:
            over[key] = v
    if getattr(args, "prior", None) is not None:
        over["priors"] = _convert("priors", args.prior)
    return over


def _resolve_config(args, factory, section: str) -> tuple[SimulationConfig, dict]:
    values = load_config(args.config, section) if args.config else {}
    values.update(_flag_overrides(args))
    extra = {k: values.pop(k) for k in ("repeats",) if k in values}
    try:
        config = factory(**values)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    return config, extra


def _config_dict(config: SimulationConfig) -> dict:
    return {k: v for k, v in asdict(config).items()}


# -- commands -------------------------------------------------------------------


def cmd_simulate(args) -> int:
    started = time.perf_counter()
    try:
        params = Ar1Params(args.phi, args.sigma2)
        series = simulate(params, args.length, args.burn_in, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    manifest = RunManifest("simulate", dict(phi=args.phi, length=args.length, burn_in=args.burn_in,
                                            sigma_eps2=args.sigma2), args.seed)
    fmt = _Formatter(args.precision)
    text = _table(manifest, ("index", "value"), zip(range(1, len(series) + 1), series.values), fmt)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    out = Path(args.out)
    _write(out, text, manifest)
    _finish(args, manifest, started, out.with_name(out.name + ".manifest.txt"))
    return EXIT_OK


def _hyperparams(args, series, sigma2) -> tuple[float, float, str]:
    if args.train:
        if args.d is not None or args.sigma_phi2 is not None:
            raise UsageError("--train cannot be combined with --d / --sigma-phi2")
        try:
            d, s2 = training_hyperparams(series, sigma2)
        except ValueError as exc:
            raise DataError(str(exc)) from exc
        return d, s2, "training prefix"
    if args.d is None or args.sigma_phi2 is None:
        raise UsageError("give both --d and --sigma-phi2, or --train")
    if not args.sigma_phi2 > 0.0:
        raise UsageError("--sigma-phi2 must be positive")
    return args.d, args.sigma_phi2, "flags"


def _five_estimates(series, sigma2, d, s2) -> dict:
    try:
        return {
            "MME": mme(series).estimate,
            "CLS": cls(series).estimate,
            "MLE": mle(series, sigma2).estimate,
            "CMLE": cmle(series, sigma2).estimate,
            "BE": bayes_estimator(series, sigma2, d, s2).estimate,
        }
    except ValueError as exc:
        raise DataError(str(exc)) from exc


def _load(args):
    values = read_series(args.input, args.column)
    try:
        return as_series(values)
    except ValueError as exc:
        raise DataError(f"{args.input}: {exc}") from exc


def cmd_estimate(args) -> int:
    started = time.perf_counter()
    series = _load(args)
    d, s2, source = _hyperparams(args, series, args.sigma2)
    est = _five_estimates(series, args.sigma2, d, s2)
    manifest = RunManifest("estimate", dict(input=args.input, sigma_eps2=args.sigma2, d=d,
                                            sigma_phi2=s2, hyperparameters=source), None)
    fmt = _Formatter(args.precision)
    _emit(args, manifest, "estimates.csv",
          _table(manifest, METHODS, [[est[m] for m in METHODS]], fmt).rstrip("\n"))
    if args.out is not None:
        _finish(args, manifest, started)
    return EXIT_OK


def cmd_compare(args) -> int:
    started = time.perf_counter()
    config, _ = _resolve_config(args, comparison_config, "compare")
    manifest = RunManifest("compare", _config_dict(config), config.base_seed)
    rows = run_estimator_comparison(config)
    fmt = _Formatter(args.precision)
    for T in config.lengths:
        body = []
        for r in (r for r in rows if r.T == T):
            cells = ["FAILED"] * len(METHODS) if r.failed else [r.estimates[m] for m in METHODS]
            body.append([r.phi, *cells])
        notes = [f"T = {T}; mean over {config.replications} replication(s)"]
        _emit(args, manifest, f"compare_T{T}.csv",
              _table(manifest, ("phi", *METHODS), body, fmt, notes).rstrip("\n"))
    if args.out is not None:
        _finish(args, manifest, started)
    if all(r.failed for r in rows):
        log.error("every cell failed")
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_sensitivity(args) -> int:
    started = time.perf_counter()
    config, _ = _resolve_config(args, sensitivity_config, "sensitivity")
    manifest = RunManifest("sensitivity", _config_dict(config), config.base_seed)
    report = run_sensitivity_study(config, jobs=args.jobs)
    fmt = _Formatter(args.precision)
    notes = []
    if config.replications < 500:
        se = 100.0 * math.sqrt(config.prob * (1 - config.prob) / config.replications)
        notes.append(f"smoke run: {config.replications} replications, Monte Carlo SE near "
                     f"{config.prob * 100:.0f}% is about {se:.1f} points")
    if (report.totals == 0).all():
        log.error("every replication failed")
        return EXIT_NUMERIC
    for phi in config.phi_grid:
        rows = []
        for row in report.table(phi):
            rows.append([row["n"], *[row[k] for k in config.priors], row["denominator"]])
        _emit(args, manifest, f"sensitivity_phi_{phi:g}.csv",
              _table(manifest, ("n", *config.priors, "denominator"), rows, fmt,
                     [f"phi = {phi:g}; percentage of {config.prob:g} intervals covering phi", *notes])
              .rstrip("\n"))
    if args.out is not None:
        _finish(args, manifest, started)
    return EXIT_OK


def cmd_bias_plot(args) -> int:
    started = time.perf_counter()
    config, extra = _resolve_config(args, bias_config, "bias")
    repeats = extra.get("repeats", 10)
    manifest = RunManifest("bias-plot", {**_config_dict(config), "repeats": repeats}, config.base_seed)
    try:
        rows = run_bias_study(config, repeats)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    fmt = _Formatter(args.precision)
    text = _table(manifest, ("repeat", "method", "abs_bias"), rows, fmt)
    if args.out is None:
        sys.stdout.write(text)
    else:
        _write(Path(args.out), text, manifest)
    if args.svg is not None:
        _write(Path(args.svg), bias_svg(rows, config.phi_grid[0], config.lengths[0]), manifest)
    if args.out is not None:
        out = Path(args.out)
        _finish(args, manifest, started, out.with_name(out.name + ".manifest.txt"))
    return EXIT_OK


def cmd_analyze(args) -> int:
    started = time.perf_counter()
    series = _load(args)
    if len(series) < MIN_ANALYZE_LENGTH:
        raise DataError(f"series too short: {len(series)} observations, need at least {MIN_ANALYZE_LENGTH}")
    sigma2 = args.sigma2
    if args.d is None and args.sigma_phi2 is None:
        args.train = True
    d, s2, source = _hyperparams(args, series, sigma2)
    priors = _convert("priors", args.prior) if args.prior else PRIOR_KINDS
    unknown = set(priors) - set(PRIOR_KINDS)
    if unknown:
        raise UsageError(f"unknown prior kinds {sorted(unknown)}")
    manifest = RunManifest("analyze", dict(input=args.input, sigma_eps2=sigma2, d=d, sigma_phi2=s2,
                                           hyperparameters=source, pp_lags=args.pp_lags,
                                           g=args.g, priors=priors), None)
    fmt = _Formatter(args.precision)

    try:
        pp = phillips_perron(series, args.pp_lags)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    _emit(args, manifest, "unit_root.csv", _table(
        manifest, ("lag", "rho", "pr_lt_rho", "tau", "pr_lt_tau"),
        [[r.lag, r.rho_stat, r.rho_p, r.tau_stat, r.tau_p] for r in pp], fmt,
        ["Phillips-Perron, single mean; p-values are response-surface approximations"]).rstrip("\n"))

    est = _five_estimates(series, sigma2, d, s2)
    _emit(args, manifest, "estimates.csv",
          _table(manifest, METHODS, [[est[m] for m in METHODS]], fmt).rstrip("\n"))

    try:
        tests = normality_tests(residuals(series, est["CLS"]))
    except ValueError as exc:
        raise DataError(f"residual normality: {exc}") from exc
    _emit(args, manifest, "normality.csv", _table(
        manifest, ("test", "statistic", "p_value", "in_table_range"),
        [[t.test, t.statistic, t.p_value, str(t.in_table_range).lower()] for t in tests], fmt,
        ["residuals from the CLS fit; p-values are approximations"]).rstrip("\n"))

    rows = []
    for kind in priors:
        if kind in (TRUNCATED_NORMAL, NATURAL_CONJUGATE):
            spec = PriorSpec(kind, d=d, sigma_phi2=s2)
        elif kind == G_PRIOR:
            spec = PriorSpec.g_prior(args.g)
        else:
            spec = PriorSpec.jeffreys()
        try:
            post = posterior_for_prior(series, sigma2, spec)
            lo, hi = centered_interval(post, 0.95)
        except ValueError as exc:
            raise DataError(f"{kind} posterior: {exc}") from exc
        rows.append([kind, post.mean, math.sqrt(post.variance), lo, hi, hi - lo])
    _emit(args, manifest, "posteriors.csv", _table(
        manifest, ("prior", "mean", "sd", "lower", "upper", "length"), rows, fmt,
        ["95% intervals centred on the posterior mean"]).rstrip("\n"))
    if args.out is not None:
        _finish(args, manifest, started)
    return EXIT_OK


# -- bias chart -----------------------------------------------------------------

_COLOURS = {"MME": "#1f77b4", "CLS": "#ff7f0e", "MLE": "#2ca02c", "CMLE": "#d62728", "BE": "#9467bd"}


def bias_svg(rows, phi: float, T: int, width: int = 640, height: int = 400) -> str:
    """Line chart of |bias| against repeat, one polyline per method."""
    left, right, top, bottom = 60, 110, 40, 50
    repeats = sorted({r for r, _, _ in rows})
    ymax = max((b for _, _, b in rows), default=0.0) or 1.0
    ymax *= 1.1
    pw, ph = width - left - right, height - top - bottom

    def sx(r):
        return left + (pw * (r - repeats[0]) / (repeats[-1] - repeats[0]) if len(repeats) > 1 else pw / 2)

    def sy(v):
        return top + ph * (1.0 - v / ymax)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">'
        f'Absolute bias, phi = {phi:g}, T = {T}</text>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    for r in repeats:
        parts.append(f'<text x="{sx(r):.1f}" y="{top + ph + 16}" text-anchor="middle">{r}</text>')
    for i in range(5):
        v = ymax * i / 4
        parts.append(f'<text x="{left - 6}" y="{sy(v) + 4:.1f}" text-anchor="end">{v:.3f}</text>')
    parts.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle">repeat</text>')
    parts.append(f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" '
                 f'transform="rotate(-90 16 {top + ph / 2:.1f})">|bias|</text>')
    for k, method in enumerate(METHODS):
        pts = [(r, b) for r, m, b in rows if m == method]
        if not pts:
            continue
        colour = _COLOURS[method]
        coords = " ".join(f"{sx(r):.1f},{sy(b):.1f}" for r, b in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
        ly = top + 14 + 18 * k
        parts.append(f'<line x1="{left + pw + 12}" y1="{ly}" x2="{left + pw + 32}" y2="{ly}" '
                     f'stroke="{colour}" stroke-width="2"/>')
        parts.append(f'<text x="{left + pw + 38}" y="{ly + 4}">{method}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- argument parsing -----------------------------------------------------------


def _precision(text: str):
    if text == "full":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer or 'full'") from None
    if not 0 <= value <= 17:
        raise argparse.ArgumentTypeError("precision must lie in 0..17")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ar1bayes", description="Bayesian and classical estimation for AR(1) series.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--precision", type=_precision, default=4,
                       help="decimal places in tables, or 'full' (default 4)")
        p.add_argument("--out", help="output file or directory (default: stdout)")
        return p

    def sim_flags(p, phi_help):
        p.add_argument("--config", help="INI file; flags override its values")
        p.add_argument("--phi", help=phi_help)
        p.add_argument("--length", help="series length(s), comma-separated")
        p.add_argument("--replications", type=int)
        p.add_argument("--burn-in", dest="burn_in", type=int)
        p.add_argument("--sigma2", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--training", choices=TRAINING_SOURCES,
                       help="where TN/NC hyperparameters come from (default separate)")

    p = common(sub.add_parser("simulate", help="simulate an AR(1) series"))
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--length", type=int, default=500)
    p.add_argument("--burn-in", dest="burn_in", type=int, default=DEFAULT_BURN_IN)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_simulate)

    def data_flags(p):
        p.add_argument("input", help="observation file (comma or whitespace delimited)")
        p.add_argument("--column", help="column name or 0-based index")
        p.add_argument("--sigma2", type=float, default=1.0)
        p.add_argument("--d", type=float)
        p.add_argument("--sigma-phi2", dest="sigma_phi2", type=float)
        p.add_argument("--train", action="store_true",
                       help="derive d and sigma_phi2 from the training prefix")

    p = common(sub.add_parser("estimate", help="five point estimates of phi"))
    data_flags(p)
    p.set_defaults(func=cmd_estimate)

    p = common(sub.add_parser("analyze", help="unit-root, estimation, residual and posterior report"))
    data_flags(p)
    p.add_argument("--pp-lags", dest="pp_lags", type=int, default=3)
    p.add_argument("--g", type=float, help="g-prior scale (default: series length)")
    p.add_argument("--prior", help="comma-separated prior kinds")
    p.set_defaults(func=cmd_analyze)

    p = common(sub.add_parser("compare", help="estimator comparison tables"))
    sim_flags(p, "true phi values, comma-separated")
    p.set_defaults(func=cmd_compare)

    p = common(sub.add_parser("sensitivity", help="coverage of centred intervals by prior"))
    sim_flags(p, "true phi values, comma-separated")
    p.add_argument("--prior", help="comma-separated prior kinds")
    p.add_argument("--g", type=float)
    p.add_argument("--prob", type=float)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_sensitivity)

    p = common(sub.add_parser("bias-plot", help="absolute bias per repeat and method"))
    sim_flags(p, "true phi (default 0.5)")
    p.add_argument("--repeats", type=int)
    p.add_argument("--svg", help="also write a line chart here")
    p.set_defaults(func=cmd_bias_plot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"ar1bayes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ar1bayes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"ar1bayes: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        print(f"ar1bayes: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
