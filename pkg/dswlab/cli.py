"""Command line front end.

Every subcommand writes its JSON report to standard output (or ``--json``)
and its tables to ``--csv``. Exit codes: 0 on success, 2 for invalid
input, 3 when a solver fails and 4 when the PDE integration blows up.
"""

import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

import numpy as np

from . import __version__, export, hodograph, pde, riemann
from .config import RunConfig, SolverConfig
from .errors import DomainError, InstabilityError, InvalidInput, SolverError
from .models import CubicBreakData, HydroState, StepData
from .types import RealArray

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3
EXIT_INSTABILITY = 4

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_DEFAULT_SAMPLES = 401
_SOLVER_FLAGS = (
    "n_points",
    "length",
    "dt",
    "smoothing_width",
    "dealias_fraction",
    "edge_threshold",
)
# flags whose values may start with a minus sign
_SIGNED_FLAGS = ("--left", "--right", "--x")
_SIGNED_VALUE = re.compile(r"^-[\d.]")

_RANGE_HELP = "N samples from A to B, e.g. --x -40:5:10"

Handler = Callable[[argparse.Namespace, TextIO], None]


def parse_state(text: str) -> HydroState:
    """``RHO,NU`` to a validated state."""
    try:
        rho, nu = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected RHO,NU, got {0!r}".format(text)) from None
    return HydroState(rho, nu)


def parse_range(text: str) -> RealArray:
    """``A:B:N`` to ``N`` evenly spaced points from ``A`` to ``B``."""
    try:
        a, b, n = text.split(":")
        start, stop, count = float(a), float(b), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError("expected A:B:N, got {0!r}".format(text)) from None
    if count < 2 or not stop > start:
        raise argparse.ArgumentTypeError("need A < B and N >= 2, got {0!r}".format(text))
    return np.linspace(start, stop, count)


def attach_signed_values(argv: Sequence[str]) -> List[str]:
    """Join ``--x -40:5:10`` into ``--x=-40:5:10`` so argparse does not take
    the value for an option."""
    out: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in _SIGNED_FLAGS:
            value = next(tokens, None)
            if value is not None and _SIGNED_VALUE.match(value):
                out.append("{0}={1}".format(token, value))
                continue
            out.append(token)
            if value is not None:
                out.append(value)
            continue
        out.append(token)
    return out


def _padded(lo: float, hi: float) -> RealArray:
    pad = 0.5 * (hi - lo) + 1.0
    return np.linspace(lo - pad, hi + pad, _DEFAULT_SAMPLES)


def _run_config(args: argparse.Namespace) -> RunConfig:
    if args.threads is None:
        return RunConfig()
    return RunConfig(threads=args.threads)


def _solver_config(args: argparse.Namespace, **defaults: Any) -> SolverConfig:
    options = dict(defaults)
    for name in _SOLVER_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            options[name] = value
    return SolverConfig(**options)


def _emit(data: Any, args: argparse.Namespace, out: TextIO) -> None:
    export.write_json(data, args.json, None if args.json else out)


def classify(args: argparse.Namespace, out: TextIO) -> None:
    pattern = riemann.build_pattern(StepData(args.left, args.right), _run_config(args))
    log.info("classified as %s", pattern.case)
    data = pattern.as_dict()
    data["step"] = pattern.step.as_dict()
    _emit(data, args, out)


def profile(args: argparse.Namespace, out: TextIO) -> None:
    config = _run_config(args)
    pattern = riemann.build_pattern(StepData(args.left, args.right), config)
    if not args.t > 0:
        raise DomainError("profiles need t > 0, got {0!r}".format(args.t))
    speeds = pattern.edge_speeds or (0.0,)
    xs = args.x if args.x is not None else _padded(min(speeds) * args.t, max(speeds) * args.t)
    data = riemann.build_profile(pattern, xs, args.t, config)
    physical = pattern.physical
    columns = {
        "x": data["x"],
        "rho_upper": data["rho_upper"],
        "nu_upper": data["nu_upper"],
        "rho_lower": data["rho_lower"],
        "nu_lower": data["nu_lower"],
        "envelope_min": data["min_" + physical],
        "envelope_max": data["max_" + physical],
    }
    export.write_csv(columns, args.csv, None if args.csv else out)


def simulate(args: argparse.Namespace, out: TextIO) -> None:
    sd = StepData(args.left, args.right)
    config = _solver_config(args)
    fs = pde.init_from_step(pde.make_grid(config), sd, config.smoothing_width)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    snapshots = []
    for index, snap in enumerate(pde.evolve_to(fs, args.t, config)):
        nu, _ = pde.velocity(snap, config.vacuum_epsilon * float(np.max(snap.rho)))
        name = "snapshot_{0:03d}.csv".format(index)
        export.write_csv(export.snapshot_columns(snap, nu), out_dir / name)
        snapshots.append(
            {
                "time": snap.time,
                "file": name,
                "mass": snap.mass,
                "mass_drift": abs(snap.mass - fs.mass) / fs.mass,
                "max_rho": float(np.max(snap.rho)),
            }
        )
    report = {
        "step": sd.as_dict(),
        "config": config.as_dict(),
        "mass_initial": fs.mass,
        "snapshots": snapshots,
    }
    _emit(report, args, out)


def compare(args: argparse.Namespace, out: TextIO) -> None:
    sd = StepData(args.left, args.right)
    pattern = riemann.build_pattern(sd, _run_config(args))
    config = _solver_config(args)
    fs = pde.init_from_step(pde.make_grid(config), sd, config.smoothing_width)
    snap = pde.evolve(fs, args.t, config)
    _emit(pde.compare_with_pattern(pattern, snap, config), args, out)


def cubic(args: argparse.Namespace, out: TextIO) -> None:
    d = CubicBreakData(args.lminus, args.lplus)
    x_left, x_right, l4 = hodograph.edge_laws(args.t, d)
    report: Dict[str, Any] = {
        "break": d.as_dict(),
        "time": args.t,
        "x_left": x_left,
        "x_right": x_right,
        "l4_soliton": l4,
    }
    if args.csv and args.t > 0:
        xs = args.x if args.x is not None else _padded(x_left, x_right)
        export.write_csv(hodograph.cubic_profile(xs, args.t, d, _run_config(args)), args.csv)
    elif args.csv:
        log.warning("nothing to tabulate at t=0, %s not written", args.csv)
    if args.simulate:
        config = _solver_config(args)
        fs = pde.init_from_cubic(pde.make_grid(config), d, config.smoothing_width)
        report["simulation"] = pde.compare_with_cubic(d, pde.evolve(fs, args.t, config), config)
    _emit(report, args, out)


def dispersion_test(args: argparse.Namespace, out: TextIO) -> None:
    config = _solver_config(args, n_points=256, length=50.0)
    _emit(pde.dispersion_test(args.k, args.amp, config), args, out)


def plot(args: argparse.Namespace, out: TextIO) -> None:
    table = export.read_csv(args.csv)
    columns = args.columns.split(",") if args.columns else None
    export.plot_columns(table, args.out, columns, args.x_column, args.title)


COMMANDS: Dict[str, Handler] = {
    "classify": classify,
    "profile": profile,
    "simulate": simulate,
    "compare": compare,
    "cubic": cubic,
    "dispersion-test": dispersion_test,
    "plot": plot,
}


def _add_step(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--left", type=parse_state, required=True, metavar="RHO,NU")
    parser.add_argument("--right", type=parse_state, required=True, metavar="RHO,NU")


def _add_grid(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("solver")
    group.add_argument("--n-points", dest="n_points", type=int, help="grid size, a power of two")
    group.add_argument("--length", type=float, help="periodic domain length")
    group.add_argument("--dt", type=float, help="fixed time step")
    group.add_argument("--width", dest="smoothing_width", type=float, help="smoothing width")
    group.add_argument("--dealias", dest="dealias_fraction", type=float)
    group.add_argument("--edge-threshold", dest="edge_threshold", type=float)


def _add_json(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dswlab",
        description="Whitham modulation theory and direct simulation for the HOCLL equation.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--threads", type=int, help="sampling workers (default DSW_LAB_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="wave pattern of step data")
    _add_step(p)
    _add_json(p)

    p = sub.add_parser("profile", help="Whitham densities of step data at time t")
    _add_step(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", type=parse_range, metavar="A:B:N", help=_RANGE_HELP)
    p.add_argument("--csv", type=Path, help="write the table here instead of stdout")

    p = sub.add_parser("simulate", help="evolve step data with the PDE solver")
    _add_step(p)
    p.add_argument("--t", type=float, nargs="+", required=True, help="snapshot times")
    p.add_argument("--out-dir", type=Path, default=Path("."))
    _add_grid(p)
    _add_json(p)

    p = sub.add_parser("compare", help="Whitham predictions against the PDE solver")
    _add_step(p)
    p.add_argument("--t", type=float, required=True)
    _add_grid(p)
    _add_json(p)

    p = sub.add_parser("cubic", help="regularization of a cubic-root breaking profile")
    p.add_argument("--lminus", type=float, required=True)
    p.add_argument("--lplus", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", type=parse_range, metavar="A:B:N", help=_RANGE_HELP)
    p.add_argument("--csv", type=Path, help="write the modulation table here")
    p.add_argument("--simulate", action="store_true", help="compare the edges with the PDE")
    _add_grid(p)
    _add_json(p)

    p = sub.add_parser("dispersion-test", help="plane-wave frequency against the dispersion law")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--amp", type=float, required=True)
    _add_grid(p)
    _add_json(p)

    p = sub.add_parser("plot", help="SVG line plot of a CSV table")
    p.add_argument("csv", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--columns", help="comma separated, default all")
    p.add_argument("--x-column", default="x")
    p.add_argument("--title")
    return parser


def _failure(exc: SolverError) -> Dict[str, Any]:
    return {"error": type(exc).__name__, "message": exc.text, "diagnostics": exc.diagnostics}


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    argv = attach_signed_values(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except InvalidInput as exc:
        print("dswlab: error: {0}".format(exc), file=sys.stderr)
        return EXIT_INVALID

    logger = logging.getLogger("dswlab")
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    level = logger.level
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if args.verbose else logging.WARNING)
    try:
        COMMANDS[args.command](args, out)
    except InstabilityError as exc:
        log.error("integration blew up: %s", exc)
        sys.stderr.write(export.dumps(_failure(exc)))
        return EXIT_INSTABILITY
    except SolverError as exc:
        log.error("solver failed: %s", exc)
        sys.stderr.write(export.dumps(_failure(exc)))
        return EXIT_SOLVER
    except InvalidInput as exc:
        print("dswlab: error: {0}".format(exc), file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:
        log.exception("unexpected failure in %s", args.command)
        report = {"error": type(exc).__name__, "message": str(exc), "diagnostics": {}}
        sys.stderr.write(export.dumps(report))
        return EXIT_SOLVER
    finally:
        logger.removeHandler(handler)
        logger.setLevel(level)
    return EXIT_OK
