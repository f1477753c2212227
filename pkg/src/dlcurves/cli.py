"""Command-line driver: point counts, verification suites and point dumps.

Exit codes: 0 success, 1 assertion failure, 2 budget refusal, 3 config error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import sys

import numpy as np

from . import _accel, suites
from .dlcore.counts import FAMILIES
from .dlcore.enumerate import BUDGETS, BudgetExceeded, enumerate_points
from .dlcore.report import VerificationReport

__all__ = ["RunConfig", "main", "cmd_count", "cmd_verify", "cmd_dump_points", "cmd_check_points",
           "read_points", "write_points", "EXIT_OK", "EXIT_FAIL", "EXIT_BUDGET", "EXIT_CONFIG"]

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_CONFIG = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclasses.dataclass
class RunConfig:
    command: str
    family: str
    m: int
    n: int = 1
    p: int | None = None
    strategy: str = "auto"
    mode: str = "ci"
    seed: int = 0
    threads: int | None = None
    out: str | None = None
    format: str = "json"
    timing: bool = False
    points: str | None = None

    def validate(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if self.m < 0 or self.n < 1:
            raise ConfigError("need m >= 0 and n >= 1")
        if self.mode not in BUDGETS:
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.strategy not in ("auto", "ambient", "vscan"):
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        try:
            model = suites.build_model(self.family, self.m, self.p)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if model.frob_exp == 0:
            raise ConfigError(f"{self.family} with m=0 has no field of definition F_q")
        if self.strategy == "vscan" and not hasattr(model, "vscan_conditions"):
            raise ConfigError(f"v-scan is not available for family {self.family}")
        return model


# ---------------------------------------------------------------------------
# point CSV


def write_points(model, points):
    """Canonical CSV: header of basis names, one normalized point per row (field codes)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(model.basis_names)
    for row in np.asarray(points).reshape(-1, model.dim):
        w.writerow([int(c) for c in row])
    return buf.getvalue()


def read_points(model, text):
    """Parse a point CSV written by ``write_points``; returns an (N, dim) array."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != tuple(model.basis_names):
        raise ConfigError(f"header must be {','.join(model.basis_names)}")
    body = [r for r in rows[1:] if r]
    if any(len(r) != model.dim for r in body):
        raise ConfigError(f"every row needs {model.dim} coordinates")
    try:
        return np.array([[int(c) for c in r] for r in body], dtype=np.int64).reshape(-1, model.dim)
    except ValueError:
        raise ConfigError("coordinates must be integer field codes") from None


# ---------------------------------------------------------------------------
# commands


def _exit_of(rep):
    counts = rep.status_counts()
    if counts["fail"]:
        return EXIT_FAIL
    if counts["refused"]:
        return EXIT_BUDGET
    return EXIT_OK


def _render(rep, fmt):
    return rep.to_json() if fmt == "json" else rep.to_csv()


def cmd_count(cfg):
    cfg.validate()
    rep, _ = suites.count(cfg.family, cfg.m, cfg.n, cfg.p, cfg.strategy, cfg.mode, cfg.seed,
                          cfg.timing)
    return _exit_of(rep), _render(rep, cfg.format)


def cmd_verify(cfg):
    """Refused items are recorded in the report; only assertion failures set the exit code."""
    cfg.validate()
    rep = suites.verify(cfg.family, cfg.m, cfg.p, cfg.mode, cfg.seed, cfg.timing)
    return (EXIT_FAIL if not rep.ok else EXIT_OK), _render(rep, cfg.format)


def cmd_dump_points(cfg):
    model = cfg.validate()
    strategy = suites.choose_strategy(model, cfg.n, cfg.strategy, cfg.mode)
    ps = enumerate_points(model, cfg.n, strategy, cfg.mode)
    return EXIT_OK, write_points(model, ps.coords)


def cmd_check_points(cfg):
    """Re-ingest a point CSV and check membership and normalization of every row."""
    model = cfg.validate()
    if cfg.points is None:
        raise ConfigError("check-points needs --points")
    with open(cfg.points) as fh:
        pts = read_points(model, fh.read())
    F = model.field(cfg.n)
    if pts.size and (pts.min() < 0 or pts.max() >= F.order):
        raise ConfigError(f"coordinates must be codes in [0, {F.order})")
    rep = VerificationReport({"family": model.family, "p": model.p, "m": cfg.m, "q": model.q,
                              "n": cfg.n, "source": cfg.points}, timing=cfg.timing, seed=cfg.seed)
    if len(pts):
        W = pts.T
        nz = W != 0
        lead = np.take_along_axis(W, np.argmax(nz, axis=0)[None], axis=0)[0]
        rep.asserted("rows_normalized", bool(nz.any(axis=0).all() and (lead == 1).all()),
                     tag="definition")
        member = model.is_member(F, W)
        rep.asserted("rows_on_curve", bool(member.all()), int(member.sum()), len(pts), "definition")
        rep.asserted("rows_distinct", len({tuple(r) for r in pts.tolist()}) == len(pts),
                     tag="definition")
    rep.add("row_count", "measured", int(len(pts)), tag="measurement")
    return _exit_of(rep), _render(rep, cfg.format)


COMMANDS = {"count": cmd_count, "verify": cmd_verify, "dump-points": cmd_dump_points,
            "check-points": cmd_check_points}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser():
    ap = _Parser(prog="dlcurves", description="Deligne-Lusztig curve models: counts and checks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--family", required=True, choices=FAMILIES)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--n", type=int, default=1, help="extension degree over F_q")
        sp.add_argument("--p", type=int, default=None, help="characteristic (su3 only: 2 or 3)")
        sp.add_argument("--strategy", default="auto", choices=("auto", "ambient", "vscan"))
        sp.add_argument("--mode", default="ci", choices=tuple(BUDGETS))
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", default="json", choices=("json", "csv"))
        sp.add_argument("--timing", action="store_true", help="record wall times in the report")
        if name == "check-points":
            sp.add_argument("--points", required=True, help="CSV written by dump-points")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    if cfg.threads:
        _accel.set_threads(cfg.threads)
    try:
        code, text = COMMANDS[cfg.command](cfg)
    except ConfigError as e:
        print(f"dlcurves: config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as e:
        print(f"dlcurves: refused: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as e:
        print(f"dlcurves: {e}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
