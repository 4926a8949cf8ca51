"""
Main module for sphex.

This module implements the command line: it loads the configured group and
character table, builds or loads the subgroup lattice, and prints class data,
tables, lattices, fixed-point dimensions, Oliver verdicts and exclusion
reports. Results go to stdout; diagnostics go to the sphex logger on stderr.

Exit codes: 0 on success, 1 on a usage error, 2 on a verification failure.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from sphex.cache import cached_lattice
from sphex.chartab import CharacterTable, real_rows
from sphex.config import Config
from sphex.errors import SphexError, UsageError, VerificationError
from sphex.exactnum import format_number
from sphex.exclusion import ExclusionContext, Mode, Scope, exclude, scan
from sphex.fixtures import fixture_group
from sphex.group import FiniteGroup, save_group
from sphex.lattice import SubgroupLattice
from sphex.oliver import oliver_table, oliver_verdict
from sphex.serializer import serialize_report, serialize_scan, serialize_verdicts
from sphex.utils import log_print
from sphex.verify import verify_report

logger = logging.getLogger("sphex")


def setup_logging(verbose: bool = False) -> logging.Logger:
    """Set up the sphex logger with a single console handler.

    Args:
        verbose (bool): Log at DEBUG instead of INFO.

    Returns:
        logging.Logger: The configured "sphex" logger.
    """
    formatter = logging.Formatter("%(message)s")
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    logger.handlers = [console_handler]
    logger.propagate = False
    return logger


def emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def emit_json(data: object) -> None:
    emit(json.dumps(data, indent=2))


class Session:
    """Lazily built group, table and lattice for one invocation."""

    def __init__(self, config: Config):
        self.config = config
        self._group: Optional[FiniteGroup] = None
        self._table: Optional[CharacterTable] = None
        self._lattice: Optional[SubgroupLattice] = None

    @property
    def group(self) -> FiniteGroup:
        if self._group is None:
            self._group = self.config.load_group()
            log_print("group", self._group.name, "of order", self._group.order)
        return self._group

    @property
    def table(self) -> CharacterTable:
        if self._table is None:
            self._table = self.config.load_table(self.group)
        return self._table

    @property
    def lattice(self) -> SubgroupLattice:
        if self._lattice is None:
            self._lattice = cached_lattice(self.group, self.config.cache_dir, self.config.lattice_cap)
        return self._lattice

    def context(self) -> ExclusionContext:
        return ExclusionContext(self.table, self.lattice)


def cmd_classes(session: Session, args: argparse.Namespace) -> int:
    group = session.group
    if session.config.output_format == "json":
        emit_json(
            [
                {"label": c.label, "order": c.order_of_rep, "size": c.size, "representative": c.representative}
                for c in group.classes
            ]
        )
        return 0
    for c in group.classes:
        emit(f"{c.label:<4} order {c.order_of_rep:<3} size {c.size}")
    return 0


def cmd_chartab(session: Session, args: argparse.Namespace) -> int:
    table = session.table
    if args.complex:
        rows = [(chi.name, [format_number(v) for v in chi.values]) for chi in table.complex_irreducibles]
    else:
        rows = list(real_rows(table))
    if session.config.output_format == "json":
        emit_json({"classes": table.labels, "rows": {name: values for name, values in rows}})
        return 0
    emit("class " + " ".join(table.labels))
    for name, values in rows:
        emit(f"{name}: {', '.join(values)}")
    return 0


def cmd_lattice(session: Session, args: argparse.Namespace) -> int:
    lattice = session.lattice
    if session.config.output_format == "json":
        emit_json(lattice.to_dict())
        return 0
    for cls in lattice.classes:
        flag = " normal" if cls.is_normal else ""
        emit(f"{cls.index:>3} {cls.label:<12} order {cls.order:<4} conjugates {cls.class_size}{flag}")
    for lo, hi in lattice.edges:
        emit(f"{lattice.classes[lo].label} < {lattice.classes[hi].label}")
    return 0


def cmd_fpdim(session: Session, args: argparse.Namespace) -> int:
    table = session.table
    lattice = session.lattice
    if args.all:
        matrix = table.fp_matrix([cls.representative for cls in lattice.classes])
        if session.config.output_format == "json":
            emit_json({"classes": lattice.labels, "rows": dict(zip(table.names, matrix))})
            return 0
        emit("module " + " ".join(lattice.labels))
        for name, row in zip(table.names, matrix):
            emit(f"{name} " + " ".join(str(v) for v in row))
        return 0
    if not args.module or not args.subgroup:
        raise UsageError("fpdim needs --module and --class, or --all")
    module = table.parse_module(args.module)
    subgroup = lattice.class_by_label(args.subgroup).representative
    emit(str(table.fp_dim(module, subgroup)))
    return 0


def cmd_oliver(session: Session, args: argparse.Namespace) -> int:
    lattice = session.lattice
    if args.subgroup:
        verdict = oliver_verdict(lattice, lattice.class_by_label(args.subgroup).representative)
        if session.config.output_format == "json":
            emit_json(serialize_verdicts({0: verdict})[0])
        else:
            emit(verdict.describe())
        return 0
    verdicts = oliver_table(lattice)
    if session.config.output_format == "json":
        emit_json(serialize_verdicts(verdicts))
        return 0
    for index in sorted(verdicts):
        emit(f"{lattice.classes[index].label}: {verdicts[index].describe()}")
    return 0


def cmd_exclude(session: Session, args: argparse.Namespace) -> int:
    config = session.config
    context = session.context()
    mode, scope = Mode(args.mode), Scope(args.scope)
    if args.scan:
        result = scan(context, mode, scope, args.effective, args.pseudofree, n_max=config.n_max)
        reports = result.reports
    else:
        if args.dim is None:
            raise UsageError("exclude needs --dim or --scan")
        reports = [
            exclude(context, args.dim, mode, scope, args.effective, args.pseudofree, args.forbid or ())
        ]
    if args.verify:
        checked = sum(verify_report(context, report) for report in reports)
        log_print("re-verified", checked, "rule applications")
    if config.output_format == "json":
        if args.scan:
            emit_json(serialize_scan(result, config.n_max, config.trace))
        else:
            emit_json(serialize_report(reports[0], config.trace))
        return 0
    if not args.scan:
        emit(reports[0].verdict_line())
        return 0
    for report in reports:
        emit(f"n={report.dimension}: {report.verdict_line()}")
    emit("admissible: " + (", ".join(str(n) for n in result.admissible) or "none"))
    return 0


def cmd_fixture(session: Session, args: argparse.Namespace) -> int:
    group = fixture_group(args.name)
    if not args.output:
        raise UsageError("fixture needs --output")
    output = Path(args.output)
    save_group(group, str(output))
    emit(f"wrote {group.name} (order {group.order}) to {output}")
    return 0


COMMANDS: Dict[str, Callable[[Session, argparse.Namespace], int]] = {
    "classes": cmd_classes,
    "chartab": cmd_chartab,
    "lattice": cmd_lattice,
    "fpdim": cmd_fpdim,
    "oliver": cmd_oliver,
    "exclude": cmd_exclude,
    "fixture": cmd_fixture,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphex",
        description="Exclude fixed point actions on spheres by character and subgroup data",
    )
    parser.add_argument("--group", help="group file (default: bundled SL(2,5).C2)")
    parser.add_argument("--chartab", help="complex character table file")
    parser.add_argument("--format", choices=["text", "json"], default="text", dest="output_format")
    parser.add_argument("--trace", action="store_true", help="include every rule application")
    parser.add_argument("--n-max", type=int, help="upper end of dimension scans")
    parser.add_argument("--max-order", type=int, help="cap on group order")
    parser.add_argument("--lattice-cap", type=int, help="cap on group order for lattices")
    parser.add_argument("--no-cache", action="store_true", help="do not read or write the lattice cache")
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("classes", help="conjugacy classes")
    chartab = sub.add_parser("chartab", help="verified character table")
    chartab.add_argument("--complex", action="store_true", help="print the complex rows instead")
    sub.add_parser("lattice", help="subgroup classes and covering edges")

    fpdim = sub.add_parser("fpdim", help="fixed point dimensions")
    fpdim.add_argument("--module", help='module such as "U6+W8_1^2"')
    fpdim.add_argument("--class", dest="subgroup", help="subgroup class label")
    fpdim.add_argument("--all", action="store_true", help="irreducible by class matrix")

    oliver = sub.add_parser("oliver", help="Oliver verdicts")
    oliver.add_argument("--subgroup", help="subgroup class label (default: every class)")

    excl = sub.add_parser("exclude", help="run the exclusion rules")
    excl.add_argument("--dim", type=int, help="dimension of the sphere")
    excl.add_argument("--scan", action="store_true", help="scan n from 0 to --n-max")
    excl.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.ONE.value)
    excl.add_argument("--scope", choices=[s.value for s in Scope], default=Scope.HOMOLOGY.value)
    excl.add_argument("--effective", action="store_true", help="faithful tangent modules only")
    excl.add_argument("--pseudofree", type=int, help="pseudofreeness bound k")
    excl.add_argument("--forbid", action="append", help="irreducible that may not occur")
    excl.add_argument("--no-verify", action="store_false", dest="verify", help="skip trace re-verification")

    fixture = sub.add_parser("fixture", help="write a bundled group to a group file")
    fixture.add_argument("--name", default="sl25c2", help="fixture name")
    fixture.add_argument("--output", help="output path")
    return parser


def make_config(args: argparse.Namespace) -> Config:
    overrides: Dict[str, object] = {
        "group_file": Path(args.group) if args.group else None,
        "chartab_file": Path(args.chartab) if args.chartab else None,
        "output_format": args.output_format,
        "trace": args.trace,
        "n_max": args.n_max,
        "max_group_order": args.max_order,
        "lattice_cap": args.lattice_cap,
    }
    config = Config.from_env(**overrides)
    if args.no_cache:
        config = config.model_copy(update={"cache_dir": None})
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    setup_logging(args.verbose)
    try:
        config = make_config(args)
        if args.command != "fixture":
            config.check_paths()
        return COMMANDS[args.command](Session(config), args)
    except VerificationError as exc:
        logger.error("error: %s: %s", type(exc).__name__, exc)
        return 2
    except UsageError as exc:
        logger.error("error: %s: %s", type(exc).__name__, exc)
        return 1
    except (ValidationError, OSError, ValueError) as exc:
        logger.error("error: %s: %s", type(exc).__name__, str(exc).splitlines()[0])
        return 1
    except SphexError as exc:
        logger.error("error: %s: %s", type(exc).__name__, exc)
        return 1


def run(argv: Optional[List[str]] = None) -> None:
    sys.exit(main(argv))


if __name__ == "__main__":
    run()
