"""Command-line driver for the verification suites.

    python3 -m exactness --suite counterexample
    python3 -m exactness --suite all --report json
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from exactness import adjverify as av
from exactness import grppairs as gp

SUITES = ("set-chain", "grp-chain", "axioms", "galois", "functoriality", "counterexample")
MAX_SET_SIZE = 4
MAX_GROUP_ORDER = 8

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    suite: str = "all"
    max_set_size: int = 3
    max_group_order: int = 6
    group_file: str | None = None
    report_format: str = "text"
    failure_cap: int = 10
    parallel: bool = False

    def __post_init__(self):
        if self.suite not in SUITES + ("all",):
            raise ValueError(f"unknown suite {self.suite!r}")
        if not 0 <= self.max_set_size <= MAX_SET_SIZE:
            raise ValueError(f"max_set_size must be in 0..{MAX_SET_SIZE}")
        if not 1 <= self.max_group_order <= MAX_GROUP_ORDER:
            raise ValueError(f"max_group_order must be in 1..{MAX_GROUP_ORDER}")
        if self.report_format not in ("text", "json"):
            raise ValueError(f"unknown report format {self.report_format!r}")
        if self.failure_cap < 1:
            raise ValueError("failure_cap must be positive")

    @property
    def suites(self) -> tuple[str, ...]:
        return SUITES if self.suite == "all" else (self.suite,)


class InputError(Exception):
    """Bad group file or config; maps to exit status 2."""


def load_groups(config: RunConfig) -> list[gp.FinGroup]:
    """The built-in corpus up to the order cap, then any groups from the file."""
    groups = gp.corpus(config.max_group_order)
    if config.group_file is None:
        return groups
    path = Path(config.group_file)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read group file {path}: {exc.strerror}") from None
    try:
        extra = gp.parse_groups(text)
    except (gp.GroupFileError, gp.GroupAxiomError) as exc:
        raise InputError(f"{path}: {exc}") from None
    for G in extra:
        if G.order > MAX_GROUP_ORDER:
            raise InputError(f"{path}: group {G.name!r} has order {G.order}, above the cap of {MAX_GROUP_ORDER}")
    return groups + extra


def run_suite(name: str, config: RunConfig, groups: Sequence[gp.FinGroup]) -> av.VerificationReport:
    n, cap = config.max_set_size, config.failure_cap
    if name == "set-chain":
        rep = av.check_chain("set", max_set_size=n, cap=cap)
    elif name == "grp-chain":
        rep = av.check_chain("grp", groups=groups, cap=cap)
    elif name == "axioms":
        rep = av.run_axiom_suite(n, cap=cap)
    elif name == "galois":
        rep = av.check_galois(n, cap=cap)
    elif name == "functoriality":
        rep = av.functoriality_suite(n, groups, cap=cap)
    elif name == "counterexample":
        rep = av.reproduce_counterexample(cap=cap)
    else:
        raise ValueError(f"unknown suite {name!r}")
    rep.suite_name = name
    return rep


def _run_one(args) -> av.VerificationReport:
    return run_suite(*args)


def run(config: RunConfig) -> tuple[int, list[av.VerificationReport]]:
    """Run the selected suites. Results come back in canonical suite order
    whether or not they were computed in parallel."""
    if config.max_set_size == MAX_SET_SIZE:
        warnings.warn(f"max_set_size={MAX_SET_SIZE} makes the chain suites run for a long time", RuntimeWarning, stacklevel=2)
    groups = load_groups(config)
    jobs = [(name, config, groups) for name in config.suites]
    if config.parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(job) for job in jobs]
    status = EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL
    return status, reports


def report_dict(reports: Sequence[av.VerificationReport]) -> dict:
    return {"suites": [r.to_dict() for r in reports], "pass": all(r.passed for r in reports)}


def emit_report(reports: Sequence[av.VerificationReport], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report_dict(reports), indent=2, sort_keys=True)
    lines = []
    for r in reports:
        banner = "PASS" if r.passed else "FAIL"
        lines.append(f"{banner} {r.suite_name}: {r.cases_checked} cases, {r.failure_count} failures, {r.elapsed * 1000:.0f} ms")
        for key, val in r.info.items():
            lines.append(f"    {key}: {val}")
        for f in r.failures:
            lines.append(f"    case: {f.case}")
            lines.append(f"      expected: {f.expected}")
            lines.append(f"      actual:   {f.actual}")
        hidden = r.failure_count - len(r.failures)
        if hidden > 0:
            lines.append(f"    ... {hidden} more failures beyond the per-cell cap")
    lines.append("PASS" if all(r.passed for r in reports) else "FAIL")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exactness", description="Exhaustively verify the adjunction chains on small universes.")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-set-size", type=int, default=3, choices=range(MAX_SET_SIZE + 1), metavar=f"{{0..{MAX_SET_SIZE}}}")
    p.add_argument("--max-group-order", type=int, default=6, choices=range(1, MAX_GROUP_ORDER + 1), metavar=f"{{1..{MAX_GROUP_ORDER}}}")
    p.add_argument("--group-file", help="extra groups as Cayley tables (1-based entries)")
    p.add_argument("--report", choices=("text", "json"), default="text", dest="report_format")
    p.add_argument("--failure-cap", type=_positive, default=10, help="failures kept per cell")
    p.add_argument("--parallel", action="store_true", help="run suites in worker processes")
    return p


def _positive(s: str) -> int:
    n = int(s)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(**vars(args))
    try:
        status, reports = run(config)
    except InputError as exc:
        print(f"exactness: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(emit_report(reports, config.report_format))
    return status


if __name__ == "__main__":
    sys.exit(main())
