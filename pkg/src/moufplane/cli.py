"""Command-line driver: ``moufplane verify`` and ``moufplane absolute-points``.

Exit status: 0 when every executed check passes, 1 when some check fails,
2 for an invalid configuration.  Reports contain no timestamps, so the same
configuration always produces the same bytes, whatever ``--jobs`` is.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from contextlib import ExitStack
from dataclasses import dataclass

from . import faults
from .checks import CHECKS, incompatibility, run_check, stream_name
from .fields import FIELDS
from .moufang import build_from_polarity
from .plane import affine_point
from .polarity import NO_SOLUTION, POLARITY_TYPES, absolute_fiber_solve, is_absolute, make_polarity
from .sampling import derive_seed

REPORT_VERSION = 1

# Type I over F2(t1,t2,t3) spends most of its time in multivariate gcds, so
# the characteristic 2 default is smaller.  The count used is always reported.
DEFAULT_SAMPLES = {"q": 100, "qsqrt2": 100, "f2t": 20}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    field: str = "q"
    polarity: str = "all"
    samples: int | None = None
    seed: int = 42
    checks: tuple | None = None
    out: str | None = None
    jobs: int = 1

    @property
    def sample_count(self) -> int:
        return self.samples if self.samples is not None else DEFAULT_SAMPLES[self.field]

    def validate(self):
        if self.field not in FIELDS:
            raise ConfigError(f"unknown field {self.field!r}; choose from {', '.join(FIELDS)}")
        if self.polarity not in POLARITY_TYPES + ("all",):
            raise ConfigError(f"unknown polarity type {self.polarity!r}")
        if self.samples is not None and self.samples < 1:
            raise ConfigError("--samples must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("--seed must be a 64-bit unsigned integer")
        if self.jobs < 1:
            raise ConfigError("--jobs must be positive")
        for name in self.checks or ():
            if name not in CHECKS:
                raise ConfigError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
        if self.polarity != "all":
            why = incompatibility(self.polarity, FIELDS[self.field])
            if why:
                raise ConfigError(why)
        return self

    def report_config(self) -> dict:
        return {
            "field": self.field,
            "polarity": self.polarity,
            "samples": self.sample_count,
            "seed": self.seed,
            "checks": list(self.checks) if self.checks else sorted(CHECKS),
        }


def plan(config: RunConfig):
    """Split the selected checks into tasks ``(check, type)`` and skipped entries."""
    field = FIELDS[config.field]
    names = list(config.checks) if config.checks else list(CHECKS)
    kinds = POLARITY_TYPES if config.polarity == "all" else (config.polarity,)
    tasks, skipped = [], []
    for name in names:
        spec = CHECKS[name]
        if spec.scope == "field":
            tasks.append((name, None))
            continue
        for kind in kinds:
            if kind not in spec.types:
                if config.polarity != "all":
                    skipped.append(_skip(name, kind, field, f"the check applies to type {'/'.join(spec.types)} only"))
                continue
            why = incompatibility(kind, field)
            if why:
                skipped.append(_skip(name, kind, field, why))
            else:
                tasks.append((name, kind))
    return tasks, skipped


def _skip(name, kind, field, reason):
    return {
        "check": name,
        "type": kind,
        "field": field.name,
        "samples": 0,
        "seed": None,
        "pass": None,
        "status": "skipped",
        "reason": reason,
    }


def _worker(args):
    name, field, kind, samples, seed, active = args
    with ExitStack() as stack:
        for fault in active:
            stack.enter_context(faults.injected(fault))
        return run_check(name, field, kind, samples, seed)


def run_verify(config: RunConfig):
    """Run the configured checks; return ``(exit_status, report)``."""
    config.validate()
    tasks, skipped = plan(config)
    active = tuple(sorted(faults.enabled() & faults.KNOWN))
    jobs = [(name, config.field, kind, config.sample_count, config.seed, active) for name, kind in tasks]
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_worker, jobs))
    else:
        results = [_worker(j) for j in jobs]
    results.extend(skipped)
    order = {name: i for i, name in enumerate(CHECKS)}
    results.sort(key=lambda r: (order[r["check"]], r["type"] or ""))
    counts = {s: sum(r["status"] == s for r in results) for s in ("passed", "failed", "skipped")}
    report = {"version": REPORT_VERSION, "config": config.report_config(), "results": results, "summary": counts}
    return (1 if counts["failed"] else 0), report


def absolute_points(config: RunConfig, count: int):
    """``count`` distinct absolute points of the configured polarity."""
    config.validate()
    if config.polarity == "all":
        raise ConfigError("absolute-points needs a single polarity type")
    if count < 0:
        raise ConfigError("--count must be non-negative")
    field = FIELDS[config.field]
    psi = make_polarity(config.polarity, field)
    alg = psi.alg
    rng = random.Random(derive_seed(config.seed, stream_name("absolute-points", field, config.polarity)))
    bundle = build_from_polarity(psi)
    points, seen = [], set()
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 100 * count + 100:
            raise RuntimeError("could not find enough absolute points")
        if psi.kind == "IV":
            p = bundle.to_point(bundle.random(rng))
        else:
            a = alg.random(rng)
            b = absolute_fiber_solve(psi, a)
            if b is NO_SOLUTION:
                continue
            p = affine_point(a, b)
        if not is_absolute(psi, p):
            raise AssertionError(f"{p!r} is not absolute")
        key = json.dumps(p.to_json(), sort_keys=True)
        if key not in seen:
            seen.add(key)
            points.append(p.to_json())
    cfg = {"field": config.field, "polarity": config.polarity, "seed": config.seed, "count": count}
    return {"version": REPORT_VERSION, "config": cfg, "points": points}


def dump(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_atomic(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".moufplane-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parser():
    p = argparse.ArgumentParser(prog="moufplane", description="Exact randomized verification of octonion plane polarities.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, all_types=True):
        sp.add_argument("--field", default="q", help="q, qsqrt2 or f2t (default q)")
        sp.add_argument("--polarity", default="all" if all_types else "i", help="i, ii, iii, iv" + (" or all" if all_types else ""))
        sp.add_argument("--seed", type=int, default=42, help="64-bit seed (default 42)")
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    v = sub.add_parser("verify", help="run the check suites and emit a JSON report")
    common(v)
    v.add_argument("--samples", type=int, default=None, help="samples per check (default 100; 20 over f2t)")
    v.add_argument("--checks", default=None, help="comma-separated check names (default all)")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--list-checks", action="store_true", help="print the check names and exit")

    a = sub.add_parser("absolute-points", help="emit absolute points as JSON")
    common(a, all_types=False)
    a.add_argument("--count", type=int, default=10)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "verify":
            if args.list_checks:
                for name, spec in CHECKS.items():
                    print(f"{name:24s} {spec.doc}")
                return 0
            checks = tuple(c.strip() for c in args.checks.split(",") if c.strip()) if args.checks else None
            config = RunConfig(args.field, args.polarity, args.samples, args.seed, checks, args.out, args.jobs)
            status, report = run_verify(config)
            write_atomic(dump(report), args.out)
            if status:
                failed = [f"{r['check']}[{r['type'] or '-'}]" for r in report["results"] if r["status"] == "failed"]
                print("failed: " + ", ".join(failed), file=sys.stderr)
            return status
        config = RunConfig(args.field, args.polarity, None, args.seed, None, args.out)
        write_atomic(dump(absolute_points(config, args.count)), args.out)
        return 0
    except ConfigError as exc:
        print(f"moufplane: configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
