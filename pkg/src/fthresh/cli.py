"""Command-line front end: ``fthresh <command> -p P -v x,y -f F [-J GENS] ...``.

Exit codes: 0 ok, 1 parse/config error, 2 precondition violated,
3 resource budget exhausted, 4 every job of a sweep failed.
"""

from __future__ import annotations

import argparse
import gc
import hashlib
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .core import ExponentOverflowError, format_rational, make_ring
from .errors import InvariantViolation, NotInRadicalError, PreconditionError, ResourceError
from .frobenius import fedder_fpure
from .groebner import Ideal
from .parser import ParseError, parse_generators, parse_poly
from .schema import SCHEMA_ID
from .testideal import DEFAULT_WINDOW, jumping_numbers, test_ideal_chain, verify_correspondence
from .thresholds import DEFAULT_DEGREE_BUDGET, fpt, nu, threshold_interval

log = logging.getLogger("fthresh")

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_RESOURCE, EXIT_BATCH = 0, 1, 2, 3, 4
DEFAULT_MAX_E = 6

class ConfigError(ValueError):
    pass


@dataclass
class JobSpec:
    command: str
    prime: int
    vars: list
    f: str
    J: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "prime": self.prime,
            "vars": list(self.vars),
            "f": self.f,
            "J": list(self.J),
            "params": dict(self.params),
        }


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def job_hash(job: JobSpec) -> str:
    return _digest({"job": job.to_dict()})


def content_hash(job: JobSpec, outputs: dict) -> str:
    return _digest({"job": job.to_dict(), "outputs": outputs})


# ---------------------------------------------------------------------------
# job execution
# ---------------------------------------------------------------------------


def _ideal(ring, text: str) -> Ideal:
    return Ideal(ring, parse_generators(text, ring))


def _gens(I: Ideal) -> list[str]:
    return [str(g) for g in I.gb]


def _one_ideal(spec: JobSpec, ring) -> Ideal:
    if len(spec.J) != 1:
        raise ConfigError(f"{spec.command} needs exactly one -J ideal, got {len(spec.J)}")
    return _ideal(ring, spec.J[0])


def _validate(spec: JobSpec):
    prm = spec.params
    for key in ("e", "max_e", "E", "r", "window", "degree_budget"):
        if key in prm and (not isinstance(prm[key], int) or prm[key] < 0):
            raise ConfigError(f"{key} must be a non-negative integer")
    if prm.get("max_e", 1) < 1:
        raise ConfigError("max_e must be >= 1")
    if prm.get("r", 1) < 1:
        raise ConfigError("r must be >= 1")
    if prm.get("window", 1) < 1:
        raise ConfigError("window must be >= 1")


def run_job(spec: JobSpec, jobs: int = 1) -> dict:
    """Run one job; returns its outputs (JSON-ready). Raises on failure.

    ``jobs`` only parallelizes grid evaluation; it never changes the outputs.
    """
    _validate(spec)
    try:
        ring = make_ring(spec.prime, spec.vars)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    f = parse_poly(spec.f, ring)
    prm = spec.params
    budget = prm.get("degree_budget", DEFAULT_DEGREE_BUDGET)
    cmd = spec.command

    if cmd == "nu":
        J = _one_ideal(spec, ring)
        e, r = prm["e"], prm.get("r", 1)
        g = f**r if r > 1 else f
        value = nu(g, J, e, degree_budget=budget)
        out = {"nu": value, "e": e, "q": ring.p**e, "flagged": value == 0}
        if r > 1:
            base = nu(f, J, e, degree_budget=budget)
            out.update({"r": r, "nu_f": base, "scaling_ok": value == base // r})
        return out

    if cmd in ("threshold", "fpt"):
        max_e = prm["max_e"]
        if cmd == "threshold":
            est = threshold_interval(f, _one_ideal(spec, ring), max_e, degree_budget=budget)
        else:
            est = fpt(f, max_e, degree_budget=budget)
        out = {
            "lower": format_rational(est.lower),
            "upper": format_rational(est.upper),
            "level": est.level,
            "nu": est.nu,
            "flagged": est.flagged,
            "history": [[e, v] for e, v in est.history],
        }
        if cmd == "fpt":
            out["guess"] = format_rational(est.guess)
            out["simplest"] = format_rational(est.simplest)
        return out

    if cmd == "fedder":
        return {"f_pure": fedder_fpure(f)}

    window = prm.get("window", DEFAULT_WINDOW)
    if cmd == "testideal":
        t = Fraction(prm["t"])
        chain = test_ideal_chain(f, t, window, prm["max_e"])
        return {
            "t": format_rational(t),
            "generators": _gens(chain[-1][1]),
            "chain": [[e, _gens(I)] for e, I in chain],
        }

    if cmd == "jumps":
        E = prm["E"]
        profile = jumping_numbers(f, Fraction(prm["t_max"]), E, window,
                                  max(prm["max_e"], E + window), jobs=jobs)
        return {
            "level": E,
            "t_max": format_rational(profile.t_max),
            "grid": [{"t": format_rational(t), "ideal": _gens(I)} for t, I in profile.entries.items()],
            "jumps": [[format_rational(a), format_rational(b)] for a, b in profile.jumps],
            "guesses": [format_rational(g) for g in profile.guesses],
        }

    if cmd == "verify":
        E = prm["E"]
        family = [_ideal(ring, text) for text in spec.J]
        report = verify_correspondence(
            f, family, Fraction(prm["t_max"]), E, window=window,
            max_e=max(prm["max_e"], E + 1 + window),
            include_jump_ideals=prm.get("jump_ideals", True),
        )
        return report.to_dict()

    raise ConfigError(f"unknown command {cmd!r}")


def _classify(exc: BaseException) -> tuple[str, int]:
    if isinstance(exc, (ParseError, ExponentOverflowError, ConfigError)):
        return "parse", EXIT_PARSE
    if isinstance(exc, PreconditionError):
        return "precondition", EXIT_PRECONDITION
    if isinstance(exc, ResourceError):
        return "resource", EXIT_RESOURCE
    return "internal", EXIT_PARSE


def _error_message(exc: BaseException) -> str:
    msg = str(exc)
    if isinstance(exc, NotInRadicalError):
        msg += " [radical_member=false: 1 not in (J, 1 - t*f)]"
    return msg


def make_record(spec: JobSpec, outputs: dict, seconds: float) -> dict:
    return {
        "schema": SCHEMA_ID,
        "version": __version__,
        "job": spec.to_dict(),
        "job_hash": job_hash(spec),
        "outputs": outputs,
        "hash": content_hash(spec, outputs),
        "timing": {"seconds": round(seconds, 6)},
    }


def make_error_record(spec: JobSpec, exc: BaseException) -> dict:
    kind, code = _classify(exc)
    return {
        "schema": SCHEMA_ID,
        "version": __version__,
        "job": spec.to_dict(),
        "job_hash": job_hash(spec),
        "error": {"kind": kind, "message": _error_message(exc), "exit_code": code},
    }


def execute(spec: JobSpec, jobs: int = 1) -> dict:
    """Run a job and wrap the outcome in a success or error record."""
    t0 = time.perf_counter()
    try:
        outputs = run_job(spec, jobs)
    except (ParseError, ExponentOverflowError, ConfigError, PreconditionError, ResourceError,
            InvariantViolation) as exc:
        return make_error_record(spec, exc)
    return make_record(spec, outputs, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# human-readable output
# ---------------------------------------------------------------------------


def _table(rows) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def format_human(command: str, out: dict) -> str:
    if command == "nu":
        line = f"nu={out['nu']}"
        if "scaling_ok" in out:
            line += f"\nnu(f)={out['nu_f']} r={out['r']} scaling_ok={str(out['scaling_ok']).lower()}"
        return line
    if command in ("threshold", "fpt"):
        rows = [("level", out["level"]), ("nu", out["nu"]), ("lower", out["lower"]), ("upper", out["upper"])]
        if command == "fpt":
            rows += [("guess", out["guess"]), ("simplest", out["simplest"])]
        if out["flagged"]:
            rows.append(("note", "f lies in J^[q]; nu set to 0"))
        return _table(rows)
    if command == "fedder":
        return f"F-pure: {str(out['f_pure']).lower()}"
    if command == "testideal":
        return f"tau(f^{out['t']}) = ({', '.join(out['generators'])})"
    if command == "jumps":
        lines = [_table([(row["t"], "(" + ", ".join(row["ideal"]) + ")") for row in out["grid"]])]
        lines.append("jumps:")
        for (a, b), g in zip(out["jumps"], out["guesses"]):
            lines.append(f"  ({a}, {b}]  simplest {g}")
        return "\n".join(lines)
    if command == "verify":
        lines = [f"level {out['level']}" + (" (after retry)" if out["retried"] else "")]
        for g in "abc":
            lines.append(f"group {g}: {'pass' if out['groups'][g] else 'FAIL'}")
        for c in out["checks"]:
            if not c["passed"]:
                lines.append(f"  failed [{c['group']}] {c['name']}: {c['witness']}")
        for s in out["skipped"]:
            lines.append(f"  skipped {s['ideal']}: {s['reason']}")
        return "\n".join(lines)
    return json.dumps(out)


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _parse_range(text: str) -> list[int]:
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            a, b = part.split("..", 1)
            values.extend(range(int(a), int(b) + 1))
        else:
            values.append(int(part))
    return values


def read_sweep_config(path: str) -> dict:
    """Parse the ``key = value`` sweep config; ``poly`` and ``ideal`` may repeat."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    cfg: dict = {"poly": [], "ideal": []}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in ("poly", "ideal"):
            cfg[key].append(value)
        elif key in ("command", "primes", "vars", "e", "output", "jobs", "window", "degree_budget"):
            cfg[key] = value
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    try:
        command = cfg.get("command", "threshold")
        if command not in ("nu", "threshold", "fpt", "fedder"):
            raise ConfigError(f"sweep command must be nu, threshold, fpt or fedder, not {command!r}")
        out = {
            "command": command,
            "primes": _parse_range(cfg["primes"]),
            "vars": [v.strip() for v in cfg["vars"].split(",") if v.strip()],
            "polys": cfg["poly"],
            "ideals": cfg["ideal"],
            "e": _parse_range(cfg.get("e", "1")),
            "output": cfg["output"],
            "jobs": int(cfg["jobs"]) if "jobs" in cfg else None,
            "degree_budget": int(cfg.get("degree_budget", DEFAULT_DEGREE_BUDGET)),
        }
    except KeyError as exc:
        raise ConfigError(f"{path}: missing key {exc.args[0]!r}") from exc
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from exc
    if not out["polys"]:
        raise ConfigError(f"{path}: no poly entries")
    if command in ("nu", "threshold") and not out["ideals"]:
        raise ConfigError(f"{path}: {command} sweeps need at least one ideal")
    out["output"] = os.path.join(os.path.dirname(os.path.abspath(path)), out["output"])
    return out


def sweep_jobs(cfg: dict) -> list[JobSpec]:
    jobs = []
    cmd = cfg["command"]
    ideals = cfg["ideals"] if cmd in ("nu", "threshold") else [None]
    levels = cfg["e"] if cmd != "fedder" else [None]
    for p in cfg["primes"]:
        for poly in cfg["polys"]:
            for ideal in ideals:
                for e in levels:
                    params = {"degree_budget": cfg["degree_budget"]}
                    if cmd == "nu":
                        params["e"] = e
                    elif cmd in ("threshold", "fpt"):
                        params["max_e"] = e
                    jobs.append(JobSpec(cmd, p, cfg["vars"], poly, [ideal] if ideal else [], params))
    return jobs


def _load_done(path: str) -> set:
    done = set()
    if not os.path.exists(path):
        return done
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue
            if "outputs" in rec and "job_hash" in rec:
                done.add(rec["job_hash"])
    return done


def run_sweep(config_path: str, jobs: int | None = None) -> tuple[int, list[dict]]:
    """Run a sweep; returns (exit code, newly appended records)."""
    cfg = read_sweep_config(config_path)
    workers = jobs or cfg["jobs"] or os.cpu_count() or 1
    pending = [j for j in sweep_jobs(cfg) if job_hash(j) not in _load_done(cfg["output"])]
    written: list[dict] = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(execute, pending))
    # single writer, job order
    with open(cfg["output"], "a") as fh:
        for rec in results:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
            written.append(rec)
    ok = sum("outputs" in r for r in written)
    if written and ok == 0:
        return EXIT_BATCH, written
    return EXIT_OK, written


# ---------------------------------------------------------------------------
# argparse
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--prime", type=int, help="characteristic p")
    common.add_argument("-v", "--vars", help="comma-separated variable names, e.g. x,y")
    common.add_argument("-f", dest="f", help="polynomial f")
    common.add_argument("-J", dest="J", action="append", default=[],
                        help="ideal as comma-separated generators; @m is the maximal ideal (repeatable for verify)")
    common.add_argument("--json", action="store_true", help="emit the JSON result record")
    common.add_argument("--jobs", type=int, default=None, help="worker threads (default: logical cores)")
    common.add_argument("--max-e", type=int, default=DEFAULT_MAX_E, help="largest Frobenius level (default 6)")
    common.add_argument("--degree-budget", type=int, default=DEFAULT_DEGREE_BUDGET,
                        help="abort when powers exceed this many terms/degree (default 10^6)")
    common.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="root-chain stabilization window")

    parser = argparse.ArgumentParser(prog="fthresh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fthresh {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_nu = sub.add_parser("nu", parents=[common], help="nu_e^J(f)")
    p_nu.add_argument("-e", type=int, required=True, help="Frobenius level")
    p_nu.add_argument("-r", type=int, default=1, help="use f^r and check the scaling law")
    sub.add_parser("threshold", parents=[common], help="interval estimate of c^J(f) at level --max-e")
    sub.add_parser("fpt", parents=[common], help="F-pure threshold estimate")
    sub.add_parser("fedder", parents=[common], help="Fedder F-purity test at the origin")
    p_t = sub.add_parser("testideal", parents=[common], help="test ideal tau(f^t)")
    p_t.add_argument("-t", required=True, help="parameter t (rational, e.g. 5/7)")
    p_j = sub.add_parser("jumps", parents=[common], help="test-ideal profile and jump intervals")
    p_j.add_argument("--t-max", default="1", help="grid upper end (default 1)")
    p_j.add_argument("-E", type=int, default=2, help="grid level, resolution p^-E (default 2)")
    p_v = sub.add_parser("verify", parents=[common], help="thresholds vs jumping numbers check")
    p_v.add_argument("--t-max", default="2", help="grid upper end (default 2)")
    p_v.add_argument("-E", type=int, default=2, help="grid level (default 2)")
    p_v.add_argument("--no-jump-ideals", action="store_true",
                     help="do not add tau ideals at detected jumps to the family")
    p_s = sub.add_parser("sweep", help="batch runs from a config file into a JSONL store")
    p_s.add_argument("config")
    p_s.add_argument("--jobs", type=int, default=None)
    p_s.add_argument("--json", action="store_true", help="echo new records")
    return parser


def spec_from_args(args) -> JobSpec:
    if args.prime is None or not args.vars or args.f is None:
        raise ConfigError("-p, -v and -f are required")
    vars_ = [v.strip() for v in args.vars.split(",") if v.strip()]
    params: dict = {"degree_budget": args.degree_budget}
    cmd = args.command
    if cmd == "nu":
        params.update(e=args.e, r=args.r)
    elif cmd in ("threshold", "fpt"):
        params["max_e"] = args.max_e
    elif cmd == "testideal":
        try:
            t = Fraction(args.t)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad rational t={args.t!r}") from exc
        params.update(t=format_rational(t), max_e=args.max_e, window=args.window)
    elif cmd in ("jumps", "verify"):
        try:
            t_max = Fraction(args.t_max)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad rational --t-max={args.t_max!r}") from exc
        params.update(t_max=format_rational(t_max), E=args.E, max_e=args.max_e, window=args.window)
        if cmd == "verify":
            params["jump_ideals"] = not args.no_jump_ideals
    return JobSpec(cmd, args.prime, vars_, args.f, list(args.J), params)


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("FTHRESH_LOGLEVEL", "WARNING"))
    # import-time objects (numba, llvmlite) are long-lived; keeping them out of
    # collections matters because term dicts allocate many small tuples
    gc.freeze()
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "sweep":
        try:
            code, records = run_sweep(args.config, args.jobs)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        new = sum("outputs" in r for r in records)
        errors = len(records) - new
        if args.json:
            for rec in records:
                print(json.dumps(rec, sort_keys=True))
        else:
            print(f"{new} new records, {errors} errors")
        return code

    try:
        spec = spec_from_args(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    record = execute(spec, (args.jobs or os.cpu_count() or 1) if args.command == "jumps" else 1)
    if "error" in record:
        err = record["error"]
        print(f"error ({err['kind']}): {err['message']}", file=sys.stderr)
        if args.json:
            print(json.dumps(record, sort_keys=True))
        return err["exit_code"]
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(format_human(args.command, record["outputs"]))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
