"""Scenario runner: ``affine-whittaker run <config.json | bundled name>``."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__
from .certify import (
    INCONCLUSIVE,
    PIVOT_STRATEGIES,
    VERIFIED,
    WITNESS,
    CertificationReport,
    PreconditionError,
    check_torsion_free,
    check_whittaker,
    descend,
    irreducibility_probe,
    recheck,
    reducibility_witness_charge_zero,
    whittaker_factor,
)
from .descriptors import build_inducing
from .induced import InducedModule, induce
from .inducing import ImaginaryWhittaker, InducingModule, ModuleError
from .lie import parabolic_from_subset
from .roots import SUPPORTED_LABELS
from .selftest import selftest

SCHEMA_VERSION = 1
CHECKS = ("whittaker", "torsion", "descent", "probe", "charge_zero_witness", "algebra_selftest")
DEFAULT_BUDGETS = {
    "D": 2,
    "window": 2,
    "N_max": 12,
    "B": 200,
    "R": 20,
    "seed": 0,
    "samples": 50,
    "probe": 2,
    "whittaker_window": [1, 6],
}


class ConfigError(ValueError):
    pass


@dataclass
class Scenario:
    name: str
    raw: Dict[str, Any]
    label: str
    subset: tuple
    V: Optional[InducingModule]
    M: Optional[InducedModule]
    checks: List[str]
    budgets: Dict[str, Any]
    pivot: str
    fallback: bool
    expect: Dict[str, str] = field(default_factory=dict)
    hypotheses: List[str] = field(default_factory=list)

    @property
    def config_hash(self) -> str:
        text = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


def bundled_names() -> List[str]:
    root = resources.files("affine_whittaker") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_config(source: str) -> Dict[str, Any]:
    path = Path(source)
    if path.is_file():
        text = path.read_text()
    elif source in bundled_names():
        text = (resources.files("affine_whittaker") / "scenarios" / f"{source}.json").read_text()
    else:
        raise ConfigError(f"no config file or bundled scenario named {source!r}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None


def parse_config(raw: Dict[str, Any], seed: Optional[int] = None) -> Scenario:
    raw = json.loads(json.dumps(raw))
    if raw.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {raw.get('schema_version')}")
    name = raw.get("scenario")
    if not isinstance(name, str) or not name:
        raise ConfigError("config needs a nonempty 'scenario' name")
    checks = raw.get("checks") or []
    unknown = [c for c in checks if c not in CHECKS]
    if unknown or not checks:
        raise ConfigError(f"checks must be a nonempty subset of {', '.join(CHECKS)}; got {checks}")
    budgets = dict(DEFAULT_BUDGETS)
    budgets.update(raw.get("budgets") or {})
    if seed is not None:
        budgets["seed"] = seed
        raw.setdefault("budgets", {})["seed"] = seed
    for k, v in budgets.items():
        if k == "whittaker_window":
            if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) for x in v) and 0 <= v[0] <= v[1]):
                raise ConfigError("whittaker_window must be [lo, hi] with 0 <= lo <= hi")
        elif k == "seed":
            if not isinstance(v, int) or v < 0:
                raise ConfigError("seed must be a nonnegative integer")
        elif not isinstance(v, int) or v <= 0:
            if not (k == "R" and v == 0):
                raise ConfigError(f"budget {k} must be a positive integer, got {v!r}")
    pivot = raw.get("pivot", "largest_k")
    if pivot not in PIVOT_STRATEGIES:
        raise ConfigError(f"pivot must be one of {PIVOT_STRATEGIES}")
    only_selftest = checks == ["algebra_selftest"]
    label = raw.get("algebra", "A1")
    if label not in SUPPORTED_LABELS:
        raise ConfigError(f"unsupported algebra {label!r}; supported labels: {', '.join(SUPPORTED_LABELS)}")
    subset_1 = raw.get("subset", [])
    if not isinstance(subset_1, list) or any(not isinstance(s, int) for s in subset_1):
        raise ConfigError("subset must be a list of 1-based simple-root indices")
    subset = tuple(s - 1 for s in subset_1)
    V = M = None
    if not only_selftest:
        try:
            spec = parabolic_from_subset(label, subset)
            V = build_inducing(label, subset, raw.get("module") or {})
            M = induce(spec, V)
        except (ModuleError, ValueError, KeyError) as exc:
            raise ConfigError(f"invalid module descriptor: {exc}") from None
        a = V.charge
        if "charge_zero_witness" in checks:
            if a != 0:
                raise ConfigError(f"charge_zero_witness requires central charge a = 0, got {a}")
            if not isinstance(V, ImaginaryWhittaker):
                raise ConfigError("charge_zero_witness requires a Heisenberg Whittaker module")
        for c in ("torsion", "descent", "probe"):
            if c in checks and a == 0:
                raise ConfigError(f"check {c} requires nonzero central charge")
        if "whittaker" in checks:
            try:
                whittaker_factor(V)
            except PreconditionError as exc:
                raise ConfigError(str(exc)) from None
        if "descent" in checks:
            if "vector" not in raw:
                raise ConfigError("descent check needs a 'vector'")
            try:
                M.vector_from_json(raw["vector"])
            except (ModuleError, ValueError, KeyError, TypeError) as exc:
                raise ConfigError(f"invalid descent vector: {exc}") from None
    expect = raw.get("expect") or {}
    for c, v in expect.items():
        if c not in CHECKS or v not in (VERIFIED, WITNESS, INCONCLUSIVE):
            raise ConfigError(f"bad expectation {c!r}: {v!r}")
    return Scenario(name, raw, label, subset, V, M, list(checks), budgets, pivot,
                    bool(raw.get("fallback", True)), dict(expect), list(raw.get("hypotheses") or []))


def _expected(sc: Scenario, check: str) -> str:
    return sc.expect.get(check, WITNESS if check == "charge_zero_witness" else VERIFIED)


def run_check(sc: Scenario, check: str) -> CertificationReport:
    b = sc.budgets
    if check == "algebra_selftest":
        t0 = time.perf_counter()
        res = selftest(sc.raw.get("labels", ["A1", "A2"]))
        millis = res.pop("millis")
        verdict = VERIFIED if res["passed"] else WITNESS
        return CertificationReport(sc.name, check, verdict, res, {"pair_window": 3, "triple_window": 2},
                                   int(round((time.perf_counter() - t0) * 1000)) or millis)
    if check == "whittaker":
        return check_whittaker(sc.V, tuple(b["whittaker_window"]), scenario=sc.name)
    if check == "torsion":
        return check_torsion_free(sc.V, b["samples"], b["D"], b["window"], b["seed"], scenario=sc.name)
    if check == "charge_zero_witness":
        target = sc.M if sc.raw.get("target", "induced") == "induced" else sc.V
        return reducibility_witness_charge_zero(target, b["D"], b["window"], b["probe"], scenario=sc.name)
    if check == "descent":
        v = sc.M.vector_from_json(sc.raw["vector"])
        return descend(sc.M, v, b["N_max"], b["B"], sc.pivot, sc.fallback, scenario=sc.name)
    return irreducibility_probe(sc.M, b["D"], b["window"], b["N_max"], b["B"], b["R"], b["seed"], sc.pivot,
                                sc.fallback, sc.hypotheses, scenario=sc.name)


def run_scenario(sc: Scenario, timing: bool = False) -> Dict[str, Any]:
    checks = []
    for name in sc.checks:
        try:
            rep = run_check(sc, name)
            entry = rep.to_json(timing)
            entry["expected"] = _expected(sc, name)
            entry["rechecked"] = recheck(entry, sc.V, sc.M) if rep.verdict != INCONCLUSIVE else None
        except (PreconditionError, ModuleError) as exc:
            entry = {"name": name, "verdict": "error", "error": str(exc), "expected": _expected(sc, name)}
        checks.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "scenario": sc.name,
        "config_hash": sc.config_hash,
        "seed": sc.budgets["seed"],
        "module": sc.V.describe() if sc.V is not None else None,
        "checks": checks,
    }


def report_ok(report: Dict[str, Any]) -> bool:
    for c in report["checks"]:
        if c["verdict"] == "error":
            return False
        if c["verdict"] == WITNESS and c["expected"] != WITNESS:
            return False
        if c.get("rechecked") is False:
            return False
    return True


def summary_text(report: Dict[str, Any]) -> str:
    lines = [f"scenario {report['scenario']}  config {report['config_hash'][:12]}  seed {report['seed']}"]
    for c in report["checks"]:
        extra = ""
        if c["verdict"] == "error":
            extra = "  " + c["error"]
        elif c.get("reason"):
            extra = "  (" + c["reason"] + ")"
        b = c.get("budgets") or {}
        if "vectors" in b:
            extra += f"  vectors={b['vectors']}"
        rc = c.get("rechecked")
        extra += "" if rc is None else f"  recheck={'ok' if rc else 'FAILED'}"
        lines.append(f"  {c['name']:<20} {c['verdict']:<14} expected {c['expected']}{extra}")
        for n in c.get("notes") or []:
            lines.append(f"      note: {n}")
    lines.append("status: " + ("ok" if report_ok(report) else "FAILED"))
    return "\n".join(lines) + "\n"


def dump_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.chmod(tmp, 0o644)
    os.replace(tmp, path)


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="affine-whittaker", description=__doc__)
    parser.add_argument("--selftest", action="store_true", help="run the algebra self-test suites and exit")
    parser.add_argument("--list-scenarios", action="store_true", help="list bundled scenarios and exit")
    sub = parser.add_subparsers(dest="command")
    run_p = sub.add_parser("run", help="run a scenario config")
    run_p.add_argument("config", help="path to a JSON config or a bundled scenario name")
    run_p.add_argument("--out", default="reports", help="output directory (default: reports)")
    run_p.add_argument("--seed", type=int, default=None, help="override the config seed")
    run_p.add_argument("--timing", action="store_true", help="record wall times (breaks byte-identical reports)")
    args = parser.parse_args(argv)

    if args.list_scenarios:
        for name in bundled_names():
            print(name)
        return 0
    if args.selftest:
        res = selftest(("A1", "A2"))
        for s in res["suites"]:
            counts = ", ".join(f"{k}={v}" for k, v in s["counts"].items())
            print(f"{s['label']}: {'pass' if s['passed'] else 'FAIL'} ({counts})")
            for f in s["failures"]:
                print(f"   offending {f['property']}: {f['triple']}")
        return 0 if res["passed"] else 1
    if args.command != "run":
        parser.print_help()
        return 2
    if args.seed is not None and args.seed < 0:
        print("error: seed must be nonnegative", file=sys.stderr)
        return 2
    try:
        sc = parse_config(load_config(args.config), args.seed)
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    report = run_scenario(sc, args.timing)
    out = Path(args.out)
    _atomic_write(out / f"{sc.name}.json", dump_report(report))
    text = summary_text(report)
    _atomic_write(out / f"{sc.name}.txt", text)
    sys.stdout.write(text)
    return 0 if report_ok(report) else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
