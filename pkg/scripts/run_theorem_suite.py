"""Run the soundness, translation and agreement checks over many generated terms.

    python scripts/run_theorem_suite.py --count 2000 --depth 5 --seed 100

Prints pass counts per property, rule coverage of both evaluators and timing.
Exits non-zero if any property fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from sequent_ir.core.eval import eval_stmt
from sequent_ir.core.syntax import Covar, Cut
from sequent_ir.fun.eval import evaluate
from sequent_ir.generator import LIBRARY, gen_type, gen_typed_term
from sequent_ir.names import STAR
from sequent_ir.properties import (
    PropertyViolation, check_agreement, check_core_soundness, check_fun_soundness,
    check_translation_typing, compile_closed,
)
from sequent_ir.types import Int


@dataclass
class SuiteConfig:
    count: int = 1000
    depth: int = 4
    seed: int = 0
    agreement_count: int = 500
    fuel: int = 100_000


@dataclass
class PropertyStats:
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None

    def record(self, seed: int, fn) -> None:
        try:
            fn()
            self.passed += 1
        except PropertyViolation as e:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = f"seed {seed}: {e}"


@dataclass
class SuiteReport:
    config: SuiteConfig
    properties: dict[str, PropertyStats] = field(default_factory=dict)
    fun_rules: Counter = field(default_factory=Counter)
    core_rules: Counter = field(default_factory=Counter)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(p.failed == 0 for p in self.properties.values())


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport(cfg)
    props = {name: PropertyStats() for name in
             ("fun soundness", "translation typing", "core soundness", "agreement")}
    rep.properties = props
    t0 = time.perf_counter()
    for seed in range(cfg.seed, cfg.seed + cfg.count):
        ty = gen_type(seed)
        t = gen_typed_term(seed, ty=ty, depth=cfg.depth)
        props["fun soundness"].record(seed, lambda: check_fun_soundness(LIBRARY, t, cfg.fuel))
        props["translation typing"].record(seed, lambda: check_translation_typing(LIBRARY, t, ty))
        c = compile_closed(LIBRARY, t)
        props["core soundness"].record(
            seed, lambda: check_core_soundness(c.program, c.producer, ty, cfg.fuel))
        rep.fun_rules.update(evaluate(LIBRARY, t, cfg.fuel, trace=True).rules())
        rep.core_rules.update(
            eval_stmt(c.program, Cut(c.producer, Covar(STAR)), fuel=cfg.fuel, trace=True).rules())
    base = cfg.seed + cfg.count
    for seed in range(base, base + cfg.agreement_count):
        t = gen_typed_term(seed, ty=Int, depth=cfg.depth)
        props["agreement"].record(seed, lambda: check_agreement(LIBRARY, t, cfg.fuel))
    rep.seconds = time.perf_counter() - t0
    return rep


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = SuiteConfig()
    for name, value in asdict(defaults).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=value)
    ap.add_argument("--json", action="store_true", help="print the report as JSON")
    args = ap.parse_args(argv)
    cfg = SuiteConfig(**{k: getattr(args, k) for k in asdict(defaults)})
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))

    rep = run_suite(cfg)
    if args.json:
        print(json.dumps({
            "config": asdict(cfg),
            "properties": {k: asdict(v) for k, v in rep.properties.items()},
            "fun_rules": dict(rep.fun_rules), "core_rules": dict(rep.core_rules),
            "seconds": round(rep.seconds, 2), "ok": rep.ok,
        }, indent=2))
    else:
        for name, p in rep.properties.items():
            total = p.passed + p.failed
            line = f"{name:<20} {p.passed}/{total}"
            print(line if p.first_failure is None else f"{line}  first failure: {p.first_failure}")
        print("fun rules:  " + ", ".join(f"{k}={v}" for k, v in rep.fun_rules.most_common()))
        print("core rules: " + ", ".join(f"{k}={v}" for k, v in rep.core_rules.most_common()))
        print(f"time: {rep.seconds:.1f}s")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
