"""Verification suites shared by the command line and the acceptance tests.

Every suite is deterministic for a given ``samples`` and ``seed``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .catalog import rule_catalog
from .diagram import Y, ZX, ZXR, DiagramError, expand_hnode
from .lemmas import lemma_catalog
from .models import bundle_model, flip_model, preservation_matrix, prime_model
from .randomgen import random_y, random_zx, random_zx_term
from .rewrite import RewriteRule, check_soundness
from .semantics import interpret
from .translate import (
    J, im_part, re_part, term_to_diagram, universal_embed, verify_generator_table, y_to_zx,
    y_to_zxr, zx_to_y, zx_to_y_term, zxr_to_y,
)

__all__ = ["SuiteResult", "run_suite", "SUITES", "MINIMALITY_EXPECTED", "rules_from_json"]

TOL = 1e-9
MINIMALITY_EXPECTED = {"bundle(3)": "Y.RS2", "prime(3)": "Y.RSUP_3", "flip": "Y.RH"}


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    lines: list[str] = field(default_factory=list)
    data: list[dict] = field(default_factory=list)

    def record(self, ok: bool, line: str, **data) -> None:
        self.passed &= bool(ok)
        self.lines.append(("PASS " if ok else "FAIL ") + line)
        self.data.append({"pass": bool(ok), "check": line, **data})

    def to_json(self) -> dict:
        return {"suite": self.name, "pass": self.passed, "checks": self.data}


def _soundness(name: str, rules: Sequence[RewriteRule], samples: int, seed: int) -> SuiteResult:
    res = SuiteResult(name)
    for r in rules:
        rep = check_soundness(r, samples=samples, seed=seed)
        res.record(
            rep.ok,
            f"{r.name} samples={rep.samples} maxdev={rep.max_deviation:.2e} exact={rep.exact_checked}",
            **rep.to_json(),
        )
    return res


def suite_rules(samples: int = 25, seed: int = 0, extra: Sequence[RewriteRule] = ()) -> SuiteResult:
    rules = rule_catalog(Y) + rule_catalog(ZXR) + rule_catalog(ZX) + list(extra)
    return _soundness("rules", rules, samples, seed)


def suite_lemmas(samples: int = 25, seed: int = 0) -> SuiteResult:
    return _soundness("lemmas", lemma_catalog(), samples, seed)


def _block(t: np.ndarray) -> np.ndarray:
    return np.kron(t.real, np.eye(2)) + np.kron(t.imag, J)


def suite_translations(samples: int = 25, seed: int = 0, table: list[dict] | None = None) -> SuiteResult:
    res = SuiteResult("translations")
    problems = verify_generator_table(table)
    res.record(not problems, f"generator table contracts ({len(problems)} violations)", problems=problems)
    rng = np.random.default_rng(seed)

    ok = True
    for _ in range(samples):
        d = random_y(rng, step=2)
        want = interpret(d, "exact")
        z = y_to_zxr(d)
        ok &= want.exact_equal(interpret(z, "exact"))
        ok &= want.exact_equal(interpret(zxr_to_y(z), "exact"))
    res.record(ok, f"y_to_zxr and round trip exact on {samples} random pi/2 diagrams")

    worst = max(
        (interpret(y_to_zx(d)).deviation(interpret(d)) for d in (random_y(rng, step=None) for _ in range(samples))),
        default=0.0,
    )
    res.record(worst < TOL, f"y_to_zx preserves semantics on {samples} random diagrams maxdev={worst:.2e}")

    worst = 0.0
    for _ in range(samples):
        d = random_zx(rng, step=None)
        t = interpret(d).array
        worst = max(worst, float(np.max(np.abs(interpret(zx_to_y(d)).array - _block(t)))))
        worst = max(worst, float(np.max(np.abs(interpret(re_part(d)).array - t.real))))
        worst = max(worst, float(np.max(np.abs(interpret(im_part(d)).array - t.imag))))
    res.record(worst < TOL, f"zx_to_y block law and Re/Im on {samples} random diagrams maxdev={worst:.2e}")

    worst = 0.0
    for _ in range(samples):
        term = random_zx_term(rng)
        t = interpret(term_to_diagram(term)).array
        worst = max(worst, float(np.max(np.abs(interpret(zx_to_y_term(term)).array - _block(t)))))
    res.record(worst < TOL, f"term-level zx_to_y block law on {samples} random terms maxdev={worst:.2e}")

    for r in rule_catalog(Y):
        rep = check_soundness(r, samples=samples, seed=seed, evaluate=lambda d: interpret(y_to_zx(d)))
        res.record(rep.ok, f"y_to_zx image of {r.name} maxdev={rep.max_deviation:.2e}")
    for r in rule_catalog(ZX):
        rep = check_soundness(r, samples=samples, seed=seed, evaluate=lambda d: interpret(zx_to_y(d)))
        res.record(rep.ok, f"zx_to_y image of {r.name} maxdev={rep.max_deviation:.2e}")

    worst = 0.0
    shapes = [(1, 1), (2, 1), (1, 2), (2, 2), (4, 2), (2, 4), (4, 4), (8, 8)]
    count = max(1, min(samples, 20))
    for i in range(count):
        M = rng.normal(size=shapes[i % len(shapes)])
        worst = max(worst, float(np.max(np.abs(interpret(universal_embed(M)).array - M))))
    res.record(worst < 1e-6, f"universal_embed on {count} random matrices maxdev={worst:.2e}")
    return res


def suite_minimality(samples: int = 25, seed: int = 0) -> SuiteResult:
    res = SuiteResult("minimality")
    rules = rule_catalog(Y)
    for name, model in (("bundle(3)", bundle_model(3)), ("prime(3)", prime_model(3)), ("flip", flip_model())):
        rep = preservation_matrix(model, rules, samples=samples, seed=seed)
        want = MINIMALITY_EXPECTED[name]
        got = rep.certifies()
        gap = max((c.max_deviation for c in rep.cells if c.family == want), default=0.0)
        ok = got == want and not rep.inconclusive
        res.record(ok, f"{name} certifies {got} (expected {want}) gap={gap:.3g}", report=rep.to_json())
        res.lines.extend("  " + ln for ln in rep.text().splitlines())
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "rules": suite_rules,
    "lemmas": suite_lemmas,
    "translations": suite_translations,
    "minimality": suite_minimality,
}


def run_suite(name: str, samples: int = 25, seed: int = 0, **kw) -> list[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        extra = {k: v for k, v in kw.items() if k in _SUITE_KWARGS[n]}
        out.append(SUITES[n](samples=samples, seed=seed, **extra))
    return out


_SUITE_KWARGS = {"rules": {"extra"}, "lemmas": set(), "translations": {"table"}, "minimality": set()}


def rules_from_json(text: str) -> list[RewriteRule]:
    """Closed rules (no parameters) given as ``[{"name", "calculus", "lhs", "rhs"}]`` in the text format."""
    from .io import parse

    out = []
    for entry in json.loads(text):
        lhs = parse(_join(entry["lhs"]))
        rhs = parse(_join(entry["rhs"]))
        if lhs.calculus != rhs.calculus or lhs.arity != rhs.arity:
            raise DiagramError(f"rule {entry['name']}: sides differ in calculus or arity")
        out.append(RewriteRule(entry["name"], lhs.calculus, (lambda d=lhs: d), (lambda d=rhs: d),
                               provenance="user"))
    return out


def _join(x) -> str:
    return "\n".join(x) if isinstance(x, list) else x
