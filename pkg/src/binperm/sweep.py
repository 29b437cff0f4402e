"""Deterministic parameter sweeps over the trinomial family and the lemma checks."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Optional, Sequence

from binperm.equiv import sec3_lh_match, sec3_wydm_match
from binperm.errors import ParameterError
from binperm.framework import (
    TrinomialParams,
    WydmParams,
    lemma3_check,
    lemma4_check,
    lh_generate,
    thm1_generate,
    thm1_proof_checks,
    wydm_generate,
)
from binperm.gf import MAX_K, ctx_new
from binperm.oracle import brute_force_is_permutation

CHECKS = ("thm1", "proof", "lemma3", "lemma4", "sec3-lh", "sec3-wydm", "props")
LEMMA4_MAX = 5


@dataclass
class SweepConfig:
    """Ranges default per k: ell, m in 1..2k+1, u in 0..q, lemma4 pairs up to 5."""

    k: Sequence[int]
    ell: Optional[Sequence[int]] = None
    m: Optional[Sequence[int]] = None
    u_max: Optional[int] = None
    checks: Sequence[str] = ("thm1",)
    omega_alt: bool = False

    def __post_init__(self):
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise ParameterError(f"unknown checks {bad}; choose from {CHECKS}")
        if any(not 1 <= k <= MAX_K for k in self.k):
            raise ParameterError(f"k values must lie in [1, {MAX_K}]")
        for name in ("ell", "m"):
            vals = getattr(self, name)
            if vals is not None and any(v < 1 for v in vals):
                raise ParameterError(f"{name} values must be positive")
        if self.u_max is not None and self.u_max < 0:
            raise ParameterError("u_max must be non-negative")


@dataclass
class SweepReport:
    total: int = 0
    accepted: int = 0
    degenerate: int = 0
    brute_force_failures: int = 0
    correspondence_failures: int = 0
    lemma_failures: int = 0
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not (self.brute_force_failures or self.correspondence_failures or self.lemma_failures)

    def merge(self, other: "SweepReport") -> "SweepReport":
        return SweepReport(*(a + b for a, b in zip(asdict(self).values(), asdict(other).values())))

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class SweepResult:
    report: SweepReport
    records: list = field(default_factory=list)


def _pairs(cfg: SweepConfig, k: int):
    ells = cfg.ell if cfg.ell is not None else range(1, 2 * k + 2)
    ms = cfg.m if cfg.m is not None else range(1, 2 * k + 2)
    for ell in ells:
        for m in ms:
            if ell != m:
                yield ell, m


def _trinomial_sweep(cfg: SweepConfig, k: int, report: SweepReport, records: list) -> None:
    ctx = ctx_new(k, cfg.omega_alt)
    q = 1 << k
    u_max = q if cfg.u_max is None else cfg.u_max
    checks = set(cfg.checks)
    bf_cache: dict = {}
    for ell, m in _pairs(cfg, k):
        for u in range(u_max + 1):
            tp = TrinomialParams(k, ell, m, u)
            inst = thm1_generate(tp)
            report.total += 1
            rec = {
                "check": "thm1",
                "params": tp.to_json(),
                "poly": inst.poly.to_json(k) if inst.poly is not None else None,
                "accepted": inst.accepted,
                "degenerate": inst.degenerate,
                "brute_force_ok": None,
            }
            if inst.accepted:
                report.accepted += 1
                report.degenerate += inst.degenerate
            if inst.accepted and "thm1" in checks:
                key = inst.poly.terms
                if key not in bf_cache:
                    bf_cache[key] = brute_force_is_permutation(ctx, inst.poly)
                rec["brute_force_ok"] = bf_cache[key]
                report.brute_force_failures += not bf_cache[key]
            if "thm1" in checks:
                records.append(rec)
            if not inst.accepted:
                continue
            if "proof" in checks:
                steps = thm1_proof_checks(ctx, tp)
                ok = all(steps.values())
                report.lemma_failures += not ok
                records.append({"check": "proof", "params": tp.to_json(), "steps": steps, "ok": ok})
            if "sec3-lh" in checks:
                rec = sec3_lh_match(ctx, tp)
                report.correspondence_failures += not rec.verified
                records.append({"check": "sec3-lh", **rec.to_json()})
            if "sec3-wydm" in checks and (ell - m) % 2:
                rec = sec3_wydm_match(ctx, tp)
                report.correspondence_failures += not rec.verified
                records.append({"check": "sec3-wydm", **rec.to_json()})


def props_instances(k: int):
    """All (S+T, T)-family parameters with s, t <= 2k+1 and r over every residue mod q^2-1."""
    q = 1 << k
    for s in range(1, 2 * k + 2, 2):
        for t in range(2, 2 * k + 2, 2):
            base = ((1 << s) + (1 << t)) % (q + 1) or q + 1
            for j in range(q - 1):
                yield WydmParams(k, s, t, base + j * (q + 1))


def _props_sweep(cfg: SweepConfig, k: int, report: SweepReport, records: list) -> None:
    ctx = ctx_new(k, cfg.omega_alt)
    for wp in props_instances(k):
        f = wydm_generate(wp)
        bf = brute_force_is_permutation(ctx, f)
        ok = bf == wp.predicts_permutation
        report.brute_force_failures += not ok
        records.append({"check": "props", "family": "wydm", "params": wp.to_json(),
                        "poly": f.to_json(k), "predicted": wp.predicts_permutation,
                        "brute_force_ok": bf, "ok": ok})
    q = 1 << k
    for n in range(1, 2 * k + 1):
        if gcd((1 << n) - 1, q + 1) != 1:
            continue
        lp, f = lh_generate(k, n)
        bf = brute_force_is_permutation(ctx, f)
        report.brute_force_failures += not bf
        records.append({"check": "props", "family": "lh", "params": lp.to_json(),
                        "poly": f.to_json(k), "predicted": True, "brute_force_ok": bf, "ok": bf})


def run_sweep(cfg: SweepConfig) -> SweepResult:
    start = time.perf_counter()
    report = SweepReport()
    records: list = []
    checks = set(cfg.checks)
    for k in sorted(set(cfg.k)):
        if checks & {"thm1", "proof", "sec3-lh", "sec3-wydm"}:
            _trinomial_sweep(cfg, k, report, records)
        ctx = ctx_new(k, cfg.omega_alt)
        if "lemma3" in checks:
            ok = lemma3_check(ctx)
            report.lemma_failures += not ok
            records.append({"check": "lemma3", "k": k, "ok": ok})
        if "lemma4" in checks:
            ells = cfg.ell if cfg.ell is not None else range(1, LEMMA4_MAX + 1)
            ms = cfg.m if cfg.m is not None else range(1, LEMMA4_MAX + 1)
            for ell in ells:
                for m in ms:
                    if ell == m:
                        continue
                    ok = lemma4_check(ctx, ell, m)
                    report.lemma_failures += not ok
                    records.append({"check": "lemma4", "k": k, "ell": ell, "m": m, "ok": ok})
        if "props" in checks:
            _props_sweep(cfg, k, report, records)
    report.elapsed = time.perf_counter() - start
    return SweepResult(report, records)
