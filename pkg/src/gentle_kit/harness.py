"""Randomized check that BD and CMA preserve representation and derived type."""
from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from gentle_kit.constructions import bd, cma, compose
from gentle_kit.core import BoundQuiver, isomorphic
from gentle_kit.dissection import (
    algebra_of,
    bd_dissection,
    blue_elementary_polygons,
    cma_dissection,
    dissection_of,
    surface_invariants,
)
from gentle_kit.errors import GentleKitError
from gentle_kit.generator import GenConfig, generate
from gentle_kit.normal_form import to_normal_form
from gentle_kit.threads import forbidden_cycles
from gentle_kit.words import derived_type, representation_type

THREADS_ENV = "GENTLE_KIT_THREADS"


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 42
    count: int = 50
    ops_depth: int = 2
    max_chains: int = 4
    max_chain_len: int = 4
    pairing_density: float = 0.5
    sample_every: int = 5
    inject_fault: bool = False  # test hook: drop one relation from each BD image


@dataclass
class SeedRecord:
    seed: int
    summary: tuple[int, int, int]
    types: dict[str, tuple[str, str]]
    mismatches: list[str] = field(default_factory=list)
    surface_checked: bool = False
    seconds: float = 0.0


@dataclass
class VerifyReport:
    config: VerifyConfig
    records: list[SeedRecord]
    seconds: float

    @property
    def mismatches(self) -> list[str]:
        return [f"seed {r.seed}: {m}" for r in self.records for m in r.mismatches]

    @property
    def exit_code(self) -> int:
        return 3 if self.mismatches else 0

    def to_json(self) -> dict:
        return {
            "config": asdict(self.config),
            "records": [
                {
                    "seed": r.seed,
                    "summary": {"vertices": r.summary[0], "arrows": r.summary[1], "relations": r.summary[2]},
                    "types": {k: {"rep": v[0], "derived": v[1]} for k, v in r.types.items()},
                    "mismatches": r.mismatches,
                    "surface_checked": r.surface_checked,
                    "seconds": round(r.seconds, 6),
                }
                for r in self.records
            ],
            "mismatches": self.mismatches,
            "seconds": round(self.seconds, 6),
        }


def op_words(depth: int) -> list[tuple[str, ...]]:
    return [w for n in range(depth + 1) for w in itertools.product(("bd", "cma"), repeat=n)]


def _types(bq: BoundQuiver) -> tuple[str, str]:
    return representation_type(bq).kind.value, derived_type(bq).value


def _drop_relation(bq: BoundQuiver) -> BoundQuiver:
    return BoundQuiver(bq.quiver, bq.relations[1:], bq.name) if bq.relations else bq


def _surface_checks(bq: BoundQuiver) -> list[str]:
    problems = []
    pc = dissection_of(to_normal_form(bq))
    base = algebra_of(pc)
    if isomorphic(base, bq) is None:
        problems.append("surface round trip failed")
    if isomorphic(algebra_of(bd_dissection(pc)), bd(base)) is None:
        problems.append("BD surface does not match BD algebra")
    if isomorphic(algebra_of(cma_dissection(pc)), cma(base)) is None:
        problems.append("CMA surface does not match CMA algebra")
    inv = surface_invariants(pc)
    if inv.euler_characteristic != len(pc.polygons) - len(pc.glue):
        problems.append("Euler characteristic differs from polygon count minus gluings")
    if bool(blue_elementary_polygons(pc).infinite) != bool(forbidden_cycles(bq)):
        problems.append("infinite blue polygon does not match forbidden cycles")
    return problems


def check_seed(seed: int, cfg: VerifyConfig) -> SeedRecord:
    start = time.perf_counter()
    gen = GenConfig(seed, cfg.max_chains, cfg.max_chain_len, cfg.pairing_density, True)
    base = generate(gen)
    record = SeedRecord(seed, (len(base.vertices), len(base.arrows), len(base.relations)), {})
    expected = _types(base)
    record.types["A"] = expected
    images = {(): base}
    for word in op_words(cfg.ops_depth)[1:]:
        label = ".".join(word)
        if word[:-1] not in images:
            continue  # the shorter word already failed and was recorded
        try:
            image = compose(images[word[:-1]], word[-1:])
            if cfg.inject_fault and word == ("bd",):
                image = _drop_relation(image)
            images[word] = image
            report = image.validation
            if not report.is_gentle:
                record.mismatches.append(f"{label}: not gentle ({report.summary()})")
                continue
            got = _types(image)
        except GentleKitError as exc:
            record.mismatches.append(f"{label}: {exc}")
            continue
        record.types[label] = got
        if got[0] != expected[0]:
            record.mismatches.append(f"{label}: representation type {got[0]} != {expected[0]}")
        if got[1] != expected[1]:
            record.mismatches.append(f"{label}: derived type {got[1]} != {expected[1]}")
    if cfg.sample_every > 0 and (seed - cfg.seed) % cfg.sample_every == 0:
        record.surface_checked = True
        record.mismatches += _surface_checks(base)
    record.seconds = time.perf_counter() - start
    return record


def _check_seed_args(args):
    return check_seed(*args)


def worker_count() -> int:
    n = os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def verify(cfg: VerifyConfig, workers: int | None = None) -> VerifyReport:
    """Check every seed in ``[seed, seed + count)``; records come back sorted by seed."""
    start = time.perf_counter()
    seeds = list(range(cfg.seed, cfg.seed + cfg.count))
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_check_seed_args, [(s, cfg) for s in seeds], chunksize=4))
    else:
        records = [check_seed(s, cfg) for s in seeds]
    records.sort(key=lambda r: r.seed)
    return VerifyReport(cfg, records, time.perf_counter() - start)
