"""Seeded random gentle algebras, drawn in normal-form space.

Randomness comes from numpy's PCG64 bit generator (``numpy.random.default_rng``),
so a given :class:`GenConfig` always yields the same algebra.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from gentle_kit.core import BoundQuiver
from gentle_kit.errors import GenerationError
from gentle_kit.normal_form import BDNormalForm, from_normal_form

MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_chains: int = 4
    max_chain_len: int = 4
    pairing_density: float = 0.5
    require_connected: bool = True

    def __post_init__(self):
        if self.max_chains < 1 or self.max_chain_len < 1:
            raise ValueError("max_chains and max_chain_len must be >= 1")
        if not 0.0 <= self.pairing_density <= 1.0:
            raise ValueError("pairing_density must lie in [0, 1]")
        if not -(2**63) <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def random_normal_form(cfg: GenConfig, rng: np.random.Generator) -> BDNormalForm:
    s = int(rng.integers(1, cfg.max_chains + 1))
    low = min(2, cfg.max_chain_len)
    m = tuple(int(x) for x in rng.integers(low, cfg.max_chain_len + 1, size=s))
    positions = [(i, j) for i, mi in enumerate(m, start=1) if mi > 1 for j in range(1, mi + 1)]
    order = rng.permutation(len(positions))
    pairs = []
    for k in range(0, len(order) - 1, 2):
        if rng.random() < cfg.pairing_density:
            pairs.append((positions[order[k]], positions[order[k + 1]]))
    return BDNormalForm(m, tuple(pairs))


def _connected(nf: BDNormalForm) -> bool:
    parent = list(range(len(nf.m)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, _), (k, _) in nf.pairs:
        parent[find(i - 1)] = find(k - 1)
    return len({find(x) for x in range(len(nf.m))}) == 1


def generate_normal_form(cfg: GenConfig) -> BDNormalForm:
    rng = np.random.default_rng(cfg.seed % 2**64)
    for _ in range(MAX_ATTEMPTS):
        nf = random_normal_form(cfg, rng)
        if cfg.require_connected and not _connected(nf):
            continue
        return nf
    raise GenerationError(f"no acceptable algebra after {MAX_ATTEMPTS} attempts; config {asdict(cfg)}")


def generate(cfg: GenConfig) -> BoundQuiver:
    bq = from_normal_form(generate_normal_form(cfg), f"gen{cfg.seed}")
    report = bq.validation
    if not report.is_gentle:
        raise GenerationError(f"generated algebra is not gentle ({report.summary()}); config {asdict(cfg)}")
    return bq


# ---------------------------------------------------------------------------
# exhaustive enumeration


def _partitions(total: int, largest: int):
    if total == 0:
        yield ()
        return
    for p in range(min(total, largest), 0, -1):
        for rest in _partitions(total - p, p):
            yield (p,) + rest


def _matchings(points: list):
    """All partial matchings on ``points``, as lists of pairs."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    yield from _matchings(rest)
    for k, other in enumerate(rest):
        for tail in _matchings(rest[:k] + rest[k + 1:]):
            yield [(first, other)] + tail


def _canonical_key(m: tuple[int, ...], pairs) -> tuple:
    """Smallest relabelling of a connected form over breadth-first chain orders."""
    partner = {}
    for p, q in pairs:
        partner[p] = q
        partner[q] = p
    best = None
    for start in range(1, len(m) + 1):
        order = [start]
        new = {start: 1}
        k = 0
        while k < len(order):
            i = order[k]
            k += 1
            for j in range(1, m[i - 1] + 1):
                other = partner.get((i, j))
                if other is not None and other[0] not in new:
                    new[other[0]] = len(order) + 1
                    order.append(other[0])
        if len(order) != len(m):
            return None
        key = (
            tuple(m[i - 1] for i in order),
            tuple(sorted(tuple(sorted(((new[a[0]], a[1]), (new[b[0]], b[1])))) for a, b in pairs)),
        )
        if best is None or key < best:
            best = key
    return best


def enumerate_normal_forms(max_arrows: int):
    """One connected normal form per isomorphism class of gentle algebras with at most ``max_arrows`` arrows.

    Two gentle algebras are isomorphic iff their forms agree up to reordering
    chains, which the canonical key accounts for.
    """
    yield BDNormalForm((1,), ())
    for arrows in range(1, max_arrows + 1):
        for part in _partitions(arrows, arrows):
            m = tuple(p + 1 for p in part)
            positions = [(i, j) for i, mi in enumerate(m, start=1) for j in range(1, mi + 1)]
            seen = set()
            for pairs in _matchings(positions):
                if len(pairs) < len(m) - 1:
                    continue
                key = _canonical_key(m, pairs)
                if key is None or key in seen:
                    continue
                seen.add(key)
                yield BDNormalForm(key[0], key[1])
