"""The chain-and-gluing presentation ``A(m, ~)`` of a gentle algebra.

Position ``(i, j)`` is the j-th vertex of chain i, counted from the source end,
both indices 1-based. Chains are the permitted threads; glued positions name
the same quiver vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from gentle_kit.core import BoundQuiver, require_gentle
from gentle_kit.errors import NotGentleError
from gentle_kit.threads import permitted_threads

Position = tuple[int, int]
PositionPair = tuple[Position, Position]


def _normalize_pairs(pairs: Iterable) -> tuple[PositionPair, ...]:
    out = set()
    for p, q in pairs:
        p, q = (int(p[0]), int(p[1])), (int(q[0]), int(q[1]))
        out.add((min(p, q), max(p, q)))
    return tuple(sorted(out))


@dataclass(frozen=True)
class BDNormalForm:
    """Chain lengths ``m`` and a partial matching ``pairs`` on positions.

    ``labels`` maps positions to vertex ids and ``arrow_labels`` maps ``(i, j)``
    to the id of the arrow from ``(i, j)`` to ``(i, j + 1)``. Missing labels are
    filled with ``"1", "2", ...`` and ``"a1", "a2", ...`` in chain-major order.
    """

    m: tuple[int, ...]
    pairs: tuple[PositionPair, ...] = ()
    labels: Mapping[Position, str] = field(default_factory=dict, compare=False, hash=False)
    arrow_labels: Mapping[Position, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        if any(x < 1 for x in m):
            raise ValueError("chain lengths must be >= 1")
        object.__setattr__(self, "m", m)
        pairs = _normalize_pairs(self.pairs)
        object.__setattr__(self, "pairs", pairs)
        used: set[Position] = set()
        for p, q in pairs:
            for i, j in (p, q):
                if not (1 <= i <= len(m) and 1 <= j <= m[i - 1]):
                    raise ValueError(f"position {(i, j)} out of range")
                if m[i - 1] == 1:
                    raise ValueError(f"position {(i, j)} lies on a one-vertex chain and cannot be glued")
            if p == q:
                raise ValueError(f"position {p} paired with itself")
            if p in used or q in used:
                raise ValueError(f"position paired twice in {(p, q)}")
            used |= {p, q}

        labels = dict(self.labels)
        partner = self.partner
        counter = 0
        taken = set(labels.values())
        for pos in self.positions():
            if pos in labels:
                continue
            other = partner.get(pos)
            if other is not None and other in labels:
                labels[pos] = labels[other]
                continue
            counter += 1
            while str(counter) in taken:
                counter += 1
            labels[pos] = str(counter)
            taken.add(labels[pos])
        for p, q in pairs:
            if labels[p] != labels[q]:
                raise ValueError(f"glued positions {p} and {q} carry different labels")
        classes = {}
        for pos in self.positions():
            key = frozenset({pos, partner.get(pos, pos)})
            if classes.setdefault(labels[pos], key) != key:
                raise ValueError(f"label {labels[pos]} used for unglued positions")
        object.__setattr__(self, "labels", labels)

        arrow_labels = dict(self.arrow_labels)
        counter = 0
        taken = set(arrow_labels.values())
        for i, mi in enumerate(m, start=1):
            for j in range(1, mi):
                if (i, j) not in arrow_labels:
                    counter += 1
                    while f"a{counter}" in taken:
                        counter += 1
                    arrow_labels[(i, j)] = f"a{counter}"
                    taken.add(arrow_labels[(i, j)])
        if len(set(arrow_labels.values())) != len(arrow_labels):
            raise ValueError("duplicate arrow labels")
        object.__setattr__(self, "arrow_labels", arrow_labels)

    @property
    def partner(self) -> dict[Position, Position]:
        out = {}
        for p, q in self.pairs:
            out[p] = q
            out[q] = p
        return out

    def positions(self) -> list[Position]:
        return [(i, j) for i, mi in enumerate(self.m, start=1) for j in range(1, mi + 1)]

    def to_json(self) -> dict:
        return {
            "m": list(self.m),
            "pairs": [[list(p), list(q)] for p, q in self.pairs],
            "labels": {f"{i},{j}": v for (i, j), v in sorted(self.labels.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BDNormalForm":
        labels = {}
        for key, v in data.get("labels", {}).items():
            i, j = key.split(",")
            labels[(int(i), int(j))] = v
        return cls(tuple(data["m"]), tuple((tuple(p), tuple(q)) for p, q in data["pairs"]), labels)

    def __str__(self) -> str:
        pairs = ", ".join(f"{p}~{q}" for p, q in self.pairs)
        return f"m={self.m} pairs={{{pairs}}}"


def to_normal_form(bq: BoundQuiver) -> BDNormalForm:
    require_gentle(bq)
    threads = permitted_threads(bq)
    chains = sorted((t for t in threads if t.arrows), key=lambda t: t.arrows[0])
    trivial = sorted((t for t in threads if not t.arrows), key=lambda t: t.anchor)
    m = []
    labels: dict[Position, str] = {}
    arrow_labels: dict[Position, str] = {}
    at_vertex: dict[str, list[Position]] = {v: [] for v in bq.vertices}
    for i, t in enumerate(chains, start=1):
        m.append(len(t.arrows) + 1)
        verts = [bq.source(t.arrows[0])] + [bq.target(a) for a in t.arrows]
        for j, v in enumerate(verts, start=1):
            labels[(i, j)] = v
            at_vertex[v].append((i, j))
        for j, a in enumerate(t.arrows, start=1):
            arrow_labels[(i, j)] = a
    for i, t in enumerate(trivial, start=len(chains) + 1):
        m.append(1)
        labels[(i, 1)] = t.anchor
        at_vertex[t.anchor].append((i, 1))
    pairs = []
    for v, ps in at_vertex.items():
        if len(ps) > 2 or not ps:
            raise NotGentleError(f"vertex {v} lies on {len(ps)} thread positions")
        if len(ps) == 2:
            pairs.append((ps[0], ps[1]))
    return BDNormalForm(tuple(m), tuple(pairs), labels, arrow_labels)


def from_normal_form(nf: BDNormalForm, name: str | None = None) -> BoundQuiver:
    """Glue linear chains along the matching; crossing composites become relations."""
    L, A = nf.labels, nf.arrow_labels
    arrows = []
    for i, mi in enumerate(nf.m, start=1):
        for j in range(1, mi):
            arrows.append((A[(i, j)], L[(i, j)], L[(i, j + 1)]))
    relations = []
    m = nf.m
    for p, q in nf.pairs:
        for (i, j), (k, l) in ((p, q), (q, p)):
            if j > 1 and l < m[k - 1]:
                relations.append((A[(i, j - 1)], A[(k, l)]))
    bq = BoundQuiver.build(set(L.values()), arrows, relations, name)
    report = bq.validation
    assert report.is_gentle, report.summary()
    return bq


def matrix_dimension(nf: BDNormalForm) -> int:
    return sum(x * (x + 1) // 2 for x in nf.m) - len(nf.pairs)
