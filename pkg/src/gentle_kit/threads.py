"""Permitted and forbidden threads, forbidden cycles and Gorenstein-projectives.

Trivial threads follow the usual bookkeeping: with ``trivial=True`` every
vertex is the endpoint of exactly two permitted and two forbidden thread ends.
The default lists only what the rest of the package needs: nontrivial threads,
plus (for permitted threads) one trivial thread per isolated vertex.
"""
from __future__ import annotations

from dataclasses import dataclass

from gentle_kit.core import BoundQuiver, require_gentle

PERMITTED = "permitted"
FORBIDDEN = "forbidden"


@dataclass(frozen=True)
class Thread:
    kind: str
    arrows: tuple[str, ...]
    anchor: str | None = None  # vertex of a trivial thread

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        return f"e_{self.anchor}" if self.is_trivial else ".".join(self.arrows)


@dataclass(frozen=True)
class ForbiddenCycle:
    arrows: tuple[str, ...]

    def __post_init__(self):
        arrows = tuple(self.arrows)
        i = min(range(len(arrows)), key=lambda k: arrows[k:] + arrows[:k])
        object.__setattr__(self, "arrows", arrows[i:] + arrows[:i])

    def __len__(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        return "(" + ".".join(self.arrows) + ")"


@dataclass(frozen=True)
class GProjList:
    projectives: tuple[str, ...]
    extras: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.projectives) + len(self.extras)

    def labels(self) -> list[str]:
        return [f"e_{v}A" for v in self.projectives] + [f"{a}A" for a in self.extras]


def _successors(bq: BoundQuiver, in_ideal: bool) -> dict[str, str | None]:
    succ = {}
    for a in bq.arrows:
        nxt = [b for b in bq.quiver.out_arrows[a.dst] if bq.in_ideal(a.id, b) == in_ideal]
        succ[a.id] = nxt[0] if nxt else None
    return succ


def _walk_threads(bq: BoundQuiver, in_ideal: bool, skip: set[str]) -> list[tuple[str, ...]]:
    succ = _successors(bq, in_ideal)
    has_pred = {b for b in succ.values() if b is not None}
    threads = []
    for a in bq.arrow_ids:
        if a in skip or a in has_pred:
            continue
        path = [a]
        while succ[path[-1]] is not None:
            path.append(succ[path[-1]])
        threads.append(tuple(path))
    return threads


def _trivial_threads(bq: BoundQuiver, kind: str) -> list[Thread]:
    q = bq.quiver
    out = []
    for v in bq.vertices:
        ins, outs = q.in_arrows[v], q.out_arrows[v]
        if len(ins) > 1 or len(outs) > 1:
            continue
        if not ins and not outs:
            out += [Thread(kind, (), v), Thread(kind, (), v)]
            continue
        if ins and outs:
            zero = bq.in_ideal(ins[0], outs[0])
            # a passing nonzero composite leaves a gap for a trivial permitted thread, and dually
            if zero == (kind == PERMITTED):
                continue
        out.append(Thread(kind, (), v))
    return out


def permitted_threads(bq: BoundQuiver, trivial: bool = False) -> list[Thread]:
    """Maximal paths with no relation; every arrow lies on exactly one."""
    require_gentle(bq)
    threads = [Thread(PERMITTED, t) for t in _walk_threads(bq, False, set())]
    if trivial:
        threads += _trivial_threads(bq, PERMITTED)
    else:
        q = bq.quiver
        threads += [Thread(PERMITTED, (), v) for v in bq.vertices if not q.in_arrows[v] and not q.out_arrows[v]]
    return threads


def forbidden_cycles(bq: BoundQuiver) -> list[ForbiddenCycle]:
    require_gentle(bq)
    succ = _successors(bq, True)
    cycles = []
    seen: set[str] = set()
    for a in bq.arrow_ids:
        if a in seen:
            continue
        path = [a]
        index = {a: 0}
        while succ[path[-1]] is not None and succ[path[-1]] not in index:
            index[succ[path[-1]]] = len(path)
            path.append(succ[path[-1]])
        seen.update(path)
        nxt = succ[path[-1]]
        if nxt is not None and nxt == a:
            cycles.append(ForbiddenCycle(tuple(path)))
    return sorted(set(cycles), key=lambda c: c.arrows)


def cyclic_arrows(bq: BoundQuiver) -> set[str]:
    return {a for c in forbidden_cycles(bq) for a in c.arrows}


def forbidden_threads(bq: BoundQuiver, trivial: bool = False) -> list[Thread]:
    """Maximal forbidden paths that do not lie on a forbidden cycle."""
    threads = [Thread(FORBIDDEN, t) for t in _walk_threads(bq, True, cyclic_arrows(bq))]
    if trivial:
        threads += _trivial_threads(bq, FORBIDDEN)
    return threads


def gorenstein_projectives(bq: BoundQuiver) -> GProjList:
    extras = tuple(a for c in forbidden_cycles(bq) for a in c.arrows)
    return GProjList(tuple(bq.vertices), extras)


def has_infinite_global_dimension(bq: BoundQuiver) -> bool:
    return bool(forbidden_cycles(bq))


def _thread_json(t: Thread) -> dict:
    return {"arrows": list(t.arrows), "anchor": t.anchor}


def threads_report(bq: BoundQuiver) -> dict:
    g = gorenstein_projectives(bq)
    return {
        "permitted": [_thread_json(t) for t in permitted_threads(bq)],
        "forbidden": [_thread_json(t) for t in forbidden_threads(bq)],
        "cycles": [list(c.arrows) for c in forbidden_cycles(bq)],
        "gproj": {"projectives": list(g.projectives), "extras": list(g.extras)},
    }
