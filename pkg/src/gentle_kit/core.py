"""Bound quivers: data model, text/JSON formats, validation, paths, isomorphism.

Paths compose left to right: ``a.b`` is legal iff ``target(a) == source(b)``.
"""
from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from gentle_kit.errors import InfiniteDimensionalError, NotGentleError, ParseError

_FORBIDDEN_ID_CHARS = set(".:#→")


def is_valid_id(name: str) -> bool:
    return bool(name) and not any(c.isspace() or c in _FORBIDDEN_ID_CHARS for c in name)


def fresh_name(base: str, taken: set[str]) -> str:
    """Return ``base`` or ``base`` with extra primes appended, avoiding ``taken``.

    The chosen name is added to ``taken``.
    """
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Path:
    """A path ``start -> ...`` given by its arrows; no arrows means the trivial path at ``start``."""

    start: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        return f"e_{self.start}" if self.is_trivial else ".".join(self.arrows)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate arrow id")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.src not in vs or a.dst not in vs:
                raise ValueError(f"arrow {a.id} has an endpoint outside the vertex set")

    @cached_property
    def arrow(self) -> Mapping[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def out_arrows(self) -> Mapping[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.src].append(a.id)
        return {v: tuple(ids) for v, ids in out.items()}

    @cached_property
    def in_arrows(self) -> Mapping[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.dst].append(a.id)
        return {v: tuple(ids) for v, ids in inc.items()}

    def source(self, arrow_id: str) -> str:
        return self.arrow[arrow_id].src

    def target(self, arrow_id: str) -> str:
        return self.arrow[arrow_id].dst


@dataclass(frozen=True)
class BoundQuiver:
    """A quiver together with a set of monomial zero relations.

    Instances are normalized (sorted vertices, arrows and relations), so two
    bound quivers describing the same data compare equal.
    """

    quiver: Quiver
    relations: tuple[tuple[str, ...], ...] = ()
    name: str | None = None

    def __post_init__(self):
        rels = tuple(sorted({tuple(r) for r in self.relations}))
        for r in rels:
            if len(r) < 2:
                raise ValueError(f"relation {'.'.join(r)} has length < 2")
            for a in r:
                if a not in self.quiver.arrow:
                    raise ParseError(f"relation {'.'.join(r)} uses unknown arrow {a}")
            for x, y in zip(r, r[1:]):
                if self.quiver.target(x) != self.quiver.source(y):
                    raise ParseError(f"relation {'.'.join(r)} is not composable at {x}.{y}")
        object.__setattr__(self, "relations", rels)

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        arrows: Iterable[tuple[str, str, str]],
        relations: Iterable[Sequence[str]] = (),
        name: str | None = None,
    ) -> "BoundQuiver":
        """Convenience constructor from ``(id, src, dst)`` triples."""
        q = Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))
        return cls(q, tuple(tuple(r) for r in relations), name)

    # shortcuts
    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.quiver.arrows)

    def source(self, arrow_id: str) -> str:
        return self.quiver.source(arrow_id)

    def target(self, arrow_id: str) -> str:
        return self.quiver.target(arrow_id)

    @cached_property
    def quadratic(self) -> frozenset[tuple[str, str]]:
        """The length-2 relations; ``(a, b) in bq.quadratic`` means ``a.b`` lies in I."""
        return frozenset((r[0], r[1]) for r in self.relations if len(r) == 2)

    def in_ideal(self, a: str, b: str) -> bool:
        return (a, b) in self.quadratic

    @cached_property
    def _max_rel_len(self) -> int:
        return max((len(r) for r in self.relations), default=0)

    def is_zero_path(self, arrows: Sequence[str]) -> bool:
        """True iff the path contains a relation as a contiguous subpath."""
        rels = set(self.relations)
        n = len(arrows)
        for i in range(n):
            for j in range(i + 2, min(n, i + self._max_rel_len) + 1):
                if tuple(arrows[i:j]) in rels:
                    return True
        return False

    @cached_property
    def validation(self) -> "ValidationReport":
        """Memoized :func:`validate` result."""
        return validate(self)

    def with_name(self, name: str | None) -> "BoundQuiver":
        return BoundQuiver(self.quiver, self.relations, name)

    def __str__(self) -> str:
        return serialize(self)


# ---------------------------------------------------------------------------
# text format

_ARROW_RE = re.compile(r"^(\S+)\s*:\s*(\S+?)\s*(?:->|→)\s*(\S+)$")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return (line if i < 0 else line[:i]).strip()


def parse_bound_quiver(text: str) -> BoundQuiver:
    """Parse the line-oriented bound quiver format.

    >>> bq = parse_bound_quiver("vertex 1 2\\narrow a : 1 -> 2")
    >>> [a.id for a in bq.arrows]
    ['a']
    """
    name = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    rels: list[tuple[tuple[str, ...], int]] = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "algebra":
            if seen_content:
                raise ParseError("'algebra' must be the first statement", lineno)
            if not is_valid_id(rest):
                raise ParseError(f"bad algebra name {rest!r}", lineno)
            name = rest
        elif keyword == "vertex":
            ids = rest.split()
            if not ids:
                raise ParseError("'vertex' needs at least one id", lineno)
            for v in ids:
                if not is_valid_id(v):
                    raise ParseError(f"bad vertex id {v!r}", lineno)
                if v in vertices:
                    raise ParseError(f"duplicate vertex {v}", lineno)
                vertices.append(v)
        elif keyword == "arrow":
            m = _ARROW_RE.match(rest)
            if not m:
                raise ParseError("expected 'arrow ID : SRC -> DST'", lineno)
            aid, src, dst = m.groups()
            if not is_valid_id(aid):
                raise ParseError(f"bad arrow id {aid!r}", lineno)
            for v in (src, dst):
                if v not in vertices:
                    raise ParseError(f"unknown vertex {v}", lineno)
            if any(a.id == aid for a in arrows):
                raise ParseError(f"duplicate arrow {aid}", lineno)
            arrows.append(Arrow(aid, src, dst))
        elif keyword == "rel":
            if not rest or " " in rest:
                raise ParseError("expected 'rel A1.A2[...]'", lineno)
            rels.append((tuple(rest.split(".")), lineno))
        else:
            raise ParseError(f"unknown statement {keyword!r}", lineno)
        seen_content = True

    q = Quiver(tuple(vertices), tuple(arrows))
    for r, lineno in rels:
        if len(r) < 2:
            raise ParseError("a relation needs at least two arrows", lineno)
        for a in r:
            if a not in q.arrow:
                raise ParseError(f"unknown arrow {a}", lineno)
        for x, y in zip(r, r[1:]):
            if q.target(x) != q.source(y):
                raise ParseError(f"non-composable relation: target({x}) != source({y})", lineno)
    if len({r for r, _ in rels}) != len(rels):
        raise ParseError("duplicate relation")
    return BoundQuiver(q, tuple(r for r, _ in rels), name)


def serialize(bq: BoundQuiver) -> str:
    lines = []
    if bq.name:
        lines.append(f"algebra {bq.name}")
    if bq.vertices:
        lines.append("vertex " + " ".join(bq.vertices))
    lines.extend(f"arrow {a.id} : {a.src} -> {a.dst}" for a in bq.arrows)
    lines.extend("rel " + ".".join(r) for r in bq.relations)
    return "\n".join(lines) + "\n"


def to_json(bq: BoundQuiver) -> dict:
    return {
        "name": bq.name,
        "vertices": list(bq.vertices),
        "arrows": [{"id": a.id, "src": a.src, "dst": a.dst} for a in bq.arrows],
        "relations": [list(r) for r in bq.relations],
    }


def from_json(data: Mapping | str) -> BoundQuiver:
    if isinstance(data, str):
        data = json.loads(data)
    return BoundQuiver.build(
        data["vertices"],
        [(a["id"], a["src"], a["dst"]) for a in data["arrows"]],
        [tuple(r) for r in data.get("relations", [])],
        data.get("name"),
    )


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class AxiomCheck:
    number: int
    description: str
    ok: bool
    witness: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    axioms: tuple[AxiomCheck, ...]
    is_finite_dimensional: bool
    infinite_witness: tuple[str, ...] | None
    is_connected: bool

    @property
    def is_string_algebra(self) -> bool:
        return self.is_finite_dimensional and all(c.ok for c in self.axioms if c.number <= 4)

    @property
    def is_gentle(self) -> bool:
        return self.is_string_algebra and all(c.ok for c in self.axioms)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.axioms if not c.ok]

    def summary(self) -> str:
        if self.is_gentle:
            return "gentle"
        parts = []
        if not self.is_finite_dimensional:
            parts.append("infinite-dimensional (cycle " + ".".join(self.infinite_witness or ()) + ")")
        parts += [f"axiom ({c.number}) fails: {c.witness}" for c in self.failures()]
        return "; ".join(parts)


def _path_automaton(bq: BoundQuiver):
    """States are suffixes that can still grow into a relation; yields the successor map."""
    k = max(bq._max_rel_len - 1, 1)
    rels = set(bq.relations)

    def step(state: tuple[str, ...], b: str) -> tuple[str, ...] | None:
        seq = state + (b,)
        for L in range(2, len(seq) + 1):
            if seq[-L:] in rels:
                return None
        return seq[-k:]

    return step


def _find_nonzero_cycle(bq: BoundQuiver) -> tuple[str, ...] | None:
    """An arrow sequence whose powers never hit a relation, or None."""
    step = _path_automaton(bq)
    out = bq.quiver.out_arrows
    color: dict[tuple[str, ...], int] = {}
    for a in bq.arrow_ids:
        start = (a,)
        if start in color:
            continue
        stack = [(start, iter(out[bq.target(a)]))]
        trail = [start]
        color[start] = 1
        while stack:
            state, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[state] = 2
                stack.pop()
                trail.pop()
                continue
            new = step(state, nxt)
            if new is None:
                continue
            c = color.get(new, 0)
            if c == 1:
                i = trail.index(new)
                return tuple(s[-1] for s in trail[i:])
            if c == 0:
                color[new] = 1
                stack.append((new, iter(out[bq.target(nxt)])))
                trail.append(new)
    return None


def validate(bq: BoundQuiver) -> ValidationReport:
    q = bq.quiver
    checks = []
    for num, table in ((1, q.out_arrows), (2, q.in_arrows)):
        bad = next((v for v in q.vertices if len(table[v]) > 2), None)
        word = "start" if num == 1 else "end"
        checks.append(
            AxiomCheck(num, f"at most two arrows {word} at each vertex", bad is None,
                       None if bad is None else f"vertex {bad}: {', '.join(table[bad])}")
        )

    def count_check(num, desc, in_ideal: bool, forward: bool):
        for a in q.arrows:
            if forward:
                partners = [b for b in q.out_arrows[a.dst] if bq.in_ideal(a.id, b) == in_ideal]
                if len(partners) > 1:
                    return AxiomCheck(num, desc, False, f"arrow {a.id} with {', '.join(partners)}")
            else:
                partners = [b for b in q.in_arrows[a.src] if bq.in_ideal(b, a.id) == in_ideal]
                if len(partners) > 1:
                    return AxiomCheck(num, desc, False, f"arrow {a.id} with {', '.join(partners)}")
        return AxiomCheck(num, desc, True)

    checks.append(count_check(3, "at most one b with ab not in I", False, True))
    checks.append(count_check(4, "at most one a with ab not in I", False, False))
    checks.append(count_check(5, "at most one b with ab in I", True, True))
    checks.append(count_check(6, "at most one a with ab in I", True, False))
    long_rel = next((r for r in bq.relations if len(r) != 2), None)
    checks.append(
        AxiomCheck(7, "all relations have length two", long_rel is None,
                   None if long_rel is None else "relation " + ".".join(long_rel))
    )
    cycle = _find_nonzero_cycle(bq)
    return ValidationReport(tuple(checks), cycle is None, cycle, len(connected_components(bq)) <= 1)


def require_gentle(bq: BoundQuiver) -> ValidationReport:
    report = bq.validation
    if not report.is_finite_dimensional:
        raise InfiniteDimensionalError(report.summary())
    if not report.is_gentle:
        raise NotGentleError(report.summary(), report)
    return report


# ---------------------------------------------------------------------------
# paths


def iter_nonzero_paths(bq: BoundQuiver) -> Iterator[Path]:
    if _find_nonzero_cycle(bq) is not None:
        raise InfiniteDimensionalError("the path algebra modulo relations is infinite-dimensional")
    step = _path_automaton(bq)
    out = bq.quiver.out_arrows
    for v in bq.vertices:
        yield Path(v)
    for a in bq.arrow_ids:
        stack = [((a,), (a,))]
        while stack:
            arrows, state = stack.pop()
            yield Path(bq.source(a), arrows)
            for b in out[bq.target(arrows[-1])]:
                new = step(state, b)
                if new is not None:
                    stack.append((arrows + (b,), new))


def nonzero_paths(bq: BoundQuiver) -> list[Path]:
    """A basis of kQ/I: every path with no relation as a subpath."""
    return sorted(iter_nonzero_paths(bq), key=lambda p: (len(p), p.start, p.arrows))


# ---------------------------------------------------------------------------
# components and isomorphism


def connected_components(bq: BoundQuiver) -> list[BoundQuiver]:
    parent = {v: v for v in bq.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in bq.arrows:
        ra, rb = find(a.src), find(a.dst)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[str, list[str]] = defaultdict(list)
    for v in bq.vertices:
        groups[find(v)].append(v)
    comps = []
    for root in sorted(groups):
        vs = set(groups[root])
        arrows = [a for a in bq.arrows if a.src in vs]
        ids = {a.id for a in arrows}
        rels = [r for r in bq.relations if r[0] in ids]
        comps.append(BoundQuiver(Quiver(tuple(vs), tuple(arrows)), tuple(rels)))
    return comps


@dataclass(frozen=True)
class VertexMap:
    vertices: Mapping[str, str] = field(hash=False)
    arrows: Mapping[str, str] = field(hash=False)

    def inverse(self) -> "VertexMap":
        return VertexMap({b: a for a, b in self.vertices.items()}, {b: a for a, b in self.arrows.items()})

    def is_isomorphism(self, bq1: BoundQuiver, bq2: BoundQuiver) -> bool:
        if sorted(self.vertices) != list(bq1.vertices) or sorted(self.vertices.values()) != list(bq2.vertices):
            return False
        if sorted(self.arrows) != sorted(bq1.arrow_ids) or sorted(self.arrows.values()) != sorted(bq2.arrow_ids):
            return False
        for a in bq1.arrows:
            b = bq2.quiver.arrow[self.arrows[a.id]]
            if (self.vertices[a.src], self.vertices[a.dst]) != (b.src, b.dst):
                return False
        image = {tuple(self.arrows[x] for x in r) for r in bq1.relations}
        return image == set(bq2.relations)


def _arrow_signatures(bq: BoundQuiver) -> dict[str, tuple]:
    q = bq.quiver
    role: dict[str, list[tuple[int, int]]] = defaultdict(list)
    for r in bq.relations:
        for i, x in enumerate(r):
            role[x].append((len(r), i))
    sig = {}
    for a in q.arrows:
        sig[a.id] = (
            len(q.in_arrows[a.src]), len(q.out_arrows[a.src]),
            len(q.in_arrows[a.dst]), len(q.out_arrows[a.dst]),
            a.src == a.dst, tuple(sorted(role[a.id])),
        )
    return sig


def isomorphic(bq1: BoundQuiver, bq2: BoundQuiver) -> VertexMap | None:
    """Find a relation-preserving quiver isomorphism ``bq1 -> bq2`` by backtracking."""
    if (len(bq1.vertices), len(bq1.arrows), len(bq1.relations)) != (
        len(bq2.vertices), len(bq2.arrows), len(bq2.relations)
    ):
        return None
    q1, q2 = bq1.quiver, bq2.quiver

    def vsig(q, v):
        return (len(q.in_arrows[v]), len(q.out_arrows[v]))

    if sorted(vsig(q1, v) for v in q1.vertices) != sorted(vsig(q2, v) for v in q2.vertices):
        return None
    s1, s2 = _arrow_signatures(bq1), _arrow_signatures(bq2)
    if sorted(s1.values()) != sorted(s2.values()):
        return None
    by_sig: dict[tuple, list[str]] = defaultdict(list)
    for b, s in s2.items():
        by_sig[s].append(b)

    # order arrows so that each one touches an already-visited vertex when possible
    order: list[str] = []
    seen_arrows: set[str] = set()
    seen_vertices: set[str] = set()
    for root in q1.vertices:
        if root in seen_vertices:
            continue
        queue = [root]
        seen_vertices.add(root)
        while queue:
            v = queue.pop(0)
            for aid in q1.out_arrows[v] + q1.in_arrows[v]:
                if aid in seen_arrows:
                    continue
                seen_arrows.add(aid)
                order.append(aid)
                a = q1.arrow[aid]
                for w in (a.src, a.dst):
                    if w not in seen_vertices:
                        seen_vertices.add(w)
                        queue.append(w)

    rels_of: dict[str, list[tuple[str, ...]]] = defaultdict(list)
    for r in bq1.relations:
        for x in set(r):
            rels_of[x].append(r)
    rel2 = set(bq2.relations)
    vmap: dict[str, str] = {}
    vinv: dict[str, str] = {}
    amap: dict[str, str] = {}
    used: set[str] = set()

    def bind(v, w, added):
        if v in vmap:
            return vmap[v] == w
        if w in vinv:
            return False
        vmap[v] = w
        vinv[w] = v
        added.append(v)
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        aid = order[i]
        a = q1.arrow[aid]
        for bid in by_sig[s1[aid]]:
            if bid in used:
                continue
            b = q2.arrow[bid]
            added: list[str] = []
            if bind(a.src, b.src, added) and bind(a.dst, b.dst, added):
                amap[aid] = bid
                used.add(bid)
                ok = all(
                    tuple(amap[x] for x in r) in rel2
                    for r in rels_of[aid]
                    if all(x in amap for x in r)
                )
                if ok and search(i + 1):
                    return True
                del amap[aid]
                used.discard(bid)
            for v in added:
                del vinv[vmap.pop(v)]
        return False

    if not search(0):
        return None
    rest1 = [v for v in q1.vertices if v not in vmap]
    rest2 = [w for w in q2.vertices if w not in vinv]
    vmap.update(zip(rest1, rest2))
    return VertexMap(dict(vmap), dict(amap))


def relabel(bq: BoundQuiver, vertex_names: Mapping[str, str], arrow_names: Mapping[str, str] | None = None) -> BoundQuiver:
    arrow_names = arrow_names or {}
    return BoundQuiver.build(
        [vertex_names.get(v, v) for v in bq.vertices],
        [(arrow_names.get(a.id, a.id), vertex_names.get(a.src, a.src), vertex_names.get(a.dst, a.dst))
         for a in bq.arrows],
        [tuple(arrow_names.get(x, x) for x in r) for r in bq.relations],
        bq.name,
    )


def disjoint_union(*bqs: BoundQuiver) -> BoundQuiver:
    vertices, arrows, rels = [], [], []
    for bq in bqs:
        vertices += bq.vertices
        arrows += [(a.id, a.src, a.dst) for a in bq.arrows]
        rels += bq.relations
    return BoundQuiver.build(vertices, arrows, rels)
