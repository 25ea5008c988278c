"""Strings, bands, homotopy strings and homotopy bands.

Words are flat letter sequences read left to right as walks in the quiver.
Each letter has a *tail* arrow (traversed first) and a *head* arrow (traversed
last); whether two consecutive letters may be juxtaposed depends only on their
directions, the head of the first and the tail of the second:

* direct, direct: ``head1.tail2`` must avoid I (strings) or lie in I (homotopy);
* inverse, inverse: ``tail2.head1`` likewise;
* mixed: ``head1 != tail2``.

Decision procedures run on transition graphs whose closed walks are exactly
the cyclic words; the brute-force enumerators are kept as independent oracles.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

from gentle_kit.core import BoundQuiver, nonzero_paths, require_gentle
from gentle_kit.errors import InfiniteDimensionalError

DIRECT, INVERSE = "direct", "inverse"


# ---------------------------------------------------------------------------
# letters and words


@dataclass(frozen=True, order=True)
class Letter:
    arrow: str
    inverse: bool = False

    def inv(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)

    def source(self, bq: BoundQuiver) -> str:
        return bq.target(self.arrow) if self.inverse else bq.source(self.arrow)

    def target(self, bq: BoundQuiver) -> str:
        return bq.source(self.arrow) if self.inverse else bq.target(self.arrow)

    @property
    def head(self) -> str:
        return self.arrow

    @property
    def tail(self) -> str:
        return self.arrow

    def to_json(self) -> dict:
        return {"arrow": self.arrow, "dir": INVERSE if self.inverse else DIRECT}

    def __str__(self) -> str:
        return self.arrow + ("^-1" if self.inverse else "")


@dataclass(frozen=True, order=True)
class HomotopyLetter:
    """A nonzero path of positive length, read forwards or backwards."""

    path: tuple[str, ...]
    inverse: bool = False

    def inv(self) -> "HomotopyLetter":
        return HomotopyLetter(self.path, not self.inverse)

    def source(self, bq: BoundQuiver) -> str:
        return bq.target(self.path[-1]) if self.inverse else bq.source(self.path[0])

    def target(self, bq: BoundQuiver) -> str:
        return bq.source(self.path[0]) if self.inverse else bq.target(self.path[-1])

    @property
    def head(self) -> str:
        return self.path[0] if self.inverse else self.path[-1]

    @property
    def tail(self) -> str:
        return self.path[-1] if self.inverse else self.path[0]

    def to_json(self) -> dict:
        return {"path": list(self.path), "dir": INVERSE if self.inverse else DIRECT}

    def __str__(self) -> str:
        return "(" + ".".join(self.path) + ")" + ("^-1" if self.inverse else "")


def _dir(item: Mapping) -> bool:
    if item["dir"] not in (DIRECT, INVERSE):
        raise ValueError(f"bad letter direction {item['dir']!r}")
    return item["dir"] == INVERSE


def letter_from_json(item: Mapping) -> Letter:
    return Letter(item["arrow"], _dir(item))


def homotopy_letter_from_json(item: Mapping) -> HomotopyLetter:
    return HomotopyLetter(tuple(item["path"]), _dir(item))


def _inverse_word(letters: Sequence) -> tuple:
    return tuple(x.inv() for x in reversed(letters))


def _cyclic_canonical(letters: Sequence) -> tuple:
    letters = tuple(letters)
    n = len(letters)
    best = None
    for word in (letters, _inverse_word(letters)):
        for i in range(n):
            rot = word[i:] + word[:i]
            if best is None or rot < best:
                best = rot
    return best


def primitive_root(letters: Sequence) -> tuple:
    letters = tuple(letters)
    n = len(letters)
    for d in range(1, n + 1):
        if n % d == 0 and letters[:d] * (n // d) == letters:
            return letters[:d]
    return letters


@dataclass(frozen=True)
class StringWord:
    """A string in canonical orientation; ``vertex`` is set only for trivial strings."""

    letters: tuple[Letter, ...] = ()
    vertex: str | None = None

    def __post_init__(self):
        letters = tuple(self.letters)
        if letters:
            letters = min(letters, _inverse_word(letters))
        object.__setattr__(self, "letters", letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def to_json(self) -> list:
        return [{"vertex": self.vertex}] if self.is_trivial else [x.to_json() for x in self.letters]

    def __str__(self) -> str:
        return f"e_{self.vertex}" if self.is_trivial else " ".join(map(str, self.letters))


@dataclass(frozen=True)
class BandWord:
    letters: tuple[Letter, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", _cyclic_canonical(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def to_json(self) -> list:
        return [x.to_json() for x in self.letters]

    def __str__(self) -> str:
        return "[" + " ".join(map(str, self.letters)) + "]"


@dataclass(frozen=True)
class HomotopyWord:
    letters: tuple[HomotopyLetter, ...]
    cyclic: bool = False

    def __post_init__(self):
        letters = tuple(self.letters)
        if self.cyclic:
            letters = _cyclic_canonical(letters)
        elif letters:
            letters = min(letters, _inverse_word(letters))
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def to_json(self) -> list:
        return [x.to_json() for x in self.letters]

    def __str__(self) -> str:
        body = "".join(map(str, self.letters))
        return f"[{body}]" if self.cyclic else body


def string_from_json(data: Sequence) -> StringWord:
    if len(data) == 1 and "vertex" in data[0]:
        return StringWord((), data[0]["vertex"])
    return StringWord(tuple(letter_from_json(x) for x in data))


def band_from_json(data: Sequence) -> BandWord:
    return BandWord(tuple(letter_from_json(x) for x in data))


def homotopy_word_from_json(data: Sequence, cyclic: bool = False) -> HomotopyWord:
    return HomotopyWord(tuple(homotopy_letter_from_json(x) for x in data), cyclic)


# ---------------------------------------------------------------------------
# validity checks


def _junction(bq: BoundQuiver, x, y, homotopy: bool) -> bool:
    if x.target(bq) != y.source(bq):
        return False
    if not x.inverse and not y.inverse:
        return bq.in_ideal(x.head, y.tail) == homotopy
    if x.inverse and y.inverse:
        return bq.in_ideal(y.tail, x.head) == homotopy
    return x.head != y.tail


def _as_letters(word) -> tuple:
    return tuple(word.letters) if hasattr(word, "letters") else tuple(word)


def _check_arrows(bq: BoundQuiver, arrows: Iterable[str]) -> None:
    for a in arrows:
        if a not in bq.quiver.arrow:
            raise KeyError(f"unknown arrow {a}")


def _direct_runs_nonzero(bq: BoundQuiver, letters: Sequence[Letter], cyclic: bool) -> bool:
    seq = list(letters) * 2 if cyclic else list(letters)
    run: list[str] = []
    for x in seq + [None]:
        if x is not None and not x.inverse:
            run.append(x.arrow)
            continue
        if len(run) > 1 and bq.is_zero_path(run):
            return False
        run = []
    seq = [x for x in reversed(seq)]
    for x in seq + [None]:
        if x is not None and x.inverse:
            run.append(x.arrow)
            continue
        if len(run) > 1 and bq.is_zero_path(run):
            return False
        run = []
    return True


def is_string(bq: BoundQuiver, word) -> bool:
    letters = _as_letters(word)
    _check_arrows(bq, (x.arrow for x in letters))
    if not letters:
        return True
    for x, y in zip(letters, letters[1:]):
        if not _junction(bq, x, y, False):
            return False
    return _direct_runs_nonzero(bq, letters, False)


def is_band(bq: BoundQuiver, word) -> bool:
    letters = _as_letters(word)
    _check_arrows(bq, (x.arrow for x in letters))
    if not letters or primitive_root(letters) != letters:
        return False
    if all(x.inverse for x in letters) or not any(x.inverse for x in letters):
        return False
    for x, y in zip(letters, letters[1:] + letters[:1]):
        if not _junction(bq, x, y, False):
            return False
    return _direct_runs_nonzero(bq, letters, True)


def _valid_homotopy_letter(bq: BoundQuiver, x: HomotopyLetter) -> bool:
    if not x.path:
        return False
    for a, b in zip(x.path, x.path[1:]):
        if bq.target(a) != bq.source(b):
            return False
    return not bq.is_zero_path(x.path)


def is_homotopy_string(bq: BoundQuiver, word) -> bool:
    letters = _as_letters(word)
    _check_arrows(bq, (a for x in letters for a in x.path))
    if not letters or not all(_valid_homotopy_letter(bq, x) for x in letters):
        return False
    return all(_junction(bq, x, y, True) for x, y in zip(letters, letters[1:]))


def is_homotopy_band(bq: BoundQuiver, word) -> bool:
    letters = _as_letters(word)
    _check_arrows(bq, (a for x in letters for a in x.path))
    if not letters or primitive_root(letters) != letters:
        return False
    if not all(_valid_homotopy_letter(bq, x) for x in letters):
        return False
    if 2 * sum(x.inverse for x in letters) != len(letters):
        return False
    return all(_junction(bq, x, y, True) for x, y in zip(letters, letters[1:] + letters[:1]))


# ---------------------------------------------------------------------------
# transition graphs


@dataclass
class TransitionGraph:
    """Letters as nodes, legal juxtapositions as edges.

    In homotopy mode every node carries weight +1 (direct) or -1 (inverse).
    """

    nodes: list
    succ: list[list[int]]
    weight: list[int]

    @property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.nodes)}

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, vs in enumerate(self.succ):
            for v in vs:
                yield u, v


def _build_graph(bq: BoundQuiver, letters: list, homotopy: bool) -> TransitionGraph:
    by_source: dict[str, list[int]] = {}
    for i, x in enumerate(letters):
        by_source.setdefault(x.source(bq), []).append(i)
    succ = []
    for x in letters:
        succ.append([j for j in by_source.get(x.target(bq), ()) if _junction(bq, x, letters[j], homotopy)])
    weight = [-1 if x.inverse else 1 for x in letters]
    return TransitionGraph(letters, succ, weight)


def string_graph(bq: BoundQuiver) -> TransitionGraph:
    letters = [Letter(a.id, inv) for a in bq.arrows for inv in (False, True)]
    return _build_graph(bq, letters, False)


def homotopy_letters(bq: BoundQuiver) -> list[HomotopyLetter]:
    paths = [p.arrows for p in nonzero_paths(bq) if p.arrows]
    return [HomotopyLetter(p, inv) for p in paths for inv in (False, True)]


def homotopy_graph(bq: BoundQuiver) -> TransitionGraph:
    """The letter-level homotopy transition graph (one node per homotopy letter)."""
    return _build_graph(bq, homotopy_letters(bq), True)


def strongly_connected_components(n: int, succ: Sequence[Sequence[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            nbrs = succ[v]
            while i < len(nbrs):
                w = nbrs[i]
                i += 1
                if index[w] < 0:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return comps


def _find_cycle(nodes: Sequence[int], succ: Sequence[Sequence[int]]) -> list[int] | None:
    """Some directed cycle inside the induced subgraph on ``nodes``, as a node list."""
    allowed = set(nodes)
    color = {v: 0 for v in nodes}
    for root in nodes:
        if color[root]:
            continue
        color[root] = 1
        trail = [root]
        iters = [iter(succ[root])]
        while iters:
            w = next(iters[-1], None)
            if w is None:
                color[trail.pop()] = 2
                iters.pop()
                continue
            if w not in allowed:
                continue
            if color[w] == 1:
                return trail[trail.index(w):]
            if color[w] == 0:
                color[w] = 1
                trail.append(w)
                iters.append(iter(succ[w]))
    return None


# ---------------------------------------------------------------------------
# strings and bands


def has_band(bq: BoundQuiver) -> bool:
    return witness_band(bq) is not None


def witness_band(bq: BoundQuiver) -> BandWord | None:
    require_gentle(bq)
    g = string_graph(bq)
    cycle = _find_cycle(list(range(len(g.nodes))), g.succ)
    if cycle is None:
        return None
    letters = primitive_root(tuple(g.nodes[i] for i in cycle))
    if all(x.inverse for x in letters) or not any(x.inverse for x in letters):
        raise InfiniteDimensionalError("monochrome cycle in the string transition graph: " + " ".join(map(str, letters)))
    return BandWord(letters)


def count_strings(bq: BoundQuiver) -> int:
    """Number of strings up to inversion, trivial ones included; requires no bands."""
    g = string_graph(bq)
    if _find_cycle(list(range(len(g.nodes))), g.succ) is not None:
        raise ValueError("the algebra has a band, so there are infinitely many strings")
    order = _topological_order(g.succ)
    walks = [0] * len(g.nodes)
    for v in reversed(order):
        walks[v] = 1 + sum(walks[w] for w in g.succ[v])
    return len(bq.vertices) + sum(walks) // 2


def _topological_order(succ: Sequence[Sequence[int]]) -> list[int]:
    indeg = [0] * len(succ)
    for vs in succ:
        for w in vs:
            indeg[w] += 1
    queue = deque(v for v in range(len(succ)) if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order


def enumerate_strings(bq: BoundQuiver, max_len: int) -> set[StringWord]:
    """All strings with at most ``max_len`` letters, up to inversion."""
    require_gentle(bq)
    out = {StringWord((), v) for v in bq.vertices}
    if max_len < 1:
        return out
    g = string_graph(bq)
    for start in range(len(g.nodes)):
        stack = [(start,)]
        while stack:
            word = stack.pop()
            out.add(StringWord(tuple(g.nodes[i] for i in word)))
            if len(word) < max_len:
                stack.extend(word + (w,) for w in g.succ[word[-1]])
    return out


def enumerate_bands(bq: BoundQuiver, max_len: int, limit: int | None = None) -> set[BandWord]:
    """Brute-force search for bands with at most ``max_len`` letters.

    Each closed walk is explored from its smallest node; the search is pruned
    by exact distance-to-start, so it visits only prefixes that can still close.
    """
    require_gentle(bq)
    g = string_graph(bq)
    found: set[BandWord] = set()
    for start, allowed in _start_subgraphs(g):
        # dist[v]: fewest extra letters after v before the walk can close at start
        dist = _distances_to(start, allowed, g.succ)
        stack = [(start,)]
        while stack:
            word = stack.pop()
            v = word[-1]
            if start in g.succ[v]:
                letters = tuple(g.nodes[i] for i in word)
                if primitive_root(letters) == letters and is_band(bq, letters):
                    found.add(BandWord(letters))
                    if limit is not None and len(found) >= limit:
                        return found
            room = max_len - len(word)
            for w in g.succ[v]:
                if w in allowed and dist.get(w, max_len + 1) < room:
                    stack.append(word + (w,))
    return found


def _start_subgraphs(g: TransitionGraph) -> Iterator[tuple[int, set[int]]]:
    for comp in strongly_connected_components(len(g.nodes), g.succ):
        if len(comp) == 1 and comp[0] not in g.succ[comp[0]]:
            continue
        for k, s in enumerate(comp):
            yield s, set(comp[k:])


def _distances_to(target: int, allowed: set[int], succ: Sequence[Sequence[int]]) -> dict[int, int]:
    pred: dict[int, list[int]] = {v: [] for v in allowed}
    for u in allowed:
        for w in succ[u]:
            if w in allowed:
                pred[w].append(u)
    dist = {v: 0 for v in pred[target]}
    queue = deque(dist)
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


class RepType(str, enum.Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"


@dataclass(frozen=True)
class RepresentationType:
    kind: RepType
    indecomposables: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind is RepType.FINITE

    def __str__(self) -> str:
        if self.is_finite:
            return f"{self.kind.value} ({self.indecomposables} indecomposables)"
        return self.kind.value


def representation_type(bq: BoundQuiver, saturate: bool = False) -> RepresentationType:
    """Finite iff there is no band; the count of indecomposables is the string count.

    With ``saturate=True`` the count is cross-checked against explicit
    enumeration at lengths ``2|Q1| + 1`` and ``2|Q1| + 2``.
    """
    if has_band(bq):
        return RepresentationType(RepType.INFINITE)
    n = count_strings(bq)
    if saturate:
        bound = 2 * len(bq.arrows) + 1
        a, b = len(enumerate_strings(bq, bound)), len(enumerate_strings(bq, bound + 1))
        if not a == b == n:
            raise AssertionError(f"string count not saturated: {n}, {a}, {b}")
    return RepresentationType(RepType.FINITE, n)


# ---------------------------------------------------------------------------
# homotopy bands


class DerivedType(str, enum.Enum):
    DISCRETE = "Discrete"
    NOT_DISCRETE = "NotDiscrete"


@dataclass
class _ArrowGraph:
    """Compact homotopy graph: node ``(arrow, inverse)`` means that arrow was just walked.

    Edges inside a letter weigh 0; an edge that starts a new letter weighs +1
    (direct) or -1 (inverse). Closed walks are exactly the cyclic homotopy words.
    """

    nodes: list[Letter]
    succ: list[list[int]]
    wsucc: list[list[tuple[int, int]]]


def _arrow_graph(bq: BoundQuiver) -> _ArrowGraph:
    nodes = [Letter(a.id, inv) for a in bq.arrows for inv in (False, True)]
    by_source: dict[str, list[int]] = {}
    for i, x in enumerate(nodes):
        by_source.setdefault(x.source(bq), []).append(i)
    wsucc = []
    for x in nodes:
        out = []
        for j in by_source.get(x.target(bq), ()):
            y = nodes[j]
            if x.inverse == y.inverse:
                pair = (y.arrow, x.arrow) if x.inverse else (x.arrow, y.arrow)
                continues = not bq.in_ideal(*pair)
                if continues:
                    out.append((j, 0))
                else:
                    out.append((j, -1 if y.inverse else 1))
            elif x.arrow != y.arrow:
                out.append((j, -1 if y.inverse else 1))
        wsucc.append(out)
    return _ArrowGraph(nodes, [[j for j, _ in out] for out in wsucc], wsucc)


def _negative_cycle(comp: Sequence[int], wsucc, sign: int) -> list[int] | None:
    """Bellman-Ford on the component with weights ``sign * w``; returns a negative cycle."""
    allowed = set(comp)
    dist = {v: 0 for v in comp}
    parent: dict[int, int | None] = {v: None for v in comp}
    edges = [(u, v, sign * w) for u in comp for v, w in wsucc[u] if v in allowed]
    for _ in range(len(comp) + 1):
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                parent[v] = u
                changed = True
        if not changed:
            return None
        cycle = _parent_cycle(parent)
        if cycle is not None:
            return cycle
    raise AssertionError("Bellman-Ford did not settle")


def _parent_cycle(parent: dict[int, int | None]) -> list[int] | None:
    state: dict[int, int] = {}
    for root in parent:
        path = []
        v = root
        while v is not None and v not in state:
            state[v] = 1
            path.append(v)
            v = parent[v]
        if v is not None and state[v] == 1:
            i = path.index(v)
            cyc = path[i:]
            cyc.reverse()  # parent pointers run backwards along edges
            return cyc
        for u in path:
            state[u] = 2
    return None


def _tight_cycle(comp: Sequence[int], wsucc, sign: int) -> list[int] | None:
    """A zero-weight cycle, assuming no cycle is negative under ``sign * w``."""
    allowed = set(comp)
    dist = {v: 0 for v in comp}
    edges = [(u, v, sign * w) for u in comp for v, w in wsucc[u] if v in allowed]
    for _ in range(len(comp) + 1):
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    tight: dict[int, list[int]] = {v: [] for v in comp}
    for u, v, w in edges:
        if dist[u] + w == dist[v]:
            tight[u].append(v)
    return _find_cycle(list(comp), tight)


def _edge_weight(u: int, v: int, wsucc) -> int:
    for x, w in wsucc[u]:
        if x == v:
            return w
    raise KeyError((u, v))


def _walk_weight(walk: Sequence[int], wsucc) -> int:
    """Total weight of a closed walk given as a cyclic node sequence."""
    return sum(_edge_weight(u, v, wsucc) for u, v in zip(walk, list(walk[1:]) + list(walk[:1])))


def _bfs_path(src: int, dst: int, allowed: set[int], succ) -> list[int]:
    """Nodes of a shortest path from ``src`` to ``dst``, ``dst`` excluded."""
    if src == dst:
        return []
    prev: dict[int, int | None] = {src: None}
    queue = deque([src])
    while queue and dst not in prev:
        v = queue.popleft()
        for w in succ[v]:
            if w in allowed and w not in prev:
                prev[w] = v
                queue.append(w)
    path = []
    v = prev[dst]
    while v is not None:
        path.append(v)
        v = prev[v]
    return path[::-1]


def _zero_walk(comp: Sequence[int], g: _ArrowGraph) -> list[int] | None:
    """A closed walk of total weight 0 inside the component, if one exists."""
    if len(comp) == 1 and comp[0] not in g.succ[comp[0]]:
        return None
    neg = _negative_cycle(comp, g.wsucc, 1)
    pos = _negative_cycle(comp, g.wsucc, -1)
    if neg is None:
        return _tight_cycle(comp, g.wsucc, 1)
    if pos is None:
        return _tight_cycle(comp, g.wsucc, -1)
    # both signs occur: combine a positive and a negative closed walk at one base node
    allowed = set(comp)
    base = neg[0]
    to_pos = _bfs_path(base, pos[0], allowed, g.succ)
    back = _bfs_path(pos[0], base, allowed, g.succ)
    a = _walk_weight(pos, g.wsucc)
    reps = 1
    while _walk_weight(to_pos + pos * reps + back, g.wsucc) <= 0:
        reps += 1
    loop_p = to_pos + pos * reps + back
    weight_p = _walk_weight(loop_p, g.wsucc)
    weight_n = -_walk_weight(neg, g.wsucc)
    assert a > 0 and weight_p > 0 and weight_n > 0
    d = gcd(weight_p, weight_n)
    return loop_p * (weight_n // d) + neg * (weight_p // d)


def _letters_from_walk(walk: Sequence[int], g: _ArrowGraph) -> tuple[HomotopyLetter, ...]:
    n = len(walk)
    starts = [i for i in range(n) if _edge_weight(walk[i - 1], walk[i], g.wsucc) != 0]
    letters = []
    for k, i in enumerate(starts):
        j = starts[k + 1] if k + 1 < len(starts) else starts[0] + n
        chunk = [g.nodes[walk[x % n]] for x in range(i, j)]
        inverse = chunk[0].inverse
        arrows = tuple(x.arrow for x in chunk)
        letters.append(HomotopyLetter(arrows[::-1] if inverse else arrows, inverse))
    return tuple(letters)


def witness_homotopy_band(bq: BoundQuiver) -> HomotopyWord | None:
    require_gentle(bq)
    g = _arrow_graph(bq)
    for comp in strongly_connected_components(len(g.nodes), g.succ):
        walk = _zero_walk(comp, g)
        if walk is None:
            continue
        letters = primitive_root(_letters_from_walk(walk, g))
        word = HomotopyWord(letters, cyclic=True)
        if not is_homotopy_band(bq, word):
            raise AssertionError(f"constructed word {word} is not a homotopy band")
        return word
    return None


def has_homotopy_band(bq: BoundQuiver) -> bool:
    require_gentle(bq)
    g = _arrow_graph(bq)
    return any(_zero_walk(c, g) is not None for c in strongly_connected_components(len(g.nodes), g.succ))


def has_homotopy_band_letter_graph(bq: BoundQuiver) -> bool:
    """The same decision run on the letter-level graph with node weights."""
    require_gentle(bq)
    lg = homotopy_graph(bq)
    # move node weights onto incoming edges
    wsucc = [[(v, lg.weight[v]) for v in vs] for vs in lg.succ]
    g = _ArrowGraph(lg.nodes, lg.succ, wsucc)
    return any(_zero_walk(c, g) is not None for c in strongly_connected_components(len(g.nodes), g.succ))


def enumerate_homotopy_bands(bq: BoundQuiver, max_letters: int, limit: int | None = None) -> set[HomotopyWord]:
    """Brute-force search for homotopy bands with at most ``max_letters`` letters.

    Closed walks in the letter-level graph are explored from their smallest
    node. A table of exactly reachable return weights prunes every prefix that
    can no longer close with balance zero.
    """
    require_gentle(bq)
    g = homotopy_graph(bq)
    found: set[HomotopyWord] = set()
    off = max_letters
    for start, allowed in _start_subgraphs(g):
        feasible = _return_weights(start, allowed, g, max_letters, off)
        stack = [((start,), g.weight[start])]
        while stack:
            word, balance = stack.pop()
            v = word[-1]
            if balance == 0 and start in g.succ[v]:
                letters = tuple(g.nodes[i] for i in word)
                if primitive_root(letters) == letters:
                    found.add(HomotopyWord(letters, cyclic=True))
                    if limit is not None and len(found) >= limit:
                        return found
            room = max_letters - len(word)
            if room <= 0:
                continue
            for w in g.succ[v]:
                if w not in allowed:
                    continue
                nb = balance + g.weight[w]
                # after w, at most room - 1 letters may follow, and they must weigh -nb
                if abs(nb) <= off and (feasible[room - 1][w] >> (off - nb)) & 1:
                    stack.append((word + (w,), nb))
    return found


def _return_weights(start: int, allowed: set[int], g: TransitionGraph, max_len: int, off: int) -> list[dict[int, int]]:
    """``table[r][v]``: bitset of weights of letter runs of length <= r leading from v back to start.

    Bit ``x + off`` stands for weight x; the run excludes v itself and start.
    """
    nodes = sorted(allowed)
    mask = (1 << (2 * off + 1)) - 1
    base = {v: (1 << off) if start in g.succ[v] else 0 for v in nodes}
    table = [base]
    for _ in range(max_len):
        prev = table[-1]
        cur = {}
        for v in nodes:
            bits = base[v]
            for u in g.succ[v]:
                if u in allowed:
                    b = prev[u]
                    if b:
                        bits |= (b << 1 if g.weight[u] > 0 else b >> 1) & mask
            cur[v] = bits
        table.append(cur)
    return table


def derived_type(bq: BoundQuiver) -> DerivedType:
    return DerivedType.NOT_DISCRETE if has_homotopy_band(bq) else DerivedType.DISCRETE
