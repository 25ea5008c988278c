"""Combinatorial marked surfaces built from polygons.

A chain with ``m`` positions becomes an ``(m+1)``-gon: edge 0 is a boundary
edge carrying one open marked point, edges ``1..m`` are red arcs listed
anticlockwise. Corner ``c_j`` sits between edges ``j`` and ``j+1`` (mod the
number of edges), so the interior angle ``c_j`` with ``1 <= j < m`` is the
arrow from position j to position j+1. Unglued arcs are capped by 2-gons.
Glued arcs are identified with reversed orientation, which makes
``c_{j-1}(P) ~ c_{j'}(P')`` and ``c_j(P) ~ c_{j'-1}(P')`` for arcs ``j`` of P
and ``j'`` of P'.

Going round a closed marked point crosses arcs one after another; the corners
met on the way form a *fan*. Fans starting and ending at the boundary are the
finite blue polygons; fans that close up are the infinite ones, and their
centre is treated as an unmarked boundary component.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from gentle_kit.core import BoundQuiver, fresh_name
from gentle_kit.errors import GentleKitError
from gentle_kit.normal_form import BDNormalForm

CHAIN, CAP = "chain", "cap"
FINITE, INFINITE = "Finite", "Infinite"

Slot = tuple[int, int]  # (polygon index, edge index >= 1)
Corner = tuple[int, int]  # (polygon index, corner index)


@dataclass(frozen=True)
class Polygon:
    kind: str
    arc_labels: tuple[str, ...]
    angle_labels: tuple[str, ...] = ()
    origin: tuple = ()

    @property
    def n_edges(self) -> int:
        return len(self.arc_labels) + 1

    def angle_at(self, corner: int) -> str | None:
        if self.kind == CHAIN and 1 <= corner <= len(self.arc_labels) - 1:
            return self.angle_labels[corner - 1]
        return None


@dataclass(frozen=True)
class PolygonComplex:
    polygons: tuple[Polygon, ...]
    glue: tuple[tuple[Slot, Slot], ...]
    _map: Mapping[Slot, Slot] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        mapping: dict[Slot, Slot] = {}
        for a, b in self.glue:
            a, b = tuple(a), tuple(b)
            if a == b:
                raise GentleKitError(f"slot {a} glued to itself")
            if a in mapping or b in mapping:
                raise GentleKitError(f"slot glued twice in {(a, b)}")
            for p, e in (a, b):
                if not (0 <= p < len(self.polygons) and 1 <= e < self.polygons[p].n_edges):
                    raise GentleKitError(f"slot {(p, e)} is not a red arc")
            mapping[a] = b
            mapping[b] = a
        object.__setattr__(self, "glue", tuple(sorted((min(a, b), max(a, b)) for a, b in
                                                      ((tuple(x), tuple(y)) for x, y in self.glue))))
        object.__setattr__(self, "_map", mapping)

    def partner(self, slot: Slot) -> Slot:
        try:
            return self._map[slot]
        except KeyError:
            raise GentleKitError(f"dangling arc {slot}") from None

    def slots(self) -> list[Slot]:
        return [(p, e) for p, poly in enumerate(self.polygons) for e in range(1, poly.n_edges)]

    def check_closed(self) -> None:
        for s in self.slots():
            self.partner(s)

    def next_corner(self, corner: Corner) -> Corner | None:
        """The corner reached by crossing the arc after ``corner``; None at the boundary."""
        p, j = corner
        n = (j + 1) % self.polygons[p].n_edges
        if n == 0:
            return None
        return self.partner((p, n))

    def to_json(self) -> dict:
        return {
            "polygons": [
                {
                    "kind": poly.kind,
                    "edges": ["boundary"] + list(poly.arc_labels),
                    "angles": list(poly.angle_labels),
                    "origin": list(poly.origin),
                }
                for poly in self.polygons
            ],
            "glue": [[list(a), list(b)] for a, b in self.glue],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PolygonComplex":
        polygons = []
        for poly in data["polygons"]:
            edges = list(poly["edges"])
            if not edges or edges[0] != "boundary":
                raise GentleKitError("the first edge of every polygon must be the boundary")
            polygons.append(Polygon(poly.get("kind", CHAIN), tuple(edges[1:]), tuple(poly.get("angles", ())),
                                    tuple(poly.get("origin", ()))))
        glue = tuple((tuple(a), tuple(b)) for a, b in data["glue"])
        return cls(tuple(polygons), glue)


# ---------------------------------------------------------------------------
# construction and extraction


def dissection_of(nf: BDNormalForm) -> PolygonComplex:
    polygons = []
    for i, mi in enumerate(nf.m, start=1):
        arcs = tuple(nf.labels[(i, j)] for j in range(1, mi + 1))
        angles = tuple(nf.arrow_labels[(i, j)] for j in range(1, mi))
        polygons.append(Polygon(CHAIN, arcs, angles, (CHAIN, i)))
    glue = [((i - 1, j), (k - 1, l)) for (i, j), (k, l) in nf.pairs]
    partner = nf.partner
    for i, mi in enumerate(nf.m, start=1):
        for j in range(1, mi + 1):
            if (i, j) not in partner:
                glue.append(((i - 1, j), (len(polygons), 1)))
                polygons.append(Polygon(CAP, (nf.labels[(i, j)],), (), (CAP, i, j)))
    return PolygonComplex(tuple(polygons), tuple(glue))


def _arc_classes(pc: PolygonComplex) -> dict[Slot, str]:
    """Vertex label of every arc slot; glued slots share a label."""
    label = {}
    for s in pc.slots():
        if s in label:
            continue
        other = pc.partner(s)
        poly = pc.polygons[s[0]]
        name = poly.arc_labels[s[1] - 1]
        if poly.kind == CAP and pc.polygons[other[0]].kind == CHAIN:
            name = pc.polygons[other[0]].arc_labels[other[1] - 1]
        label[s] = label[other] = name
    return label


def algebra_of(pc: PolygonComplex, name: str | None = None) -> BoundQuiver:
    """Vertices from arcs, arrows from interior angles, relations from angles meeting across an arc."""
    pc.check_closed()
    label = _arc_classes(pc)
    vertices = set(label.values())
    arrows = []
    relations = []
    for p, poly in enumerate(pc.polygons):
        if poly.kind != CHAIN:
            continue
        for j in range(1, len(poly.arc_labels)):
            alpha = poly.angle_at(j)
            arrows.append((alpha, label[(p, j)], label[(p, j + 1)]))
            q, n = pc.next_corner((p, j))
            beta = pc.polygons[q].angle_at(n)
            if beta is not None:
                relations.append((alpha, beta))
    return BoundQuiver.build(vertices, arrows, relations, name)


# ---------------------------------------------------------------------------
# fans, blue polygons and invariants


@dataclass(frozen=True)
class Fan:
    corners: tuple[Corner, ...]
    interior: bool


def fans(pc: PolygonComplex) -> list[Fan]:
    pc.check_closed()
    seen: set[Corner] = set()
    out = []
    for p in range(len(pc.polygons)):
        corner: Corner | None = (p, 0)
        run = []
        while corner is not None:
            run.append(corner)
            seen.add(corner)
            corner = pc.next_corner(corner)
        out.append(Fan(tuple(run), False))
    for p, poly in enumerate(pc.polygons):
        for j in range(poly.n_edges):
            if (p, j) in seen:
                continue
            run = []
            corner = (p, j)
            while corner not in seen:
                run.append(corner)
                seen.add(corner)
                corner = pc.next_corner(corner)
                assert corner is not None, "an interior fan reached the boundary"
            out.append(Fan(tuple(run), True))
    return out


@dataclass(frozen=True)
class BluePolygon:
    kind: str
    arrows: tuple[str, ...]

    def __post_init__(self):
        if self.kind == INFINITE and self.arrows:
            a = self.arrows
            i = min(range(len(a)), key=lambda k: a[k:] + a[:k])
            object.__setattr__(self, "arrows", a[i:] + a[:i])


@dataclass(frozen=True)
class BluePolygonReport:
    polygons: tuple[BluePolygon, ...]

    @property
    def finite(self) -> list[BluePolygon]:
        return [p for p in self.polygons if p.kind == FINITE]

    @property
    def infinite(self) -> list[BluePolygon]:
        return [p for p in self.polygons if p.kind == INFINITE]

    def __len__(self) -> int:
        return len(self.polygons)


def blue_elementary_polygons(pc: PolygonComplex, trivial: bool = False) -> BluePolygonReport:
    """One blue polygon per fan; the angles met along the fan are its arrows.

    Fans meeting no angle are omitted unless ``trivial`` is set.
    """
    out = []
    for fan in fans(pc):
        arrows = tuple(a for a in (pc.polygons[p].angle_at(j) for p, j in fan.corners) if a is not None)
        if not arrows and not trivial:
            continue
        out.append(BluePolygon(INFINITE if fan.interior else FINITE, arrows))
    return BluePolygonReport(tuple(out))


@dataclass(frozen=True)
class SurfaceInvariants:
    euler_characteristic: int
    boundary_components: int
    genus: int
    closed_marked: int
    open_marked: int
    punctures: int = 0
    vertices: int = 0
    edges: int = 0
    faces: int = 0

    def to_json(self) -> dict:
        return {
            "chi": self.euler_characteristic,
            "b": self.boundary_components,
            "g": self.genus,
            "closed": self.closed_marked,
            "open": self.open_marked,
        }


def components(pc: PolygonComplex) -> list[list[int]]:
    parent = list(range(len(pc.polygons)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (p, _), (q, _) in pc.glue:
        parent[find(p)] = find(q)
    groups: dict[int, list[int]] = {}
    for p in range(len(pc.polygons)):
        groups.setdefault(find(p), []).append(p)
    return sorted(groups.values())


def component_invariants(pc: PolygonComplex) -> list[SurfaceInvariants]:
    """Invariants of each connected component, punctures counted as boundary components."""
    all_fans = fans(pc)
    out = []
    for comp in components(pc):
        members = set(comp)
        faces = len(comp)
        gluings = sum(1 for (p, _), _ in pc.glue if p in members)
        boundary_fans = [f for f in all_fans if not f.interior and f.corners[0][0] in members]
        interior = [f for f in all_fans if f.interior and f.corners[0][0] in members]
        # each polygon contributes one open point and a boundary edge split in two
        vertices = len(boundary_fans) + faces
        edges = gluings + 2 * faces
        chi = vertices - edges + faces
        # boundary walk: along edge 0 of P into c_0(P), through its fan, out along edge 0 of the last polygon
        succ = {f.corners[0][0]: f.corners[-1][0] for f in boundary_fans}
        walks = 0
        seen: set[int] = set()
        for p in comp:
            if p in seen:
                continue
            walks += 1
            while p not in seen:
                seen.add(p)
                p = succ[p]
        b = walks + len(interior)
        twice_genus = 2 - chi - b
        if twice_genus < 0 or twice_genus % 2:
            raise GentleKitError(f"inconsistent surface: chi={chi}, b={b}")
        out.append(SurfaceInvariants(chi, b, twice_genus // 2, len(boundary_fans), faces, len(interior),
                                     vertices, edges, faces))
    return out


def surface_invariants(pc: PolygonComplex):
    """Invariants of a connected complex; a tuple with one entry per component otherwise."""
    inv = component_invariants(pc)
    return inv[0] if len(inv) == 1 else tuple(inv)


# ---------------------------------------------------------------------------
# surface versions of the constructions


def _capped(polygons: list[Polygon], glue: list, chain_slots_glued: set[Slot]) -> None:
    for p in range(len(polygons)):
        poly = polygons[p]
        if poly.kind != CHAIN:
            continue
        for e in range(1, poly.n_edges):
            if (p, e) not in chain_slots_glued:
                glue.append(((p, e), (len(polygons), 1)))
                polygons.append(Polygon(CAP, (poly.arc_labels[e - 1],), (), (CAP, p + 1, e)))


def bd_dissection(pc: PolygonComplex) -> PolygonComplex:
    """Double every chain polygon, interleaving new capped arcs before the old ones."""
    pc.check_closed()
    chains = [p for p, poly in enumerate(pc.polygons) if poly.kind == CHAIN]
    index = {p: k for k, p in enumerate(chains)}
    v_taken = {x for poly in pc.polygons for x in poly.arc_labels}
    a_taken = {x for poly in pc.polygons for x in poly.angle_labels}
    polygons = []
    for p in chains:
        old = pc.polygons[p]
        arcs, angles = [], []
        m = len(old.arc_labels)
        for j in range(1, m + 1):
            primed = fresh_name(old.arc_labels[j - 1] + "'", v_taken)
            arcs += [primed, old.arc_labels[j - 1]]
            angles.append(fresh_name(primed, a_taken))
            if j < m:
                angles.append(old.angle_labels[j - 1])
        polygons.append(Polygon(CHAIN, tuple(arcs), tuple(angles), old.origin))
    glue = []
    for (p, e), (q, f) in pc.glue:
        if p in index and q in index:
            glue.append(((index[p], 2 * e), (index[q], 2 * f)))
    glued = {s for pair in glue for s in pair}
    _capped(polygons, glue, glued)
    return PolygonComplex(tuple(polygons), tuple(glue))


def cma_dissection(pc: PolygonComplex) -> PolygonComplex:
    """Cut every infinite blue polygon into finite ones.

    Each angle ``a`` on a closed fan gets a new capped arc ``G(a)`` inside it,
    splitting the angle into ``a-`` and ``a+``.
    """
    pc.check_closed()
    cut = {c for f in fans(pc) if f.interior for c in f.corners}
    if not cut:
        return pc
    v_taken = {x for poly in pc.polygons for x in poly.arc_labels}
    cyclic = {pc.polygons[p].angle_at(j) for p, j in cut}
    a_taken = {x for poly in pc.polygons for x in poly.angle_labels if x not in cyclic}
    names = {}
    for a in sorted(cyclic):
        names[a] = (fresh_name(f"G({a})", v_taken), fresh_name(f"{a}-", a_taken), fresh_name(f"{a}+", a_taken))
    polygons = []
    new_edge: dict[Slot, Slot] = {}
    for p, poly in enumerate(pc.polygons):
        if poly.kind != CHAIN:
            polygons.append(poly)
            new_edge[(p, 1)] = (p, 1)
            continue
        arcs, angles = [], []
        m = len(poly.arc_labels)
        for j in range(1, m + 1):
            arcs.append(poly.arc_labels[j - 1])
            new_edge[(p, j)] = (p, len(arcs))
            if j == m:
                break
            alpha = poly.angle_labels[j - 1]
            if (p, j) in cut:
                g, minus, plus = names[alpha]
                arcs.append(g)
                angles += [minus, plus]
            else:
                angles.append(alpha)
        polygons.append(Polygon(CHAIN, tuple(arcs), tuple(angles), poly.origin))
    glue = [(new_edge[a], new_edge[b]) for a, b in pc.glue]
    glued = {s for pair in glue for s in pair}
    _capped(polygons, glue, glued)
    return PolygonComplex(tuple(polygons), tuple(glue))


# ---------------------------------------------------------------------------
# export


def to_dot(pc: PolygonComplex) -> str:
    lines = ["graph surface {", "  node [shape=circle];"]
    for p, poly in enumerate(pc.polygons):
        lines.append(f'  p{p} [label="{poly.kind} {p}\\n{poly.n_edges}-gon"];')
    for (p, e), (q, f) in pc.glue:
        label = pc.polygons[p].arc_labels[e - 1].replace('"', '\\"')
        lines.append(f'  p{p} -- p{q} [label="{label}"];')
    rows = []
    for k, inv in enumerate(component_invariants(pc)):
        rows.append(f"component {k}: chi={inv.euler_characteristic} b={inv.boundary_components} "
                    f"g={inv.genus} closed={inv.closed_marked} open={inv.open_marked}")
    lines.append('  invariants [shape=box, label="' + "\\l".join(rows) + '\\l"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def surface_json(pc: PolygonComplex) -> dict:
    data = pc.to_json()
    inv = component_invariants(pc)
    data["invariants"] = inv[0].to_json() if len(inv) == 1 else [x.to_json() for x in inv]
    return data
