"""The chain-doubling (BD) and arrow-splitting (CMA) constructions."""
from __future__ import annotations

import enum
from typing import Iterable, Sequence

from gentle_kit.core import BoundQuiver, fresh_name, require_gentle, serialize
from gentle_kit.errors import ConstructionError
from gentle_kit.normal_form import BDNormalForm, from_normal_form, to_normal_form
from gentle_kit.threads import forbidden_cycles


class ConstructionOp(enum.Enum):
    BD = "bd"
    CMA = "cma"

    @classmethod
    def parse(cls, text: str) -> "ConstructionOp":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown construction {text!r} (expected bd or cma)") from None


def bd_normal_form(nf: BDNormalForm) -> BDNormalForm:
    """Double every chain: ``m -> 2m`` and ``(i, j) -> (i, 2j)``.

    The doubled chain reads ``(i,1)' -> (i,1) -> (i,2)' -> (i,2) -> ...``. Primed
    vertices get the label of their unprimed partner plus a prime; the arrow
    ``(i,j)' -> (i,j)`` is named after its primed source. Original arrows keep
    their names and now end at the primed copy of their old target.
    """
    v_taken = set(nf.labels.values())
    a_taken = set(nf.arrow_labels.values())
    labels = {}
    arrow_labels = {}
    for i, mi in enumerate(nf.m, start=1):
        for j in range(1, mi + 1):
            primed = fresh_name(nf.labels[(i, j)] + "'", v_taken)
            labels[(i, 2 * j - 1)] = primed
            labels[(i, 2 * j)] = nf.labels[(i, j)]
            arrow_labels[(i, 2 * j - 1)] = fresh_name(primed, a_taken)
            if j < mi:
                arrow_labels[(i, 2 * j)] = nf.arrow_labels[(i, j)]
    pairs = [((i, 2 * j), (k, 2 * l)) for (i, j), (k, l) in nf.pairs]
    return BDNormalForm(tuple(2 * x for x in nf.m), tuple(pairs), labels, arrow_labels)


def bd(bq: BoundQuiver) -> BoundQuiver:
    require_gentle(bq)
    return from_normal_form(bd_normal_form(to_normal_form(bq)), _derived_name("BD", bq))


def cma(bq: BoundQuiver) -> BoundQuiver:
    """Split each arrow on a forbidden cycle through a new vertex ``G(a)``.

    ``a: u -> v`` becomes ``a-: u -> G(a)`` and ``a+: G(a) -> v``; a relation
    ``a.b`` between cyclic arrows becomes ``a+.b-``, other relations are kept.
    """
    require_gentle(bq)
    cyclic = {a for c in forbidden_cycles(bq) for a in c.arrows}
    if not cyclic:
        return bq.with_name(_derived_name("CMA", bq))
    v_taken = set(bq.vertices)
    a_taken = {a.id for a in bq.arrows if a.id not in cyclic}
    vertices = list(bq.vertices)
    arrows = []
    minus, plus = {}, {}
    for a in bq.arrows:
        if a.id not in cyclic:
            arrows.append((a.id, a.src, a.dst))
            continue
        g = fresh_name(f"G({a.id})", v_taken)
        vertices.append(g)
        minus[a.id] = fresh_name(f"{a.id}-", a_taken)
        plus[a.id] = fresh_name(f"{a.id}+", a_taken)
        arrows.append((minus[a.id], a.src, g))
        arrows.append((plus[a.id], g, a.dst))
    relations = []
    for r in bq.relations:
        x, y = r
        if x in cyclic and y in cyclic:
            relations.append((plus[x], minus[y]))
        elif x not in cyclic and y not in cyclic:
            relations.append(r)
        else:
            raise ConstructionError(f"relation {x}.{y} mixes cyclic and non-cyclic arrows", serialize(bq))
    return BoundQuiver.build(vertices, arrows, relations, _derived_name("CMA", bq))


def _derived_name(prefix: str, bq: BoundQuiver) -> str | None:
    return f"{prefix}_{bq.name}" if bq.name else None


_OPS = {ConstructionOp.BD: bd, ConstructionOp.CMA: cma}


def parse_ops(ops: str | Iterable) -> list[ConstructionOp]:
    if isinstance(ops, str):
        ops = [s for s in ops.split(",") if s.strip()]
    return [op if isinstance(op, ConstructionOp) else ConstructionOp.parse(op) for op in ops]


def compose(bq: BoundQuiver, ops: Sequence[ConstructionOp | str]) -> BoundQuiver:
    """Apply the constructions left to right, checking every intermediate result."""
    current = bq
    for step, op in enumerate(parse_ops(ops), start=1):
        current = _OPS[op](current)
        report = current.validation
        if not report.is_gentle:
            raise ConstructionError(
                f"step {step} ({op.value}) produced a non-gentle algebra: {report.summary()}",
                serialize(current),
            )
    return current
