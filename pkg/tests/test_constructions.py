import pytest
from hypothesis import given

from gentle_kit import catalog
from gentle_kit.constructions import ConstructionOp, bd, bd_normal_form, cma, compose, parse_ops
from gentle_kit.core import BoundQuiver, isomorphic, nonzero_paths, validate
from gentle_kit.errors import ConstructionError, InfiniteDimensionalError, NotGentleError
from gentle_kit.normal_form import to_normal_form
from gentle_kit.threads import cyclic_arrows, forbidden_cycles, permitted_threads

from conftest import gentle_algebras


def bd_by_surgery(bq):
    """BD straight on the quiver: every thread occurrence of a vertex v gets a new vertex v' -> v.

    An arrow keeps its source and now ends at the new vertex of its thread
    occurrence; relations are the crossings at vertices visited twice.
    """
    occ = {v: [] for v in bq.vertices}  # v -> [(incoming thread arrow, outgoing thread arrow)]
    arrow_end = {}
    for t in permitted_threads(bq):
        if not t.arrows:
            occ[t.anchor].append((None, None))
            continue
        verts = [bq.source(t.arrows[0])] + [bq.target(a) for a in t.arrows]
        for j, v in enumerate(verts):
            inc = t.arrows[j - 1] if j > 0 else None
            out = t.arrows[j] if j < len(t.arrows) else None
            occ[v].append((inc, out))
    vertices, arrows, rels = [], [], []
    for v, items in occ.items():
        vertices.append(v)
        news = []
        for k, (inc, out) in enumerate(items):
            new = f"{v}#{k}"
            vertices.append(new)
            arrows.append((f"p_{new}", new, v))
            news.append(new)
            if inc is not None:
                arrow_end[inc] = new
        if len(items) == 2:
            (_, out0), (_, out1) = items
            if out1 is not None:
                rels.append((f"p_{news[0]}", out1))
            if out0 is not None:
                rels.append((f"p_{news[1]}", out0))
    for a in bq.arrows:
        arrows.append((a.id, a.src, arrow_end[a.id]))
    return BoundQuiver.build(vertices, arrows, rels)


# ---------------------------------------------------------------------------
# BD


def test_bd_e2_golden():
    out = bd(catalog.e2())
    assert out.validation.is_gentle
    assert len(out.vertices) == 9
    assert len(out.arrows) == 8
    assert len(nonzero_paths(out)) == 30 == 10 + 21 - 1
    # relations sit at the glued vertex x: each primed arrow into x continues into the other chain
    assert set(out.relations) == {("x'", "gamma"), ("x''", "alpha")}
    assert isomorphic(out, bd_by_surgery(catalog.e2())) is not None


def test_bd_e3():
    out = bd(catalog.e3())
    assert (len(out.vertices), len(out.arrows), len(out.relations)) == (6, 6, 2)
    assert len(nonzero_paths(out)) == 18


@pytest.mark.parametrize("n", range(1, 9))
def test_bd_doubles_chains(n):
    assert isomorphic(bd(catalog.chain(n)), catalog.chain(2 * n)) is not None


def test_bd_normal_form_doubles():
    nf = bd_normal_form(to_normal_form(catalog.e1()))
    assert nf.m == (8, 4)
    assert nf.pairs == (((1, 4), (2, 2)), ((1, 8), (2, 4)))


def test_bd_name_and_rejects_bad_input():
    assert bd(catalog.e1()).name == "BD_E1"
    with pytest.raises(InfiniteDimensionalError):
        bd(BoundQuiver.build("1", [("a", "1", "1")]))
    with pytest.raises(NotGentleError):
        bd(BoundQuiver.build("1234", [("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4")]))


@given(gentle_algebras())
def test_bd_matches_surgery(bq):
    assert isomorphic(bd(bq), bd_by_surgery(bq)) is not None


@given(gentle_algebras())
def test_bd_laws(bq):
    nf = to_normal_form(bq)
    out = bd(bq)
    assert validate(out).is_gentle
    assert len(nonzero_paths(out)) == sum(x * (2 * x + 1) for x in nf.m) - len(nf.pairs)
    back = to_normal_form(out)
    assert sorted(back.m) == sorted(2 * x for x in nf.m)
    assert len(back.pairs) == len(nf.pairs)


# ---------------------------------------------------------------------------
# CMA


def test_cma_e3_golden():
    out = cma(catalog.e3())
    expected = BoundQuiver.build(
        ["1", "2", "G(a)", "G(b)"],
        [("a-", "1", "G(a)"), ("a+", "G(a)", "2"), ("b-", "2", "G(b)"), ("b+", "G(b)", "1")],
        [("a+", "b-"), ("b+", "a-")],
        "CMA_E3",
    )
    assert out == expected


def test_cma_three_cycle():
    out = cma(catalog.three_cycle())
    assert len(out.vertices) == 6 and len(out.arrows) == 6
    assert set(out.relations) == {("a+", "b-"), ("b+", "c-"), ("c+", "a-")}
    assert out.validation.is_gentle


def test_cma_fixes_e1():
    assert cma(catalog.e1()) == catalog.e1().with_name("CMA_E1")


@given(gentle_algebras())
def test_cma_laws(bq):
    out = cma(bq)
    assert validate(out).is_gentle
    cycles = forbidden_cycles(bq)
    assert len(out.vertices) == len(bq.vertices) + sum(len(c.arrows) for c in cycles)
    if not cycles:
        assert isomorphic(out, bq) is not None
    # splitting leaves no forbidden cycle behind
    assert forbidden_cycles(out) == []


@given(gentle_algebras())
def test_cma_image_of_cycles(bq):
    # each cycle (a1 .. al) becomes a closed walk a1- a1+ a2- a2+ ... whose only relations are ai+ . a(i+1)-
    out = cma(bq)
    rel = set(out.relations)
    for c in forbidden_cycles(bq):
        walk = [x for a in c.arrows for x in (f"{a}-", f"{a}+")]
        assert all(out.target(x) == out.source(y) for x, y in zip(walk, walk[1:] + walk[:1]))
        pairs = list(zip(walk, walk[1:] + walk[:1]))
        assert [p in rel for p in pairs] == [k % 2 == 1 for k in range(len(pairs))]
    assert not cyclic_arrows(out)


# ---------------------------------------------------------------------------
# compose


def test_compose_trivial_and_identity():
    assert compose(catalog.e1(), []) == catalog.e1()
    assert compose(catalog.e1(), ["cma"]) == catalog.e1().with_name("CMA_E1")


def test_compose_e3_bd_cma():
    mid = bd(catalog.e3())
    out = compose(catalog.e3(), [ConstructionOp.BD, ConstructionOp.CMA])
    assert out.validation.is_gentle
    assert len(out.vertices) == 6 + len(cyclic_arrows(mid))
    assert out.name == "CMA_BD_E3"


def test_parse_ops():
    assert parse_ops("bd, CMA,bd") == [ConstructionOp.BD, ConstructionOp.CMA, ConstructionOp.BD]
    with pytest.raises(ValueError):
        parse_ops("bd,xyz")


def test_construction_error_carries_dump():
    err = ConstructionError("boom", "vertex 1\n")
    assert err.dump == "vertex 1\n" and "vertex 1" in str(err)


@given(gentle_algebras())
def test_compose_depth_two_gentle(bq):
    for ops in (["bd", "bd"], ["bd", "cma"], ["cma", "bd"], ["cma", "cma"]):
        assert compose(bq, ops).validation.is_gentle
