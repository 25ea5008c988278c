import pytest
from hypothesis import given, strategies as st

from gentle_kit import catalog
from gentle_kit.core import BoundQuiver, isomorphic, nonzero_paths
from gentle_kit.generator import GenConfig, generate_normal_form
from gentle_kit.normal_form import BDNormalForm, from_normal_form, matrix_dimension, to_normal_form
from gentle_kit.threads import permitted_threads

from conftest import gen_configs, gentle_algebras


def test_e1_golden():
    nf = to_normal_form(catalog.e1())
    assert nf.m == (4, 2)
    assert nf.pairs == (((1, 2), (2, 1)), ((1, 4), (2, 2)))
    assert matrix_dimension(nf) == 11 == len(nonzero_paths(catalog.e1()))


def test_e2_golden():
    nf = to_normal_form(catalog.e2())
    # chains are ordered by first arrow id: alpha (x -> u2) before beta.gamma (w1 -> x -> w3)
    assert nf.m == (2, 3)
    assert nf.pairs == (((1, 1), (2, 2)),)
    assert matrix_dimension(nf) == 8 == len(nonzero_paths(catalog.e2()))


def test_point_golden():
    nf = to_normal_form(catalog.single_vertex())
    assert nf.m == (1,) and nf.pairs == ()
    assert matrix_dimension(nf) == 1


def test_from_normal_form_e2_shape():
    bq = from_normal_form(BDNormalForm((2, 3), (((1, 1), (2, 2)),)))
    assert isomorphic(bq, catalog.e2()) is not None
    assert len(bq.relations) == 1


def test_from_normal_form_e3():
    bq = from_normal_form(BDNormalForm((2, 2), (((1, 1), (2, 2)), ((1, 2), (2, 1)))))
    assert isomorphic(bq, catalog.e3()) is not None


def test_from_normal_form_chain():
    assert isomorphic(from_normal_form(BDNormalForm((3,))), catalog.chain(3)) is not None


def test_self_gluing_gives_loop():
    bq = from_normal_form(BDNormalForm((2,), (((1, 1), (1, 2)),)))
    assert len(bq.vertices) == 1 and bq.relations == (("a1", "a1"),)


@pytest.mark.parametrize(
    "m, pairs",
    [
        ((2,), (((1, 1), (1, 1)),)),
        ((2, 2), (((1, 1), (2, 1)), ((1, 1), (2, 2)))),
        ((2,), (((1, 3), (1, 1)),)),
        ((2, 1), (((1, 1), (2, 1)),)),
        ((0,), ()),
    ],
)
def test_invalid_forms_rejected(m, pairs):
    with pytest.raises(ValueError):
        BDNormalForm(m, pairs)


def test_json_roundtrip():
    nf = to_normal_form(catalog.e1())
    back = BDNormalForm.from_json(nf.to_json())
    assert back == nf and back.labels == nf.labels
    assert nf.to_json()["labels"]["1,2"] == "2"


@given(gentle_algebras())
def test_roundtrip_isomorphic(bq):
    nf = to_normal_form(bq)
    back = from_normal_form(nf)
    assert back == bq.with_name(None)
    assert isomorphic(back, bq) is not None


@given(gentle_algebras())
def test_chain_count(bq):
    nf = to_normal_form(bq)
    threads = permitted_threads(bq)
    assert len(nf.m) == len(threads)
    assert sorted(nf.m) == sorted(len(t.arrows) + 1 for t in threads)


@given(gen_configs)
def test_dimension_identity(cfg):
    nf = generate_normal_form(cfg)
    assert matrix_dimension(nf) == len(nonzero_paths(from_normal_form(nf)))


@given(gen_configs)
def test_each_pair_costs_one_dimension(cfg):
    nf = generate_normal_form(cfg)
    dims = []
    for k in range(len(nf.pairs) + 1):
        partial = BDNormalForm(nf.m, nf.pairs[:k])
        dims.append(len(nonzero_paths(from_normal_form(partial))))
    assert all(a - b == 1 for a, b in zip(dims, dims[1:]))


@given(st.lists(st.integers(2, 5), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_every_matching_is_gentle(m, rng):
    positions = [(i, j) for i, mi in enumerate(m, start=1) for j in range(1, mi + 1)]
    rng.shuffle(positions)
    k = rng.randint(0, len(positions) // 2)
    pairs = [(positions[2 * t], positions[2 * t + 1]) for t in range(k)]
    bq = from_normal_form(BDNormalForm(tuple(m), tuple(pairs)))
    assert bq.validation.is_gentle
    # the form read back has the same multiset of chain lengths
    assert sorted(to_normal_form(bq).m) == sorted(m)


def test_labels_must_agree_on_glued_positions():
    with pytest.raises(ValueError):
        BDNormalForm((2, 2), (((1, 1), (2, 1)),), {(1, 1): "x", (2, 1): "y"})


def test_isolated_vertices_are_one_chains():
    bq = BoundQuiver.build("123", [("a", "1", "2")], [])
    nf = to_normal_form(bq)
    assert nf.m == (2, 1)
