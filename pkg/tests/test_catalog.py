import itertools

import pytest

from lgsk.catalog import (
    adjacency_matrix,
    cantor_horizon_dyck,
    cantor_horizon_markov_dyck,
    dyck,
    fischer_cover,
    full_shift,
    golden_mean,
    markov_dyck,
    sofic_from_graph,
)
from lgsk.errors import ValidationError
from lgsk.lgs import are_isomorphic, build_lambda_sync_lgs, validate_lgs
from lgsk.words import SoficGraph, enumerate_words, is_admissible

import oracles


def test_constructors():
    assert len(dyck(2).alphabet) == 4
    assert golden_mean().alphabet == ("a", "b")
    with pytest.raises(ValidationError):
        full_shift(1)


def test_markov_dyck_all_ones_is_dyck():
    spec = markov_dyck([[1, 1], [1, 1]])
    d = dyck(2)
    for l in range(7):
        assert enumerate_words(spec, l) == enumerate_words(d, l)


def test_markov_dyck_matches_bracket_oracle_short():
    spec = markov_dyck([[1, 1], [1, 1]])
    coded = {"a1": ("open", 1), "a2": ("open", 2),
             "b1": ("close", 1), "b2": ("close", 2)}
    for l in range(6):
        for w in itertools.product(spec.alphabet, repeat=l):
            assert is_admissible(spec, w) == oracles.dyck_admissible(
                [coded[s] for s in w]
            )


def test_fischer_cover_golden_mean():
    cover = fischer_cover(golden_mean())
    assert len(cover.states) == 2
    assert adjacency_matrix(cover) == [[1, 1], [1, 0]]


def test_fischer_cover_full_shift():
    cover = fischer_cover(full_shift(3))
    assert len(cover.states) == 1
    assert len(cover.edges) == 3


def test_fischer_cover_redundant_presentation():
    # golden mean with a duplicated state: C behaves exactly like B
    g = SoficGraph(
        ("A", "B", "C"),
        (
            ("A", "A", "a"),
            ("A", "B", "a"),
            ("B", "A", "b"),
            ("A", "C", "a"),
            ("C", "A", "b"),
        ),
    )
    cover = fischer_cover(sofic_from_graph(g))
    assert len(cover.states) == 2
    assert adjacency_matrix(cover) == [[1, 1], [1, 0]]


def test_fischer_cover_language_equivalent():
    spec = golden_mean()
    cover = fischer_cover(spec)
    cover_spec = sofic_from_graph(cover)
    for l in range(9):
        assert enumerate_words(cover_spec, l) == enumerate_words(spec, l)


def test_fischer_cover_left_resolving_essential():
    cover = fischer_cover(golden_mean())
    seen = {}
    for s, d, lab in cover.edges:
        assert seen.setdefault((d, lab), s) == s
    # SoficGraph construction already enforces essentiality


def test_fischer_cover_rejects_reducible():
    g = SoficGraph(
        ("p", "q"),
        (("p", "p", "x"), ("q", "q", "y")),
    )
    with pytest.raises(ValidationError):
        fischer_cover(sofic_from_graph(g))


def test_cantor_horizon_counts():
    lgs = cantor_horizon_dyck(2, 3)
    assert lgs.vertex_counts() == [1, 2, 4, 8]
    report = validate_lgs(lgs)
    assert report["ok"], report


def test_cantor_horizon_markov_counts():
    lgs = cantor_horizon_markov_dyck([[1, 0], [1, 1]], 3)
    # level-l vertices are length-l words of the Markov chain
    chain_counts = [1, 2, 3, 4]
    assert lgs.vertex_counts() == chain_counts
    assert validate_lgs(lgs)["ok"]


def test_cantor_horizon_all_ones_equals_dyck():
    a = cantor_horizon_dyck(2, 3)
    b = cantor_horizon_markov_dyck([[1, 1], [1, 1]], 3)
    assert are_isomorphic(a, b).isomorphic


def test_cantor_horizon_matches_builder():
    explicit = cantor_horizon_dyck(2, 3)
    built = build_lambda_sync_lgs(dyck(2), 3, 8)
    res = are_isomorphic(explicit, built, from_level=0)
    assert res.isomorphic, res.mismatch


def test_cantor_horizon_markov_matches_builder():
    matrix = ((1, 0), (1, 1))
    explicit = cantor_horizon_markov_dyck(matrix, 2)
    built = build_lambda_sync_lgs(markov_dyck(matrix), 2, 6)
    res = are_isomorphic(explicit, built, from_level=0)
    assert res.isomorphic, res.mismatch


def test_edge_counts_dyck_levels():
    lgs = cantor_horizon_dyck(2, 3)
    assert len(lgs.edges[0]) == 6
    # each deeper vertex has one opening and N compatible closing in-edges
    assert len(lgs.edges[1]) == 12
    assert len(lgs.edges[2]) == 24
