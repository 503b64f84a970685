"""The subring-preserving vertex reduction and its verification."""

import random

import pytest

from isored import (
    EmptyBasicSetError,
    RatFun,
    WeightedDigraph,
    WeightOutsideSubringError,
    basic_structural_set,
    expected_vertex_count,
    forbidden_set,
    parse_weight,
    spectra_equal_up_to,
    spectrum,
    verify_weightset,
    weightset_reduce,
)
from isored.weightset import (
    SUBRING_TESTS,
    subring_constants,
    subring_gaussian_integers,
    subring_integers,
    subring_unit_sums,
)

from sample_graphs import diamond_with_pendant_cycles

ONE = RatFun.one()


def values(sl):
    return [round(z.real, 8) + 1j * round(z.imag, 8) for z in sl.values()]


def test_subring_predicates():
    assert subring_integers(RatFun.from_int(-3))
    assert not subring_integers(parse_weight("1/2"))
    assert subring_gaussian_integers(parse_weight("2+3i"))
    assert not subring_gaussian_integers(parse_weight("1i/2"))
    assert subring_constants(parse_weight("3/7"))
    assert not subring_constants(parse_weight("1/l"))
    assert subring_unit_sums(RatFun.from_int(2))
    assert not subring_unit_sums(RatFun.from_int(-1))
    assert set(SUBRING_TESTS) == {"int", "gauss-int", "const", "unit"}


def test_diamond_reduces_to_four_vertices():
    g = diamond_with_pendant_cycles()
    root2 = round(2**0.5, 8)
    assert values(spectrum(g)) == [-root2, 0, 0, 0, 0, root2]
    h = weightset_reduce(g, subring_integers)
    assert h.n == 4
    assert h.n == expected_vertex_count(g)
    assert values(spectrum(h)) == [-root2, 0, 0, root2]
    report = verify_weightset(g, h, subring_integers)
    assert report.ok
    # this instance never merges parallel edges, so even unit weights hold
    assert all(w == ONE for _, _, w in h.edges())


def test_diamond_spectra_differ_only_at_zero():
    g = diamond_with_pendant_cycles()
    h = weightset_reduce(g, subring_integers)
    n = forbidden_set(g, basic_structural_set(g))
    assert [round(z.real, 9) for z in n.values()] == [0.0]
    assert spectra_equal_up_to(spectrum(g), spectrum(h), n, 1e-9).ok


def test_single_edge_branches_reproduce_basic_skeleton():
    # every vertex has out-degree two, so the basic set is everything and
    # all branches have length one: nothing to compress
    labels = ["a", "b", "c"]
    edges = []
    weight = 1
    for u in labels:
        for v in labels:
            if u != v:
                edges.append((u, v, RatFun.from_int(weight)))
                weight += 1
    g = WeightedDigraph(labels, edges)
    assert set(basic_structural_set(g)) == {"a", "b", "c"}
    h = weightset_reduce(g, subring_integers)
    assert h == g
    assert verify_weightset(g, h, subring_integers).ok


def test_chain_into_cycle_compresses_products():
    # a weighted two-edge chain w2 -> w3 -> w5 collapses onto its first
    # edge as the product 2*3, with a unit remainder edge
    g = WeightedDigraph(
        ["w1", "w2", "w3", "w4", "w5", "w6"],
        [
            ("w1", "w2", RatFun.from_int(3)),
            ("w2", "w1", RatFun.from_int(2)),
            ("w2", "w3", RatFun.from_int(2)),
            ("w3", "w5", RatFun.from_int(3)),
            ("w5", "w4", ONE),
            ("w4", "w2", RatFun.from_int(5)),
            ("w5", "w6", RatFun.from_int(7)),
            ("w6", "w5", ONE),
        ],
    )
    assert set(basic_structural_set(g)) == {"w2", "w5"}
    h = weightset_reduce(g, subring_integers)
    assert h.n == expected_vertex_count(g) == 4
    assert h.weight("w2", "w3") == RatFun.from_int(6)
    assert h.weight("w3", "w5") == ONE
    assert h.weight("w2", "w1") == RatFun.from_int(6)
    assert h.weight("w1", "w2") == ONE
    # the non-maximal branches attach mid-path with their full products
    assert h.weight("w5", "w1") == RatFun.from_int(5)
    assert h.weight("w5", "w3") == RatFun.from_int(7)
    assert verify_weightset(g, h, subring_integers).ok
    n = forbidden_set(g, basic_structural_set(g))
    assert spectra_equal_up_to(spectrum(g), spectrum(h), n, 1e-9).ok


def test_parallel_merges_sum_weights_and_verify_reports_subring():
    # two equal-length branches between the basic vertices merge into one
    # attachment edge whose weight is a sum
    g = WeightedDigraph(
        ["u", "a", "b", "t"],
        [
            ("u", "a", ONE),
            ("a", "t", ONE),
            ("u", "b", ONE),
            ("b", "t", ONE),
            ("t", "u", ONE),
            ("u", "t", ONE),
        ],
    )
    h = weightset_reduce(g, subring_unit_sums)
    assert verify_weightset(g, h, subring_unit_sums).ok
    merged = [w for _, _, w in h.edges() if w == RatFun.from_int(2)]
    assert merged, "expected a merged parallel edge of weight 2"
    # the weight 2 escapes a bare unit weight set; the report says so
    strict_unit = lambda w: w == ONE
    report = verify_weightset(g, h, strict_unit)
    assert not report.ok
    assert any("subring" in line for line in report.lines)


def test_input_weight_outside_subring_rejected():
    g = WeightedDigraph(
        ["a", "b"], [("a", "b", parse_weight("1/2")), ("b", "a", ONE)]
    )
    with pytest.raises(WeightOutsideSubringError):
        weightset_reduce(g, subring_integers)


def test_subring_must_contain_one():
    g = diamond_with_pendant_cycles()
    with pytest.raises(WeightOutsideSubringError):
        weightset_reduce(g, lambda w: False)


def test_empty_basic_set_rejected():
    g = WeightedDigraph(["a", "b"], [("a", "b", ONE)])
    with pytest.raises(EmptyBasicSetError):
        weightset_reduce(g, subring_integers)


def test_verify_flags_perturbed_output():
    g = diamond_with_pendant_cycles()
    h = weightset_reduce(g, subring_integers)
    tweaked_edges = [
        (u, v, w if (u, v) != ("w1", "w2") else w + ONE) for u, v, w in h.edges()
    ]
    bad = WeightedDigraph(h.vertices, tweaked_edges)
    assert not verify_weightset(g, bad, subring_integers).ok


def test_randomized_integer_graphs_keep_count_and_spectrum():
    rng = random.Random(70)
    done = 0
    while done < 40:
        n = rng.randint(3, 7)
        labels = [f"v{k}" for k in range(n)]
        edges = []
        for u in labels:
            for v in labels:
                if u != v and rng.random() < 0.35:
                    edges.append((u, v, RatFun.from_int(rng.randint(1, 3))))
        g = WeightedDigraph(labels, edges)
        try:
            bas = basic_structural_set(g)
        except EmptyBasicSetError:
            continue
        h = weightset_reduce(g, subring_integers)
        done += 1
        assert h.n == expected_vertex_count(g)
        assert all(subring_integers(w) for _, _, w in h.edges())
        n_set = forbidden_set(g, bas)
        assert spectra_equal_up_to(spectrum(g), spectrum(h), n_set, 1e-6).ok
