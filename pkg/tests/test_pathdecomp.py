import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_subcubic
from indmatch.errors import ContractError, DomainError, ParseError
from indmatch.generators import (
    complete_binary_tree,
    complete_graph,
    cycle_graph,
    disjoint_union,
    erdos_renyi,
    path_graph,
    petersen_graph,
    subdivide_edge,
)
from indmatch.graph import Graph
from indmatch.pathdecomp import (
    DecompositionInfo,
    PathDecomposition,
    base_decompose,
    compress,
    contract,
    decompose_for_instance,
    expand,
    degree3_width_bound,
    make_nice,
    parse_decomposition,
    pathwidth_oracle,
    serialize_decomposition,
    validate,
    validate_nice,
    width,
)


def pd(*bags):
    return PathDecomposition([frozenset(b) for b in bags])


def test_validate_examples():
    p3 = path_graph(3)
    assert validate(p3, pd({1, 2}, {2, 3}))
    assert not validate(p3, pd({1, 2}, {3}))
    assert validate(cycle_graph(4), pd({1, 2, 4}, {2, 3, 4}))


def test_validate_interval_and_cover():
    p3 = path_graph(3)
    assert not validate(p3, pd({1, 2}, {2, 3}, {1}))
    assert not validate(p3, pd({1, 2}))
    assert not validate(p3, pd({1, 2}, {2, 3, 9}))


def test_width_examples():
    assert width(pd({1, 2}, {2, 3})) == 1
    assert width(pd(set())) == -1
    assert width(pd({1, 2, 3}, {1, 2, 3, 4}, {4, 5})) == 3
    with pytest.raises(ValueError):
        width(PathDecomposition(()))


@pytest.mark.parametrize("g, expected", [
    (path_graph(4), 1),
    (cycle_graph(5), 2),
    (complete_binary_tree(7), 1),
    (complete_binary_tree(15), 2),
    (complete_graph(5), 4),
    (petersen_graph(), 5),
    (Graph(), -1),
])
def test_base_decompose_exact_widths(g, expected):
    d = base_decompose(g)
    assert validate(g, d)
    assert d.width == expected == pathwidth_oracle(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.floats(0.1, 0.7), st.integers(0, 10 ** 6))
def test_exact_search_matches_subset_dp(n, p, seed):
    g = erdos_renyi(n, p, random.Random(seed))
    d = base_decompose(g)
    assert validate(g, d)
    assert d.width == pathwidth_oracle(g)


@settings(max_examples=30, deadline=None)
@given(st.integers(6, 14), st.floats(0.1, 0.6), st.integers(0, 10 ** 6))
def test_heuristic_is_valid_upper_bound(n, p, seed):
    g = erdos_renyi(n, p, random.Random(seed))
    d = base_decompose(g, threshold=4)
    assert validate(g, d)
    assert d.width >= base_decompose(g).width


def test_contract_cycle():
    rec = contract(cycle_graph(6))
    assert rec.contracted.n == 0
    assert rec.free == (("cycle", (1, 2, 3, 4, 5, 6)),)
    assert rec.vertices_covered() == set(range(1, 7))


def test_contract_petersen_unchanged():
    g = petersen_graph()
    rec = contract(g)
    assert rec.contracted == g
    assert not rec.red_edges and not rec.red_vertices and not rec.free


def test_contract_subdivided_petersen():
    g = subdivide_edge(petersen_graph(), 1, 2, new=11)
    rec = contract(g)
    assert rec.contracted == petersen_graph()
    assert rec.red_edges == {(1, 2): ((11,),)}


def test_contract_rejects_degree_four():
    with pytest.raises(DomainError):
        contract(complete_graph(5))


def test_expand_identity_without_annotations():
    g = petersen_graph()
    rec = contract(g)
    base = base_decompose(g)
    assert expand(rec, base) == base


def test_expand_single_red_edge():
    g = subdivide_edge(complete_graph(4), 1, 2, new=5)
    rec = contract(g)
    assert rec.red_edges == {(1, 2): ((5,),)}
    base = base_decompose(rec.contracted)
    ex = expand(rec, base)
    assert validate(g, ex)
    assert ex.width <= base.width + 1


def test_expand_red_vertex():
    # 4-cycle 1-3-2-4 with chord 3-4, and a pendant path 1-5-6
    g = Graph(range(1, 7), [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 5), (5, 6)])
    rec = contract(g)
    assert rec.red_vertices == {1: ((5, 6),)}
    assert rec.red_edges == {(3, 4): ((2,),)}
    ex = expand(rec, base_decompose(rec.contracted))
    assert validate(g, ex)


def test_expand_rejects_invalid_input():
    rec = contract(petersen_graph())
    with pytest.raises(ContractError):
        expand(rec, pd({1, 2}))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 16), st.integers(0, 24), st.integers(0, 10 ** 6))
def test_contract_expand_roundtrip(n, m, seed):
    g = random_subcubic(n, m, random.Random(seed))
    rec = contract(g)
    assert rec.vertices_covered() == set(g.vertices)
    assert all(rec.contracted.degree(v) <= 3 for v in rec.contracted.vertices)
    base = base_decompose(rec.contracted)
    ex = expand(rec, base)
    assert validate(g, ex)
    assert ex.width <= max(base.width + 2, 2)


def test_make_nice_p3():
    npd = make_nice(pd({1, 2}, {2, 3}))
    assert npd.ops == (("L", None), ("I", 1), ("I", 2), ("F", 1), ("I", 3), ("F", 2), ("F", 3))
    assert npd.bags[0] == npd.bags[-1] == frozenset()
    assert validate_nice(path_graph(3), npd)


def test_make_nice_idempotent_and_width_preserving():
    c5 = cycle_graph(5)
    base = base_decompose(c5)
    npd = make_nice(base)
    assert npd.width == base.width == 2
    assert make_nice(npd.as_path_decomposition()) == npd


def test_compress_keeps_validity():
    g = cycle_graph(5)
    npd = make_nice(base_decompose(g))
    c = compress(npd)
    assert validate(g, c) and c.width == npd.width
    assert len(c) < len(npd)


def test_decompose_for_instance_examples():
    d = decompose_for_instance(path_graph(2), 0)
    assert d.width == 1 and validate_nice(path_graph(2), d)
    p10 = path_graph(10)
    for k in (0, 3, 9):
        assert decompose_for_instance(p10, k).width == 1
    g = petersen_graph()
    info = DecompositionInfo()
    d = decompose_for_instance(g, 4, info=info)
    assert validate_nice(g, d)
    assert d.width == info.width == pathwidth_oracle(g) == 5


def test_decompose_for_instance_rejects_degree_four():
    with pytest.raises(DomainError):
        decompose_for_instance(complete_graph(5), 3)


def test_degree3_width_bound_values():
    assert [degree3_width_bound(k) for k in range(7)] == [2, 3, 3, 4, 4, 5, 5]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 18), st.integers(0, 10 ** 6))
def test_instance_decomposition_is_optimal_on_small_graphs(n, m, seed):
    g = random_subcubic(n, m, random.Random(seed))
    deg3 = sum(1 for v in g.vertices if g.degree(v) == 3)
    d = decompose_for_instance(g, math.ceil(deg3 / 2.5))
    assert validate_nice(g, d)
    assert d.width == pathwidth_oracle(g)


def test_width_formula_is_not_exact_for_petersen():
    # 10 degree-3 vertices fit budget 4, but the pathwidth is 5 > ceil(10/6) + 2
    assert degree3_width_bound(4) == 4
    assert decompose_for_instance(petersen_graph(), 4).width == 5


def test_disconnected_graph_decomposes_per_component():
    g = disjoint_union(cycle_graph(5), path_graph(3), Graph([1]))
    d = decompose_for_instance(g, 2)
    assert validate_nice(g, d) and d.width == 2


def test_serialization_roundtrip():
    g = cycle_graph(5)
    plain = base_decompose(g)
    assert parse_decomposition(serialize_decomposition(plain)) == plain
    nice = make_nice(plain)
    text = serialize_decomposition(nice)
    assert text.splitlines()[1] == "L:"
    assert parse_decomposition(text) == nice


def test_parse_decomposition_errors():
    with pytest.raises(ParseError):
        parse_decomposition("")
    with pytest.raises(ParseError):
        parse_decomposition("pd 2 1\n1 2\n")
    with pytest.raises(ParseError):
        parse_decomposition("pd 1 1\n1 x\n")
