from itertools import combinations

import pytest

from bowtie_ramsey.errors import LhgFormatError, LinearityViolation, NonUniformEdge
from bowtie_ramsey.generators import FANO_LINES, affine_plane, fano, projective_plane
from bowtie_ramsey.hypergraph import (
    Configuration,
    build,
    classify_triple,
    format_lhg,
    is_complete,
    parse_lhg,
    span,
)


def test_build_fano_is_linear():
    g = build(3, 7, FANO_LINES)
    assert g.m == 7
    for a, b in combinations(FANO_LINES, 2):
        assert len(set(a) & set(b)) <= 1
    assert g.pair_index[(0, 1)] == 0
    assert g.edge_through(6, 5) == 2


def test_linearity_violation_reports_pair():
    with pytest.raises(LinearityViolation) as info:
        build(3, 6, [[0, 1, 2], [0, 1, 3]])
    assert info.value.pair == (0, 1)
    assert info.value.edges == (0, 1)


def test_repeated_vertex_is_non_uniform():
    with pytest.raises(NonUniformEdge):
        build(4, 4, [[0, 1, 2, 2]])


@pytest.mark.parametrize("edges", [[[0, 1]], [[0, 1, 2, 3]]])
def test_wrong_size_is_non_uniform(edges):
    with pytest.raises(NonUniformEdge):
        build(3, 5, edges)


def test_out_of_range_vertex():
    with pytest.raises(ValueError):
        build(3, 3, [[0, 1, 3]])


def test_edges_are_sorted():
    g = build(3, 7, [[5, 1, 3]])
    assert g.edges == ((1, 3, 5),)


def test_is_complete():
    assert is_complete(fano())
    assert len(fano().pair_index) == 21
    assert not is_complete(build(3, 7, FANO_LINES[1:]))
    assert is_complete(build(3, 3, [[0, 1, 2]]))


def test_classify_triple_fano():
    g = fano()
    # lines {0,1,2}, {0,3,4}, {1,3,5}
    assert sorted(classify_triple(g, 0, 1, 3)) == [0, 1, 3]
    # three lines through vertex 0
    assert classify_triple(g, 0, 1, 2) is None


def test_classify_triple_disjoint():
    g = build(3, 9, [[0, 1, 2], [3, 4, 5], [0, 3, 6]])
    assert classify_triple(g, 0, 1, 2) is None


def test_span_values():
    g = build(4, 4, [[0, 1, 2, 3]])
    assert span(g, [0]) == 4
    f = fano()
    assert span(f, [0, 1, 3]) == 6
    assert span(f, range(7)) == 7


@pytest.mark.parametrize("g", [fano(), affine_plane(3), projective_plane(3)], ids=["fano", "AG3", "PG3"])
def test_c3_iff_span_3r_minus_3(g):
    for triple in combinations(range(g.m), 3):
        is_c3 = classify_triple(g, *triple) is not None
        assert is_c3 == (span(g, triple) == 3 * g.r - 3)


@pytest.mark.parametrize("g", [fano(), affine_plane(5), projective_plane(3)], ids=["fano", "AG5", "PG3"])
def test_complete_degree_relation(g):
    ug = g.underlying()
    for u in range(g.n):
        assert ug.degree[u] == g.n - 1
        assert ug.degree[u] % (g.r - 1) == 0
        assert g.degree(u) == ug.degree[u] // (g.r - 1)
    for (u, v), e in g.pair_index.items():
        assert u in g.edges[e] and v in g.edges[e]


def test_configuration():
    g = fano()
    c = Configuration.of(g, [0, 1, 3])
    assert c.k == 3 and c.span == 6
    assert c.is_configuration(6) and not c.is_configuration(5)


def test_sub_keeps_parent_ids():
    g = fano()
    s = g.sub([6, 2, 4])
    assert s.parent_ids == (2, 4, 6)
    ss = s.sub([1])
    assert ss.parent_ids == (4,)
    assert ss.edges == (g.edges[4],)


def test_lhg_round_trip():
    g = projective_plane(3)
    assert parse_lhg(format_lhg(g)) == g


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 7\n", 1),
        ("3 7 1\n0 1\n", 2),
        ("3 7 1\n0 1 9\n", 2),
        ("3 7 1\n0 1 2\n3 4 5\n", 3),
        ("3 7 2\n0 1 2\n", 3),
        ("3 7 2\n0 1 2\n0 1 3\n", 3),
        ("3 7 1\n0 1 x\n", 2),
    ],
)
def test_lhg_errors_carry_line_numbers(text, line):
    with pytest.raises(LhgFormatError) as info:
        parse_lhg(text)
    assert info.value.line == line


def test_lhg_allows_trailing_blank_lines():
    assert parse_lhg("3 3 1\n0 1 2\n\n\n").m == 1
