from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from bowtie_ramsey.colouring import (
    Colouring,
    class_stats,
    colour,
    goodman_check,
    goodman_identity_holds,
    parse_colour_file,
    select_class,
)
from bowtie_ramsey.errors import BadColourFile
from bowtie_ramsey.generators import fano, projective_plane
from bowtie_ramsey.hypergraph import build

from conftest import brute_triangles


@pytest.fixture
def k6_matching():
    """K6 as a 2-graph; edges of a perfect matching are red (0), the rest blue (1)."""
    pairs = list(combinations(range(6), 2))
    g = build(2, 6, pairs)
    matching = {(0, 1), (2, 3), (4, 5)}
    col = Colouring(2, tuple(0 if p in matching else 1 for p in pairs))
    return g, col, pairs, matching


def test_single_colour_is_all_zero():
    assert colour(fano(), 1, "uniform_random", 5).assignment == (0,) * 7


def test_round_robin():
    assert colour(fano(), 2, "round_robin").assignment == (0, 1, 0, 1, 0, 1, 0)


def test_uniform_random_deterministic():
    g = projective_plane(3)
    assert colour(g, 2, "uniform_random", 7) == colour(g, 2, "uniform_random", 7)


def test_by_file(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("0\n1\n1\n0\n1\n0\n0\n")
    assert colour(fano(), 2, "by_file", path=path).assignment == (0, 1, 1, 0, 1, 0, 0)
    path.write_text("0\n1\n")
    with pytest.raises(BadColourFile):
        colour(fano(), 2, "by_file", path=path)
    path.write_text("0\n1\n1\n0\n1\n0\n2\n")
    with pytest.raises(BadColourFile):
        colour(fano(), 2, "by_file", path=path)


def test_colour_file_rejects_garbage():
    with pytest.raises(BadColourFile):
        parse_colour_file("0\nred\n")
    with pytest.raises(BadColourFile):
        parse_colour_file("0\n-1\n")


def test_fano_single_class_stats():
    g = fano()
    s = class_stats(g, colour(g, 1), 0)
    assert s.S == 7 * comb(6, 2) == 105
    assert s.T == comb(7, 3) == 35
    assert s.ratio == Fraction(1, 3)


def test_k6_matching_stats(k6_matching):
    g, col, pairs, matching = k6_matching
    red, blue = class_stats(g, col, 0), class_stats(g, col, 1)
    assert (red.T, red.S, red.ratio) == (0, 0, 0)
    blue_pairs = set(pairs) - matching
    assert blue.T == len(brute_triangles(6, blue_pairs)) == 8
    assert blue.S == 6 * comb(4, 2) == 36
    assert blue.ratio == Fraction(2, 9)


def test_select_class(k6_matching):
    g, col, *_ = k6_matching
    sel = select_class(g, col)
    assert sel.colour == 1 and sel.stats.ratio == Fraction(2, 9)
    assert select_class(fano(), colour(fano(), 1)).stats.ratio == Fraction(1, 3)


def test_empty_class_never_selected():
    g = fano()
    col = Colouring(3, (0, 0, 2, 2, 0, 2, 0))
    assert select_class(g, col).colour != 1
    empty = Colouring(2, (0,) * 7)
    assert select_class(g, empty).colour == 0


def test_select_class_tie_breaks_to_lower_index():
    g = build(2, 4, [[0, 1], [2, 3]])
    assert select_class(g, Colouring(2, (1, 0))).colour == 0


def test_goodman_checks(k6_matching):
    g, col, *_ = k6_matching
    a, b = class_stats(g, col, 0), class_stats(g, col, 1)
    assert goodman_check(6, a, b, 0.01)
    assert goodman_identity_holds(6, a, b)
    f = fano()
    s = class_stats(f, colour(f, 1), 0)
    zero = class_stats(f, Colouring(2, (0,) * 7), 1)
    assert goodman_check(7, s, zero, 0.01)
    tri = build(2, 3, [[0, 1], [0, 2], [1, 2]])
    split = Colouring(2, (0, 0, 1))
    assert not goodman_check(3, class_stats(tri, split, 0), class_stats(tri, split, 1), 0.01)


def test_stats_invariants_on_random_colourings():
    g = projective_plane(5)
    for seed in range(10):
        col = colour(g, 3, "uniform_random", seed)
        per_class = [class_stats(g, col, i) for i in range(3)]
        total_pairs = sum(sum(s.degrees) // 2 for s in per_class)
        assert total_pairs == comb(g.n, 2)
        for s in per_class:
            assert 3 * s.T <= s.S <= comb(g.n, 3) + 2 * s.T
            assert s.S == sum(comb(d, 2) for d in s.degrees)


def test_selection_invariant_under_relabelling():
    g = projective_plane(3)
    col = colour(g, 3, "uniform_random", 4)
    sel = select_class(g, col)
    perm = {0: 2, 1: 0, 2: 1}
    relabelled = Colouring(3, tuple(perm[x] for x in col.assignment))
    sel2 = select_class(g, relabelled)
    assert sel2.stats.ratio == sel.stats.ratio and sel2.stats.S == sel.stats.S
    if sum(1 for s in sel.classes if (s.ratio, s.S) == (sel.stats.ratio, sel.stats.S)) == 1:
        assert sel2.colour == perm[sel.colour]
