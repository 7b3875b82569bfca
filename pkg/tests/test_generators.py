from collections import Counter
from itertools import combinations

import pytest

from bowtie_ramsey.errors import UnsupportedOrder
from bowtie_ramsey.generators import (
    GeneratorSpec,
    affine_plane,
    bose_sts,
    generate,
    projective_plane,
    random_partial,
    skolem_sts,
    validate_complete,
)
from bowtie_ramsey.hypergraph import is_complete


def pair_cover(g):
    return Counter(p for e in g.edges for p in combinations(e, 2))


def test_affine_plane_3():
    g = affine_plane(3)
    assert (g.n, g.r, g.m) == (9, 3, 12)
    cover = pair_cover(g)
    assert len(cover) == 36 and set(cover.values()) == {1}


def test_projective_plane_3_incidence():
    g = projective_plane(3)
    assert (g.n, g.r, g.m) == (13, 4, 13)
    assert Counter(v for e in g.edges for v in e) == {v: 4 for v in range(13)}


@pytest.mark.parametrize("n", [7, 13])
def test_bose_rejects_wrong_residue(n):
    with pytest.raises(UnsupportedOrder):
        bose_sts(n)


@pytest.mark.parametrize("n", [9, 15, 21])
def test_skolem_rejects_wrong_residue(n):
    with pytest.raises(UnsupportedOrder):
        skolem_sts(n)


@pytest.mark.parametrize("q", [4, 6, 9])
def test_planes_need_prime_order(q):
    with pytest.raises(UnsupportedOrder):
        affine_plane(q)
    with pytest.raises(UnsupportedOrder):
        projective_plane(q)


@pytest.mark.parametrize("n, m", [(9, 12), (15, 35), (21, 70), (33, 176)])
def test_bose_complete(n, m):
    rep = validate_complete(bose_sts(n))
    assert rep.complete and rep.expected_m == m == rep.m


@pytest.mark.parametrize("n", [7, 13, 19, 25, 31, 37])
def test_skolem_complete(n):
    g = skolem_sts(n)
    assert set(pair_cover(g).values()) == {1}
    assert len(pair_cover(g)) == n * (n - 1) // 2


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11])
def test_planes_complete_and_regular(q):
    for g in (affine_plane(q), projective_plane(q)):
        assert is_complete(g)
        per_point = (g.n - 1) // (g.r - 1)
        assert all(g.degree(u) == per_point for u in range(g.n))


def test_pg_11_size():
    g = projective_plane(11)
    assert (g.n, g.r, g.m) == (133, 12, 133)


def test_random_partial_incomplete():
    g, stalled = random_partial(3, 20, 10, seed=1)
    assert g.m == 10 and not stalled
    rep = validate_complete(g)
    assert not rep.complete
    assert len(rep.uncovered) == 190 - 30


def test_random_partial_deterministic():
    assert random_partial(4, 40, 25, 11) == random_partial(4, 40, 25, 11)
    assert random_partial(4, 40, 25, 11)[0] != random_partial(4, 40, 25, 12)[0]


def test_random_partial_stalls():
    # at most 2 disjoint-pair triples fit on 5 points... greedy stalls well before 50
    g, stalled = random_partial(3, 5, 50, seed=0)
    assert stalled and g.m < 50


def test_random_partial_zero():
    g, stalled = random_partial(3, 10, 0, seed=0)
    assert g.m == 0 and not stalled


def test_generate_dispatch():
    assert generate(GeneratorSpec("fano")).m == 7
    assert generate(GeneratorSpec("bose", n=9)).m == 12
    assert generate(GeneratorSpec("projective", q=2)).n == 7
    assert generate(GeneratorSpec("random", r=3, n=12, edges=5, seed=3)).m == 5
    with pytest.raises(ValueError):
        generate(GeneratorSpec("affine"))
    with pytest.raises(ValueError):
        generate(GeneratorSpec("nonsense"))


def test_spec_round_trip():
    s = GeneratorSpec("random", n=10, r=3, edges=4, seed=9)
    assert GeneratorSpec.from_dict(s.to_dict()) == s
