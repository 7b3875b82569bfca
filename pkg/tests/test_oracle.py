import pytest

from bowtie_ramsey.bowtie import build_bowtie_graph
from bowtie_ramsey.colouring import Colouring, colour
from bowtie_ramsey.errors import BudgetExceeded
from bowtie_ramsey.extraction import pathwalk_extract
from bowtie_ramsey.generators import affine_plane, fano, projective_plane, random_partial
from bowtie_ramsey.hypergraph import build
from bowtie_ramsey.oracle import OracleQuery, oracle_search, verify_configuration

from conftest import brute_config_count


def count(g, v, k, col=None, colour_index=None):
    return oracle_search(g, col, OracleQuery(v, k, colour_index)).count


def test_fano_counts():
    g = fano()
    assert count(g, 6, 3) == 28
    assert count(g, 7, 4) == 35
    assert count(g, 5, 2) == 21


@pytest.mark.parametrize(
    "g", [fano(), affine_plane(3), projective_plane(3), random_partial(3, 14, 18, 3)[0]], ids=["fano", "AG3", "PG3", "rand"]
)
@pytest.mark.parametrize("v, k", [(5, 2), (6, 3), (7, 3), (8, 4), (9, 4), (10, 5)])
def test_counts_match_brute_force(g, v, k):
    if v < g.r:
        pytest.skip("v below r")
    assert count(g, v, k) == brute_config_count(g, v, k)


def test_k1_counts_every_edge():
    for g in (fano(), projective_plane(5)):
        assert count(g, g.r, 1) == g.m


def test_modes_agree():
    g = affine_plane(3)
    q = dict(v=7, k=3)
    total = oracle_search(g, None, OracleQuery(mode="count", **q)).count
    every = oracle_search(g, None, OracleQuery(mode="enumerate_all", **q))
    one = oracle_search(g, None, OracleQuery(mode="find_one", **q))
    assert every.count == total == len(every.witnesses)
    assert every.witnesses == sorted(every.witnesses)
    assert one.witness == every.witnesses[0]


def test_find_one_none():
    g = build(3, 9, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    res = oracle_search(g, None, OracleQuery(5, 2, mode="find_one"))
    assert res.witness is None and res.count == 0


def test_colour_restriction():
    g = fano()
    col = Colouring(2, (0, 0, 1, 0, 1, 1, 0))
    red = [0, 1, 3, 6]
    assert count(g, 6, 3, col, 0) == brute_config_count(g, 6, 3, red)
    with pytest.raises(ValueError):
        count(g, 6, 3, None, 0)


def test_k2_equals_bowtie_count_per_class():
    g = projective_plane(5)
    col = colour(g, 2, "uniform_random", 4)
    for c in range(2):
        gc = col.class_graph(g, c)
        assert count(g, 2 * g.r - 1, 2, col, c) == len(build_bowtie_graph(gc))


def test_budget():
    g = projective_plane(5)
    with pytest.raises(BudgetExceeded) as info:
        oracle_search(g, None, OracleQuery(15, 4, budget=100))
    assert info.value.examined == 100


def test_query_validation():
    with pytest.raises(ValueError):
        oracle_search(fano(), None, OracleQuery(2, 1))
    with pytest.raises(ValueError):
        oracle_search(fano(), None, OracleQuery(6, 0))
    with pytest.raises(ValueError):
        oracle_search(fano(), None, OracleQuery(6, 2, mode="all"))


def test_verify_pathwalk_output():
    g = fano()
    res = pathwalk_extract(build_bowtie_graph(g), 3)
    assert verify_configuration(g, None, res.config.edge_ids, 6, 3).passed


def test_verify_names_the_clause():
    g = fano()
    # sunflower through vertex 0 spans 3r-2 = 7
    rep = verify_configuration(g, None, [0, 1, 2], 6, 3)
    assert not rep.passed and rep.span == 7
    assert any(f.startswith("span") for f in rep.failures)
    col = Colouring(2, (0, 1, 0, 0, 0, 0, 0))
    rep = verify_configuration(g, col, [0, 1, 3], 6, 3)
    assert any(f.startswith("monochromatic") for f in rep.failures)
    rep = verify_configuration(g, None, [0, 1], 6, 3)
    assert any(f.startswith("size") for f in rep.failures)
    rep = verify_configuration(g, None, [0, 1, 99], 6, 3)
    assert any("out of range" in f for f in rep.failures)


@pytest.mark.parametrize("mode", ["count", "find_one", "enumerate_all"])
def test_parallel_split_matches_serial(mode):
    g = affine_plane(5)
    q = OracleQuery(12, 3, mode=mode)
    serial = oracle_search(g, None, q)
    parallel = oracle_search(g, None, q, workers=3)
    assert parallel.count == serial.count
    assert parallel.witness == serial.witness
    assert parallel.witnesses == serial.witnesses
    if mode != "find_one":
        assert parallel.examined == serial.examined


def test_parallel_budget():
    with pytest.raises(BudgetExceeded):
        oracle_search(projective_plane(5), None, OracleQuery(15, 4, budget=100), workers=2)
