import itertools

import pytest

import oracles
from imbalance import FunctionTable, make_group
from imbalance.errors import CapacityError, DomainError
from imbalance.indicators import ambiguity
from imbalance.search import batch_square_sums, exhaustive_min_nb, thread_count


def test_batch_square_sums_match_oracle():
    g1, g2 = make_group([2, 3]), make_group([2, 2])
    tables = [[0, 1, 2, 3, 0, 1], [3, 3, 3, 3, 3, 3], [0, 2, 1, 3, 2, 2]]
    sums = batch_square_sums(g1, g2, tables)
    for row, got in zip(tables, sums):
        rows = oracles.ddt([2, 3], [2, 2], row)
        assert got == sum(c * c for r in rows[1:] for c in r)


def test_z5_bijections():
    res = exhaustive_min_nb([5], mode="bijections", threads=1)
    assert res.examined == 120
    assert res.min_ambiguity == 8
    assert res.bounds["optimum_ambiguity"] == {"rhs": 8, "holds": True, "attained": True}
    cube5 = FunctionTable([5], [5], [pow(x, 3, 5) for x in range(5)])
    assert ambiguity(cube5) == res.min_ambiguity
    assert ambiguity(res.witness) == 8


def test_small_cyclic_minima_by_brute_force():
    for n in (3, 4):
        g = make_group([n])
        brute = min(ambiguity(FunctionTable(g, g, p)) for p in itertools.permutations(range(n)))
        assert exhaustive_min_nb(g, mode="bijections", threads=1).min_ambiguity == brute


def test_threads_do_not_change_the_witness():
    a = exhaustive_min_nb([2, 2], [2], threads=1)
    b = exhaustive_min_nb([2, 2], [2], threads=4)
    assert a.witness == b.witness and a.minimizers == b.minimizers


def test_sample_is_reproducible():
    a = exhaustive_min_nb([7], mode="sample", bijections=True, samples=200, seed=1)
    b = exhaustive_min_nb([7], mode="sample", bijections=True, samples=200, seed=1)
    assert a.witness == b.witness
    assert a.min_ambiguity >= 12
    assert a.mode == "sample-bijections"


def test_capacity_and_mode_errors():
    with pytest.raises(CapacityError):
        exhaustive_min_nb([2] * 5, [2] * 3)
    with pytest.raises(CapacityError):
        exhaustive_min_nb([11], mode="bijections")
    with pytest.raises(DomainError):
        exhaustive_min_nb([4], [2], mode="bijections")
    with pytest.raises(DomainError):
        exhaustive_min_nb([4], mode="nonsense")


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("IMBALANCE_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("IMBALANCE_THREADS", "0")
    assert thread_count() >= 1
