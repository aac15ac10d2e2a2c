"""Exhaustive and sampled searches for functions of minimum derivative imbalance.

Candidates are scored in vectorised batches: for a batch of value tables the
square sum ``sum_{a != 0, b} delta_F(a, b)^2`` is obtained with one
``bincount`` per shift ``a``.  Ties are broken by enumeration order, so the
witness does not depend on how batches are scheduled across threads.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice, permutations
from math import factorial

import numpy as np

from .errors import CapacityError, DomainError
from .functable import FunctionTable
from .group import GroupSpec, as_group
from .indicators import optimum_ambiguity_threshold

__all__ = ["SearchResult", "exhaustive_min_nb", "batch_square_sums", "thread_count"]

SEARCH_CAP = 2**24
BATCH = 1 << 14
MODES = ("all-functions", "bijections", "sample")


def thread_count() -> int:
    """Worker threads from ``IMBALANCE_THREADS`` (unset or 0 means one per CPU)."""
    raw = os.environ.get("IMBALANCE_THREADS", "0").strip() or "0"
    n = int(raw)
    return n if n > 0 else (os.cpu_count() or 1)


def batch_square_sums(g1: GroupSpec, g2: GroupSpec, tables: np.ndarray) -> np.ndarray:
    """``sum_{a != 0} sum_b delta_F(a, b)^2`` for every row of ``tables``."""
    tables = np.asarray(tables, dtype=np.int64)
    rows = tables.shape[0]
    x = g1.elements()
    offsets = (np.arange(rows, dtype=np.int64) * g2.order)[:, None]
    total = np.zeros(rows, dtype=np.int64)
    for a in range(1, g1.order):
        d = g2._sub(tables[:, g1._add(x, a)], tables)
        counts = np.bincount((d + offsets).ravel(), minlength=rows * g2.order).reshape(rows, g2.order)
        total += np.sum(counts * counts, axis=1)
    return total


@dataclass(frozen=True)
class SearchResult:
    mode: str
    examined: int
    min_nb: Fraction
    min_ambiguity: int
    minimizers: int
    witness: FunctionTable
    bounds: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "examined": self.examined,
            "min_nb": {"num": self.min_nb.numerator, "den": self.min_nb.denominator},
            "min_ambiguity": self.min_ambiguity,
            "minimizers": self.minimizers,
            "witness": [int(v) for v in self.witness.values],
            "bounds": self.bounds,
        }


def _function_batches(g1: GroupSpec, g2: GroupSpec, total: int):
    weights = g2.order ** np.arange(g1.order, dtype=np.int64)
    for start in range(0, total, BATCH):
        idx = np.arange(start, min(start + BATCH, total), dtype=np.int64)
        yield start, (idx[:, None] // weights[None, :]) % g2.order


def _permutation_batches(n: int):
    it = permutations(range(n))
    start = 0
    while True:
        chunk = list(islice(it, BATCH))
        if not chunk:
            return
        yield start, np.array(chunk, dtype=np.int64)
        start += len(chunk)


def _sample_batches(g1: GroupSpec, g2: GroupSpec, count: int, seed, bijective: bool):
    rng = np.random.default_rng(seed)
    for start in range(0, count, BATCH):
        size = min(BATCH, count - start)
        if bijective:
            block = np.argsort(rng.random((size, g1.order)), axis=1)
        else:
            block = rng.integers(0, g2.order, (size, g1.order))
        yield start, block


def exhaustive_min_nb(
    g1,
    g2=None,
    mode: str = "all-functions",
    *,
    bijections: bool = False,
    samples: int = 1000,
    seed=None,
    threads: int | None = None,
) -> SearchResult:
    """Minimise ``NB_F`` over all functions, all bijections, or a seeded sample.

    ``mode="bijections"`` enumerates every permutation; ``mode="sample"``
    draws ``samples`` tables (permutations when ``bijections`` is set).
    """
    g1 = as_group(g1)
    g2 = g1 if g2 is None else as_group(g2)
    if mode not in MODES:
        raise DomainError(f"unknown search mode {mode!r}")
    bijective = mode == "bijections" or (mode == "sample" and bijections)
    if bijective and g1.order != g2.order:
        raise DomainError("bijections need |G1| = |G2|")
    if mode == "all-functions":
        if g2.order**g1.order > SEARCH_CAP:
            raise CapacityError(f"|G2|^|G1| = {g2.order}^{g1.order} exceeds 2^24")
        total = g2.order**g1.order
        batches = _function_batches(g1, g2, total)
    elif mode == "bijections":
        if factorial(g1.order) > SEARCH_CAP:
            raise CapacityError(f"{g1.order}! exceeds 2^24")
        total = factorial(g1.order)
        batches = _permutation_batches(g1.order)
    else:
        if samples < 1:
            raise DomainError("need at least one sample")
        total = samples
        batches = _sample_batches(g1, g2, samples, seed, bijective)

    def score(item):
        start, block = item
        sums = batch_square_sums(g1, g2, block)
        best = int(sums.min())
        hits = np.flatnonzero(sums == best)
        return best, int(hits.shape[0]), start + int(hits[0]), block[hits[0]].copy()

    workers = thread_count() if threads is None else max(1, threads)
    if workers == 1:
        scored = [score(b) for b in batches]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scored = list(pool.map(score, batches))
    best = min(s[0] for s in scored)
    winners = [s for s in scored if s[0] == best]
    witness_values = min(winners, key=lambda s: s[2])[3]
    n1, n2 = g1.order, g2.order
    nb = best - Fraction((n1 - 1) * n1 * n1, n2)
    amb = (best - (n1 - 1) * n1) // 2
    witness = FunctionTable(g1, g2, witness_values)
    return SearchResult(
        mode=mode if mode != "sample" else ("sample-bijections" if bijective else "sample-functions"),
        examined=total,
        min_nb=nb,
        min_ambiguity=amb,
        minimizers=sum(s[1] for s in winners),
        witness=witness,
        bounds=_class_bounds(g1, g2, bijective, nb, amb),
    )


def _class_bounds(g1: GroupSpec, g2: GroupSpec, bijective: bool, nb: Fraction, amb: int) -> dict:
    """Lower bounds valid for every function in the searched class, compared with the minimum."""
    n1, n2 = g1.order, g2.order
    out = {}
    ceil_bound = (n1 - 1) * (Fraction(-(-n1 * n1 // n2)) - Fraction(n1 * n1, n2))
    out["ceiling"] = {"rhs": _fj(ceil_bound), "holds": nb >= ceil_bound}
    if g1.is_elementary_2:
        b5 = max(Fraction(0), (n1 - 1) * (2 * n1 - Fraction(n1 * n1, n2)))
        out["characteristic_2"] = {"rhs": _fj(b5), "holds": nb >= b5}
    if g1.is_elementary_2 and g2.is_elementary_2:
        n, m = g1.rank, g2.rank
        if (n % 2 == 1 and m < n) or (n % 2 == 0 and n / 2 < m < n):
            out["no_pn_6"] = {"rhs": 6, "holds": nb >= 6}
    if bijective:
        thr = optimum_ambiguity_threshold(g1, g2)
        out["optimum_ambiguity"] = {"rhs": thr, "holds": amb >= thr, "attained": amb == thr}
    return out


def _fj(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}
