"""Difference distribution tables and the differential spectrum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IdentityViolation
from .functable import FunctionTable

__all__ = [
    "DDTable",
    "DifferentialSpectrum",
    "ddt",
    "spectrum",
    "differential_uniformity",
    "is_apn",
    "is_pn",
    "deficiency",
    "t_f",
]

# entries per block when rows are materialised together
_BLOCK = 1 << 22


@dataclass(frozen=True, eq=False)
class DDTable:
    """``counts[a, b] = #{x : F(x + a) - F(x) = b}``; row ``a = 0`` is kept."""

    function: FunctionTable
    counts: np.ndarray

    @property
    def nonzero_rows(self) -> np.ndarray:
        return self.counts[1:]

    def sum_of_squares(self, include_zero_row: bool = True) -> int:
        rows = self.counts if include_zero_row else self.counts[1:]
        return int(np.sum(rows.astype(np.int64) ** 2, dtype=np.int64))


@dataclass(frozen=True)
class DifferentialSpectrum:
    """``N[i]`` = number of pairs ``(a != 0, b)`` with ``delta(a, b) = i``; zero counts omitted."""

    N: dict[int, int]
    delta: int

    def __getitem__(self, i: int) -> int:
        return self.N.get(i, 0)

    def values(self) -> list[int]:
        return sorted(self.N)

    def to_json(self) -> dict[str, int]:
        return {str(i): n for i, n in sorted(self.N.items())}


def _row_block(F: FunctionTable, rows: np.ndarray) -> np.ndarray:
    g1, g2 = F.domain, F.codomain
    x = g1.elements()
    shifted = g1._add(rows[:, None], x[None, :])
    diff = g2._sub(F.values[shifted], F.values[None, :])
    flat = (np.arange(rows.shape[0])[:, None] * g2.order + diff).ravel()
    return np.bincount(flat, minlength=rows.shape[0] * g2.order).reshape(rows.shape[0], g2.order)


def ddt(F: FunctionTable) -> DDTable:
    n1 = F.domain.order
    step = max(1, _BLOCK // max(n1, F.codomain.order))
    blocks = [
        _row_block(F, np.arange(start, min(start + step, n1), dtype=np.int64))
        for start in range(0, n1, step)
    ]
    counts = np.vstack(blocks)
    counts.setflags(write=False)
    return DDTable(F, counts)


def spectrum(d: DDTable) -> DifferentialSpectrum:
    n1, n2 = d.function.domain.order, d.function.codomain.order
    vals, freq = np.unique(d.nonzero_rows, return_counts=True)
    N = {int(v): int(c) for v, c in zip(vals, freq)}
    if sum(N.values()) != (n1 - 1) * n2:
        raise IdentityViolation("sum of N_i differs from (|G1|-1)|G2|")
    if sum(i * c for i, c in N.items()) != (n1 - 1) * n1:
        raise IdentityViolation("sum of i*N_i differs from (|G1|-1)|G1|")
    return DifferentialSpectrum(N, max(N))


def differential_uniformity(d: DDTable) -> int:
    return int(d.nonzero_rows.max())


def is_apn(d: DDTable) -> bool:
    return differential_uniformity(d) <= 2


def is_pn(F: FunctionTable, d: DDTable | None = None) -> bool:
    n1, n2 = F.domain.order, F.codomain.order
    if n1 % n2:
        return False
    d = d if d is not None else ddt(F)
    return bool(np.all(d.nonzero_rows == n1 // n2))


def deficiency(d: DDTable) -> int:
    """Number of pairs ``(a != 0, b)`` for which ``D_a F(x) = b`` has no solution."""
    return int(np.count_nonzero(d.nonzero_rows == 0))


def t_f(F: FunctionTable | DDTable) -> int:
    """Largest image size of a nonzero derivative."""
    d = F if isinstance(F, DDTable) else ddt(F)
    return int(np.count_nonzero(d.nonzero_rows, axis=1).max())
