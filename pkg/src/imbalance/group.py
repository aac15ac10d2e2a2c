"""Finite Abelian groups Z_{n_1} x ... x Z_{n_k} with mixed-radix element indices.

Elements are plain integers in ``[0, |G|)``.  Coordinate ``j`` has place value
``n_0 * ... * n_{j-1}`` (little-endian), so ``Z_2^n`` indices are ordinary
bit vectors and group addition there is XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError, InvalidGroupError

__all__ = [
    "GroupSpec",
    "make_group",
    "parse_group",
    "product_group",
    "character",
    "count_involutions",
]

# indices are stored as int64 everywhere
_MAX_ORDER = 2**62


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class GroupSpec:
    """The group ``Z_{orders[0]} x ... x Z_{orders[-1]}``.

    Build instances with :func:`make_group`, which validates the orders.
    """

    orders: tuple[int, ...]

    @cached_property
    def order(self) -> int:
        return prod(self.orders)

    @cached_property
    def weights(self) -> tuple[int, ...]:
        w, out = 1, []
        for n in self.orders:
            out.append(w)
            w *= n
        return tuple(out)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def is_elementary_2(self) -> bool:
        """True for ``Z_2^k``, the groups underlying binary S-boxes."""
        return all(n == 2 for n in self.orders)

    @cached_property
    def elementary_prime(self) -> int | None:
        """``p`` when the group is ``Z_p^k`` for a prime ``p``, else None."""
        first = self.orders[0]
        if all(n == first for n in self.orders) and _is_prime(first):
            return first
        return None

    @property
    def is_cyclic_presentation(self) -> bool:
        return len(self.orders) == 1

    @cached_property
    def _orders_arr(self) -> np.ndarray:
        return np.asarray(self.orders, dtype=np.int64)

    @cached_property
    def _weights_arr(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.int64)

    @cached_property
    def _roots(self) -> tuple[np.ndarray, ...]:
        return tuple(np.exp(2j * np.pi * np.arange(n) / n) for n in self.orders)

    def __str__(self) -> str:
        return " ".join(str(n) for n in self.orders)

    # -- indices -------------------------------------------------------
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def check(self, x) -> None:
        arr = np.asarray(x)
        if arr.size and (arr.min() < 0 or arr.max() >= self.order):
            raise DomainError(f"element index out of range for group ({self})")

    def decode(self, x) -> np.ndarray:
        """Coordinates of ``x``; the last axis has length ``rank``."""
        arr = np.asarray(x, dtype=np.int64)
        return (arr[..., None] // self._weights_arr) % self._orders_arr

    def encode(self, coords) -> np.ndarray | int:
        c = np.asarray(coords, dtype=np.int64) % self._orders_arr
        out = c @ self._weights_arr
        return int(out) if np.ndim(out) == 0 else out

    # -- arithmetic ----------------------------------------------------
    def add(self, x, y):
        self.check(x)
        self.check(y)
        return self._add(x, y)

    def neg(self, x):
        self.check(x)
        return self._neg(x)

    def sub(self, x, y):
        self.check(x)
        self.check(y)
        return self._add(x, self._neg(y))

    def mul(self, k: int, x):
        """The integer multiple ``k * x``."""
        self.check(x)
        if self.is_elementary_2:
            out = np.asarray(x, dtype=np.int64) * (k % 2)
            return int(out) if np.ndim(out) == 0 else out
        return self.encode(self.decode(x) * k)

    def _add(self, x, y):
        if self.is_elementary_2:
            out = np.bitwise_xor(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
            return int(out) if np.ndim(out) == 0 else out
        return self.encode(self.decode(x) + self.decode(y))

    def _neg(self, x):
        if self.is_elementary_2:
            out = np.asarray(x, dtype=np.int64)
            return int(out) if np.ndim(out) == 0 else out.copy()
        return self.encode(-self.decode(x))

    def _sub(self, x, y):
        if self.is_elementary_2:
            return self._add(x, y)
        return self.encode(self.decode(x) - self.decode(y))

    # -- characters ----------------------------------------------------
    def characters(self, alpha, x) -> np.ndarray:
        """``chi_alpha(x)`` with numpy broadcasting between ``alpha`` and ``x``."""
        a = self.decode(alpha)
        b = self.decode(x)
        a, b = np.broadcast_arrays(a, b)
        out = np.ones(a.shape[:-1], dtype=np.complex128)
        for j, n in enumerate(self.orders):
            out = out * self._roots[j][(a[..., j] * b[..., j]) % n]
        return out

    def sign_characters(self, alpha, x) -> np.ndarray:
        """Exact ``+-1`` character values for ``Z_2^k``."""
        if not self.is_elementary_2:
            raise DomainError("sign characters need an elementary Abelian 2-group")
        dots = np.bitwise_and(np.asarray(alpha, dtype=np.int64), np.asarray(x, dtype=np.int64))
        parity = np.bitwise_count(dots.astype(np.uint64)) & 1
        return (1 - 2 * parity.astype(np.int64))


def make_group(orders: Iterable[int] | str) -> GroupSpec:
    """Validate cyclic orders and return the group.

    >>> make_group([2, 4]).weights
    (1, 2)
    """
    if isinstance(orders, str):
        return parse_group(orders)
    orders = tuple(int(n) for n in orders)
    if not orders:
        raise InvalidGroupError("a group needs at least one cyclic factor")
    for n in orders:
        if n < 2:
            raise InvalidGroupError(f"cyclic order {n} < 2")
    if prod(orders) > _MAX_ORDER:
        raise CapacityError(f"group order {prod(orders)} exceeds 2^62")
    return GroupSpec(orders)


def parse_group(text: str) -> GroupSpec:
    """Parse the literal syntax ``"2 2 2"``."""
    try:
        orders = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InvalidGroupError(f"bad group literal {text!r}") from exc
    return make_group(orders)


def product_group(g1: GroupSpec, g2: GroupSpec) -> GroupSpec:
    """``G1 x G2``; the pair ``(x, y)`` has index ``x + |G1| * y``."""
    return make_group(g1.orders + g2.orders)


def character(g: GroupSpec, alpha: int, x: int) -> complex:
    g.check(alpha)
    g.check(x)
    return complex(g.characters(alpha, x))


def count_involutions(g: GroupSpec) -> int:
    """Number of elements of order exactly 2."""
    x = g.elements()
    return int(np.count_nonzero(g._add(x, x) == 0)) - 1


def as_group(g: GroupSpec | Sequence[int] | str) -> GroupSpec:
    return g if isinstance(g, GroupSpec) else make_group(g)
