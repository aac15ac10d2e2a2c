"""Input validation shared by the estimator, the CLI and library callers."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import DomainError, SchemaError
from .functable import FunctionTable
from .group import GroupSpec, as_group

__all__ = ["check_group", "check_table", "check_tables", "check_seed"]


def check_group(g) -> GroupSpec:
    """Accept a GroupSpec, a list of orders or a literal such as ``"2 2 2"``."""
    return as_group(g)


def check_table(F, g1=None, g2=None) -> FunctionTable:
    """Coerce ``F`` to a FunctionTable.

    A FunctionTable passes through (its groups must match ``g1``/``g2`` when
    given).  Any other sequence of integers needs ``g1``; ``g2`` defaults to
    ``g1``.
    """
    if isinstance(F, FunctionTable):
        if g1 is not None and F.domain != check_group(g1):
            raise SchemaError(f"table domain [{F.domain}] does not match [{check_group(g1)}]")
        if g2 is not None and F.codomain != check_group(g2):
            raise SchemaError(f"table codomain [{F.codomain}] does not match [{check_group(g2)}]")
        return F
    if g1 is None:
        raise SchemaError("a raw value table needs its groups")
    g1 = check_group(g1)
    g2 = g1 if g2 is None else check_group(g2)
    arr = np.asarray(F)
    if arr.ndim != 1:
        raise SchemaError(f"a value table must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise SchemaError("table values must be integers")
    return FunctionTable(g1, g2, arr.astype(np.int64))


def check_tables(X, g1=None, g2=None) -> list[FunctionTable]:
    """A list of FunctionTables, or a 2-D integer array with one table per row."""
    if isinstance(X, FunctionTable):
        raise SchemaError("expected a collection of tables, got a single table")
    if isinstance(X, np.ndarray):
        if X.ndim != 2:
            raise SchemaError(f"expected a 2-D array of value tables, got shape {X.shape}")
        rows = list(X)
    elif isinstance(X, Sequence) and not isinstance(X, (str, bytes)):
        rows = list(X)
    else:
        raise SchemaError(f"cannot read tables from {type(X).__name__}")
    if not rows:
        raise SchemaError("no tables given")
    return [check_table(r, g1, g2) for r in rows]


def check_seed(seed) -> np.random.Generator:
    """``None``, a non-negative int or a Generator; always returns a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        return np.random.default_rng()
    if isinstance(seed, (bool, np.bool_)) or not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    if seed < 0:
        raise DomainError("seed must be non-negative")
    return np.random.default_rng(int(seed))
