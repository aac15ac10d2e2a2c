"""Dense value tables for functions between finite Abelian groups.

A :class:`FunctionTable` stores ``F(x)`` as a codomain index for every domain
index ``x``.  Tables are read-only; every transform returns a new table.

Random generation uses numpy's ``default_rng`` (PCG64), so a given integer
seed always reproduces the same table.
"""

from __future__ import annotations

from typing import Any, Mapping

import numpy as np

from .errors import DomainError, InvalidTransformError, NotAFunctionError, SchemaError
from .group import GroupSpec, as_group, product_group

__all__ = [
    "FunctionTable",
    "AffineMap",
    "derivative",
    "second_derivative",
    "ea_transform",
    "ccz_transform",
    "ea_as_ccz",
    "swap_coordinates",
    "random_function",
    "random_bijection",
    "random_linear",
    "random_affine",
    "random_ccz_equivalent",
]

_EXHAUSTIVE_ADDITIVITY = 64
_SPOT_CHECK_PAIRS = 10_000


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


class FunctionTable:
    """``F: domain -> codomain`` given by its value table."""

    __slots__ = ("domain", "codomain", "values", "meta")

    def __init__(self, domain, codomain, values, meta: Mapping[str, Any] | None = None):
        self.domain = as_group(domain)
        self.codomain = as_group(codomain)
        arr = np.array(values, dtype=np.int64).reshape(-1)
        if arr.shape[0] != self.domain.order:
            raise SchemaError(
                f"table has {arr.shape[0]} entries, domain has {self.domain.order} elements"
            )
        if arr.size and (arr.min() < 0 or arr.max() >= self.codomain.order):
            raise SchemaError(f"table value out of range [0, {self.codomain.order})")
        arr.setflags(write=False)
        self.values = arr
        self.meta = dict(meta or {})

    def __call__(self, x):
        out = self.values[x]
        return int(out) if np.ndim(out) == 0 else out

    def __len__(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    def __repr__(self) -> str:
        head = " ".join(map(str, self.values[:16]))
        more = " ..." if len(self) > 16 else ""
        return f"FunctionTable(G1=[{self.domain}], G2=[{self.codomain}], map={head}{more})"

    def preimage_counts(self) -> np.ndarray:
        return np.bincount(self.values, minlength=self.codomain.order)

    @property
    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and bool(np.all(self.preimage_counts() == 1))

    def with_meta(self, **meta) -> "FunctionTable":
        return FunctionTable(self.domain, self.codomain, self.values, {**self.meta, **meta})


def derivative_values(F: FunctionTable, a: int) -> np.ndarray:
    x = F.domain.elements()
    return F.codomain._sub(F.values[F.domain._add(x, a)], F.values)


def derivative(F: FunctionTable, a: int) -> FunctionTable:
    """``D_a F(x) = F(x + a) - F(x)``."""
    F.domain.check(a)
    return FunctionTable(F.domain, F.codomain, derivative_values(F, a))


def second_derivative(F: FunctionTable, a: int, b: int) -> FunctionTable:
    """``D_a D_b F(x) = F(x+a+b) - F(x+a) - F(x+b) + F(x)``."""
    g1, g2 = F.domain, F.codomain
    g1.check(a)
    g1.check(b)
    x = g1.elements()
    xa = g1._add(x, a)
    xb = g1._add(x, b)
    xab = g1._add(xa, b)
    v = g2._sub(g2._add(F.values[xab], F.values), g2._add(F.values[xa], F.values[xb]))
    return FunctionTable(g1, g2, v)


class AffineMap(FunctionTable):
    """A table ``A`` with ``A(x + y) = A(x) + A(y) + c`` for a fixed ``c``.

    Additivity of ``A - A(0)`` is checked on construction: exhaustively when
    the domain has at most 64 elements, on 10^4 seeded random pairs otherwise.
    """

    __slots__ = ()

    def __init__(self, domain, codomain, values, meta=None, *, check: bool = True):
        super().__init__(domain, codomain, values, meta)
        if check and not self._additive():
            raise InvalidTransformError("table is not affine")

    def _additive(self) -> bool:
        g1, g2 = self.domain, self.codomain
        lin = g2._sub(self.values, self.values[0])
        if g1.order <= _EXHAUSTIVE_ADDITIVITY:
            x = np.repeat(g1.elements(), g1.order)
            y = np.tile(g1.elements(), g1.order)
        else:
            rng = np.random.default_rng(0)
            x = rng.integers(0, g1.order, _SPOT_CHECK_PAIRS)
            y = rng.integers(0, g1.order, _SPOT_CHECK_PAIRS)
        return bool(np.array_equal(lin[g1._add(x, y)], g2._add(lin[x], lin[y])))

    @property
    def constant(self) -> int:
        """The translation part ``A(0)``."""
        return int(self.values[0])

    def linear_part(self) -> "AffineMap":
        return AffineMap(
            self.domain, self.codomain, self.codomain._sub(self.values, self.constant), check=False
        )

    def inverse(self) -> "AffineMap":
        if not self.is_bijective:
            raise InvalidTransformError("affine map is not a permutation")
        inv = np.empty_like(self.values)
        inv[self.values] = self.domain.elements()
        return AffineMap(self.codomain, self.domain, inv, check=False)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self o inner``."""
        if inner.codomain != self.domain:
            raise InvalidTransformError("cannot compose: group mismatch")
        return AffineMap(inner.domain, self.codomain, self.values[inner.values], check=False)

    def negated(self) -> "AffineMap":
        return AffineMap(self.domain, self.codomain, self.codomain._neg(self.values), check=False)

    @classmethod
    def identity(cls, g: GroupSpec) -> "AffineMap":
        g = as_group(g)
        return cls(g, g, g.elements(), check=False)

    @classmethod
    def constant_map(cls, g1: GroupSpec, g2: GroupSpec, c: int = 0) -> "AffineMap":
        g1, g2 = as_group(g1), as_group(g2)
        g2.check(c)
        return cls(g1, g2, np.full(g1.order, c, dtype=np.int64), check=False)

    @classmethod
    def from_generators(cls, g1, g2, images, constant: int = 0) -> "AffineMap":
        """The affine map sending the ``j``-th unit vector to ``images[j]`` (plus ``constant``).

        ``images[j]`` must be killed by the order of the ``j``-th cyclic factor.
        """
        g1, g2 = as_group(g1), as_group(g2)
        images = np.asarray(images, dtype=np.int64)
        if images.shape != (g1.rank,):
            raise InvalidTransformError("need one image per cyclic factor of the domain")
        g2.check(images)
        g2.check(constant)
        for n, h in zip(g1.orders, images):
            if g2.mul(n, int(h)) != 0:
                raise InvalidTransformError(f"image {h} is not killed by {n}")
        lin = g2.encode(g1.decode(g1.elements()) @ g2.decode(images))
        return cls(g1, g2, g2._add(np.asarray(lin), constant), check=False)


def ea_transform(F: FunctionTable, A1: AffineMap, A2: AffineMap, A3: AffineMap) -> FunctionTable:
    """``A2 o F o A1 + A3`` for affine permutations ``A1``, ``A2`` and affine ``A3``."""
    g1, g2 = F.domain, F.codomain
    if (A1.domain, A1.codomain) != (g1, g1) or (A2.domain, A2.codomain) != (g2, g2):
        raise InvalidTransformError("A1 must act on G1 and A2 on G2")
    if (A3.domain, A3.codomain) != (g1, g2):
        raise InvalidTransformError("A3 must map G1 to G2")
    if not A1.is_bijective or not A2.is_bijective:
        raise InvalidTransformError("A1 and A2 must be permutations")
    values = g2._add(A2.values[F.values[A1.values]], A3.values)
    return FunctionTable(g1, g2, values)


def ccz_transform(F: FunctionTable, L: AffineMap) -> FunctionTable:
    """Apply the affine permutation ``L`` of ``G1 x G2`` to the graph of ``F``."""
    g1, g2 = F.domain, F.codomain
    pg = product_group(g1, g2)
    if L.domain != pg or L.codomain != pg:
        raise InvalidTransformError("L must act on G1 x G2")
    if not L.is_bijective:
        raise InvalidTransformError("L must be a permutation")
    graph = g1.elements() + g1.order * F.values
    image = L.values[graph]
    first = image % g1.order
    second = image // g1.order
    if not np.array_equal(np.sort(first), g1.elements()):
        raise NotAFunctionError("transformed graph is not the graph of a function")
    values = np.empty(g1.order, dtype=np.int64)
    values[first] = second
    return FunctionTable(g1, g2, values)


def ea_as_ccz(A1: AffineMap, A2: AffineMap, A3: AffineMap) -> AffineMap:
    """The graph map ``(x, y) -> (A1^-1(x), A2(y) + A3(A1^-1(x)))``."""
    g1, g2 = A1.domain, A2.domain
    pg = product_group(g1, g2)
    idx = pg.elements()
    x, y = idx % g1.order, idx // g1.order
    z = A1.inverse().values[x]
    second = g2._add(A2.values[y], A3.values[z])
    return AffineMap(pg, pg, z + g1.order * second, check=False)


def swap_coordinates(g: GroupSpec) -> AffineMap:
    """``(x, y) -> (y, x)`` on ``G x G``; maps the graph of a permutation to its inverse."""
    g = as_group(g)
    pg = product_group(g, g)
    idx = pg.elements()
    x, y = idx % g.order, idx // g.order
    return AffineMap(pg, pg, y + g.order * x, check=False)


def random_function(g1, g2, seed=None) -> FunctionTable:
    g1, g2 = as_group(g1), as_group(g2)
    return FunctionTable(g1, g2, _rng(seed).integers(0, g2.order, g1.order))


def random_bijection(g, seed=None) -> FunctionTable:
    g = as_group(g)
    return FunctionTable(g, g, _rng(seed).permutation(g.order))


def random_linear(g1, g2, seed=None) -> AffineMap:
    """A uniformly random homomorphism ``G1 -> G2``."""
    g1, g2 = as_group(g1), as_group(g2)
    rng = _rng(seed)
    elems = g2.elements()
    images = []
    for n in g1.orders:
        # admissible images of a generator of Z_n
        ok = elems[g2.encode(g2.decode(elems) * n) == 0]
        images.append(int(ok[rng.integers(0, ok.shape[0])]))
    return AffineMap.from_generators(g1, g2, images)


def random_affine(g1, g2, seed=None, *, bijective: bool = False, max_tries: int = 10_000) -> AffineMap:
    g1, g2 = as_group(g1), as_group(g2)
    if bijective and g1.order != g2.order:
        raise DomainError("an affine bijection needs |G1| = |G2|")
    rng = _rng(seed)
    for _ in range(max_tries):
        lin = random_linear(g1, g2, rng)
        if bijective and not lin.is_bijective:
            continue
        c = int(rng.integers(0, g2.order))
        return AffineMap(g1, g2, g2._add(lin.values, c), check=False)
    raise InvalidTransformError("no affine bijection found; the groups may not be isomorphic")


def random_ccz_equivalent(F: FunctionTable, seed=None, *, max_tries: int = 100_000) -> tuple[FunctionTable, AffineMap]:
    """Sample affine permutations of ``G1 x G2`` until one maps the graph of ``F`` to a graph."""
    rng = _rng(seed)
    pg = product_group(F.domain, F.codomain)
    for _ in range(max_tries):
        L = random_affine(pg, pg, rng, bijective=True)
        try:
            return ccz_transform(F, L), L
        except NotAFunctionError:
            continue
    raise NotAFunctionError(f"no graph-preserving map found in {max_tries} tries")
