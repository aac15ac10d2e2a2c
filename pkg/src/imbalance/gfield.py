"""Finite fields GF(p^n) on top of the additive group Z_p^n, and the power-map families.

An element is identified with the group index of its coordinate vector in the
polynomial basis ``{1, X, X^2, ...}`` (little-endian), so for ``p = 2`` the
index is the usual byte/word representation.  Multiplication goes through
log/antilog tables built from a primitive element that is verified to have
order ``p^n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .errors import CapacityError, DomainError, InvalidModulusError
from .functable import FunctionTable
from .group import GroupSpec, _is_prime, make_group

__all__ = [
    "FieldSpec",
    "make_field",
    "parse_field",
    "fmul",
    "fpow",
    "finv",
    "trace",
    "build_power",
    "build_inverse",
    "build_gold",
    "build_quadratic",
    "build_projection",
    "DEFAULT_POLYS",
]

MAX_FIELD_SIZE = 2**16

# Coefficients low-to-high, monic.  p = 2 entries are primitive except n = 8,
# which is the AES modulus x^8 + x^4 + x^3 + x + 1.
DEFAULT_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (5, 1): (0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (2, 0, 0, 0, 1),
    (7, 1): (0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (2, 0, 0, 1),
    (7, 4): (1, 1, 0, 0, 1),
}


# -- polynomials over Z_p, coefficient lists low-to-high ------------------------
def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    inv_lead = pow(f[-1], -1, p)
    df = len(f) - 1
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        s = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[s + i] = (a[s + i] - c * fi) % p
        _trim(a)
    return a


def _polymulmod(a, b, f, p) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _polymod(out, f, p)


def _polypowmod(a, e: int, f, p) -> list[int]:
    result, base = [1], _polymod(list(a), f, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def _polygcd(a, b, p) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polysub(a, b, p) -> list[int]:
    size = max(len(a), len(b))
    a = list(a) + [0] * (size - len(a))
    b = list(b) + [0] * (size - len(b))
    return _trim([(u - v) % p for u, v in zip(a, b)])


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over Z_p."""
    f = list(f)
    n = len(f) - 1
    if n == 1:
        return True
    x = [0, 1]

    def frobenius_power(k: int) -> list[int]:
        h = x
        for _ in range(k):
            h = _polypowmod(h, p, f, p)
        return h

    if _polysub(frobenius_power(n), x, p):
        return False
    for r in _prime_factors(n):
        diff = _polysub(frobenius_power(n // r), x, p)
        if len(_polygcd(f, diff, p)) != 1:
            return False
    return True


def _first_irreducible(p: int, n: int) -> tuple[int, ...]:
    for code in range(p**n):
        tail = [(code // p**i) % p for i in range(n)]
        if n > 1 and tail[0] == 0:
            continue
        f = tail + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise InvalidModulusError(f"no irreducible polynomial of degree {n} over Z_{p}")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    p: int
    n: int
    poly: tuple[int, ...]
    group: GroupSpec
    generator: int
    antilog: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.n, self.poly) == (other.p, other.n, other.poly)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.poly))

    def describe(self) -> dict:
        return {"p": self.p, "n": self.n, "poly": list(self.poly)}

    def elements(self) -> np.ndarray:
        return self.group.elements()

    def add(self, x, y):
        return self.group.add(x, y)

    def mul(self, x, y):
        self.group.check(x)
        self.group.check(y)
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        e = (self.log[x] + self.log[y]) % (self.q - 1)
        out = np.where((x == 0) | (y == 0), 0, self.antilog[e])
        return int(out) if out.ndim == 0 else out

    def pow(self, x, d: int):
        if d < 0:
            raise DomainError("negative exponent; use finv")
        self.group.check(x)
        x = np.asarray(x, dtype=np.int64)
        e = (self.log[x] * (d % (self.q - 1))) % (self.q - 1)
        out = np.where(x == 0, 1 if d == 0 else 0, self.antilog[e])
        return int(out) if out.ndim == 0 else out

    def inv(self, x):
        self.group.check(x)
        x = np.asarray(x, dtype=np.int64)
        out = np.where(x == 0, 0, self.antilog[(-self.log[x]) % (self.q - 1)])
        return int(out) if out.ndim == 0 else out

    def trace(self, x, m: int = 1):
        """``Tr_m^n(x) = x + x^(p^m) + ... + x^(p^(n-m))``, an element of the subfield GF(p^m)."""
        if m < 1 or self.n % m:
            raise DomainError(f"m={m} does not divide n={self.n}")
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros_like(x)
        for k in range(self.n // m):
            acc = self.group._add(acc, self.pow(x, self.p ** (m * k)))
        acc = np.asarray(acc)
        return int(acc) if acc.ndim == 0 else acc

    def subfield_coordinates(self, m: int) -> np.ndarray:
        """Map GF(p^m) inside this field onto ``Z_p^m`` indices (-1 off the subfield).

        Coordinates are taken in the basis ``1, w, ..., w^(m-1)`` with
        ``w = generator^((q-1)/(p^m-1))``.
        """
        if m < 1 or self.n % m:
            raise DomainError(f"m={m} does not divide n={self.n}")
        w = int(self.antilog[((self.q - 1) // (self.p**m - 1)) % (self.q - 1)])
        basis = [self.pow(w, j) for j in range(m)]
        sub = make_group([self.p] * m)
        out = np.full(self.q, -1, dtype=np.int64)
        for idx in range(sub.order):
            coords = sub.decode(idx)
            elem = 0
            for c, b in zip(coords, basis):
                for _ in range(int(c)):
                    elem = self.group._add(elem, b)
            out[elem] = idx
        return out


def _mul_matrix(c_digits: list[int], f: Sequence[int], p: int, n: int) -> np.ndarray:
    """Matrix ``M`` with ``digits(c * y) = M @ digits(y) mod p``."""
    cols, cur = [], list(c_digits)
    for _ in range(n):
        cols.append(cur + [0] * (n - len(cur)))
        cur = _polymod([0] + cur, f, p)
    return np.asarray(cols, dtype=np.int64).T


def _digits(x: int, p: int, n: int) -> list[int]:
    return _trim([(x // p**i) % p for i in range(n)])


def _build_tables(p: int, n: int, f: Sequence[int], group: GroupSpec):
    q = p**n
    if q == 2:
        return 1, np.array([1], dtype=np.int64)
    order = q - 1
    factors = _prime_factors(order)
    place = np.asarray(group.weights, dtype=np.int64)

    def has_full_order(g: int) -> bool:
        gd = _digits(g, p, n)
        return all(_polypowmod(gd, order // r, f, p) != [1] for r in factors) and _polypowmod(gd, order, f, p) == [1]

    for g in range(1, q):
        if has_full_order(g):
            break
    else:
        raise InvalidModulusError("no element of order p^n - 1; modulus is reducible")

    # powers by doubling: rows k and k+L differ by multiplication with g^L
    powers = np.zeros((1, n), dtype=np.int64)
    powers[0, 0] = 1
    step = _mul_matrix(_digits(g, p, n), f, p, n)
    while powers.shape[0] < order:
        powers = np.vstack([powers, (powers @ step.T) % p])
        step = (step @ step) % p
    antilog = powers[:order] @ place
    log = np.full(q, -1, dtype=np.int64)
    log[antilog] = np.arange(order, dtype=np.int64)
    if np.count_nonzero(log[1:] >= 0) != order:
        raise InvalidModulusError("powers of the generator do not cover the field")
    return g, antilog


def make_field(p: int, n: int, poly: Sequence[int] | None = None) -> FieldSpec:
    """GF(p^n) with the given monic modulus (coefficients low-to-high) or the default one."""
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n < 1:
        raise DomainError("degree must be >= 1")
    if p**n > MAX_FIELD_SIZE:
        raise CapacityError(f"p^n = {p**n} exceeds 2^16")
    if poly is None:
        poly = DEFAULT_POLYS.get((p, n)) or _first_irreducible(p, n)
    poly = tuple(int(c) % p for c in poly)
    if len(poly) != n + 1 or poly[-1] != 1:
        raise InvalidModulusError(f"modulus must be monic of degree {n}")
    if not is_irreducible(poly, p):
        raise InvalidModulusError(f"modulus {poly} is reducible over Z_{p}")
    group = make_group([p] * n)
    gen, antilog = _build_tables(p, n, poly, group)
    log = np.full(p**n, -1, dtype=np.int64)
    log[antilog] = np.arange(antilog.shape[0], dtype=np.int64)
    antilog.setflags(write=False)
    log.setflags(write=False)
    return FieldSpec(p, n, poly, group, gen, antilog, log)


def parse_field(text: str, poly: str | None = None) -> FieldSpec:
    """Parse the CLI literals ``"2^3"`` and ``"1,1,0,1"``."""
    try:
        p_s, _, n_s = text.partition("^")
        p, n = int(p_s), int(n_s or 1)
        coeffs = None if poly is None else [int(c) for c in poly.split(",")]
    except ValueError as exc:
        raise DomainError(f"bad field literal {text!r}") from exc
    return make_field(p, n, coeffs)


def fmul(f: FieldSpec, x, y):
    return f.mul(x, y)


def fpow(f: FieldSpec, x, d: int):
    return f.pow(x, d)


def finv(f: FieldSpec, x):
    """Multiplicative inverse with ``finv(0) = 0``."""
    return f.inv(x)


def trace(f: FieldSpec, m: int, x):
    return f.trace(x, m)


def _quadratic_exponent(p: int, n: int, d: int) -> tuple[int, int] | None:
    """``(i, j)`` with ``d = p^i + p^j``, ``i >= j`` (``i > j`` in characteristic 2)."""
    for i in range(n):
        for j in range(i + 1):
            if p**i + p**j == d and (p != 2 or i > j):
                return i, j
    return None


def build_power(f: FieldSpec, d: int) -> FunctionTable:
    """The power map ``x -> x^d`` as a table on the additive group."""
    if d < 0:
        raise DomainError("exponent must be >= 0")
    if d >= 2**63:
        raise CapacityError("exponent does not fit in 64 bits")
    meta = {"family": "power", "exponent": int(d), "field": f.describe()}
    quad = _quadratic_exponent(f.p, f.n, d)
    if quad is not None:
        meta["quadratic"] = list(quad)
    return FunctionTable(f.group, f.group, f.pow(f.elements(), d), meta)


def build_inverse(f: FieldSpec) -> FunctionTable:
    """``x -> x^-1`` with ``0 -> 0`` (equal to ``x^(q-2)``)."""
    F = FunctionTable(f.group, f.group, f.inv(f.elements()))
    return F.with_meta(family="power", exponent=f.q - 2, inverse=True, field=f.describe())


def build_gold(f: FieldSpec, i: int) -> FunctionTable:
    """``x -> x^(2^i + 1)`` over GF(2^n)."""
    if f.p != 2:
        raise DomainError("Gold maps are defined in characteristic 2")
    if i < 1:
        raise DomainError("Gold parameter i must be >= 1")
    return build_power(f, 2**i + 1).with_meta(gold=i)


def build_quadratic(f: FieldSpec, i: int, j: int) -> FunctionTable:
    """The Dembowski-Ostrom monomial ``x -> x^(p^i + p^j)`` with ``i > j >= 0``."""
    if not i > j >= 0:
        raise DomainError("need i > j >= 0")
    return build_power(f, f.p**i + f.p**j).with_meta(quadratic=[i, j])


def build_projection(f: FieldSpec, m: int) -> FunctionTable:
    """``Tr_m^n`` as a balanced function GF(p^n) -> GF(p^m)."""
    coords = f.subfield_coordinates(m)
    values = coords[f.trace(f.elements(), m)]
    return FunctionTable(
        f.group, make_group([f.p] * m), values, {"family": "trace", "m": m, "field": f.describe()}
    )


def gcd_exponent(f: FieldSpec, d: int) -> int:
    return gcd(d, f.q - 1)
