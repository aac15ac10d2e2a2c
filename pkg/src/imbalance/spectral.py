"""Fourier analysis of functions between finite Abelian groups.

Two arithmetic paths are used throughout.  When both groups are ``Z_2^k``
every character value is ``+-1`` and all transforms are exact integer fast
Walsh-Hadamard transforms.  Otherwise values are complex doubles computed
with a multidimensional FFT, one axis per cyclic factor, and any
reconstruction of an exact quantity is reported together with its rounding
distance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, log2

import numpy as np

from .ddt import ddt
from .errors import CapacityError, DomainError, IdentityViolation, InapplicableError
from .functable import FunctionTable, derivative_values
from .group import GroupSpec

__all__ = [
    "FourierTable",
    "NBEstimate",
    "PlateauedProfile",
    "PowerPlateauedResult",
    "CrossIdentityReport",
    "fwht",
    "fourier",
    "linearity",
    "linearity_argmax",
    "nonlinearity",
    "fourth_moment",
    "nb_from_fourth_moment",
    "autocorrelation",
    "nb_from_autocorrelation",
    "second_derivative_charsum",
    "nb_from_second_derivative",
    "cross_identities",
    "parseval_deviation",
    "plateaued_profile",
    "nb_from_plateaued",
    "ambiguity_from_plateaued",
    "power_plateaued_test",
    "nb_power_plateaued",
]

FOURIER_CAP = 2**26
SECOND_DERIVATIVE_CAP = 2**10
IDENTITY_TOLERANCE = 1e-6
TIE_TOLERANCE = 1e-9


def _exact_path(g1: GroupSpec, g2: GroupSpec) -> bool:
    return g1.is_elementary_2 and g2.is_elementary_2


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along axis 0 (length a power of two)."""
    a = np.array(a)
    n = a.shape[0]
    if n & (n - 1):
        raise DomainError("FWHT length must be a power of two")
    tail = a.shape[1:]
    h = 1
    while h < n:
        blocks = a.reshape((n // (2 * h), 2, h) + tail)
        lo, hi = blocks[:, 0], blocks[:, 1]
        a = np.stack([lo + hi, lo - hi], axis=1).reshape((n,) + tail)
        h *= 2
    return a


def _group_transform(g: GroupSpec, a: np.ndarray, sign: int = -1) -> np.ndarray:
    """``sum_x a[x] * chi_alpha(x)^sign`` along axis 0, for every ``alpha``."""
    if g.is_elementary_2 and np.issubdtype(a.dtype, np.integer):
        return fwht(a)
    tail = a.shape[1:]
    shaped = a.reshape(g.orders[::-1] + tail)
    axes = tuple(range(g.rank))
    if sign < 0:
        out = np.fft.fftn(shaped, axes=axes)
    else:
        out = np.fft.ifftn(shaped, axes=axes) * g.order
    return out.reshape((g.order,) + tail)


def _output_characters(F: FunctionTable) -> np.ndarray:
    """``psi_beta(F(x))`` as a ``|G1| x |G2|`` matrix."""
    g2 = F.codomain
    beta = g2.elements()
    if g2.is_elementary_2:
        return g2.sign_characters(beta[None, :], F.values[:, None])
    return g2.characters(beta[None, :], F.values[:, None])


@dataclass(frozen=True, eq=False)
class FourierTable:
    """``values[alpha, beta] = sum_x psi_beta(F(x)) * conj(chi_alpha(x))``."""

    function: FunctionTable
    values: np.ndarray
    exact: bool

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)

    def squared(self) -> np.ndarray:
        if self.exact:
            return self.values * self.values
        return np.abs(self.values) ** 2


def fourier(F: FunctionTable) -> FourierTable:
    g1, g2 = F.domain, F.codomain
    if g1.order * g2.order > FOURIER_CAP:
        raise CapacityError(f"|G1||G2| = {g1.order * g2.order} exceeds 2^26")
    exact = _exact_path(g1, g2)
    psi = _output_characters(F)
    table = _group_transform(g1, psi) if exact else _group_transform(g1, psi.astype(np.complex128))
    table.setflags(write=False)
    return FourierTable(F, table, exact)


def linearity(ft: FourierTable):
    """``max |F^(alpha, beta)|`` over all ``alpha`` and ``beta != 0``."""
    mags = ft.magnitudes()[:, 1:]
    top = mags.max()
    return int(top) if ft.exact else float(top)


def linearity_argmax(ft: FourierTable) -> list[tuple[int, int]]:
    """All maximising ``(beta, alpha)`` pairs, sorted."""
    mags = ft.magnitudes()
    top = linearity(ft)
    hit = mags == top if ft.exact else np.abs(mags - top) <= TIE_TOLERANCE * top
    hit[:, 0] = False
    alphas, betas = np.nonzero(hit)
    return sorted(zip(betas.tolist(), alphas.tolist()))


def nonlinearity(ft: FourierTable, convention: str = "normalized") -> float:
    """``(|G1| - L) / |G2|`` or, for binary functions, ``2^(n-1) - L/2``."""
    g1, g2 = ft.function.domain, ft.function.codomain
    lin = linearity(ft)
    if convention == "normalized":
        return (g1.order - lin) / g2.order
    if convention in ("classical", "classical-binary"):
        if not _exact_path(g1, g2):
            raise InapplicableError("classical nonlinearity needs binary groups")
        return g1.order / 2 - lin / 2
    raise ValueError(f"unknown convention {convention!r}")


def fourth_moment(ft: FourierTable):
    """``sum_{alpha, beta} |F^(alpha, beta)|^4`` (a Python int on the exact path)."""
    sq = ft.squared()
    if ft.exact:
        if int(sq.max()) < 2**31:
            return int(np.sum(sq * sq, dtype=np.int64))
        return sum(int(v) * int(v) for v in sq.ravel())
    return float(np.sum(sq * sq))


@dataclass(frozen=True)
class NBEstimate:
    """``NB_F`` reconstructed from a character sum.

    ``value`` is exact on the integer path; on the complex path it is ``raw``
    rounded to the nearest multiple of ``1/|G2|`` and ``rounding_distance``
    records how far ``raw`` was from it.
    """

    value: Fraction
    raw: float
    rounding_distance: float
    exact: bool


def _nb_estimate(total, scale: int, g1: GroupSpec, g2: GroupSpec, exact: bool) -> NBEstimate:
    """``NB = total/scale - |G1|^2 - (|G1|-1)|G1|^2/|G2|``."""
    n1, n2 = g1.order, g2.order
    offset = n1 * n1 + Fraction((n1 - 1) * n1 * n1, n2)
    if exact:
        value = Fraction(int(total), scale) - offset
        return NBEstimate(value, float(value), 0.0, True)
    raw = float(np.real(total)) / scale - float(offset)
    value = Fraction(round(raw * n2), n2)
    return NBEstimate(value, raw, abs(raw - float(value)), False)


def nb_from_fourth_moment(ft: FourierTable) -> NBEstimate:
    g1, g2 = ft.function.domain, ft.function.codomain
    return _nb_estimate(fourth_moment(ft), g1.order * g2.order, g1, g2, ft.exact)


def _derivative_histograms(F: FunctionTable) -> np.ndarray:
    g1, g2 = F.domain, F.codomain
    hist = np.empty((g1.order, g2.order), dtype=np.int64)
    for a in range(g1.order):
        hist[a] = np.bincount(derivative_values(F, a), minlength=g2.order)
    return hist


def autocorrelation(F: FunctionTable) -> np.ndarray:
    """``C_F(alpha, beta) = sum_x psi_beta(D_alpha F(x))``."""
    g1, g2 = F.domain, F.codomain
    if g1.order * g2.order > FOURIER_CAP:
        raise CapacityError(f"|G1||G2| = {g1.order * g2.order} exceeds 2^26")
    hist = _derivative_histograms(F)
    if _exact_path(g1, g2):
        return fwht(hist.T).T
    return _group_transform(g2, hist.T.astype(np.complex128), sign=+1).T


def nb_from_autocorrelation(F: FunctionTable, C: np.ndarray | None = None) -> NBEstimate:
    g1, g2 = F.domain, F.codomain
    C = autocorrelation(F) if C is None else C
    exact = np.issubdtype(C.dtype, np.integer)
    total = int(np.sum(C * C, dtype=np.int64)) if exact else float(np.sum(np.abs(C) ** 2))
    return _nb_estimate(total, g2.order, g1, g2, exact)


def second_derivative_charsum(F: FunctionTable):
    """``S = sum_beta sum_{a,b,x} psi_beta(D_a D_b F(x))``; real by symmetry."""
    g1, g2 = F.domain, F.codomain
    if g1.order > SECOND_DERIVATIVE_CAP:
        raise CapacityError(f"|G1| = {g1.order} exceeds the second-derivative cap 2^10")
    x = g1.elements()
    shifts = g1._add(x[:, None], x[None, :])  # shifts[b, x] = x + b
    fxb = F.values[shifts]
    hist = np.zeros(g2.order, dtype=np.int64)
    for a in range(g1.order):
        xa = g1._add(x, a)
        xab = g1._add(shifts, a)
        v = g2._sub(g2._add(F.values[xab], F.values[None, :]), g2._add(F.values[xa][None, :], fxb))
        hist += np.bincount(v.ravel(), minlength=g2.order)
    if _exact_path(g1, g2):
        return int(np.sum(fwht(hist), dtype=np.int64))
    total = complex(np.sum(_group_transform(g2, hist.astype(np.complex128), sign=+1)))
    if abs(total.imag) > IDENTITY_TOLERANCE * max(1.0, abs(total)):
        raise IdentityViolation(f"second-derivative character sum is not real: {total}")
    return total.real


def nb_from_second_derivative(F: FunctionTable, S=None) -> NBEstimate:
    g1, g2 = F.domain, F.codomain
    S = second_derivative_charsum(F) if S is None else S
    return _nb_estimate(S, g2.order, g1, g2, isinstance(S, (int, np.integer)))


@dataclass(frozen=True)
class CrossIdentityReport:
    """The four expressions of ``sum_{a,b} delta_F(a, b)^2`` and their agreement."""

    square_sum: int
    fourth_moment: float
    autocorrelation: float
    second_derivative: float | None
    max_relative_deviation: float
    exact: bool
    nb: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "square_sum": self.square_sum,
            "fourth_moment": self.fourth_moment,
            "autocorrelation": self.autocorrelation,
            "second_derivative": self.second_derivative,
            "max_relative_deviation": self.max_relative_deviation,
            "exact": self.exact,
        }


def cross_identities(F: FunctionTable, ft: FourierTable | None = None, *, raise_on_violation: bool = True) -> CrossIdentityReport:
    g1, g2 = F.domain, F.codomain
    ft = fourier(F) if ft is None else ft
    square_sum = ddt(F).sum_of_squares()
    n1n2 = g1.order * g2.order
    m4 = fourth_moment(ft)
    C = autocorrelation(F)
    exact = ft.exact
    if exact:
        ac = int(np.sum(C * C, dtype=np.int64))
        values = {"fourth_moment": Fraction(m4, n1n2), "autocorrelation": Fraction(ac, g2.order)}
    else:
        ac = float(np.sum(np.abs(C) ** 2))
        values = {"fourth_moment": m4 / n1n2, "autocorrelation": ac / g2.order}
    S = None
    if g1.order <= SECOND_DERIVATIVE_CAP:
        S = second_derivative_charsum(F)
        values["second_derivative"] = Fraction(S, g2.order) if exact else S / g2.order
    dev = max(abs(float(v) - square_sum) / max(1, square_sum) for v in values.values())
    if exact and any(v != square_sum for v in values.values()):
        dev = max(dev, 1.0)
    report = CrossIdentityReport(
        square_sum=square_sum,
        fourth_moment=float(values["fourth_moment"]),
        autocorrelation=float(values["autocorrelation"]),
        second_derivative=None if S is None else float(values["second_derivative"]),
        max_relative_deviation=dev,
        exact=exact,
        nb={
            "fourth_moment": nb_from_fourth_moment(ft),
            "autocorrelation": nb_from_autocorrelation(F, C),
            **({} if S is None else {"second_derivative": nb_from_second_derivative(F, S)}),
        },
    )
    if raise_on_violation and dev > IDENTITY_TOLERANCE:
        raise IdentityViolation(f"four-way identity violated (relative deviation {dev:.3g})")
    return report


def parseval_deviation(ft: FourierTable) -> float:
    """Largest relative deviation of ``sum_alpha |F^(alpha, beta)|^2`` from ``|G1|^2``.

    The principal column is included: it must equal ``|G1|`` at ``alpha = 0``
    and vanish elsewhere.
    """
    n1 = ft.function.domain.order
    col_sums = ft.squared().sum(axis=0)
    dev = float(np.max(np.abs(col_sums.astype(np.float64) - n1 * n1))) / (n1 * n1)
    principal = np.abs(ft.values[:, 0]).astype(np.float64)
    principal[0] -= n1
    return max(dev, float(np.max(np.abs(principal))) / n1)


@dataclass(frozen=True)
class PlateauedProfile:
    """Per nonzero ``beta``: whether the component is plateaued and its squared amplitude."""

    n: int
    m: int
    plateaued: dict[int, bool]
    mu_squared: dict[int, int | None]

    @property
    def vectorial(self) -> bool:
        return all(self.plateaued.values())

    def amplitude(self, beta: int) -> float | None:
        sq = self.mu_squared[beta]
        if sq is None:
            return None
        r = isqrt(sq)
        return r if r * r == sq else sq**0.5

    def to_json(self) -> dict:
        return {
            "vectorial": self.vectorial,
            "amplitudes": {str(b): self.amplitude(b) for b in sorted(self.mu_squared)},
        }


def _binary_dims(F: FunctionTable) -> tuple[int, int]:
    if not _exact_path(F.domain, F.codomain):
        raise InapplicableError("plateaued analysis needs binary groups")
    return int(log2(F.domain.order)), int(log2(F.codomain.order))


def plateaued_profile(F: FunctionTable, ft: FourierTable | None = None) -> PlateauedProfile:
    n, m = _binary_dims(F)
    ft = fourier(F) if ft is None else ft
    sq = ft.squared()
    flags, amps = {}, {}
    for beta in range(1, F.codomain.order):
        vals = np.unique(sq[:, beta])
        vals = vals[vals != 0]
        flags[beta] = vals.shape[0] == 1
        amps[beta] = int(vals[0]) if flags[beta] else None
    return PlateauedProfile(n, m, flags, amps)


def nb_from_plateaued(profile: PlateauedProfile) -> Fraction:
    """``2^(n-m) sum_beta mu_beta^2 - 2^(2n-m) (2^m - 1)``; for ``m = 1`` this is ``2^(n-1)(mu^2 - 2^n)``."""
    if not profile.vectorial:
        raise InapplicableError("some component function is not plateaued")
    n, m = profile.n, profile.m
    total = sum(profile.mu_squared.values())
    return Fraction(2**n, 2**m) * total - Fraction(2 ** (2 * n), 2**m) * (2**m - 1)


def ambiguity_from_plateaued(profile: PlateauedProfile) -> Fraction:
    if not profile.vectorial:
        raise InapplicableError("some component function is not plateaued")
    n, m = profile.n, profile.m
    total = sum(profile.mu_squared.values())
    return (
        Fraction(2**n, 2 ** (m + 1)) * total
        + Fraction(2 ** (3 * n), 2 ** (m + 1))
        - 2 ** (n - 1) * (2 ** (n + 1) - 1)
    )


@dataclass(frozen=True)
class PowerPlateauedResult:
    plateaued: bool
    delta_11: int
    nb: Fraction
    ambiguity: int
    uncorrected_nb: Fraction


def power_plateaued_test(F: FunctionTable, m: int | None = None) -> PowerPlateauedResult:
    """Decide plateauedness of a binary power map by comparing two collision counts.

    For every ``v`` the number of ``(a, b)`` with ``D_a F(b) + D_a F(1) = v``
    must equal the number with ``D_a F(b) + D_a F(0) = v``.
    """
    if F.meta.get("family") != "power" or F.meta.get("field", {}).get("p") != 2:
        raise InapplicableError("needs a power map over GF(2^n) built by build_power")
    n, m_cod = _binary_dims(F)
    m = m_cod if m is None else m
    g1, g2 = F.domain, F.codomain
    at_one = np.zeros(g2.order, dtype=np.int64)
    at_zero = np.zeros(g2.order, dtype=np.int64)
    for a in range(g1.order):
        da = derivative_values(F, a)
        at_one += np.bincount(da ^ da[1], minlength=g2.order)
        at_zero += np.bincount(da ^ da[0], minlength=g2.order)
    plateaued = bool(np.array_equal(at_one, at_zero))
    d11 = int(np.count_nonzero(derivative_values(F, 1) == 1))
    q = 2**n
    nb = q * (q - 1) * d11 - Fraction(2 ** (2 * n), 2**m) * (q - 1)
    uncorrected = q * (q - 1) * (d11 - 1) - Fraction(2 ** (2 * n), 2**m) * (q - 1)
    amb = 2 ** (n - 1) * (q - 1) * (d11 - 1)
    return PowerPlateauedResult(plateaued, d11, nb, amb, uncorrected)


def nb_power_plateaued(F: FunctionTable) -> Fraction:
    res = power_plateaued_test(F)
    if not res.plateaued:
        raise InapplicableError("power map is not plateaued")
    return res.nb
