"""Imbalance, derivative imbalance, ambiguity and deficiency.

All quantities are exact: ``Nb_F`` and ``NB_F`` are :class:`fractions.Fraction`
values whose denominator divides ``|G2|``; ambiguity and deficiency are ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .ddt import DDTable, DifferentialSpectrum, ddt, deficiency, spectrum
from .errors import CapacityError, IdentityViolation, InapplicableError
from .functable import FunctionTable, derivative
from .group import GroupSpec, count_involutions

__all__ = [
    "IndicatorReport",
    "ThreeValueRelation",
    "imbalance",
    "derivative_imbalance",
    "nb_from_ddt",
    "ambiguity",
    "ambiguity_from_nb",
    "nb_from_ambiguity",
    "per_row_ambiguity",
    "pair_count_oracle",
    "nb_from_pair_count",
    "three_value_relation",
    "optimum_ambiguity_threshold",
    "is_optimum",
    "indicator_report",
]

PAIR_COUNT_CAP = 2**12


def _baseline(n1: int, n2: int) -> Fraction:
    """``(|G1| - 1) |G1|^2 / |G2|``, the balanced-derivative floor of the square sums."""
    return Fraction((n1 - 1) * n1 * n1, n2)


def imbalance(F: FunctionTable) -> Fraction:
    """``Nb_F = sum_b |F^-1(b)|^2 - |G1|^2 / |G2|``."""
    counts = F.preimage_counts().astype(np.int64)
    return int(np.sum(counts * counts)) - Fraction(F.domain.order**2, F.codomain.order)


def derivative_imbalance(F: FunctionTable) -> Fraction:
    """``NB_F``, summing the imbalance of every nonzero derivative."""
    return sum((imbalance(derivative(F, a)) for a in range(1, F.domain.order)), Fraction(0))


def nb_from_ddt(d: DDTable) -> Fraction:
    n1, n2 = d.function.domain.order, d.function.codomain.order
    return d.sum_of_squares(include_zero_row=False) - _baseline(n1, n2)


def ambiguity(F: FunctionTable | DifferentialSpectrum) -> int:
    """``sum_i N_i * C(i, 2)``."""
    s = F if isinstance(F, DifferentialSpectrum) else spectrum(ddt(F))
    return sum(n * comb(i, 2) for i, n in s.N.items())


def ambiguity_from_nb(nb: Fraction, g1: GroupSpec, g2: GroupSpec) -> int:
    n1, n2 = g1.order, g2.order
    value = Fraction(nb) / 2 + Fraction(n1 - 1, 2) * (Fraction(n1 * n1, n2) - n1)
    if value.denominator != 1:
        raise IdentityViolation(f"rescaled ambiguity {value} is not an integer")
    return value.numerator


def nb_from_ambiguity(amb: int, g1: GroupSpec, g2: GroupSpec) -> Fraction:
    n1, n2 = g1.order, g2.order
    return 2 * amb - (n1 - 1) * (Fraction(n1 * n1, n2) - n1)


def per_row_ambiguity(d: DDTable) -> list[int]:
    """Unordered colliding pairs ``{x, y}`` of ``D_a F`` for each ``a != 0``."""
    rows = d.nonzero_rows.astype(np.int64)
    return [int(v) for v in np.sum(rows * (rows - 1) // 2, axis=1)]


def pair_count_oracle(F: FunctionTable) -> int:
    """``sum_{a in G1} #{(x, y) : D_a F(x) = D_a F(y)}`` by direct pair comparison."""
    n1 = F.domain.order
    if n1 > PAIR_COUNT_CAP:
        raise CapacityError(f"|G1| = {n1} exceeds the pair-count cap {PAIR_COUNT_CAP}")
    g1, g2 = F.domain, F.codomain
    x = g1.elements()
    total = 0
    for a in range(n1):
        da = g2._sub(F.values[g1._add(x, a)], F.values)
        total += int(np.count_nonzero(da[:, None] == da[None, :]))
    return total


def nb_from_pair_count(F: FunctionTable) -> Fraction:
    n1, n2 = F.domain.order, F.codomain.order
    return pair_count_oracle(F) - n1 * n1 - _baseline(n1, n2)


@dataclass(frozen=True)
class ThreeValueRelation:
    """Closed forms available when nonzero-row DDT entries take at most two nonzero values."""

    item: int
    values: tuple[int, ...]
    holds: bool
    lhs: Fraction
    rhs: Fraction
    formulas: dict = field(default_factory=dict)
    discrepancy: str | None = None


def three_value_relation(s: DifferentialSpectrum, g1: GroupSpec, g2: GroupSpec) -> ThreeValueRelation:
    n1, n2 = g1.order, g2.order
    nonzero = [v for v in s.values() if v != 0]
    amb = sum(n * comb(i, 2) for i, n in s.N.items())
    defi = s[0]
    if len(nonzero) == 1:
        (i,) = nonzero
        nb_actual = sum(v * v * c for v, c in s.N.items()) - _baseline(n1, n2)
        nb_formula = (n1 - 1) * (i * n1 - Fraction(n1 * n1, n2))
        amb_formula = Fraction((n1 - 1) * n1 * (i - 1), 2)
        def_formula = max(Fraction(0), (n1 - 1) * (n2 - Fraction(n1, i)))
        uncorrected_nb = i * (i - 1) + (n1 - 1) * (n1 - Fraction(n1 * n1, n2))
        holds = nb_formula == nb_actual and amb_formula == amb and def_formula == defi
        return ThreeValueRelation(
            item=1,
            values=(i,),
            holds=holds,
            lhs=Fraction(defi),
            rhs=def_formula,
            formulas={
                "nb": nb_formula,
                "ambiguity": amb_formula,
                "deficiency": def_formula,
                "nb_actual": nb_actual,
                "ambiguity_actual": amb,
                "uncorrected_nb": uncorrected_nb,
                "uncorrected_ambiguity": comb(i, 2),
            },
            discrepancy=(
                "formula-discrepancy: NB_F = i(i-1)+... and A(F) = C(i,2) omit the multiplicity "
                "N_i; corrected forms are used"
            ),
        )
    if len(nonzero) == 2:
        i, j = nonzero
        lhs = Fraction(2 * amb)
        rhs = Fraction(i * j * defi + (i + j - 1) * n1 * (n1 - 1) - i * j * n2 * (n1 - 1))
        return ThreeValueRelation(item=2, values=(i, j), holds=lhs == rhs, lhs=lhs, rhs=rhs)
    raise InapplicableError(f"spectrum takes {len(nonzero)} nonzero values; at most two are allowed")


def optimum_ambiguity_threshold(g1: GroupSpec, g2: GroupSpec) -> int:
    """Lower bound on the ambiguity of a bijection ``G1 -> G2`` with ``|G1| = |G2|``."""
    if g1.order != g2.order:
        raise InapplicableError("the optimum-ambiguity bound needs |G1| = |G2|")
    n = g1.order
    if n % 2:
        return 2 * (n - 1)
    i1, i2 = count_involutions(g1), count_involutions(g2)
    if i1 * i2 == 1:
        return 2 * (n - 2)
    value = 2 * (n - 1) - Fraction(3 * min(i1, i2), 2) + Fraction(i1 * i2, 2)
    if value.denominator != 1:
        raise IdentityViolation(f"non-integer optimum threshold {value}")
    return value.numerator


def is_optimum(F: FunctionTable, amb: int | None = None) -> bool:
    if not F.is_bijective:
        raise InapplicableError("optimum ambiguity is defined for bijections")
    amb = ambiguity(F) if amb is None else amb
    return amb == optimum_ambiguity_threshold(F.domain, F.codomain)


@dataclass(frozen=True)
class IndicatorReport:
    imbalance: Fraction
    nb: Fraction
    ambiguity: int
    deficiency: int
    per_row_ambiguity: list[int]
    optimum_threshold: int | None
    is_optimum: bool | None

    def to_json(self) -> dict:
        return {
            "imbalance": _frac_json(self.imbalance),
            "nb": _frac_json(self.nb),
            "ambiguity": self.ambiguity,
            "deficiency": self.deficiency,
            "per_row_ambiguity": self.per_row_ambiguity,
            "optimum_threshold": self.optimum_threshold,
            "is_optimum": self.is_optimum,
        }


def _frac_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def indicator_report(F: FunctionTable, d: DDTable | None = None) -> IndicatorReport:
    d = d if d is not None else ddt(F)
    s = spectrum(d)
    nb = nb_from_ddt(d)
    amb = ambiguity(s)
    if amb != ambiguity_from_nb(nb, F.domain, F.codomain):
        raise IdentityViolation("ambiguity from the spectrum disagrees with the NB_F rescaling")
    rows = per_row_ambiguity(d)
    if sum(rows) != amb:
        raise IdentityViolation("per-row ambiguities do not sum to the ambiguity")
    threshold = optimum = None
    if F.domain.order == F.codomain.order:
        threshold = optimum_ambiguity_threshold(F.domain, F.codomain)
        if F.is_bijective:
            optimum = amb == threshold
    return IndicatorReport(
        imbalance=imbalance(F),
        nb=nb,
        ambiguity=amb,
        deficiency=deficiency(d),
        per_row_ambiguity=rows,
        optimum_threshold=threshold,
        is_optimum=optimum,
    )
