"""A ledger of every known inequality on the derivative imbalance.

:func:`evaluate_bounds` returns one :class:`BoundRecord` per bound in a fixed
order.  Bounds whose hypotheses fail are still emitted with
``applicable=False`` so the output schema never changes.

Each record reads ``lhs <relation> rhs``, where ``lhs`` is the quantity
measured on ``F`` and ``rhs`` is the bound.  Sides are exact
:class:`~fractions.Fraction` values unless a square root is involved; float
comparisons use a relative tolerance of 1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, sqrt
from typing import Iterable

import numpy as np

from .ddt import DDTable, DifferentialSpectrum, ddt, is_pn, spectrum, t_f
from .errors import CapacityError, ImbalanceError, InvalidTransformError
from .functable import AffineMap, FunctionTable
from .group import GroupSpec, count_involutions
from .indicators import IndicatorReport, imbalance, indicator_report, optimum_ambiguity_threshold
from .spectral import FourierTable, fourier, fourth_moment, nonlinearity, power_plateaued_test

__all__ = ["BoundRecord", "Analyses", "gather_analyses", "evaluate_bounds", "open_problem_info"]

TOLERANCE = 1e-9
BINOMIAL_SUM_MAX_N = 12


@dataclass(frozen=True)
class BoundRecord:
    id: str
    description: str
    applicable: bool
    relation: str
    lhs: Fraction | float | None
    rhs: Fraction | float | None
    holds: bool | None
    tight: bool | None
    exact: bool
    context: dict = field(default_factory=dict)
    discrepancy: str | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "applicable": self.applicable,
            "relation": self.relation,
            "lhs": _num_json(self.lhs),
            "rhs": _num_json(self.rhs),
            "holds": self.holds,
            "tight": self.tight,
            "exact": self.exact,
            "context": {k: _num_json(v) for k, v in sorted(self.context.items())},
            "discrepancy": self.discrepancy,
        }


def _num_json(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(f"{float(x):.12g}")
    return x


def _compare(lhs, rhs, relation: str) -> tuple[bool, bool, bool]:
    exact = not (isinstance(lhs, float) or isinstance(rhs, float))
    if exact:
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        tight = lhs == rhs
        holds = {"<=": lhs <= rhs, ">=": lhs >= rhs, "==": tight}[relation]
        return holds, tight, True
    lhs, rhs = float(lhs), float(rhs)
    slack = TOLERANCE * max(1.0, abs(lhs), abs(rhs))
    tight = abs(lhs - rhs) <= slack
    holds = {"<=": lhs <= rhs + slack, ">=": lhs >= rhs - slack, "==": tight}[relation]
    return holds, tight, False


class _Ledger:
    def __init__(self):
        self.records: list[BoundRecord] = []

    def add(self, id, description, relation, lhs, rhs, context=None, discrepancy=None):
        holds, tight, exact = _compare(lhs, rhs, relation)
        self.records.append(
            BoundRecord(id, description, True, relation, lhs, rhs, holds, tight, exact, dict(context or {}), discrepancy)
        )

    def skip(self, id, description, relation, reason, discrepancy=None):
        self.records.append(
            BoundRecord(id, description, False, relation, None, None, None, None, True, {"reason": reason}, discrepancy)
        )


@dataclass(frozen=True, eq=False)
class Analyses:
    """Everything the ledger needs about one function, computed once."""

    function: FunctionTable
    ddt: DDTable
    spectrum: DifferentialSpectrum
    indicators: IndicatorReport
    fourier: FourierTable | None


def gather_analyses(F: FunctionTable) -> Analyses:
    d = ddt(F)
    try:
        ft = fourier(F)
    except CapacityError:
        ft = None
    return Analyses(F, d, spectrum(d), indicator_report(F, d), ft)


def _binary_dims(F: FunctionTable) -> tuple[int, int] | None:
    if F.domain.is_elementary_2 and F.codomain.is_elementary_2:
        return F.domain.rank, F.codomain.rank
    return None


def _is_affine(F: FunctionTable) -> bool:
    try:
        AffineMap(F.domain, F.codomain, F.values)
    except InvalidTransformError:
        return False
    return True


def _is_cyclic(g: GroupSpec) -> bool:
    orders = g.orders
    return all(gcd(a, b) == 1 for i, a in enumerate(orders) for b in orders[i + 1 :])


def _n2_row_minimum(n: int, k: int) -> int:
    """Fewest unordered colliding pairs in a derivative row of an (n, n-2)-function with a k-entry.

    The other ``2^n - k`` inputs fall into ``2^(n-2) - 1`` classes of even size;
    by convexity the minimum spreads them as evenly as parity allows.
    """
    units, bins = (2**n - k) // 2, 2 ** (n - 2) - 1
    q, r = divmod(units, bins)
    return comb(k, 2) + r * (q + 1) * (2 * q + 1) + (bins - r) * q * (2 * q - 1)


def _power_provenance(F: FunctionTable) -> tuple[int, int, int] | None:
    """``(p, n, d)`` when the meta block describes a power map and the table matches it."""
    meta = F.meta
    if meta.get("family") != "power" or "field" not in meta or "exponent" not in meta:
        return None
    from .gfield import build_inverse, build_power, make_field

    fd = meta["field"]
    try:
        f = make_field(int(fd["p"]), int(fd["n"]), fd.get("poly"))
        ref = build_inverse(f) if meta.get("inverse") else build_power(f, int(meta["exponent"]))
    except (ImbalanceError, KeyError, TypeError, ValueError):
        return None
    if ref.domain != F.domain or not np.array_equal(ref.values, F.values):
        return None
    return f.p, f.n, int(meta["exponent"])


def open_problem_info(F: FunctionTable, nb: Fraction) -> dict | None:
    """Compare ``NB_F`` with ``2^(n-m+2) (2^(n/2) + 1) (2^m - 1)`` (informational only)."""
    dims = _binary_dims(F)
    if dims is None:
        return None
    n, m = dims
    threshold = 2 ** (n - m + 2) * (2 ** (n / 2) + 1) * (2**m - 1)
    return {"threshold": float(threshold), "nb_exceeds": float(nb) > threshold}


def evaluate_bounds(
    F: FunctionTable, analyses: Analyses | None = None, affine_shifts: Iterable[AffineMap] = ()
) -> list[BoundRecord]:
    an = gather_analyses(F) if analyses is None else analyses
    g1, g2 = F.domain, F.codomain
    n1, n2 = g1.order, g2.order
    nb = an.indicators.nb
    amb = an.indicators.ambiguity
    defi = an.indicators.deficiency
    k = an.spectrum.delta
    ft = an.fourier
    dims = _binary_dims(F)
    baseline = Fraction((n1 - 1) * n1 * n1, n2)
    L = _Ledger()

    # B1, B2: trivial range of NB_F
    L.add("B1", "NB_F >= 0, equality iff F is perfect nonlinear", ">=", nb, Fraction(0),
          {"pn": is_pn(F, an.ddt)})
    L.add("B2", "NB_F <= (|G1|-1)(|G1|^2 - |G1|^2/|G2|), equality iff F is affine", "<=", nb,
          (n1 - 1) * (n1 * n1 - Fraction(n1 * n1, n2)), {"affine": _is_affine(F)})

    # B3: Cauchy-Schwarz bound through the imbalance of F + A
    shifts = [AffineMap.constant_map(g1, g2, 0)] + list(affine_shifts)
    for idx, A in enumerate(shifts):
        if A.domain != g1 or A.codomain != g2:
            raise InvalidTransformError("affine shift has the wrong groups")
        nb_fa = imbalance(FunctionTable(g1, g2, g2._add(F.values, A.values)))
        rhs = Fraction(n2, (n1 - 1) * (n2 - 1)) * (nb_fa - (n1 - Fraction(n1, n2))) ** 2
        L.add(f"B3.{idx}", "NB_F >= |G2|/((|G1|-1)(|G2|-1)) (Nb_{F+A} - |G1| + |G1|/|G2|)^2", ">=",
              nb, rhs, {"nb_f_plus_a": nb_fa})

    # B4: largest derivative image
    T = t_f(an.ddt)
    L.add("B4", "NB_F >= |G1|^2 (|G1|-1)(1/T_F - 1/|G2|)", ">=", nb,
          n1 * n1 * (n1 - 1) * (Fraction(1, T) - Fraction(1, n2)), {"T_F": T})

    # B5: characteristic 2 specialisation
    b5_raw = (n1 - 1) * (2 * n1 - Fraction(n1 * n1, n2))
    if g1.is_elementary_2:
        L.add("B5", "NB_F >= max{0, (|G1|-1)(2|G1| - |G1|^2/|G2|)} for G1 of characteristic 2", ">=",
              nb, max(Fraction(0), b5_raw), {"unclamped": b5_raw})
    else:
        L.skip("B5", "characteristic-2 bound", ">=", "G1 is not Z_2^n")

    # B6-B8: binary nonlinearity bounds (classical convention)
    if dims is not None and ft is not None:
        n, m = dims
        nl = nonlinearity(ft, "classical")
        ctx = {"n": n, "m": m, "convention": "classical"}
        L.add("B6", "NL <= 2^(n-1) - sqrt(2^n + 2^(m-n) NB_F/(2^m-1))/2", "<=", nl,
              2 ** (n - 1) - 0.5 * sqrt(2**n + 2 ** (m - n) * float(nb) / (2**m - 1)), ctx)
        rad = ((2**n - 1) * 2 ** (n + m - min(m, n - 1)) + 2 ** (n + m) - 2 ** (2 * n)) / (2**m - 1)
        L.add("B7", "covering radius / Sidelnikov-Chabaud-Vaudenay unified bound", "<=", nl,
              2 ** (n - 1) - 0.5 * sqrt(rad), ctx)
        if m < 2**n - 2:
            L.add("B8.3", "NL <= 2^(n-1) - (m/2) 2^(n-1)/(2^(n-1)-1)", "<=", nl,
                  2 ** (n - 1) - Fraction(m, 2) * Fraction(2 ** (n - 1), 2 ** (n - 1) - 1), ctx)
        else:
            L.skip("B8.3", "coding bound, item 3", "<=", "needs m < 2^n - 2")
        note = ("formula-discrepancy: NL <= 2^(n-1) - n - m fails for APN functions such as "
                "x^3 on GF(8); no corrected form is known, the record is informational")
        if m < 2**n - n:
            L.add("B8.4", "NL <= 2^(n-1) - n - m", "<=", nl, Fraction(2 ** (n - 1) - n - m), ctx, note)
        else:
            L.skip("B8.4", "coding bound, item 4", "<=", "needs m < 2^n - n", note)
        if n <= BINOMIAL_SUM_MAX_N:
            nl_int = int(round(nl))
            t = (nl_int - 1) // 2
            total = sum(comb(2**n, i) for i in range(t + 1)) if t >= 0 else 0
            L.add("B8.5", "sum_{i <= (NL-1)/2} C(2^n, i) <= 2^(2^n - n - m - 1)", "<=",
                  Fraction(total), Fraction(2) ** (2**n - n - m - 1), {**ctx, "t": t})
        else:
            L.skip("B8.5", "sphere-packing coding bound", "<=", f"n > {BINOMIAL_SUM_MAX_N}")
    else:
        reason = "needs binary groups" if dims is None else "Fourier table over capacity"
        for bid in ("B6", "B7", "B8.3", "B8.4", "B8.5"):
            L.skip(bid, "binary nonlinearity bound", "<=", reason)

    # B9: optimum ambiguity of bijections
    i1 = i2 = None
    if n1 == n2 and F.is_bijective:
        thr = optimum_ambiguity_threshold(g1, g2)
        i1, i2 = count_involutions(g1), count_involutions(g2)
        L.add("B9", "ambiguity of a bijection >= optimum threshold", ">=", Fraction(amb), Fraction(thr),
              {"iota1": i1, "iota2": i2})
    else:
        L.skip("B9", "optimum-ambiguity bound", ">=", "needs a bijection with |G1| = |G2|")

    # B10: sandwich for self-maps of differential uniformity k
    if g1 == g2:
        r, s = divmod(n1, k)
        ctx = {"k": k, "r": r, "s": s}
        L.add("B10.lo", "ambiguity >= C(k, 2)", ">=", Fraction(amb), Fraction(comb(k, 2)), ctx)
        L.add("B10.hi", "ambiguity <= (n-1)(r C(k,2) + C(s,2))", "<=", Fraction(amb),
              Fraction((n1 - 1) * (r * comb(k, 2) + comb(s, 2))), ctx)
    else:
        L.skip("B10.lo", "ambiguity sandwich", ">=", "needs G1 = G2")
        L.skip("B10.hi", "ambiguity sandwich", "<=", "needs G1 = G2")

    # B11: general nonlinearity bound (normalised convention)
    if ft is not None:
        nl_norm = nonlinearity(ft, "normalized")
        L.add("B11", "NL <= |G1|/|G2| - sqrt(|G1| + |G2| NB_F/(|G1|(|G2|-1)))/|G2|", "<=", float(nl_norm),
              n1 / n2 - sqrt(n1 + n2 * float(nb) / (n1 * (n2 - 1))) / n2, {"convention": "normalized"})
    else:
        L.skip("B11", "general nonlinearity bound", "<=", "Fourier table over capacity")

    # B12, B13: ceiling bounds
    c1 = Fraction(-(-n1 * n1 // n2))
    L.add("B12", "NB_F >= (|G1|-1)(ceil(|G1|^2/|G2|) - |G1|^2/|G2|)", ">=", nb,
          (n1 - 1) * (c1 - Fraction(n1 * n1, n2)), {"divides": n1 % n2 == 0})
    c2 = Fraction(-(-((n1 - k) ** 2) // (n2 - 1)))
    L.add("B13", "differentially k-uniform ceiling bound", ">=", nb,
          (n1 - 2) * c1 + c2 + k * k - baseline, {"k": k})
    L.add("B13.simplified", "NB_F >= |G2|/(|G2|-1) (k - |G1|/|G2|)^2", ">=", nb,
          Fraction(n2, n2 - 1) * (k - Fraction(n1, n2)) ** 2, {"k": k})

    # B14: no PN function exists for these (n, m)
    if dims is not None:
        n, m = dims
        if (n % 2 == 1 and m < n) or (n % 2 == 0 and n / 2 < m < n):
            L.add("B14.2", "NB_F >= 2", ">=", nb, Fraction(2), {"n": n, "m": m})
            L.add("B14.6", "NB_F >= 6", ">=", nb, Fraction(6), {"n": n, "m": m})
        else:
            for bid in ("B14.2", "B14.6"):
                L.skip(bid, "no-PN lower bound", ">=", "needs n odd and m < n, or n/2 < m < n")
    else:
        for bid in ("B14.2", "B14.6"):
            L.skip(bid, "no-PN lower bound", ">=", "needs binary groups")

    # B15: refinement through N_k
    if dims is not None:
        n, m = dims
        rhs = (k * k - 2 * k) * an.spectrum[k] + (2**n - 1) * (2 ** (n + 1) - Fraction(2 ** (2 * n), 2**m))
        allowed = set(an.spectrum.values()) <= {0, 2, k}
        L.add("B15", "NB_F >= (k^2 - 2k) N_k + (2^n-1)(2^(n+1) - 2^(2n-m))", ">=", nb, rhs,
              {"k": k, "N_k": an.spectrum[k], "values_in_0_2_k": allowed, "b5_unclamped": b5_raw})
    else:
        L.skip("B15", "N_k refinement", ">=", "needs binary groups")

    # B16: APN optimum for (n, n)-functions
    if dims is not None and dims[0] == dims[1]:
        n = dims[0]
        floor = Fraction((2**n - 1) * 2 ** (n - 1))
        apn = k <= 2
        L.add("B16.A", "ambiguity >= (2^n-1) 2^(n-1), equality iff APN", ">=", Fraction(amb), floor, {"apn": apn})
        L.add("B16.D", "deficiency >= (2^n-1) 2^(n-1), equality iff APN", ">=", Fraction(defi), floor, {"apn": apn})
    else:
        L.skip("B16.A", "APN ambiguity bound", ">=", "needs an (n, n) binary function")
        L.skip("B16.D", "APN deficiency bound", ">=", "needs an (n, n) binary function")

    # B17: fourth-moment lower bounds
    _fourth_moment_records(L, F, an, dims, nb, k)

    # B18: nonlinearity sandwich for optimum-ambiguity permutations (normalised convention)
    _sandwich_records(L, F, an)

    # B19: power maps
    _power_records(L, F, an, nb, amb, defi, k)
    return L.records


def _fourth_moment_records(L: _Ledger, F, an: Analyses, dims, nb, k) -> None:
    n1, n2 = F.domain.order, F.codomain.order
    ft = an.fourier
    if ft is None:
        for bid in ("B17.moment", "B17.binary", "B17.n1", "B17.n1.nl", "B17.n2", "B17.n2.uncorrected",
                    "B17.n2.simple", "B17.n2.nl"):
            L.skip(bid, "fourth-moment bound", ">=", "Fourier table over capacity")
        return
    m4 = fourth_moment(ft)
    m4 = Fraction(m4) if ft.exact else float(m4)
    L.add("B17.moment", "sum |F^|^4 >= |G1|^4 + (|G2|-1)|G1|^3", ">=", m4, Fraction(n1**4 + (n2 - 1) * n1**3))
    if dims is None:
        for bid in ("B17.binary", "B17.n1", "B17.n1.nl", "B17.n2", "B17.n2.uncorrected", "B17.n2.simple", "B17.n2.nl"):
            L.skip(bid, "binary fourth-moment bound", ">=", "needs binary groups")
        return
    n, m = dims
    ctx = {"n": n, "m": m}
    if n > 2 and ((n % 2 == 1 and m < n) or (n % 2 == 0 and n / 2 < m < n) or m == n):
        L.add("B17.binary", "sum |F^|^4 >= 2^(4n) + 2^(3n)(2^m-1) + 3 2^(n+m+1)", ">=", m4,
              Fraction(2 ** (4 * n) + 2 ** (3 * n) * (2**m - 1) + 3 * 2 ** (n + m + 1)), ctx)
    else:
        L.skip("B17.binary", "fourth-moment bound for non-PN (n, m)", ">=", "parameters outside range")
    nl = nonlinearity(ft, "classical")
    if m == n - 1 and n >= 3:
        L.add("B17.n1", "(n, n-1): sum |F^|^4 >= 3 2^(4n-1) - 2^(3n) + 2^(2n+2)", ">=", m4,
              Fraction(3 * 2 ** (4 * n - 1) - 2 ** (3 * n) + 2 ** (2 * n + 2)), ctx)
        L.add("B17.n1.nl", "(n, n-1): NL <= 2^(n-1) - sqrt(2^n + 4/(2^(n-1)-1))/2", "<=", nl,
              2 ** (n - 1) - 0.5 * sqrt(2**n + 4 / (2 ** (n - 1) - 1)), {**ctx, "convention": "classical"})
    else:
        L.skip("B17.n1", "(n, n-1) fourth-moment bound", ">=", "needs m = n-1 and n >= 3")
        L.skip("B17.n1.nl", "(n, n-1) nonlinearity bound", "<=", "needs m = n-1 and n >= 3")
    uncorrected_note = ("formula-discrepancy: filling the k-row with blocks of 4 only is not the "
                        "minimum for k >= 8 (blocks of 2 give fewer pairs), so NB_F >= k(k-4) - 2 delta_k "
                        "is unproved; B17.n2 uses the exact minimum")
    if m == n - 2 and n >= 3:
        delta_k = 0 if k % 4 == 0 else 2
        amb_floor = _n2_row_minimum(n, k) + (2**n - 2) * 6 * 2 ** (n - 2)
        nb_floor = 2 * amb_floor - 3 * 2**n * (2**n - 1)
        c = {**ctx, "k": k, "delta_k": delta_k}
        L.add("B17.n2", "(n, n-2): NB_F >= 2 A_min - 3 2^n (2^n-1), A_min from the k-row minimum", ">=",
              nb, Fraction(nb_floor), c)
        L.add("B17.n2.uncorrected", "(n, n-2): NB_F >= k(k-4) - 2 delta_k", ">=", nb,
              Fraction(k * (k - 4) - 2 * delta_k), c, uncorrected_note)
    else:
        L.skip("B17.n2", "(n, n-2) bound", ">=", "needs m = n-2")
        L.skip("B17.n2.uncorrected", "(n, n-2) bound", ">=", "needs m = n-2", uncorrected_note)
    if m == n - 2 and n >= 5:
        L.add("B17.n2.simple", "(n, n-2): sum |F^|^4 >= 5 2^(4n-2) - 2^(3n) + 2^(2n+1)", ">=", m4,
              Fraction(5 * 2 ** (4 * n - 2) - 2 ** (3 * n) + 2 ** (2 * n + 1)), ctx)
        L.add("B17.n2.nl", "(n, n-2): NL <= 2^(n-1) - sqrt(2^n + 1/(2^(n-2)-1))/2", "<=", nl,
              2 ** (n - 1) - 0.5 * sqrt(2**n + 1 / (2 ** (n - 2) - 1)), {**ctx, "convention": "classical"})
    else:
        L.skip("B17.n2.simple", "(n, n-2) fourth-moment bound", ">=", "needs m = n-2 and n >= 5")
        L.skip("B17.n2.nl", "(n, n-2) nonlinearity bound", "<=", "needs m = n-2 and n >= 5")


def _sandwich_records(L: _Ledger, F, an: Analyses) -> None:
    g = F.domain
    n = g.order
    ok = (
        F.codomain == g
        and an.fourier is not None
        and an.indicators.is_optimum
    )
    odd_ok = ok and n % 2 == 1 and (g.elementary_prime is not None or _is_cyclic(g))
    even_ok = ok and n % 2 == 0 and _is_cyclic(g)
    reason = "needs an optimum-ambiguity permutation of an odd field/cyclic group or even cyclic group"
    nl = float(nonlinearity(an.fourier, "normalized")) if ok else None
    ctx = {"n": n, "convention": "normalized"}
    for tag, applies in (("odd", odd_ok), ("even", even_ok)):
        if not applies:
            L.skip(f"B18.{tag}.lo", "optimum-ambiguity NL lower bound", ">=", reason)
            L.skip(f"B18.{tag}.hi", "optimum-ambiguity NL upper bound", "<=", reason)
            continue
        if tag == "odd":
            lo, hi = (n - sqrt(5 * n - 4)) / n, (n - sqrt(n + 4)) / n
        else:
            lo, hi = (n - sqrt(5 * n - 6)) / n, (n - sqrt(n + 4 - 4 / (n - 1))) / n
        L.add(f"B18.{tag}.lo", "optimum-ambiguity permutation: NL lower bound", ">=", nl, lo, ctx)
        L.add(f"B18.{tag}.hi", "optimum-ambiguity permutation: NL upper bound", "<=", nl, hi, ctx)


def _power_records(L: _Ledger, F, an: Analyses, nb, amb, defi, k) -> None:
    prov = _power_provenance(F)
    ids = ("B19.power", "B19.diffk", "B19.inverse", "B19.plateaued.A", "B19.plateaued.NB",
           "B19.plateaued.NB.uncorrected", "B19.quadratic.NB", "B19.quadratic.D", "B19.oddquad")
    plateau_note = ("formula-discrepancy: NB_F = 2^n(2^n-1)(delta(1,1)-1) - 2^(2n-m)(2^n-1) does not "
                    "follow from the ambiguity identity; B19.plateaued.NB uses "
                    "2^n(2^n-1) delta(1,1) - 2^(2n-m)(2^n-1)")
    if prov is None:
        for bid in ids:
            L.skip(bid, "power-map identity", "==", "needs a table built as a power map",
                   plateau_note if bid == "B19.plateaued.NB.uncorrected" else None)
        return
    p, n, d = prov
    q = p**n
    row1 = an.ddt.counts[1].astype(np.int64)
    if p == 2:
        m = n
        sq = int(np.sum(row1 * row1))
        L.add("B19.power", "NB_F = (2^n-1) sum_b delta(1,b)^2 - 2^(2n-m)(2^n-1)", "==", nb,
              Fraction((q - 1) * sq - 2 ** (2 * n - m) * (q - 1)))
        nk1 = int(np.count_nonzero(row1 == k))
        L.add("B19.diffk", "NB_F >= (k^2-2k)(2^n-1)N_k' + (2^n-1)(2^(n+1) - 2^(2n-m))", ">=", nb,
              Fraction((k * k - 2 * k) * (q - 1) * nk1 + (q - 1) * (2 ** (n + 1) - 2 ** (2 * n - m))),
              {"k": k, "N_k_prime": nk1})
        if n % 2 == 0 and F.is_bijective:
            L.add("B19.inverse", "even-n power permutation: NB_F >= (2^n-1)(2^n+8)", ">=", nb,
                  Fraction((q - 1) * (q + 8)), {"exponent": d})
        else:
            L.skip("B19.inverse", "power permutation bound", ">=", "needs a power permutation with n even")
        res = power_plateaued_test(F)
        if res.plateaued:
            c = {"delta_11": res.delta_11}
            L.add("B19.plateaued.A", "plateaued power map: A = 2^(n-1)(2^n-1)(delta(1,1)-1)", "==",
                  Fraction(amb), Fraction(res.ambiguity), c)
            L.add("B19.plateaued.NB", "plateaued power map: NB_F = 2^n(2^n-1) delta(1,1) - 2^(2n-m)(2^n-1)",
                  "==", nb, res.nb, c)
            L.add("B19.plateaued.NB.uncorrected", "plateaued power map: uncorrected NB_F form", "==", nb,
                  res.uncorrected_nb, c, plateau_note)
        else:
            for bid in ("B19.plateaued.A", "B19.plateaued.NB", "B19.plateaued.NB.uncorrected"):
                L.skip(bid, "plateaued power map identity", "==", "power map is not plateaued",
                       plateau_note if bid.endswith("uncorrected") else None)
    else:
        for bid in ids[:6]:
            L.skip(bid, "binary power-map identity", "==", "needs characteristic 2",
                   plateau_note if bid.endswith("uncorrected") else None)
    quad = F.meta.get("quadratic")
    if quad is not None:
        i, j = int(quad[0]), int(quad[1])
        s = gcd(i - j, n)
        ctx = {"i": i, "j": j, "s": s}
        if p == 2 and i > j:
            L.add("B19.quadratic.NB", "x^(2^i+2^j): NB_F = 2^n(2^n-1)(2^s-1)", "==", nb,
                  Fraction(q * (q - 1) * (2**s - 1)), ctx)
            L.add("B19.quadratic.D", "x^(2^i+2^j): deficiency = (2^n-1)(2^n - 2^(n-s))", "==", Fraction(defi),
                  Fraction((q - 1) * (q - 2 ** (n - s))), ctx)
            L.skip("B19.oddquad", "odd-characteristic quadratic monomial", "==", "needs odd p")
            return
        if p != 2:
            L.skip("B19.quadratic.NB", "binary quadratic monomial", "==", "needs p = 2")
            L.skip("B19.quadratic.D", "binary quadratic monomial", "==", "needs p = 2")
            value = q * (q - 1) * (p**s - 1) if (n // s) % 2 == 0 else 0
            L.add("B19.oddquad", "x^(p^i+p^j), p odd: NB_F = p^n(p^n-1)(p^s-1) if n/s even else 0", "==",
                  nb, Fraction(value), ctx)
            return
    L.skip("B19.quadratic.NB", "binary quadratic monomial", "==", "needs x^(2^i+2^j) with i > j")
    L.skip("B19.quadratic.D", "binary quadratic monomial", "==", "needs x^(2^i+2^j) with i > j")
    L.skip("B19.oddquad", "odd-characteristic quadratic monomial", "==", "needs x^(p^i+p^j) with p odd")
