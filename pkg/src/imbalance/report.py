"""Full analysis reports and their deterministic JSON serialisation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from .bounds import Analyses, evaluate_bounds, gather_analyses, open_problem_info
from .ddt import differential_uniformity, is_apn, is_pn, t_f
from .errors import CapacityError, IdentityViolation, InapplicableError
from .functable import AffineMap, FunctionTable
from .indicators import ambiguity_from_nb, nb_from_pair_count, three_value_relation
from .spectral import (
    cross_identities,
    fourth_moment,
    linearity,
    linearity_argmax,
    nonlinearity,
    parseval_deviation,
    plateaued_profile,
    power_plateaued_test,
)
from .tableio import table_to_dict

__all__ = [
    "AnalysisReport",
    "VerificationReport",
    "analyze_function",
    "verify_function",
    "to_jsonable",
    "dumps",
    "tool_version",
]

PARSEVAL_TOLERANCE = 1e-6
ARGMAX_LIMIT = 64


def tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


def to_jsonable(obj):
    """Fractions become ``{num, den}``; floats keep 12 significant digits."""
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.12g}")
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    return obj


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


@dataclass
class AnalysisReport:
    function: FunctionTable
    indicators: dict
    spectrum: dict
    spectral: dict
    bounds: list
    verification: dict
    provenance: dict = field(default_factory=dict)
    ddt: list | None = None

    def to_json(self) -> dict:
        out = {
            "groups": {"G1": list(self.function.domain.orders), "G2": list(self.function.codomain.orders)},
            "function": table_to_dict(self.function),
            "indicators": self.indicators,
            "spectrum": self.spectrum,
            "spectral": self.spectral,
            "bounds": [r.to_json() for r in self.bounds],
            "verification": self.verification,
            "provenance": self.provenance,
            "nb": self.indicators["nb"],
            "ambiguity": self.indicators["ambiguity"],
            "deficiency": self.indicators["deficiency"],
            "uniformity": self.indicators["differential_uniformity"],
            "nonlinearity_classical": self.spectral.get("nonlinearity_classical"),
        }
        if self.ddt is not None:
            out["ddt"] = self.ddt
        return to_jsonable(out)


def _spectral_block(F: FunctionTable, an: Analyses) -> dict:
    ft = an.fourier
    if ft is None:
        return {"available": False, "reason": "Fourier table over capacity"}
    lin = linearity(ft)
    argmax = linearity_argmax(ft)
    block = {
        "available": True,
        "exact": ft.exact,
        "linearity": lin,
        "linearity_argmax": [list(p) for p in argmax[:ARGMAX_LIMIT]],
        "linearity_argmax_count": len(argmax),
        "nonlinearity_normalized": nonlinearity(ft, "normalized"),
        "fourth_moment": fourth_moment(ft),
    }
    if ft.exact:
        block["nonlinearity_classical"] = nonlinearity(ft, "classical")
        block["plateaued"] = plateaued_profile(F, ft).to_json()
    try:
        res = power_plateaued_test(F)
        block["power_plateaued"] = {
            "plateaued": res.plateaued,
            "delta_11": res.delta_11,
            "nb": res.nb if res.plateaued else None,
            "ambiguity": res.ambiguity if res.plateaued else None,
        }
    except InapplicableError:
        pass
    return block


def _spectrum_block(F: FunctionTable, an: Analyses) -> dict:
    s = an.spectrum
    block = {
        "N": s.to_json(),
        "differential_uniformity": differential_uniformity(an.ddt),
        "apn": is_apn(an.ddt),
        "pn": is_pn(F, an.ddt),
        "t_f": t_f(an.ddt),
    }
    try:
        rel = three_value_relation(s, F.domain, F.codomain)
        block["three_value"] = {
            "item": rel.item,
            "values": list(rel.values),
            "holds": rel.holds,
            "lhs": rel.lhs,
            "rhs": rel.rhs,
            "discrepancy": rel.discrepancy,
        }
    except InapplicableError:
        block["three_value"] = None
    return block


def _verification_block(F: FunctionTable, an: Analyses, oracle_check: bool) -> dict:
    checks = {}
    nb = an.indicators.nb
    checks["spectrum_sums"] = {"ok": True}
    try:
        amb = ambiguity_from_nb(nb, F.domain, F.codomain)
        checks["rescaling"] = {"ok": amb == an.indicators.ambiguity}
    except IdentityViolation:
        checks["rescaling"] = {"ok": False}
    if an.fourier is not None:
        dev = parseval_deviation(an.fourier)
        checks["parseval"] = {"ok": dev <= PARSEVAL_TOLERANCE, "max_relative_deviation": dev}
        try:
            rep = cross_identities(F, an.fourier, raise_on_violation=False)
            checks["four_way"] = {
                "ok": rep.max_relative_deviation <= 1e-6,
                "max_relative_deviation": rep.max_relative_deviation,
                "exact": rep.exact,
                "square_sum": rep.square_sum,
                "nb": {
                    k: {"value": e.value, "rounding_distance": e.rounding_distance, "agrees": e.value == nb}
                    for k, e in sorted(rep.nb.items())
                },
            }
            checks["four_way"]["ok"] &= all(v["agrees"] for v in checks["four_way"]["nb"].values())
        except CapacityError as exc:
            checks["four_way"] = {"ok": True, "skipped": str(exc)}
    if oracle_check:
        try:
            oracle = nb_from_pair_count(F)
            checks["pair_count_oracle"] = {"ok": oracle == nb, "nb": oracle}
        except CapacityError as exc:
            checks["pair_count_oracle"] = {"ok": True, "skipped": str(exc)}
    checks["all_ok"] = all(c["ok"] for c in checks.values() if isinstance(c, dict))
    return checks


def analyze_function(
    F: FunctionTable,
    *,
    oracle_check: bool = False,
    include_ddt: bool = False,
    affine_shifts: list[AffineMap] = (),
    provenance: dict | None = None,
) -> AnalysisReport:
    an = gather_analyses(F)
    indicators = an.indicators.to_json()
    indicators["differential_uniformity"] = differential_uniformity(an.ddt)
    indicators["open_problem"] = open_problem_info(F, an.indicators.nb)
    return AnalysisReport(
        function=F,
        indicators=indicators,
        spectrum=_spectrum_block(F, an),
        spectral=_spectral_block(F, an),
        bounds=evaluate_bounds(F, an, affine_shifts),
        verification=_verification_block(F, an, oracle_check),
        provenance={"tool_version": tool_version(), **(provenance or {})},
        ddt=an.ddt.counts.tolist() if include_ddt else None,
    )


@dataclass
class VerificationReport:
    checks: dict
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return to_jsonable({"ok": self.ok, "failures": self.failures, "checks": self.checks})


def verify_function(F: FunctionTable) -> VerificationReport:
    """Run every identity check; violations are collected, not raised."""
    try:
        an = gather_analyses(F)
    except IdentityViolation as exc:
        return VerificationReport({"error": str(exc)}, [str(exc)])
    checks = _verification_block(F, an, oracle_check=F.domain.order <= 256)
    failures = [name for name, c in checks.items() if isinstance(c, dict) and not c["ok"]]
    return VerificationReport(checks, failures)
