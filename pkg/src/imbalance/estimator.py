"""A scikit-learn transformer turning function tables into indicator features.

``fit`` only records the groups; each row of the output holds the requested
indicators of one table, so the transformer can sit in a ``Pipeline`` ahead of
any regressor or clustering step.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .ddt import ddt, deficiency, differential_uniformity, spectrum
from .errors import DomainError
from .indicators import ambiguity, nb_from_ddt
from .spectral import fourier, linearity, nonlinearity
from .validation import check_group, check_tables

__all__ = ["ImbalanceFeatures", "FEATURES"]

FEATURES = ("nb", "ambiguity", "deficiency", "differential_uniformity", "linearity", "nonlinearity")
_SPECTRAL = {"linearity", "nonlinearity"}


class ImbalanceFeatures(TransformerMixin, BaseEstimator):
    """Per-table indicators as a float feature matrix.

    Parameters
    ----------
    features : tuple of str
        Any subset of ``FEATURES``, in output order.
    convention : {"normalized", "classical"}
        Nonlinearity convention; ``"classical"`` needs binary groups.
    g1, g2 : group or None
        Groups used to read raw integer rows.  Ignored when ``X`` already
        holds FunctionTables; ``g2`` defaults to ``g1``.
    """

    def __init__(self, features=FEATURES, convention="normalized", g1=None, g2=None):
        self.features = features
        self.convention = convention
        self.g1 = g1
        self.g2 = g2

    def _validate_params(self):
        feats = tuple(self.features)
        if not feats:
            raise DomainError("need at least one feature")
        unknown = [f for f in feats if f not in FEATURES]
        if unknown:
            raise DomainError(f"unknown features {unknown}; choose from {list(FEATURES)}")
        if self.convention not in ("normalized", "classical"):
            raise DomainError(f"unknown convention {self.convention!r}")
        return feats

    def fit(self, X, y=None):
        feats = self._validate_params()
        g1 = None if self.g1 is None else check_group(self.g1)
        g2 = None if self.g2 is None else check_group(self.g2)
        tables = check_tables(X, g1, g2)
        self.domain_ = tables[0].domain
        self.codomain_ = tables[0].codomain
        self.features_ = feats
        self.n_features_in_ = self.domain_.order
        return self

    def _row(self, F) -> list[float]:
        d = ddt(F)
        ft = fourier(F) if _SPECTRAL.intersection(self.features_) else None
        row = []
        for name in self.features_:
            if name == "nb":
                row.append(float(nb_from_ddt(d)))
            elif name == "ambiguity":
                row.append(float(ambiguity(spectrum(d))))
            elif name == "deficiency":
                row.append(float(deficiency(d)))
            elif name == "differential_uniformity":
                row.append(float(differential_uniformity(d)))
            elif name == "linearity":
                row.append(float(linearity(ft)))
            else:
                row.append(float(nonlinearity(ft, self.convention)))
        return row

    def transform(self, X):
        check_is_fitted(self, "features_")
        tables = check_tables(X, self.domain_, self.codomain_)
        return np.array([self._row(F) for F in tables], dtype=np.float64)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "features_")
        return np.array(self.features_, dtype=object)
