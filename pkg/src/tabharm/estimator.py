"""Scikit-learn style front end: the factored transform as a fitted
transformer, so spectral features compose with pipelines and the rest of
the ecosystem.

Rows of X are data vectors over the tabloid space of the configured
shape; transform returns the harmonic coefficients row by row, in the
fitted plan's output order.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array

from .adapted_basis import LEADING_ONE
from .combinatorics import Partition
from .transform import apply_transform, inverse_transform, plan


class TabloidSpectralTransformer(TransformerMixin, BaseEstimator):
    """Harmonic analysis of functions on tabloids as a transformer.

    Parameters
    ----------
    shape : sequence of int
        Partition labelling the tabloid space, e.g. ``(4, 2)`` for
        top-2-of-6 choice data or ``(4, 1, 1)`` for top-2-of-6 rankings.
    normalization : str
        ``"leading-one"`` (exact rational factors where feasible) or
        ``"orthonormal"`` (float factors; transform preserves energy).
    arithmetic : str or None
        ``"exact"``, ``"float"``, or None to choose by problem size.
    """

    def __init__(self, shape=None, normalization=LEADING_ONE, arithmetic=None):
        self.shape = shape
        self.normalization = normalization
        self.arithmetic = arithmetic

    def fit(self, X=None, y=None):
        if self.shape is None:
            raise ValueError("shape must be set before fitting")
        shape = Partition(self.shape)
        self.plan_ = plan(shape, self.normalization, self.arithmetic)
        self.n_features_in_ = self.plan_.size
        self.output_labels_ = [
            {"shape": tuple(label.shape), "copy": copy, "chain": tuple(map(tuple, label.chain))}
            for _, label, copy in self.plan_.output_labels
        ]
        self.component_labels_ = [key for key, _ in self.plan_.components_template()]
        if X is not None:
            self._validate(X)
        return self

    def _check_fitted(self):
        if not hasattr(self, "plan_"):
            raise NotFittedError("this transformer is not fitted yet; call fit first")

    def _validate(self, X):
        X = check_array(X, dtype=float, ensure_2d=True)
        if X.shape[1] != self.plan_.size:
            raise ValueError(
                f"X has {X.shape[1]} columns but the tabloid space of shape "
                f"{tuple(self.plan_.shape)} has {self.plan_.size} elements")
        return X

    def transform(self, X):
        self._check_fitted()
        X = self._validate(X)
        out = np.empty_like(X)
        for i, row in enumerate(X):
            spectrum, _ = apply_transform(self.plan_, list(row))
            out[i] = [float(c) for c in spectrum.coefficients]
        return out

    def inverse_transform(self, X):
        self._check_fitted()
        X = self._validate(X)
        out = np.empty_like(X)
        for i, row in enumerate(X):
            out[i] = [float(c) for c in inverse_transform(self.plan_, list(row))]
        return out

    def component_energies(self, X):
        """Energy per irreducible component, one row per sample; columns
        follow ``component_labels_``."""
        self._check_fitted()
        coeffs = self.transform(X)
        groups = self.plan_.components_template()
        out = np.zeros((coeffs.shape[0], len(groups)))
        for col, (_, indices) in enumerate(groups):
            out[:, col] = (coeffs[:, indices] ** 2).sum(axis=1)
        return out
