"""Scikit-learn style estimators wrapping the partition drivers.

fit(X) accepts a Digraph or an edge list, exposes labels_ over vertex ids and
follows the get_params/set_params convention, so the components integrate
with pipelines and model-selection tooling without a scikit-learn dependency.
"""

from __future__ import annotations

import inspect

from .driver import compute_4ecc_prepared, compute_k2ecc
from .gen import sub_rng
from .validation import (NotFittedError, as_digraph, check_delta, check_k,
                         check_mode)


class _BaseEstimator:
    @classmethod
    def _param_names(cls):
        sig = inspect.signature(cls.__init__)
        return [p for p in sig.parameters if p != "self"]

    def get_params(self, deep=True):
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(f"invalid parameter {name!r} for "
                                 f"{type(self).__name__}")
            setattr(self, name, value)
        return self

    def _check_fitted(self):
        if getattr(self, "labels_", None) is None:
            raise NotFittedError(f"{type(self).__name__} is not fitted yet")

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


class KPlusTwoComponents(_BaseEstimator):
    """Cluster the vertices of a k-edge-connected digraph into its
    (k+2)-edge-connected components.

    Parameters mirror the pipeline: failure budget delta, search mode
    ("rand", "det" or "exact"), and a seed from which all randomness is
    derived.  After fit, labels_[v] is the component id of vertex v.
    """

    def __init__(self, k=2, delta=0.25, mode="rand", seed=0):
        self.k = k
        self.delta = delta
        self.mode = mode
        self.seed = seed
        self.labels_ = None
        self.n_components_ = None
        self.partition_ = None

    def fit(self, X, y=None):
        g = as_digraph(X)
        check_k(self.k)
        check_delta(self.delta)
        check_mode(self.mode)
        rng = sub_rng(self.seed, "k2ecc")
        part = compute_k2ecc(g, self.k, self.delta, self.mode, rng)
        self.partition_ = part
        self.labels_ = [part.label[v] for v in part.universe]
        self.n_components_ = part.n_blocks
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_


class PreparedFourComponents(_BaseEstimator):
    """Cluster the ordinary vertices of a prepared strongly connected graph
    (ordinary vertices 3-edge-connected) into 4-edge-connected components."""

    def __init__(self, delta=0.25, mode="rand", seed=0):
        self.delta = delta
        self.mode = mode
        self.seed = seed
        self.labels_ = None
        self.n_components_ = None
        self.partition_ = None

    def fit(self, X, y=None, ordinary=None):
        g = as_digraph(X, ordinary=ordinary)
        check_delta(self.delta)
        check_mode(self.mode)
        rng = sub_rng(self.seed, "4ecc")
        part = compute_4ecc_prepared(g, self.delta, self.mode, rng)
        self.partition_ = part
        self.labels_ = [part.label[v] for v in part.universe]
        self.n_components_ = part.n_blocks
        return self

    def fit_predict(self, X, y=None, ordinary=None):
        return self.fit(X, ordinary=ordinary).labels_
