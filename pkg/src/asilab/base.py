"""Shared estimator plumbing for the algorithm front-ends."""
from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .validation import check_graph, check_witness
from .witness import build_witness_parity


class GraphEstimator(BaseEstimator):
    """Base class: ``fit(G, witness=None)`` then read the fitted ``*_`` attributes.

    Without an explicit witness the parity witness at ``self.scale`` (or the
    algorithm's minimum scale) is built.  Hyper-parameters live in
    ``__init__`` so ``get_params``/``set_params``/``clone`` work as usual.
    """

    def _min_scale(self) -> int:
        return 1

    def _prepare(self, G, witness, finite: bool = True):
        G = check_graph(G, allow_lazy=not finite)
        need = self._min_scale()
        if witness is None:
            scale = getattr(self, "scale", None) or need
            witness = build_witness_parity(G, scale, getattr(self, "s", 1) or 1)
        check_witness(G, witness, need)
        self.witness_ = witness
        return G, witness

    def fit_predict(self, G, witness=None):
        return self.fit(G, witness).result_

    def predict(self, G=None, witness=None):
        """The fitted solution; with ``G`` given, refit on it first."""
        if G is not None:
            return self.fit_predict(G, witness)
        self._check_fitted()
        return self.result_

    def _check_fitted(self):
        if not hasattr(self, "result_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit first")
