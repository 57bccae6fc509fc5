"""scikit-learn style front end.

:class:`NestedPrismatoidUnfolder` follows the estimator protocol
(``get_params``/``set_params``, ``fit``/``transform``/``fit_transform``,
trailing-underscore fitted attributes), so it can be cloned, grid-searched
over schemes and tolerances, and dropped into a ``Pipeline``.
"""
from __future__ import annotations

from typing import List, Union

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .geom import Tolerances
from .io import instance_from_dict, parse_instance
from .prismatoid import Prismatoid, compute_band, validate
from .rmcut import Scheme, plan_cut
from .unfold import Net, TopRule, unfold
from .verify import verify_net


def check_tolerances(eps_geom, eps_verify, eps_angle) -> Tolerances:
    return Tolerances(eps_geom=eps_geom, eps_verify=eps_verify, eps_angle=eps_angle)


def check_prismatoid(X, tol: Tolerances = None) -> Prismatoid:
    """Coerce ``X`` into a validated :class:`Prismatoid`.

    Accepts a Prismatoid (re-validated under ``tol``), a ``(base, top,
    height)`` triple, an instance-format dict, or instance-file bytes/str.
    """
    tol = tol or Tolerances()
    if isinstance(X, Prismatoid):
        return validate(X.base.vertices, X.top.vertices, X.height, tol)
    if isinstance(X, dict):
        return instance_from_dict(X, tol)
    if isinstance(X, (bytes, bytearray, str)):
        return parse_instance(X, tol)
    if isinstance(X, (tuple, list)) and len(X) == 3:
        base, top, height = X
        return validate(base, top, height, tol)
    raise TypeError(f"cannot interpret {type(X).__name__} as a prismatoid")


def _is_batch(X) -> bool:
    if isinstance(X, (tuple, list)) and X:
        return not (len(X) == 3 and not isinstance(X[2], (tuple, list, dict, Prismatoid)))
    return False


class NestedPrismatoidUnfolder(TransformerMixin, BaseEstimator):
    """Edge-unfold nested prismatoids into verified non-overlapping nets.

    Parameters
    ----------
    scheme : {"auto", "prismoid", "general"}
        Cut scheme. ``"auto"`` uses the prismoid scheme whenever every
        lateral facet is a trapezoid.
    eps_geom, eps_verify, eps_angle : float
        Predicate, verification and angular tolerances.
    top_rule : {"projected", "developed"}
        Curvature used to pick the top attachment edge.
    verify : bool
        Run the full verification suite in ``fit``.

    Attributes
    ----------
    prismatoid_, band_, plan_, net_ :
        Artifacts for the instance seen by ``fit``.
    report_ : VerifyReport or None
    """

    def __init__(self, scheme="auto", eps_geom=1e-9, eps_verify=1e-7, eps_angle=1e-9,
                 top_rule="projected", verify=True):
        self.scheme = scheme
        self.eps_geom = eps_geom
        self.eps_verify = eps_verify
        self.eps_angle = eps_angle
        self.top_rule = top_rule
        self.verify = verify

    def _tol(self) -> Tolerances:
        return check_tolerances(self.eps_geom, self.eps_verify, self.eps_angle)

    def _unfold_one(self, X):
        tol = self._tol()
        P = check_prismatoid(X, tol)
        band = compute_band(P, tol)
        plan = plan_cut(P, band, Scheme(self.scheme), tol)
        net = unfold(P, band, plan, tol, TopRule(self.top_rule))
        return P, band, plan, net

    def fit(self, X, y=None):
        """Unfold one instance (the last one when given a batch) and keep the artifacts."""
        last = X[-1] if _is_batch(X) else X
        self.prismatoid_, self.band_, self.plan_, self.net_ = self._unfold_one(last)
        tol = self._tol()
        self.report_ = (verify_net(self.prismatoid_, self.band_, self.plan_, self.net_, tol)
                        if self.verify else None)
        return self

    def transform(self, X) -> Union[Net, List[Net]]:
        check_is_fitted(self, "net_")
        if _is_batch(X):
            return [self._unfold_one(x)[3] for x in X]
        return self._unfold_one(X)[3]

    def score(self, X, y=None) -> float:
        """Fraction of instances whose nets pass every verification check."""
        items = X if _is_batch(X) else [X]
        tol = self._tol()
        ok = 0
        for x in items:
            P, band, plan, net = self._unfold_one(x)
            ok += verify_net(P, band, plan, net, tol).passed
        return ok / len(items)
