"""Closed-form |a2| and |a3| bounds for both families and their special cases.

Every rational sub-expression is formed exactly from the Fraction inputs;
only the final square roots and the result are floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from .class_operator import ArgFamily, ClassParams, FamilySpec, ReFamily, _rat

TIE_RTOL = 1e-12


class BoundDomainError(ValueError):
    pass


@dataclass
class BoundReport:
    family: FamilySpec
    params: ClassParams
    a2_bound: float
    a3_bound: float
    branch_taken: Dict[str, str]
    radicand: Optional[float]

    def as_dict(self) -> dict:
        return {
            "family": self.family.as_dict(),
            "params": self.params.as_dict(),
            "a2_bound": self.a2_bound,
            "a3_bound": self.a3_bound,
            "branch_taken": dict(self.branch_taken),
            "radicand": self.radicand,
        }


def _check_alpha(alpha) -> Fraction:
    return ArgFamily(alpha).alpha


def _check_beta(beta) -> Fraction:
    return ReFamily(beta).beta


def _pick(first: float, second: float, tags: Tuple[str, str]) -> Tuple[float, str]:
    if math.isclose(first, second, rel_tol=TIE_RTOL, abs_tol=0.0):
        return min(first, second), "equal"
    return (first, tags[0]) if first < second else (second, tags[1])


# -- alpha family -------------------------------------------------------------


def radicand_alpha(params: ClassParams, alpha) -> Fraction:
    """(lam+mu+2 xi delta)^2 + alpha[2lam+mu - (lam+2 xi delta)^2 + (12-4mu) xi delta]."""
    alpha = _rat(alpha)
    lam, mu, xd = params.lam, params.mu, params.xi * params.delta
    t = params.first_factor
    return t * t + alpha * (2 * lam + mu - (lam + 2 * xd) ** 2 + (12 - 4 * mu) * xd)


def bound_a2_alpha(params: ClassParams, alpha) -> float:
    alpha = _check_alpha(alpha)
    rad = radicand_alpha(params, alpha)
    if rad <= 0:
        raise BoundDomainError(f"radicand {rad} is not positive")
    return 2 * float(alpha) / math.sqrt(rad)


def bound_a3_alpha(params: ClassParams, alpha) -> float:
    alpha = _check_alpha(alpha)
    t = params.first_factor
    return float(4 * alpha ** 2 / t ** 2 + 2 * alpha / params.second_factor)


# -- beta family --------------------------------------------------------------


def _m_factor(params: ClassParams) -> Fraction:
    """1 + mu + 12 delta/(2 lam + 1)."""
    return 1 + params.mu + 12 * params.delta / (2 * params.lam + 1)


def bound_a2_beta(params: ClassParams, beta) -> Tuple[float, str]:
    beta = _check_beta(beta)
    sqrt_form = math.sqrt(4 * (1 - beta) / ((2 * params.lam + params.mu) * _m_factor(params)))
    linear_form = float(2 * (1 - beta) / params.first_factor)
    return _pick(sqrt_form, linear_form, ("sqrt-form", "linear-form"))


def bound_a3_beta(params: ClassParams, beta) -> Tuple[float, str]:
    beta = _check_beta(beta)
    s = params.second_factor
    if params.mu >= 1:
        return float(2 * (1 - beta) / s), "mu-ge-1"
    d = params.delta / (2 * params.lam + 1)
    first = float((1 - beta) * (4 + 24 * d) / (s * _m_factor(params)))
    second = float(4 * (1 - beta) ** 2 / params.first_factor ** 2 + 2 * (1 - beta) / s)
    return _pick(first, second, ("min-first", "min-second"))


def bound_a3_beta_route_bound(params: ClassParams, beta) -> float:
    """The |1-mu| form the mu-split is derived from, before collapsing."""
    beta = _check_beta(beta)
    d = params.delta / (2 * params.lam + 1)
    num = 3 + params.mu + 24 * d + abs(1 - params.mu)
    return float((1 - beta) / params.second_factor * num / _m_factor(params))


# -----------------------------------------------------------------------------


def evaluate_bounds(family: FamilySpec, params: ClassParams) -> BoundReport:
    if isinstance(family, ArgFamily):
        return BoundReport(
            family, params,
            a2_bound=bound_a2_alpha(params, family.alpha),
            a3_bound=bound_a3_alpha(params, family.alpha),
            branch_taken={"a2": "closed-form", "a3": "closed-form"},
            radicand=float(radicand_alpha(params, family.alpha)),
        )
    a2, t2 = bound_a2_beta(params, family.beta)
    a3, t3 = bound_a3_beta(params, family.beta)
    return BoundReport(family, params, a2, a3, {"a2": t2, "a3": t3}, None)


# -- special cases ------------------------------------------------------------
# Each entry: family name, reduced parameters, and the published reduced
# formulas (a2, a3) as functions of the order parameter and lam, mu.

def _sqrt(x) -> float:
    return math.sqrt(x)


def _alpha_srivastava(a, lam, mu):
    return float(a) * _sqrt(2 / (a + 2)), float(a * (3 * a + 2) / 3)


def _alpha_frasin(a, lam, mu):
    return (2 * float(a) / _sqrt((lam + 1) ** 2 + a * (1 + 2 * lam - lam ** 2)),
            float(4 * a ** 2 / (lam + 1) ** 2 + 2 * a / (2 * lam + 1)))


def _alpha_caglar(a, lam, mu):
    return (2 * float(a) / _sqrt((lam + mu) ** 2 + a * (2 * lam + mu - lam ** 2)),
            float(4 * a ** 2 / (lam + mu) ** 2 + 2 * a / (2 * lam + mu)))


def _alpha_strongly_bistarlike(a, lam, mu):
    return 2 * float(a) / _sqrt(1 + a), float(a * (4 * a + 1))


def _beta_srivastava(b, lam, mu):
    a2 = _sqrt(2 * (1 - b) / 3) if b < Fraction(1, 3) else float(1 - b)
    return a2, float(2 * (1 - b) / 3)


def _beta_frasin(b, lam, mu):
    return (min(_sqrt(2 * (1 - b) / (2 * lam + 1)), float(2 * (1 - b) / (lam + 1))),
            float(2 * (1 - b) / (2 * lam + 1)))


def _beta_caglar(b, lam, mu):
    a2 = min(_sqrt(4 * (1 - b) / ((2 * lam + mu) * (mu + 1))), float(2 * (1 - b) / (lam + mu)))
    if mu < 1:
        a3 = min(float(4 * (1 - b) / ((2 * lam + mu) * (mu + 1))),
                 float(4 * (1 - b) ** 2 / (lam + mu) ** 2 + 2 * (1 - b) / (2 * lam + mu)))
    else:
        a3 = float(2 * (1 - b) / (2 * lam + mu))
    return a2, a3


def _beta_bistarlike(b, lam, mu):
    a3 = float(2 * (1 - b)) if b < Fraction(3, 4) else float((1 - b) * (5 - 4 * b))
    return _sqrt(2 * (1 - b)), a3


@dataclass(frozen=True)
class Corollary:
    id: str
    family: str
    formula: Callable
    needs: Tuple[str, ...]  # which of lam, mu the corollary keeps free

    def params(self, lam=None, mu=None) -> ClassParams:
        lam = _rat(lam) if "lam" in self.needs else Fraction(1)
        if "mu" in self.needs:
            mu = _rat(mu)
        elif self.id.endswith("bistarlike"):
            mu = Fraction(0)
        else:
            mu = Fraction(1)
        return ClassParams(lam, mu, 0)


COROLLARIES: Dict[str, Corollary] = {c.id: c for c in (
    Corollary("alpha-srivastava", "alpha", _alpha_srivastava, ()),
    Corollary("alpha-frasin", "alpha", _alpha_frasin, ("lam",)),
    Corollary("alpha-caglar", "alpha", _alpha_caglar, ("lam", "mu")),
    Corollary("alpha-strongly-bistarlike", "alpha", _alpha_strongly_bistarlike, ()),
    Corollary("beta-srivastava", "beta", _beta_srivastava, ()),
    Corollary("beta-frasin", "beta", _beta_frasin, ("lam",)),
    Corollary("beta-caglar", "beta", _beta_caglar, ("lam", "mu")),
    Corollary("beta-bistarlike", "beta", _beta_bistarlike, ()),
)}


def corollary_formula(cid: str, value, lam=None, mu=None) -> Tuple[float, float]:
    """The published reduced (a2, a3) bounds of a special case, verbatim."""
    try:
        cor = COROLLARIES[cid]
    except KeyError:
        raise KeyError(f"unknown corollary {cid!r}; known: {', '.join(COROLLARIES)}") from None
    value = _check_alpha(value) if cor.family == "alpha" else _check_beta(value)
    p = cor.params(lam, mu)
    return cor.formula(value, p.lam, p.mu)


def corollary_general(cid: str, value, lam=None, mu=None) -> Tuple[float, float]:
    """The general theorem's (a2, a3) bounds at the corollary's parameters."""
    cor = COROLLARIES[cid]
    p = cor.params(lam, mu)
    fam = ArgFamily(value) if cor.family == "alpha" else ReFamily(value)
    r = evaluate_bounds(fam, p)
    return r.a2_bound, r.a3_bound


def corollary_joints() -> Dict[str, Tuple[Fraction, Tuple[Callable, Callable]]]:
    """Piecewise joints of the beta special cases and the two expressions
    meeting there, as functions of beta."""
    return {
        "beta-srivastava/a2": (Fraction(1, 3), (lambda b: _sqrt(2 * (1 - b) / 3),
                                               lambda b: float(1 - b))),
        "beta-bistarlike/a3": (Fraction(3, 4), (lambda b: float(2 * (1 - b)),
                                               lambda b: float((1 - b) * (5 - 4 * b)))),
    }
