"""The defining operator of the two function classes and its disk checks.

For a normalized ``f`` the operator is

    L[f](z) = (1 - lam) (f/z)^mu + lam f'(z) (f/z)^(mu-1) + xi*delta*z*f''(z),
    xi = (2 lam + mu) / (2 lam + 1).

Membership of ``f`` (and of its inverse ``g``) is the condition
``|arg L| < alpha*pi/2`` for the alpha family or ``Re L > beta`` for the beta
family.  Checking is numeric and heuristic: the truncated series is
evaluated on a finite polar grid with radius at most 0.95 and the smallest
margin is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .polyring import MultiPoly, parse_rational
from .series import (
    NormalizedSeries,
    SeriesDomainError,
    TruncatedSeries,
    derivative,
    eval_many,
    mul,
    pow_fractional,
    reversion,
)

MAX_RADIUS = 0.95
DEFAULT_RADII: Tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95)
DEFAULT_ANGLES = 720
DEFAULT_EVAL_ORDER = 32


class ParameterError(ValueError):
    """A class or family parameter lies outside its admissible range."""


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else parse_rational(x)


@dataclass(frozen=True)
class ClassParams:
    lam: Fraction
    mu: Fraction
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", _rat(self.lam))
        object.__setattr__(self, "mu", _rat(self.mu))
        object.__setattr__(self, "delta", _rat(self.delta))
        if self.lam < 1:
            raise ParameterError("lambda must be >= 1")
        if self.mu < 0:
            raise ParameterError("mu must be >= 0")
        if self.delta < 0:
            raise ParameterError("delta must be >= 0")

    @classmethod
    def unchecked(cls, lam, mu, delta) -> "ClassParams":
        """Bypass range validation (for probing degenerate parameters)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "lam", _rat(lam))
        object.__setattr__(obj, "mu", _rat(mu))
        object.__setattr__(obj, "delta", _rat(delta))
        return obj

    @property
    def xi(self) -> Fraction:
        return (2 * self.lam + self.mu) / (2 * self.lam + 1)

    # Recurring combinations of the parameters.
    @property
    def first_factor(self) -> Fraction:
        """lam + mu + 2 xi delta: the z^1 coefficient of L[f] per unit a2."""
        return self.lam + self.mu + 2 * self.xi * self.delta

    @property
    def second_factor(self) -> Fraction:
        """2 lam + mu + 6 xi delta: the z^2 coefficient per unit a3."""
        return 2 * self.lam + self.mu + 6 * self.xi * self.delta

    def linear_solve_coefficient(self, n: int) -> Fraction:
        """Coefficient of a_{n+1} in the z^n coefficient of L[f]."""
        return self.mu + self.lam * n + self.xi * self.delta * n * (n + 1)

    def as_dict(self) -> dict:
        return {"lambda": str(self.lam), "mu": str(self.mu),
                "delta": str(self.delta), "xi": str(self.xi)}


@dataclass(frozen=True)
class ArgFamily:
    """|arg L| < alpha*pi/2 with 0 < alpha <= 1."""

    alpha: Fraction
    name = "alpha"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _rat(self.alpha))
        if not (0 < self.alpha <= 1):
            raise ParameterError("alpha must satisfy 0 < alpha <= 1")

    @property
    def value(self) -> Fraction:
        return self.alpha

    def rhs(self, p: TruncatedSeries) -> TruncatedSeries:
        return pow_fractional(p, self.alpha)

    def margins(self, values: np.ndarray) -> np.ndarray:
        return float(self.alpha) * math.pi / 2 - np.abs(np.angle(values))

    def as_dict(self) -> dict:
        return {"mode": "alpha", "alpha": str(self.alpha)}

    def label(self) -> str:
        return f"alpha={self.alpha}"


@dataclass(frozen=True)
class ReFamily:
    """Re L > beta with 0 <= beta < 1."""

    beta: Fraction
    name = "beta"

    def __post_init__(self):
        object.__setattr__(self, "beta", _rat(self.beta))
        if not (0 <= self.beta < 1):
            raise ParameterError("beta must satisfy 0 <= beta < 1")

    @property
    def value(self) -> Fraction:
        return self.beta

    def rhs(self, p: TruncatedSeries) -> TruncatedSeries:
        return p * (1 - self.beta) + self.beta

    def margins(self, values: np.ndarray) -> np.ndarray:
        return values.real - float(self.beta)

    def as_dict(self) -> dict:
        return {"mode": "beta", "beta": str(self.beta)}

    def label(self) -> str:
        return f"beta={self.beta}"


FamilySpec = Union[ArgFamily, ReFamily]


def make_family(name: str, value) -> FamilySpec:
    if name == "alpha":
        return ArgFamily(value)
    if name == "beta":
        return ReFamily(value)
    raise ParameterError(f"unknown family {name!r}; expected 'alpha' or 'beta'")


@dataclass
class ConditionReport:
    satisfied: bool
    worst_margin: float
    worst_point: complex
    radii: Tuple[float, ...]
    angles: int
    truncation_order: int

    def as_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "worst_margin": self.worst_margin,
            "worst_point": [self.worst_point.real, self.worst_point.imag],
            "grid_spec": {"radii": list(self.radii), "angles": self.angles},
            "truncation_order": self.truncation_order,
        }


# ---------------------------------------------------------------------------


def operator_series(f: TruncatedSeries, params: ClassParams) -> TruncatedSeries:
    """L[f] as a truncated series.  The result keeps the order of ``f``
    and is valid through order N-1 (f/z and f' lose the top coefficient)."""
    if not isinstance(f, NormalizedSeries):
        f = NormalizedSeries.of(f)
    ratio = f.shift_down()
    fp = derivative(f)
    lam, mu = params.lam, params.mu
    out = pow_fractional(ratio, mu) * (1 - lam)
    out = out + mul(fp, pow_fractional(ratio, mu - 1)) * lam
    if params.delta:
        out = out + derivative(fp).shift_up() * (params.xi * params.delta)
    return out


@dataclass
class OperatorCoefficients:
    z_side: List[MultiPoly]
    w_side: List[MultiPoly]


def symbolic_normalized(order: int) -> NormalizedSeries:
    names = ["a2", "a3", "a4"][: order - 1]
    return NormalizedSeries.from_tail([MultiPoly.var(n) for n in names], order)


def operator_coefficients_symbolic(params: ClassParams, upto: int = 2) -> OperatorCoefficients:
    """Coefficient polynomials of L[f] and L[g], g the inverse of f, through
    z^upto, in the symbols a2..a4."""
    if not 1 <= upto <= 3:
        raise ValueError("upto must be 1, 2 or 3 (only a2, a3, a4 are symbolic)")
    f = symbolic_normalized(upto + 1)
    g = reversion(f)

    def coeffs(s):
        h = operator_series(s, params)
        return [h[k] if isinstance(h[k], MultiPoly) else MultiPoly.const(h[k])
                for k in range(upto + 1)]

    return OperatorCoefficients(coeffs(f), coeffs(g))


def polar_grid(radii: Sequence[float], angles: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    r = np.asarray(radii, dtype=float)
    t = 2 * np.pi * np.arange(angles) / angles
    rr, tt = np.meshgrid(r, t, indexing="ij")
    return rr.ravel(), tt.ravel(), (rr * np.exp(1j * tt)).ravel()


def check_condition(h: TruncatedSeries, family: FamilySpec,
                    radii: Sequence[float] = DEFAULT_RADII,
                    angles: int = DEFAULT_ANGLES) -> ConditionReport:
    """Evaluate ``h`` on a polar grid and report the smallest margin.

    ``satisfied`` means satisfied by the truncation on the grid, nothing more.
    Non-finite values count as a margin of -inf.
    """
    radii = tuple(float(r) for r in radii)
    if not radii or angles < 1:
        raise ValueError("grid needs at least one radius and one angle")
    if max(radii) > MAX_RADIUS:
        raise SeriesDomainError(
            f"radius {max(radii)} exceeds {MAX_RADIUS}; truncation tail is untrusted there")
    if min(radii) < 0:
        raise ValueError("radii must be non-negative")
    if abs(complex(h[0]) - 1) > 1e-9:
        raise SeriesDomainError(f"condition checks need h(0) = 1, got {h[0]}")
    _, _, pts = polar_grid(radii, angles)
    with np.errstate(all="ignore"):
        vals = eval_many(h, pts)
        margins = family.margins(vals)
    margins = np.where(np.isfinite(margins), margins, -np.inf)
    i = int(np.argmin(margins))  # first minimum = lexicographically least (radius, angle)
    worst = float(margins[i])
    return ConditionReport(
        satisfied=worst > 0,
        worst_margin=worst,
        worst_point=complex(pts[i]),
        radii=radii,
        angles=angles,
        truncation_order=h.valid,
    )
