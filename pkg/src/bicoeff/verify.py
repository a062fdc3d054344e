"""Exact re-derivation of the coefficient relations and a Monte-Carlo sampler.

Identity checks work at random exact rational parameter points (a
Schwartz-Zippel style argument: a fixed-degree rational identity in the
parameters that survives a hundred independent points is not an accident).
At each point the coefficient relations are polynomial identities in
``a2, a3, p1, p2, q1, q2`` and are decided exactly with :class:`MultiPoly`.

The sampler builds candidates from Schwarz functions, solves the operator
equation on the z-side order by order, inverts, and checks the w-side
condition numerically.  Only accepted candidates are tested against the
closed-form bounds.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bounds import (
    COROLLARIES,
    corollary_formula,
    corollary_general,
    corollary_joints,
    evaluate_bounds,
    radicand_alpha,
)
from .class_operator import (
    DEFAULT_ANGLES,
    DEFAULT_EVAL_ORDER,
    DEFAULT_RADII,
    ArgFamily,
    ClassParams,
    ConditionReport,
    FamilySpec,
    ReFamily,
    check_condition,
    operator_coefficients_symbolic,
    operator_series,
    symbolic_normalized,
)
from .polyring import MultiPoly, solve_linear, symbols
from .series import (
    NormalizedSeries,
    SeriesDomainError,
    TruncatedSeries,
    _div_int,
    mul,
    reciprocal,
    reversion,
)

ACCEPT_MARGIN = 1e-6
BOUND_SLACK = 1e-12
CARATHEODORY_TOL = 1e-9
REDUCTION_TOL = 1e-12
DEFAULT_SOLVE_ORDER = 8
GRID_DENOMINATOR = 60


@dataclass
class IdentityVerdict:
    identity: str
    samples: int
    failures: List[Tuple[Any, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "samples": self.samples,
            "passed": self.passed,
            "failures": [{"point": pt, "residual": str(res)} for pt, res in self.failures],
        }


# ---------------------------------------------------------------------------
# parameter sampling


def sample_parameter_points(family: str, trials: int, seed: int,
                            lam_range=(1, 3), mu_range=(0, 3), delta_range=(0, 2)
                            ) -> List[Tuple[ClassParams, Fraction]]:
    """Independent rational points on the grid with spacing 1/60."""
    rng = np.random.default_rng(seed)
    d = GRID_DENOMINATOR

    def draw(lo, hi):
        return Fraction(int(rng.integers(lo * d, hi * d + 1)), d)

    out = []
    for _ in range(trials):
        params = ClassParams(draw(*lam_range), draw(*mu_range), draw(*delta_range))
        if family == "alpha":
            value = Fraction(int(rng.integers(1, d + 1)), d)
        else:
            value = Fraction(int(rng.integers(0, d)), d)
        out.append((params, value))
    return out


def _point(params: ClassParams, family: str, value: Fraction) -> Dict[str, str]:
    return {"lambda": str(params.lam), "mu": str(params.mu),
            "delta": str(params.delta), family: str(value)}


def _family(name: str, value) -> FamilySpec:
    return ArgFamily(value) if name == "alpha" else ReFamily(value)


# ---------------------------------------------------------------------------
# inverse expansion


def verify_inverse_expansion() -> List[IdentityVerdict]:
    a2, a3, a4 = symbols("a2", "a3", "a4")
    g = reversion(symbolic_normalized(4))
    checks = {
        "inverse b2 = -a2": g[2] + a2,
        "inverse b3 = 2a2^2 - a3": g[3] - (2 * a2 ** 2 - a3),
        "inverse b4 = -(5a2^3 - 5a2a3 + a4)": g[4] + (5 * a2 ** 3 - 5 * a2 * a3 + a4),
    }
    out = []
    for name, residual in checks.items():
        v = IdentityVerdict(name, 1)
        if not residual.is_zero():
            v.failures.append(({}, residual))
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# coefficient equations


def _carath_symbolic(first: str, second: str) -> TruncatedSeries:
    return TruncatedSeries((1, MultiPoly.var(first), MultiPoly.var(second)))


def published_operator_coefficients(params: ClassParams) -> Dict[str, MultiPoly]:
    """The stated z^1, z^2 coefficients of L[f] and L[g]."""
    a2, a3 = symbols("a2", "a3")
    lam, mu, delta = params.lam, params.mu, params.delta
    t = params.first_factor
    k = 1 + 6 * delta / (2 * lam + 1)
    return {
        "f1": t * a2,
        "f2": (2 * lam + mu) * ((mu - 1) / 2 * a2 ** 2 + k * a3),
        "g1": -t * a2,
        "g2": (2 * lam + mu) * (((mu + 3) / 2 + 12 * delta / (2 * lam + 1)) * a2 ** 2 - k * a3),
    }


def published_rhs(family: FamilySpec, first: str, second: str) -> Tuple[MultiPoly, MultiPoly]:
    c1, c2 = symbols(first, second)
    if isinstance(family, ArgFamily):
        a = family.alpha
        return a * c1, a * c2 + a * (a - 1) / 2 * c1 ** 2
    b = family.beta
    return (1 - b) * c1, (1 - b) * c2


def _as_poly(x) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else MultiPoly.const(x)


def coefficient_residuals(params: ClassParams, family: FamilySpec) -> Dict[str, MultiPoly]:
    co = operator_coefficients_symbolic(params, 2)
    pub = published_operator_coefficients(params)
    rp = family.rhs(_carath_symbolic("p1", "p2"))
    rq = family.rhs(_carath_symbolic("q1", "q2"))
    pp1, pp2 = published_rhs(family, "p1", "p2")
    pq1, pq2 = published_rhs(family, "q1", "q2")
    return {
        "L[f] constant term = 1": _as_poly(co.z_side[0]) - 1,
        "L[g] constant term = 1": _as_poly(co.w_side[0]) - 1,
        "L[f] z^1 coefficient": co.z_side[1] - pub["f1"],
        "L[f] z^2 coefficient": co.z_side[2] - pub["f2"],
        "L[g] z^1 coefficient": co.w_side[1] - pub["g1"],
        "L[g] z^2 coefficient": co.w_side[2] - pub["g2"],
        "z-side right side z^1": _as_poly(rp[1]) - pp1,
        "z-side right side z^2": _as_poly(rp[2]) - pp2,
        "w-side right side z^1": _as_poly(rq[1]) - pq1,
        "w-side right side z^2": _as_poly(rq[2]) - pq2,
    }


def _run_identities(family_name: str, trials: int, seed: int, residuals_at) -> List[IdentityVerdict]:
    verdicts: Dict[str, IdentityVerdict] = {}
    for params, value in sample_parameter_points(family_name, trials, seed):
        fam = _family(family_name, value)
        for name, res in residuals_at(params, fam).items():
            v = verdicts.setdefault(name, IdentityVerdict(f"{family_name}: {name}", 0))
            v.samples += 1
            if not res.is_zero():
                v.failures.append((_point(params, family_name, value), res))
    return list(verdicts.values())


def verify_coefficient_equations(family: str, trials: int = 100, seed: int = 0) -> List[IdentityVerdict]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return _run_identities(family, trials, seed, coefficient_residuals)


# ---------------------------------------------------------------------------
# derived chains


def solve_coefficient_system(params: ClassParams, family: FamilySpec) -> Dict[str, MultiPoly]:
    """General solution of the four coefficient equations, computed from the
    operator expansion itself: a2, a3, q1, q2 as polynomials in p1, p2."""
    co = operator_coefficients_symbolic(params, 2)
    rp = family.rhs(_carath_symbolic("p1", "p2"))
    rq = family.rhs(_carath_symbolic("q1", "q2"))
    a2 = solve_linear(co.z_side[1] - rp[1], "a2")
    q1 = solve_linear((co.w_side[1] - rq[1]).substitute({"a2": a2}), "q1")
    a3 = solve_linear((co.z_side[2] - rp[2]).substitute({"a2": a2}), "a3")
    q2 = solve_linear((co.w_side[2] - rq[2]).substitute({"a2": a2, "a3": a3, "q1": q1}), "q2")
    return {"a2": a2, "a3": a3, "q1": q1, "q2": q2}


def _published_chain_alpha(params: ClassParams, alpha: Fraction) -> Dict[str, Any]:
    a2, a3, p1, p2, q1, q2 = symbols("a2", "a3", "p1", "p2", "q1", "q2")
    lam, mu, delta, xi = params.lam, params.mu, params.delta, params.xi
    t = params.first_factor
    s = params.second_factor
    k = 1 + 6 * delta / (2 * lam + 1)
    bracket = (2 * lam + mu) * (mu + 1) + 12 * xi * delta - (alpha - 1) / alpha * t ** 2
    return {
        "p1 = -q1": p1 + q1,
        "a2^2 from the z^1 pair": 2 * t ** 2 * a2 ** 2 - alpha ** 2 * (p1 ** 2 + q1 ** 2),
        "sum of the z^2 equations": (2 * lam + mu) * (1 + mu + 12 * delta / (2 * lam + 1)) * a2 ** 2
        - alpha * (p2 + q2) - alpha * (alpha - 1) / 2 * (p1 ** 2 + q1 ** 2),
        "a2^2 against p2 + q2": bracket * a2 ** 2 - alpha * (p2 + q2),
        "a2 bound radicand = alpha * bracket": MultiPoly.const(alpha * bracket - radicand_alpha(params, alpha)),
        "difference of the z^2 equations": 2 * (2 * lam + mu) * k * a3 - 2 * (2 * lam + mu) * k * a2 ** 2
        - alpha * (p2 - q2) - alpha * (alpha - 1) / 2 * (p1 ** 2 - q1 ** 2),
        "a3 = a2^2 + alpha (p2 - q2) / (2 S)": a3 - a2 ** 2 - alpha / (2 * s) * (p2 - q2),
    }


def _published_chain_beta(params: ClassParams, beta: Fraction) -> Dict[str, Any]:
    a2, a3, p1, p2, q1, q2 = symbols("a2", "a3", "p1", "p2", "q1", "q2")
    lam, mu, delta = params.lam, params.mu, params.delta
    t = params.first_factor
    s = params.second_factor
    d = delta / (2 * lam + 1)
    k = 1 + 6 * d
    m = 1 + mu + 12 * d
    ob = 1 - beta
    route_factor = (3 + mu + 24 * d + abs(1 - mu)) / m
    collapsed = Fraction(2) if mu >= 1 else (4 + 24 * d) / m
    return {
        "p1 = -q1": p1 + q1,
        "a2^2 from the z^1 pair": 2 * t ** 2 * a2 ** 2 - ob ** 2 * (p1 ** 2 + q1 ** 2),
        "sum of the z^2 equations": (2 * lam + mu) * m * a2 ** 2 - ob * (p2 + q2),
        "difference of the z^2 equations": 2 * (2 * lam + mu) * k * a3
        - 2 * (2 * lam + mu) * k * a2 ** 2 - ob * (p2 - q2),
        "a3 via the z^1 pair": a3 - ob ** 2 / (2 * t ** 2) * (p1 ** 2 + q1 ** 2)
        - ob / (2 * s) * (p2 - q2),
        "a3 via the z^2 sum": a3 - ob / (2 * s) * ((3 + mu + 24 * d) / m * p2 + (1 - mu) / m * q2),
        "mu split of the second a3 route": MultiPoly.const(route_factor - collapsed),
    }


def derived_residuals(params: ClassParams, family: FamilySpec) -> Dict[str, MultiPoly]:
    bindings = solve_coefficient_system(params, family)
    if isinstance(family, ArgFamily):
        chain = _published_chain_alpha(params, family.alpha)
    else:
        chain = _published_chain_beta(params, family.beta)
    return {name: expr.substitute(bindings) for name, expr in chain.items()}


def verify_derived_identities(family: str, trials: int = 100, seed: int = 0) -> List[IdentityVerdict]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return _run_identities(family, trials, seed, derived_residuals)


# ---------------------------------------------------------------------------
# numeric against symbolic


def verify_numeric_agreement(trials: int = 100, seed: int = 0, tol: float = 1e-10) -> IdentityVerdict:
    """operator_series over complex floats against the symbolic coefficient
    polynomials evaluated at the same a2, a3, a4."""
    rng = np.random.default_rng(seed)
    points = sample_parameter_points("alpha", trials, seed + 1)
    verdict = IdentityVerdict("numeric operator = symbolic coefficients", trials)
    for params, _ in points:
        a = [complex(*rng.uniform(-1, 1, 2)) for _ in range(3)]
        f = NormalizedSeries.from_tail(a, 4)
        num_f = operator_series(f, params)
        num_g = operator_series(reversion(f), params)
        co = operator_coefficients_symbolic(params, 3)
        values = {"a2": a[0], "a3": a[1], "a4": a[2]}
        worst = 0.0
        for k in range(4):
            worst = max(worst,
                        abs(num_f[k] - complex(_as_poly(co.z_side[k]).evaluate(values))),
                        abs(num_g[k] - complex(_as_poly(co.w_side[k]).evaluate(values))))
        if worst > tol:
            verdict.failures.append((params.as_dict(), worst))
    return verdict


# ---------------------------------------------------------------------------
# Schwarz functions and Caratheodory kernels


@dataclass(frozen=True)
class SchwarzSpec:
    """``zero``: phi = 0; ``rotation``: phi = eta z^k;
    ``blaschke``: phi = eta z (z + c)/(1 + conj(c) z)."""

    kind: str
    eta: complex = 0j
    c: complex = 0j
    k: int = 1

    def __post_init__(self):
        if self.kind not in ("zero", "rotation", "blaschke"):
            raise ValueError(f"unknown Schwarz kind {self.kind!r}")
        if abs(self.eta) > 1 + 1e-15:
            raise ValueError("|eta| must be <= 1")
        if abs(self.c) >= 1:
            raise ValueError("|c| must be < 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")

    def series(self, order: int) -> TruncatedSeries:
        if self.kind == "zero":
            return TruncatedSeries((0j,) * (order + 1))
        if self.kind == "rotation":
            coeffs = [0j] * (order + 1)
            if self.k <= order:
                coeffs[self.k] = complex(self.eta)
            return TruncatedSeries(tuple(coeffs))
        num = TruncatedSeries.from_coeffs([0j, self.eta * self.c, complex(self.eta)], order)
        den = TruncatedSeries.from_coeffs([1 + 0j, self.c.conjugate()], order)
        return mul(num, reciprocal(den))

    def as_dict(self) -> dict:
        return {"kind": self.kind, "eta": [self.eta.real, self.eta.imag],
                "c": [self.c.real, self.c.imag], "k": self.k}

    @classmethod
    def parse(cls, text: str) -> "SchwarzSpec":
        """``zero`` | ``rotation:ETA[:K]`` | ``blaschke:ETA:C`` with complex
        literals such as ``0.5+0.1j``."""
        parts = text.split(":")
        kind = parts[0]
        if kind == "zero":
            return cls("zero")
        if kind == "rotation" and len(parts) in (2, 3):
            return cls("rotation", complex(parts[1]), k=int(parts[2]) if len(parts) == 3 else 1)
        if kind == "blaschke" and len(parts) == 3:
            return cls("blaschke", complex(parts[1]), complex(parts[2]))
        raise ValueError(f"cannot parse Schwarz spec {text!r}")


def draw_schwarz(rng: np.random.Generator) -> SchwarzSpec:
    radius = 1.0 if rng.random() < 0.1 else math.sqrt(rng.random())
    eta = radius * complex(np.exp(2j * np.pi * rng.random()))
    if rng.random() < 0.25:
        return SchwarzSpec("rotation", eta, k=int(rng.integers(1, 4)))
    c = 0.95 * math.sqrt(rng.random()) * complex(np.exp(2j * np.pi * rng.random()))
    return SchwarzSpec("blaschke", eta, c)


@dataclass
class CaratheodoryFunction:
    construction: SchwarzSpec
    series: TruncatedSeries

    @property
    def coefficients(self) -> tuple:
        return self.series.coeffs[1:]


def caratheodory(schwarz: SchwarzSpec, order: int) -> CaratheodoryFunction:
    """p = (1 + phi)/(1 - phi)."""
    phi = schwarz.series(order)
    p = mul(phi + 1, reciprocal(-phi + 1))
    return CaratheodoryFunction(schwarz, p)


def verify_caratheodory(trials: int = 1000, seed: int = 0, kmax: int = 8,
                        tol: float = CARATHEODORY_TOL) -> IdentityVerdict:
    rng = np.random.default_rng(seed)
    verdict = IdentityVerdict(f"caratheodory |c_k| <= 2 for k <= {kmax}", trials)
    for _ in range(trials):
        spec = draw_schwarz(rng)
        worst = max(abs(c) for c in caratheodory(spec, kmax).coefficients)
        if worst > 2 + tol:
            verdict.failures.append((spec.as_dict(), worst))
    return verdict


def verify_caratheodory_extremal(kmax: int = 8, tol: float = CARATHEODORY_TOL) -> IdentityVerdict:
    verdict = IdentityVerdict("caratheodory extremal phi(z) = z gives c_k = 2", 1)
    coeffs = caratheodory(SchwarzSpec("rotation", 1 + 0j), kmax).coefficients
    worst = max(abs(c - 2) for c in coeffs)
    if worst > tol:
        verdict.failures.append(({"phi": "z"}, worst))
    return verdict


# ---------------------------------------------------------------------------
# candidate construction


class DegenerateParameterError(ValueError):
    pass


def solve_operator_equation(h: TruncatedSeries, params: ClassParams, order: int) -> NormalizedSeries:
    """Normalized f of the given order with L[f] = h through z^(order-1).

    Runs the power recurrence n w_n = sum_k (e k - (n-k)) s_k w_{n-k} for
    (f/z)^mu and (f/z)^(mu-1) alongside the solve, so each new coefficient
    costs O(n).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if h.order < order - 1:
        raise ValueError("right-hand series too short for the requested order")
    c0 = complex(h[0]) if h.numeric else h[0]
    if abs(c0 - 1) > 1e-12:
        raise SeriesDomainError("the right-hand side must have constant term 1")
    if h.numeric:
        lam, mu, xd = float(params.lam), float(params.mu), float(params.xi * params.delta)
        div = lambda x, n: x / n
    else:
        lam, mu, xd = params.lam, params.mu, params.xi * params.delta
        div = _div_int
    s, w, v = [1], [1], [1]
    for n in range(1, order):
        wn = div(sum((mu * k - (n - k)) * s[k] * w[n - k] for k in range(1, n)), n)
        vn = div(sum(((mu - 1) * k - (n - k)) * s[k] * v[n - k] for k in range(1, n)), n)
        cross = sum((k + 1) * s[k] * v[n - k] for k in range(1, n))
        rest = (1 - lam) * wn + lam * (vn + cross)
        lead = mu + lam * n + xd * n * (n + 1)
        if lead == 0:
            raise DegenerateParameterError(f"coefficient of a_{n + 1} vanishes")
        sn = (h[n] - rest) / lead
        s.append(sn)
        w.append(wn + mu * sn)
        v.append(vn + (mu - 1) * sn)
    zero = 0j if h.numeric else 0
    return NormalizedSeries((zero, 1 + zero) + tuple(s[1:]))


def solve_candidate(family: FamilySpec, params: ClassParams, schwarz: SchwarzSpec,
                    order: int = DEFAULT_SOLVE_ORDER) -> NormalizedSeries:
    p = caratheodory(schwarz, order - 1).series
    return solve_operator_equation(family.rhs(p), params, order)


# ---------------------------------------------------------------------------
# sampler


@dataclass
class SampleRecord:
    trial: int
    family: FamilySpec
    params: ClassParams
    schwarz: SchwarzSpec
    order: int
    coefficients: Tuple[complex, ...]
    report_z: ConditionReport
    report_w: ConditionReport
    status: str
    a2_abs: float
    a3_abs: float
    a2_bound: float
    a3_bound: float
    violation: bool

    @property
    def accepted(self) -> bool:
        return self.status == "accepted"

    def as_dict(self) -> dict:
        return {
            "trial": self.trial,
            "family": self.family.as_dict(),
            "params": self.params.as_dict(),
            "schwarz": self.schwarz.as_dict(),
            "order": self.order,
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
            "report_z": self.report_z.as_dict(),
            "report_w": self.report_w.as_dict(),
            "status": self.status,
            "accepted": self.accepted,
            "a2_abs": self.a2_abs,
            "a3_abs": self.a3_abs,
            "a2_bound": self.a2_bound,
            "a3_bound": self.a3_bound,
            "violation": self.violation,
        }


def classify(report_z: ConditionReport, report_w: ConditionReport) -> str:
    if not (report_z.satisfied and report_w.satisfied):
        return "rejected"
    if min(report_z.worst_margin, report_w.worst_margin) <= ACCEPT_MARGIN:
        return "inconclusive"
    return "accepted"


def run_trial(trial: int, family: FamilySpec, params: ClassParams, schwarz: SchwarzSpec,
              order: int = DEFAULT_SOLVE_ORDER, eval_order: int = DEFAULT_EVAL_ORDER,
              radii: Sequence[float] = DEFAULT_RADII, angles: int = DEFAULT_ANGLES) -> SampleRecord:
    bounds = evaluate_bounds(family, params)
    f = solve_candidate(family, params, schwarz, order)
    # one extra coefficient so both operator series are trusted through eval_order
    f_eval = solve_candidate(family, params, schwarz, eval_order + 1)
    with np.errstate(all="ignore"):
        report_z = check_condition(operator_series(f_eval, params), family, radii, angles)
        report_w = check_condition(operator_series(reversion(f_eval), params), family, radii, angles)
    status = classify(report_z, report_w)
    a2_abs, a3_abs = abs(f[2]), abs(f[3]) if order >= 3 else 0.0
    violation = status == "accepted" and (a2_abs > bounds.a2_bound + BOUND_SLACK
                                          or a3_abs > bounds.a3_bound + BOUND_SLACK)
    return SampleRecord(trial, family, params, schwarz, order, tuple(f.tail),
                        report_z, report_w, status, a2_abs, a3_abs,
                        bounds.a2_bound, bounds.a3_bound, violation)


def trial_schwarz(seed: int, trial: int) -> SchwarzSpec:
    return draw_schwarz(np.random.default_rng([seed, trial]))


def _run_one(args) -> SampleRecord:
    trial, seed, family, params, forced, order, eval_order, radii, angles = args
    schwarz = forced if forced is not None else trial_schwarz(seed, trial)
    return run_trial(trial, family, params, schwarz, order, eval_order, radii, angles)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("BICOEFF_THREADS", "1")))
    except ValueError:
        return 1


def sample_members(family: FamilySpec, params: ClassParams, trials: int, seed: int,
                   radii: Sequence[float] = DEFAULT_RADII, angles: int = DEFAULT_ANGLES,
                   order: int = DEFAULT_SOLVE_ORDER, eval_order: int = DEFAULT_EVAL_ORDER,
                   force_schwarz: Optional[SchwarzSpec] = None,
                   workers: Optional[int] = None) -> List[SampleRecord]:
    """Each trial draws its Schwarz function from its own stream seeded by
    (seed, trial), so results do not depend on scheduling."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    jobs = [(t, seed, family, params, force_schwarz, order, eval_order, tuple(radii), angles)
            for t in range(trials)]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or trials < 2 * workers:
        return [_run_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, jobs, chunksize=max(1, trials // (4 * workers))))


@dataclass
class SampleSummary:
    trials: int
    accepted: int
    rejected: int
    inconclusive: int
    violations: int

    def line(self) -> str:
        return (f"trials={self.trials} accepted={self.accepted} rejected={self.rejected} "
                f"inconclusive={self.inconclusive} violations={self.violations}")


def summarize(records: Sequence[SampleRecord]) -> SampleSummary:
    count = lambda s: sum(r.status == s for r in records)
    return SampleSummary(len(records), count("accepted"), count("rejected"),
                         count("inconclusive"), sum(r.violation for r in records))


# ---------------------------------------------------------------------------
# special-case reductions


FRASIN_LAMBDAS = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
CAGLAR_POINTS = ((Fraction(1), Fraction(0)), (Fraction(1), Fraction(1, 2)),
                 (Fraction(2), Fraction(1, 3)), (Fraction(3, 2), Fraction(2)),
                 (Fraction(2), Fraction(1)))


def order_grid(family: str, points: int = 101) -> List[Fraction]:
    """alpha in (0, 1]; beta in [0, 1)."""
    if family == "alpha":
        return [Fraction(k + 1, points) for k in range(points)]
    return [Fraction(k, points) for k in range(points)]


def _corollary_points(cid: str):
    cor = COROLLARIES[cid]
    if cor.needs == ("lam",):
        return [(lam, None) for lam in FRASIN_LAMBDAS]
    if cor.needs == ("lam", "mu"):
        return list(CAGLAR_POINTS)
    return [(None, None)]


def verify_corollaries(points: int = 101, tol: float = REDUCTION_TOL) -> List[IdentityVerdict]:
    out = []
    for cid, cor in COROLLARIES.items():
        grid = order_grid(cor.family, points)
        if cid == "beta-bistarlike":
            eq = IdentityVerdict(f"{cid}: a3 reduction", 0)
            imp = IdentityVerdict(f"{cid}: a2 general <= stated, strict for beta > 1/2", 0)
            for b in grid:
                (g2, g3), (c2, c3) = corollary_general(cid, b), corollary_formula(cid, b)
                eq.samples += 1
                imp.samples += 1
                if abs(g3 - c3) > tol:
                    eq.failures.append(({"beta": str(b)}, g3 - c3))
                strict_needed = b > Fraction(1, 2)
                if g2 > c2 + tol or (strict_needed and not g2 < c2):
                    imp.failures.append(({"beta": str(b)}, g2 - c2))
            out += [eq, imp]
            continue
        v = IdentityVerdict(f"{cid}: reduction", 0)
        for lam, mu in _corollary_points(cid):
            for x in grid:
                (g2, g3), (c2, c3) = corollary_general(cid, x, lam, mu), corollary_formula(cid, x, lam, mu)
                v.samples += 1
                worst = max(abs(g2 - c2), abs(g3 - c3))
                if worst > tol:
                    v.failures.append(({cor.family: str(x), "lambda": str(lam), "mu": str(mu)}, worst))
        out.append(v)
    for name, (joint, (left, right)) in corollary_joints().items():
        v = IdentityVerdict(f"{name}: pieces agree at beta = {joint}", 1)
        if abs(left(joint) - right(joint)) > tol:
            v.failures.append(({"beta": str(joint)}, left(joint) - right(joint)))
        out.append(v)
    out.append(verify_radicand_positive())
    return out


def verify_radicand_positive(trials: int = 500, seed: int = 0) -> IdentityVerdict:
    """Positivity of the alpha-family a2 radicand over [1,5]x[0,5]x[0,5]x(0,1],
    together with its split (1-alpha) T^2 + alpha[(2lam+mu)(mu+1) + 12 xi delta]."""
    v = IdentityVerdict("alpha radicand positive", trials)
    for params, alpha in sample_parameter_points("alpha", trials, seed, (1, 5), (0, 5), (0, 5)):
        rad = radicand_alpha(params, alpha)
        split = ((1 - alpha) * params.first_factor ** 2
                 + alpha * ((2 * params.lam + params.mu) * (params.mu + 1) + 12 * params.xi * params.delta))
        if rad <= 0 or rad != split:
            v.failures.append((_point(params, "alpha", alpha), rad))
    return v
