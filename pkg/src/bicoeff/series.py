"""Truncated formal power series over an exact or approximate coefficient ring.

A series stores ``c_0 .. c_N`` and a validity index ``valid <= N``: the
highest power whose coefficient is trustworthy.  Operations that shift
information off the top (derivative, division by the variable) lower
``valid`` instead of inventing coefficients, and every binary operation
propagates the minimum.

Coefficients may be ``int``/``Fraction`` or :class:`MultiPoly` (exact ring,
tolerance 0) or ``float``/``complex`` (approximate ring, tolerance
:data:`NUMERIC_TOL`).  Numeric series take a numpy fast path for products.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .polyring import MultiPoly

NUMERIC_TOL = 1e-12


class SeriesError(ValueError):
    """Base class for series domain and structure errors."""


class OrderMismatchError(SeriesError):
    pass


class SeriesDomainError(SeriesError):
    pass


def _is_inexact(c) -> bool:
    return isinstance(c, (float, complex, np.inexact))


def _is_zero(c) -> bool:
    if isinstance(c, MultiPoly):
        return c.is_zero()
    return c == 0


def _as_scalar(c):
    if isinstance(c, MultiPoly):
        if not c.is_constant():
            raise SeriesDomainError(f"expected a constant coefficient, got {c}")
        return c.constant_term()
    return c


def _div_int(c, n: int):
    if _is_inexact(c):
        return c / n
    if isinstance(c, int):
        return Fraction(c, n)
    return c * Fraction(1, n)


def binomial(e, k: int):
    """Generalized binomial coefficient C(e, k), exact when ``e`` is rational."""
    if isinstance(e, (float, complex)):
        out = 1.0
        for j in range(k):
            out = out * (e - j) / (j + 1)
        return out
    e = Fraction(e)
    out = Fraction(1)
    for j in range(k):
        out = out * (e - j) / (j + 1)
    return out


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    coeffs: tuple
    valid: Optional[int] = None

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise SeriesError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", coeffs)
        order = len(coeffs) - 1
        valid = order if self.valid is None else self.valid
        if valid > order:
            raise SeriesError("valid index exceeds the truncation order")
        object.__setattr__(self, "valid", valid)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, order: Optional[int] = None) -> "TruncatedSeries":
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([c], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([0, 1], order)

    # -- basic accessors -----------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def numeric(self) -> bool:
        return any(_is_inexact(c) for c in self.coeffs)

    @property
    def tolerance(self) -> float:
        return NUMERIC_TOL if self.numeric else 0.0

    def _with(self, coeffs, valid=None) -> "TruncatedSeries":
        return TruncatedSeries(tuple(coeffs), self.valid if valid is None else valid)

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatchError(
                f"truncation orders differ: {self.order} vs {other.order}")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                                   min(self.valid, other.valid))
        return self._with((self.coeffs[0] + self._coerce_scalar(other),) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return self._with(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def _coerce_scalar(self, c):
        if isinstance(c, Fraction) and self.numeric:
            return float(c)
        return c

    def scale(self, c) -> "TruncatedSeries":
        c = self._coerce_scalar(c)
        return self._with(x * c for x in self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderMismatchError("cannot raise the truncation order by truncating")
        return TruncatedSeries(self.coeffs[: order + 1], min(self.valid, order))

    def pad(self, order: int) -> "TruncatedSeries":
        """Extend with zero coefficients; the new slots are marked untrusted."""
        if order < self.order:
            raise OrderMismatchError("pad cannot lower the order")
        return TruncatedSeries(self.coeffs + (0,) * (order - self.order), self.valid)

    def shift_up(self) -> "TruncatedSeries":
        """Multiply by the variable, dropping the top coefficient."""
        return TruncatedSeries((0 * self.coeffs[0],) + self.coeffs[:-1],
                               min(self.valid + 1, self.order))

    def shift_down(self) -> "TruncatedSeries":
        """Divide by the variable; the constant term must vanish."""
        if not _is_zero(self.coeffs[0]):
            raise SeriesDomainError("division by z needs a zero constant term")
        return TruncatedSeries(self.coeffs[1:] + (0 * self.coeffs[0],), self.valid - 1)

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.valid == other.valid and all(
            _is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def close_to(self, other: "TruncatedSeries", tol: Optional[float] = None,
                 upto: Optional[int] = None) -> bool:
        """Coefficientwise equality over the jointly valid range."""
        self._check(other)
        if tol is None:
            tol = max(self.tolerance, other.tolerance)
        n = min(self.valid, other.valid) if upto is None else upto
        for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]):
            d = a - b
            if isinstance(d, MultiPoly):
                if not d.is_zero():
                    return False
            elif abs(d) > tol:
                return False
        return True

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"TruncatedSeries([{body}], valid={self.valid})"

    # -- evaluation ----------------------------------------------------

    def eval_at(self, z: complex):
        return eval_at(self, z)


class NormalizedSeries(TruncatedSeries):
    """A series ``z + c_2 z^2 + ...`` with c_0 = 0 and c_1 = 1."""

    def __post_init__(self):
        super().__post_init__()
        if self.order < 1:
            raise SeriesDomainError("a normalized series needs order >= 1")
        c0, c1 = self.coeffs[0], self.coeffs[1]
        if any(_is_inexact(c) for c in (c0, c1)):
            ok = abs(c0) <= NUMERIC_TOL and abs(c1 - 1) <= NUMERIC_TOL
        else:
            ok = _is_zero(c0) and _is_zero(c1 - 1)
        if not ok:
            raise SeriesDomainError("normalized series must start z + ...")

    @classmethod
    def from_tail(cls, tail: Sequence, order: Optional[int] = None) -> "NormalizedSeries":
        """Build from ``[a_2, a_3, ...]``."""
        tail = list(tail)
        if order is None:
            order = len(tail) + 1
        coeffs = ([0, 1] + tail)[: order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def of(cls, s: TruncatedSeries) -> "NormalizedSeries":
        return cls(s.coeffs, s.valid)

    @property
    def tail(self) -> tuple:
        return self.coeffs[2:]


# ---------------------------------------------------------------------------
# kernels


def mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    s._check(t)
    n = s.order
    valid = min(s.valid, t.valid)
    if s.numeric or t.numeric:
        a = s.as_array()
        b = t.as_array()
        return TruncatedSeries(tuple(np.convolve(a, b)[: n + 1].tolist()), valid)
    out: list = [0] * (n + 1)
    sc, tc = s.coeffs, t.coeffs
    for i in range(n + 1):
        si = sc[i]
        if _is_zero(si):
            continue
        for j in range(n + 1 - i):
            tj = tc[j]
            if _is_zero(tj):
                continue
            out[i + j] = out[i + j] + si * tj
    return TruncatedSeries(tuple(out), valid)


def derivative(s: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; the order is kept and the top slot is flagged."""
    if s.order < 1:
        raise SeriesError("derivative needs order >= 1")
    coeffs = [n * s.coeffs[n] for n in range(1, s.order + 1)]
    coeffs.append(0 * s.coeffs[0])
    return TruncatedSeries(tuple(coeffs), max(s.valid - 1, 0))


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` by Horner's rule; ``inner`` must vanish at 0."""
    outer._check(inner)
    c0 = inner.coeffs[0]
    if (abs(c0) > NUMERIC_TOL) if _is_inexact(c0) else not _is_zero(c0):
        raise SeriesDomainError("inner series of a composition must have zero constant term")
    n = outer.order
    result = TruncatedSeries.constant(outer.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        result = mul(result, inner) + outer.coeffs[k]
    return TruncatedSeries(result.coeffs, min(outer.valid, inner.valid))


def reciprocal(s: TruncatedSeries) -> TruncatedSeries:
    c0 = _as_scalar(s.coeffs[0])
    if (abs(c0) == 0) if _is_inexact(c0) else c0 == 0:
        raise SeriesDomainError("reciprocal needs a nonzero constant term")
    inv0 = 1 / c0 if _is_inexact(c0) else Fraction(1) / Fraction(c0)
    r = [inv0]
    for n in range(1, s.order + 1):
        acc = 0
        for k in range(1, n + 1):
            sk = s.coeffs[k]
            if not _is_zero(sk):
                acc = acc + sk * r[n - k]
        r.append(-acc * inv0)
    return TruncatedSeries(tuple(r), s.valid)


def _check_unit_constant(s: TruncatedSeries, what: str):
    c0 = s.coeffs[0]
    if _is_inexact(c0):
        if abs(c0 - 1) > NUMERIC_TOL:
            raise SeriesDomainError(f"{what} needs constant term 1, got {c0}")
    elif not _is_zero(c0 - 1):
        raise SeriesDomainError(f"{what} needs constant term 1, got {c0}")


def pow_fractional(s: TruncatedSeries, e) -> TruncatedSeries:
    """Principal-branch power via the binomial series ``sum C(e,k) u^k``,
    ``u = s - 1``.  The binomial coefficients are exact rationals."""
    _check_unit_constant(s, "fractional power")
    n = s.order
    numeric = s.numeric
    u = TruncatedSeries((0 * s.coeffs[0],) + s.coeffs[1:], s.valid)
    if numeric:
        e_exact = Fraction(e)
        acc = np.zeros(n + 1, dtype=complex)
        acc[0] = 1.0
        ua = u.as_array()
        power = np.zeros(n + 1, dtype=complex)
        power[0] = 1.0
        for k in range(1, n + 1):
            power = np.convolve(power, ua)[: n + 1]
            c = binomial(e_exact, k)
            if c:
                acc += complex(c) * power
        return TruncatedSeries(tuple(acc.tolist()), s.valid)
    result = [1] + [0] * n
    power = TruncatedSeries.constant(1, n)
    for k in range(1, n + 1):
        power = mul(power, u)
        c = binomial(e, k)
        if c:
            for i in range(k, n + 1):
                if not _is_zero(power.coeffs[i]):
                    result[i] = result[i] + power.coeffs[i] * c
    return TruncatedSeries(tuple(result), s.valid)


def exp_series(s: TruncatedSeries) -> TruncatedSeries:
    c0 = s.coeffs[0]
    if (abs(c0) > NUMERIC_TOL) if _is_inexact(c0) else not _is_zero(c0):
        raise SeriesDomainError("exp needs a zero constant term")
    out = [1]
    for n in range(1, s.order + 1):
        acc = 0
        for k in range(1, n + 1):
            sk = s.coeffs[k]
            if not _is_zero(sk):
                acc = acc + k * sk * out[n - k]
        out.append(_div_int(acc, n))
    return TruncatedSeries(tuple(out), s.valid)


def log_series(s: TruncatedSeries) -> TruncatedSeries:
    _check_unit_constant(s, "log")
    out = [0 * s.coeffs[0]]
    for n in range(1, s.order + 1):
        acc = n * s.coeffs[n]
        for k in range(1, n):
            if not _is_zero(out[k]) and not _is_zero(s.coeffs[n - k]):
                acc = acc - k * out[k] * s.coeffs[n - k]
        out.append(_div_int(acc, n))
    return TruncatedSeries(tuple(out), s.valid)


def reversion(f: TruncatedSeries) -> NormalizedSeries:
    """Compositional inverse of a normalized series by Lagrange inversion:
    ``b_n = [z^(n-1)] (z/f)^n / n``."""
    f = f if isinstance(f, NormalizedSeries) else NormalizedSeries.of(f)
    n = f.order
    if n == 1:
        return NormalizedSeries(f.coeffs, f.valid)
    ratio = TruncatedSeries(f.coeffs[1:], max(f.valid - 1, 0))  # f/z at order n-1
    h = reciprocal(ratio)
    out = [0 * f.coeffs[0], f.coeffs[1]]
    power = h
    for k in range(2, n + 1):
        power = mul(power, h)
        out.append(_div_int(power.coeffs[k - 1], k))
    return NormalizedSeries(tuple(out), f.valid)


def eval_at(s: TruncatedSeries, z: complex):
    """Horner evaluation inside the open unit disk."""
    if abs(z) >= 1:
        raise SeriesDomainError(f"evaluation point must satisfy |z| < 1, got {z}")
    acc = 0
    for c in reversed(s.coeffs[: s.valid + 1]):
        acc = acc * z + c
    return acc


def eval_many(s: TruncatedSeries, points: np.ndarray) -> np.ndarray:
    """Vectorized Horner evaluation over an array of points."""
    points = np.asarray(points, dtype=complex)
    if points.size and np.max(np.abs(points)) >= 1:
        raise SeriesDomainError("evaluation points must lie in the open unit disk")
    coeffs = np.asarray(s.coeffs[: s.valid + 1], dtype=complex)
    acc = np.zeros_like(points)
    for c in coeffs[::-1]:
        acc = acc * points + c
    return acc


def geometric(order: int, ratio: complex = 1.0) -> TruncatedSeries:
    """``1/(1 - ratio*z)`` truncated at ``order``."""
    return TruncatedSeries(tuple(ratio ** k for k in range(order + 1)))


def unit_phase(theta: float) -> complex:
    return cmath.exp(1j * theta)
