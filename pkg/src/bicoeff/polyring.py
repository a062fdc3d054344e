"""Exact multivariate polynomials over the rationals.

The symbol set is closed: the three free Taylor coefficients ``a2, a3, a4``
of a normalized function and the first two coefficients of the two
Caratheodory functions on the z- and w-sides (``p1, p2, q1, q2``).
Terms are stored as a dict from a dense 7-slot exponent tuple to a nonzero
:class:`fractions.Fraction`, so canonical-form equality is dict equality.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Number
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

SYMBOLS: Tuple[str, ...] = ("a2", "a3", "a4", "p1", "p2", "q1", "q2")
_INDEX = {name: i for i, name in enumerate(SYMBOLS)}
_NVARS = len(SYMBOLS)
_ZERO_EXP = (0,) * _NVARS

Rational = Fraction
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"1/3"``, ``"0.25"`` or ``"2"`` into an exact Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


class UnboundSymbolError(KeyError):
    pass


class MultiPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != _NVARS:
                    raise ValueError(f"exponent vector must have {_NVARS} slots")
                c = Fraction(c)
                if c != 0:
                    clean[tuple(exp)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "MultiPoly":
        # terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        try:
            i = _INDEX[name]
        except KeyError:
            raise UnboundSymbolError(name) from None
        exp = [0] * _NVARS
        exp[i] = 1
        return cls._raw({tuple(exp): Fraction(1)})

    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        c = Fraction(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def symbols(self) -> set:
        return {SYMBOLS[i] for exp in self._terms for i, e in enumerate(exp) if e}

    def degree(self, name: Optional[str] = None) -> int:
        if not self._terms:
            return -1
        if name is None:
            return max(sum(exp) for exp in self._terms)
        i = _INDEX[name]
        return max(exp[i] for exp in self._terms)

    def coefficient(self, name: str, power: int) -> "MultiPoly":
        """Coefficient of ``name**power`` viewed as a polynomial in ``name``."""
        i = _INDEX[name]
        out = {}
        for exp, c in self._terms.items():
            if exp[i] == power:
                e = list(exp)
                e[i] = 0
                out[tuple(e)] = c
        return MultiPoly._raw(out)

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in o._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly._raw(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly._raw({})
        return MultiPoly._raw({e: v * c for e, v in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of polynomial by zero")
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, MultiPoly) and other.is_constant() and not other.is_zero():
            return self.scale(1 / other.constant_term())
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- substitution / evaluation ------------------------------------

    def substitute(self, bindings: Mapping[str, Union["MultiPoly", Scalar]],
                   eliminate: Optional[Iterable[str]] = None) -> "MultiPoly":
        """Replace symbols by polynomials or rationals.

        ``eliminate`` names symbols that must be bound; any of them missing
        from ``bindings`` raises :class:`UnboundSymbolError`.
        """
        for name in bindings:
            if name not in _INDEX:
                raise UnboundSymbolError(name)
        if eliminate is not None:
            missing = [s for s in eliminate if s not in bindings]
            if missing:
                raise UnboundSymbolError(", ".join(missing))
        idx = [(_INDEX[n], self._coerce(v)) for n, v in bindings.items()]
        if any(v is None for _, v in idx):
            raise TypeError("bindings must be MultiPoly or rational")
        power_cache: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i: int, v: MultiPoly, k: int) -> MultiPoly:
            key = (i, k)
            if key not in power_cache:
                power_cache[key] = v ** k
            return power_cache[key]

        result = MultiPoly._raw({})
        for exp, c in self._terms.items():
            e = list(exp)
            term = MultiPoly.const(c)
            for i, v in idx:
                if e[i]:
                    term = term * power(i, v, e[i])
                    e[i] = 0
            result = result + term * MultiPoly._raw({tuple(e): Fraction(1)})
        return result

    def evaluate(self, values: Mapping[str, Number]):
        """Numeric value with every present symbol bound to a number."""
        missing = self.symbols() - set(values)
        if missing:
            raise UnboundSymbolError(", ".join(sorted(missing)))
        vals = [values.get(name, 0) for name in SYMBOLS]
        numeric = any(isinstance(v, (float, complex)) for v in vals)
        total = 0
        for exp, c in self._terms.items():
            t = float(c) if numeric else c
            for v, e in zip(vals, exp):
                if e:
                    t = t * v ** e
            total = total + t
        return total

    # -- display --------------------------------------------------------

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp in sorted(self._terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self._terms[exp]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(SYMBOLS, exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def symbols(*names: str) -> Tuple[MultiPoly, ...]:
    return tuple(MultiPoly.var(n) for n in names)


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def poly_scale(p: MultiPoly, c: Scalar) -> MultiPoly:
    return p.scale(c)


def substitute(p: MultiPoly, bindings, eliminate=None) -> MultiPoly:
    return p.substitute(bindings, eliminate)


def is_zero(p) -> bool:
    if isinstance(p, MultiPoly):
        return p.is_zero()
    return p == 0


def solve_linear(p: MultiPoly, name: str) -> MultiPoly:
    """Solve ``p == 0`` for ``name`` when ``p`` is affine in it with a
    nonzero rational leading coefficient."""
    if p.degree(name) != 1:
        raise ValueError(f"{name} does not appear linearly in {p}")
    lead = p.coefficient(name, 1)
    if not lead.is_constant():
        raise ValueError(f"coefficient of {name} is not a rational constant: {lead}")
    rest = p.coefficient(name, 0)
    return -rest / lead.constant_term()
