"""Univariate polynomials with exact rational coefficients.

Used for weights that depend on one path parameter. Arithmetic is done here so
polynomials mix freely with Fractions inside divisor classes; factoring and
isolation of irrational roots are delegated to sympy.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy


def _trim(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs) if coeffs else (Fraction(0),)


@dataclass(frozen=True)
class Polynomial:
    """``coeffs[i]`` is the coefficient of ``symbol**i``."""

    coeffs: tuple
    symbol: str = "a"

    def __init__(self, coeffs: Sequence = (0,), symbol: str = "a"):
        object.__setattr__(self, "coeffs", _trim(Fraction(c) for c in coeffs))
        object.__setattr__(self, "symbol", symbol)

    @classmethod
    def variable(cls, symbol: str = "a") -> "Polynomial":
        return cls((0, 1), symbol)

    @classmethod
    def affine(cls, constant, slope, symbol: str = "a") -> "Polynomial":
        return cls((constant, slope), symbol)

    @property
    def degree(self) -> int:
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) == 1

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.symbol != self.symbol and not (other.is_constant() or self.is_constant()):
                raise ValueError(f"cannot mix symbols {self.symbol!r} and {other.symbol!r}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial((other,), self.symbol)
        return None

    def _sym(self, other):
        return self.symbol if not self.is_constant() or other.is_constant() else other.symbol

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)], self._sym(o))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.symbol)

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    out[i + j] += x * y
        return Polynomial(out, self._sym(o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            other = other.constant()
        return Polynomial([c / Fraction(other) for c in self.coeffs], self.symbol)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Polynomial) else other
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_constant():
            return hash(self.coeffs[0])
        return hash((self.coeffs, self.symbol))

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def to_sympy(self):
        s = sympy.Symbol(self.symbol)
        return sum((sympy.Rational(c.numerator, c.denominator) * s**i for i, c in enumerate(self.coeffs)), sympy.Integer(0))

    def factored(self) -> str:
        """Human-readable factorisation, e.g. ``(3*a - 1)*(5*a - 1)/2``."""
        return str(sympy.factor(self.to_sympy()))

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0 and len(self.coeffs) > 1:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = self.symbol if i == 1 else f"{self.symbol}^{i}"
                if mag == 1:
                    body = var
                elif mag.denominator == 1:
                    body = f"{mag}{var}"
                else:
                    body = f"{mag}*{var}"
            neg = c < 0
            if not terms:
                terms.append(f"-{body}" if neg else body)
            else:
                terms.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(terms)

    def __repr__(self):
        return f"Polynomial({self})"


@dataclass(frozen=True)
class Root:
    """A real root: exact when ``value`` is set, otherwise an isolating interval."""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction | None:
        return self.lo if self.exact else None

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def real_roots(p: Polynomial, lo=None, hi=None, eps=Fraction(1, 10**6)) -> list[Root]:
    """Real roots of ``p`` in ``[lo, hi]``, sorted.

    Rational roots come from linear factors over Q and are exact; any other root
    is returned as a rational isolating interval of width at most ``eps``.
    """
    if p.degree <= 0:
        if p.degree == -1:
            raise ValueError("the zero polynomial has no isolated roots")
        return []
    s = sympy.Symbol(p.symbol)
    poly = sympy.Poly(p.to_sympy(), s, domain="QQ")
    roots = []
    _, factors = poly.factor_list()
    for f, mult in factors:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            r = -Fraction(int(b.p), int(b.q)) / Fraction(int(a.p), int(a.q))
            roots.append(Root(r, r, mult))
        else:
            for (l, h), m in f.intervals(eps=sympy.Rational(eps.numerator, eps.denominator)):
                roots.append(Root(Fraction(int(l.p), int(l.q)), Fraction(int(h.p), int(h.q)), mult * m))
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    kept = [r for r in roots if (lo is None or r.hi >= lo) and (hi is None or r.lo <= hi)]
    return sorted(kept, key=lambda r: (r.lo, r.hi))
