"""Exact intersection lattices.

Everything here works over :class:`fractions.Fraction`; no floats are ever
produced. Divisor coefficients may also be :class:`~elliptic_lc.polynomial.Polynomial`
values when a weight is kept symbolic, since pairing only needs ``+`` and ``*``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction


class LatticeError(ValueError):
    pass


class UnknownLabelError(LatticeError, KeyError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown basis label {label!r}")

    def __str__(self):
        return self.args[0]


class NotExceptionalError(LatticeError):
    pass


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer into a Fraction.

    Decimal strings and floats are rejected so that no rounding can sneak in
    through user input.
    """
    if isinstance(text, bool):
        raise LatticeError(f"not a rational number: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        s = text.strip()
        if "." in s or "e" in s.lower():
            raise LatticeError(f"decimal values are not exact, write {s!r} as p/q")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise LatticeError(f"not a rational number: {text!r}") from exc
    raise LatticeError(f"not a rational number: {text!r}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric pairing on a labelled basis."""

    labels: tuple
    matrix: tuple

    def __init__(self, labels: Sequence[str], matrix: Sequence[Sequence]):
        labels = tuple(labels)
        rows = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        if len(set(labels)) != len(labels):
            raise LatticeError("basis labels must be unique")
        if len(rows) != len(labels) or any(len(r) != len(labels) for r in rows):
            raise LatticeError("matrix shape does not match the basis")
        if not _is_symmetric(rows):
            raise LatticeError("intersection matrix is not symmetric")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @classmethod
    def from_pairs(cls, labels: Sequence[str], pairs: Mapping) -> "IntersectionForm":
        """Build from ``{(u, v): value}``; missing pairs are zero, ``(u, u)`` is a square."""
        labels = list(labels)
        idx = {lab: i for i, lab in enumerate(labels)}
        m = [[Fraction(0)] * len(labels) for _ in labels]
        for (u, v), value in pairs.items():
            for lab in (u, v):
                if lab not in idx:
                    raise UnknownLabelError(lab)
            i, j = idx[u], idx[v]
            m[i][j] = Fraction(value)
            m[j][i] = Fraction(value)
        return cls(labels, m)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(label) from None

    def __contains__(self, label) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.labels)

    def entry(self, u, v) -> Fraction:
        return self.matrix[self.index(u)][self.index(v)]

    def restrict(self, labels: Iterable) -> "IntersectionForm":
        labels = list(labels)
        ix = [self.index(lab) for lab in labels]
        return IntersectionForm(labels, [[self.matrix[i][j] for j in ix] for i in ix])

    def pair(self, u: "DivisorClass", v: "DivisorClass"):
        return pair_classes(u, v, self)


@dataclass(frozen=True)
class DivisorClass:
    """Finite formal combination of basis labels."""

    coefficients: Mapping = field(default_factory=dict)

    def __init__(self, coefficients: Mapping | None = None, **kwargs):
        coeffs = dict(coefficients or {})
        coeffs.update(kwargs)
        clean = {}
        for lab, c in coeffs.items():
            if isinstance(c, int) and not isinstance(c, bool):
                c = Fraction(c)
            if c != 0:
                clean[lab] = c
        object.__setattr__(self, "coefficients", clean)

    @classmethod
    def of(cls, label, coefficient=1) -> "DivisorClass":
        return cls({label: coefficient})

    def __getitem__(self, label):
        return self.coefficients.get(label, Fraction(0))

    def __iter__(self):
        return iter(self.coefficients)

    @property
    def support(self) -> tuple:
        return tuple(self.coefficients)

    def __add__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        out = dict(self.coefficients)
        for lab, c in other.coefficients.items():
            out[lab] = out.get(lab, 0) + c
        return DivisorClass(out)

    def __neg__(self):
        return DivisorClass({lab: -c for lab, c in self.coefficients.items()})

    def __sub__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, DivisorClass):
            return NotImplemented
        return DivisorClass({lab: c * scalar for lab, c in self.coefficients.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        keys = set(self.coefficients) | set(other.coefficients)
        return all(self[k] == other[k] for k in keys)

    def __hash__(self):
        return hash(frozenset((k, str(v)) for k, v in self.coefficients.items()))

    def __str__(self):
        return format_divisor(self)

    def __repr__(self):
        return f"DivisorClass({format_divisor(self)})"


def format_divisor(d: DivisorClass) -> str:
    if not d.coefficients:
        return "0"
    parts = []
    for lab, c in d.coefficients.items():
        text = str(c)
        compound = " " in text.strip("-") or ("+" in text) or ("-" in text.lstrip("-"))
        if compound:
            term, sign = f"({text}) {lab}", "+"
        else:
            sign = "-" if text.startswith("-") else "+"
            mag = text.lstrip("-")
            term = lab if mag == "1" else f"{mag} {lab}"
        if not parts:
            parts.append(term if sign == "+" else f"-{term}")
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts)


def pair_classes(u: DivisorClass, v: DivisorClass, form: IntersectionForm):
    """Bilinear extension of ``form`` to ``u . v``."""
    ui = [(form.index(lab), c) for lab, c in u.coefficients.items()]
    vi = [(form.index(lab), c) for lab, c in v.coefficients.items()]
    total = Fraction(0)
    m = form.matrix
    for i, a in ui:
        row = m[i]
        for j, b in vi:
            e = row[j]
            if e:
                total = a * b * e + total
    return total


def _is_symmetric(rows) -> bool:
    n = len(rows)
    return all(rows[i][j] == rows[j][i] for i in range(n) for j in range(i + 1, n))


def _as_rows(m) -> list:
    if isinstance(m, IntersectionForm):
        return [list(r) for r in m.matrix]
    return [[Fraction(x) for x in row] for row in m]


def leading_minors(m) -> list[Fraction]:
    """Leading principal minors d_1, ..., d_n."""
    rows = _as_rows(m)
    return [determinant([r[:k] for r in rows[:k]]) for k in range(1, len(rows) + 1)]


def determinant(m) -> Fraction:
    a = _as_rows(m)
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        pivot = a[k][k]
        det *= pivot
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def is_negative_definite(m) -> bool:
    """Sylvester's criterion: minors alternate in sign, starting negative."""
    rows = _as_rows(m)
    if not _is_symmetric(rows):
        raise LatticeError("matrix is not symmetric")
    for k, d in enumerate(leading_minors(rows), start=1):
        if d == 0 or (d < 0) != (k % 2 == 1):
            return False
    return True


def solve(m, b) -> list[Fraction]:
    """Solve ``m x = b`` exactly. ``m`` must be nonsingular."""
    a = _as_rows(m)
    n = len(a)
    rhs = [Fraction(x) for x in b]
    if len(rhs) != n:
        raise LatticeError("right-hand side has the wrong length")
    for k in range(n):
        # Pivot on the entry of largest numerator*denominator to keep sizes small.
        p = max(range(k, n), key=lambda i: abs(a[i][k].numerator) * a[i][k].denominator)
        if a[p][k] == 0:
            raise LatticeError("singular matrix")
        a[k], a[p] = a[p], a[k]
        rhs[k], rhs[p] = rhs[p], rhs[k]
        pivot = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
                rhs[i] -= f * rhs[k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = rhs[i] - sum((a[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / a[i][i]
    return x


def solve_contraction_coefficients(exceptional_form, rhs: Sequence) -> list[Fraction]:
    """Coefficients ``c`` with ``(D + sum c_E E) . E_j = 0`` for every contracted ``E_j``.

    ``rhs[j]`` is ``D . E_j``; the system is ``M c = -rhs`` where ``M`` is the
    intersection matrix of the contracted curves, which must be negative definite.
    """
    rows = _as_rows(exceptional_form)
    if len(rhs) != len(rows):
        raise LatticeError("right-hand side has the wrong length")
    if not rows:
        return []
    if not is_negative_definite(rows):
        raise NotExceptionalError("contraction set not exceptional")
    return solve(rows, [-Fraction(x) for x in rhs])
