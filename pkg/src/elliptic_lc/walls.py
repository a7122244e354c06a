"""Walls and chambers in weight space.

Two domains are supported. Along an affine path ``s -> (w_1(s), ..., w_n(s))``
every wall is located exactly: fiber transitions, the section wall, and the
zeros of ``t`` and of the self-intersection of the pseudoelliptic log canonical
class. On the full weight cube only the per-coordinate fiber walls and the
section hyperplane are enumerated.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .classifier import has_transition, relative_model_form, threshold_a0
from .fibers import FiberType
from .polynomial import Polynomial, Root, real_roots
from .surface import GlobalModel, SurfaceConfig, global_model, lc_square_and_t, section_contracted


class WallError(ValueError):
    pass


class WallKind(str, enum.Enum):
    FIBER = "fiber_transition"
    SECTION = "section_contraction"
    BIGNESS = "pseudoelliptic_bigness"
    TRIVIALITY = "pseudoelliptic_triviality"

    def __str__(self):
        return self.value


def fiber_walls(t: FiberType) -> frozenset:
    """Weights at which the relative model of a ``t`` fiber changes."""
    if not has_transition(t):
        return frozenset()
    return frozenset({threshold_a0(t), Fraction(1)})


@dataclass(frozen=True)
class Hyperplane:
    """``sum_i coefficients[i] a_i = rhs``; ``degenerate`` when only touched at a corner."""

    coefficients: tuple
    rhs: Fraction
    degenerate: bool = False

    def __str__(self):
        lhs = "sum a_i" if all(c == 1 for c in self.coefficients) else " + ".join(f"{c} a{i}" for i, c in enumerate(self.coefficients))
        text = f"{lhs} = {self.rhs}"
        return text + " (degenerate: all weights 0)" if self.degenerate else text


def section_wall(cfg: SurfaceConfig) -> Hyperplane | None:
    n = len(cfg.weights)
    if cfg.genus == 0 and n >= 2:
        return Hyperplane((Fraction(1),) * n, Fraction(2))
    if cfg.genus == 1:
        return Hyperplane((Fraction(1),) * n, Fraction(0), degenerate=True)
    return None


@dataclass(frozen=True)
class Wall:
    kinds: tuple
    value: Fraction | None
    enclosure: tuple
    label: str = ""
    marks: tuple = ()

    @property
    def exact(self) -> bool:
        return self.value is not None

    @property
    def position(self) -> Fraction:
        return self.value if self.value is not None else (self.enclosure[0] + self.enclosure[1]) / 2

    def __str__(self):
        where = str(self.value) if self.exact else f"in [{self.enclosure[0]}, {self.enclosure[1]}] (irrational)"
        return f"{where}: {', '.join(k.value for k in self.kinds)}; {self.label}"


@dataclass(frozen=True)
class Chamber:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool
    label: str
    model: GlobalModel | None = field(default=None, compare=False)

    def interval(self, symbol="a") -> str:
        if self.lo == self.hi:
            return f"{symbol} = {self.lo}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"

    def contains(self, x) -> bool:
        if self.lo == self.hi:
            return x == self.lo
        lo_ok = x > self.lo or (self.lo_closed and x == self.lo)
        hi_ok = x < self.hi or (self.hi_closed and x == self.hi)
        return lo_ok and hi_ok

    def interior_samples(self, k: int = 3) -> list:
        if self.lo == self.hi:
            return [self.lo]
        return [self.lo + (self.hi - self.lo) * Fraction(i, k + 1) for i in range(1, k + 1)]


@dataclass(frozen=True)
class ChamberReport:
    domain: str
    walls: tuple
    chambers: tuple
    hyperplanes: tuple = ()
    symbol: str = "a"
    notes: tuple = ()

    def wall_values(self) -> list:
        return [w.value for w in self.walls if w.exact]

    def to_dict(self) -> dict:
        return {
            "domain": self.domain,
            "symbol": self.symbol,
            "walls": [
                {"kinds": [k.value for k in w.kinds], "value": None if w.value is None else str(w.value),
                 "enclosure": [str(x) for x in w.enclosure], "label": w.label, "marks": list(w.marks)}
                for w in self.walls
            ],
            "chambers": [
                {"lo": str(c.lo), "hi": str(c.hi), "lo_closed": c.lo_closed, "hi_closed": c.hi_closed, "label": c.label}
                for c in self.chambers
            ],
            "hyperplanes": [str(h) for h in self.hyperplanes],
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = [f"domain: {self.domain}"]
        lines.append("walls:" if self.walls else "walls: none")
        lines += [f"  {w}" for w in self.walls]
        for h in self.hyperplanes:
            lines.append(f"hyperplane: {h}")
        lines.append("chambers:")
        if self.domain.startswith("path"):
            lines += [f"  {c.interval(self.symbol)}: {c.label}" for c in self.chambers]
        else:
            lines += [f"  {c.label}" for c in self.chambers]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def parse_path(spec: str, count: int | None = None) -> tuple:
    """Parse ``"a,a,1"`` into one Polynomial per weight (marks first, then generic marks)."""
    parts = [p.strip() for p in spec.split(",")]
    if any(not p for p in parts):
        raise WallError(f"empty entry in path {spec!r}")
    if count is not None and len(parts) != count:
        raise WallError(f"path has {len(parts)} entries but the config has {count} weights")
    polys = []
    symbols = set()
    for p in parts:
        if "." in p:
            raise WallError(f"decimal values are not exact: {p!r}")
        try:
            expr = sympy.sympify(p, rational=True)
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise WallError(f"cannot parse path entry {p!r}") from exc
        free = expr.free_symbols
        symbols |= {str(s) for s in free}
        if len(symbols) > 1:
            raise WallError("a path uses exactly one parameter")
        if not free:
            polys.append(("const", expr))
            continue
        (sym,) = free
        try:
            poly = sympy.Poly(expr, sym, domain="QQ")
        except sympy.PolynomialError as exc:
            raise WallError(f"path entry {p!r} is not a polynomial") from exc
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        polys.append(("poly", Polynomial(coeffs, str(sym))))
    symbol = symbols.pop() if symbols else "a"
    out = []
    for kind, val in polys:
        if kind == "const":
            if not val.is_Rational:
                raise WallError(f"path constant {val} is not rational")
            out.append(Polynomial((Fraction(int(val.p), int(val.q)),), symbol))
        else:
            out.append(val)
    return tuple(out)


def apply_path(cfg: SurfaceConfig, path: Sequence) -> SurfaceConfig:
    n = len(cfg.marks)
    if len(path) != len(cfg.weights):
        raise WallError(f"path has {len(path)} entries but the config has {len(cfg.weights)} weights")
    marks = tuple((t, w) for (t, _), w in zip(cfg.marks, path[:n]))
    return SurfaceConfig(cfg.genus, cfg.deg_L, marks, tuple(path[n:]), cfg.isotrivial_j_infinity, cfg.is_product)


def _as_poly(w, symbol) -> Polynomial:
    return w if isinstance(w, Polynomial) else Polynomial((w,), symbol)


def _label(cfg: SurfaceConfig, s) -> tuple:
    m = global_model(cfg.at(s))
    return m.label, m


def _solve_linear(p: Polynomial, target) -> Fraction | None:
    q = p - target
    if q.degree < 1:
        return None
    return -q.coeffs[0] / q.coeffs[1]


def parametric_walls(cfg: SurfaceConfig, path: Sequence | None = None, lo=0, hi=1) -> ChamberReport:
    """Walls and labelled chambers along an affine path in weight space.

    Candidate walls are collected first (fiber walls pulled back along the path,
    the section wall, and inside pseudoelliptic segments the roots of ``t`` and
    of the square, the latter only where ``t >= 0``). A candidate is kept only if
    the model changes there.
    """
    if path is not None:
        cfg = apply_path(cfg, path)
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise WallError("path interval must have lo < hi")
    symbol = cfg.symbol or "a"
    weights = [_as_poly(w, symbol) for w in cfg.weights]
    if any(w.degree > 1 for w in weights):
        raise WallError("nonlinear path: weights must be affine in the parameter")
    for w in weights:
        for end in (lo, hi):
            if not 0 <= w(end) <= 1:
                raise WallError(f"path leaves the weight cube at {symbol} = {end}")
    exact: dict = {}
    irrational: list = []

    def add(value, kind, label, mark=None):
        if lo <= value <= hi:
            entry = exact.setdefault(value, ([], [], []))
            if kind not in entry[0]:
                entry[0].append(kind)
            entry[1].append(label)
            if mark is not None:
                entry[2].append(mark)

    for i, (t, _) in enumerate(cfg.marks):
        for v in sorted(fiber_walls(t)):
            s = _solve_linear(weights[i], v)
            if s is not None:
                add(s, WallKind.FIBER, f"F{i} ({t}) weight {v}", i)
    total = sum(weights, Polynomial((0,), symbol))
    if cfg.genus == 0:
        s = _solve_linear(total, 2)
        if s is not None:
            add(s, WallKind.SECTION, "sum of weights = 2")
    if cfg.genus == 1 or (cfg.genus == 0 and cfg.deg_L == 2):
        zeros = [_solve_linear(w, 0) for w in weights if w.degree == 1]
        if zeros and all(w.degree == 1 for w in weights) and len(set(zeros)) == 1:
            kind = WallKind.SECTION if cfg.genus == 1 else WallKind.TRIVIALITY
            add(zeros[0], kind, "all weights vanish")

    notes = []
    if cfg.genus == 0 and cfg.deg_L <= 1 and not cfg.is_product:
        points = sorted(set(exact) | {lo, hi})
        for left, right in zip(points, points[1:]):
            mid = (left + right) / 2
            if not section_contracted(cfg, mid):
                continue
            square, t = lc_square_and_t(cfg, mid)
            square, t = _as_poly(square, symbol), _as_poly(t, symbol)
            for r in _roots(t, left, right):
                _record(r, WallKind.TRIVIALITY, "t = 0", add, irrational)
            for r in _roots(square, left, right):
                if t(r.midpoint if not r.exact else r.value) >= 0:
                    _record(r, WallKind.BIGNESS, "self-intersection of the log canonical class = 0", add, irrational)
    if irrational:
        notes.append("irrational walls are reported by isolating intervals")

    # Keep only candidates where the label actually changes.
    cuts = sorted(set(exact) | {lo, hi} | {r.midpoint for r, _, _ in irrational})
    open_labels = []
    for left, right in zip(cuts, cuts[1:]):
        open_labels.append(_label(cfg, (left + right) / 2))
    point_labels = {v: _label(cfg, v) for v in exact}
    walls = []
    for v in sorted(exact):
        k = cuts.index(v)
        left = open_labels[k - 1][0] if k > 0 else None
        right = open_labels[k][0] if k < len(open_labels) else None
        here = point_labels[v][0]
        if any(side is not None and side != here for side in (left, right)):
            kinds, labels, marks = exact[v]
            change = " | ".join(x for x in (left, here, right) if x is not None)
            walls.append(Wall(tuple(kinds), v, (v, v), f"{'; '.join(labels)} [{change}]", tuple(marks)))
    for root, kind, label in irrational:
        k = cuts.index(root.midpoint)
        if open_labels[k - 1][0] != open_labels[k][0]:
            walls.append(Wall((kind,), None, (root.lo, root.hi), label))
    walls.sort(key=lambda w: w.position)

    chambers = _chambers(cfg, walls, lo, hi)
    domain = f"path ({', '.join(str(w) for w in weights)}), {symbol} in [{lo}, {hi}]"
    return ChamberReport(domain, tuple(walls), tuple(chambers), symbol=symbol, notes=tuple(notes))


def _roots(p: Polynomial, left, right) -> list[Root]:
    if p.degree < 1:
        return []
    return real_roots(p, left, right)


def _record(root: Root, kind, label, add, irrational):
    if root.exact:
        add(root.value, kind, label)
    else:
        irrational.append((root, kind, label))


def _chambers(cfg, walls, lo, hi) -> list[Chamber]:
    cuts = [lo] + [w.position for w in walls if w.position not in (lo, hi)] + [hi]
    cuts = sorted(set(cuts))
    opens = []
    for left, right in zip(cuts, cuts[1:]):
        label, model = _label(cfg, (left + right) / 2)
        opens.append([left, right, False, False, label, model])
    singles = []
    exact_walls = {w.value for w in walls if w.exact}
    for k, c in enumerate(cuts):
        if c not in exact_walls and c not in (lo, hi):
            continue  # irrational wall: its own label is not computed
        label, model = _label(cfg, c)
        left = opens[k - 1] if k > 0 else None
        right = opens[k] if k < len(opens) else None
        if left is not None and left[4] == label:
            left[3] = True
        elif right is not None and right[4] == label:
            right[2] = True
        else:
            singles.append(Chamber(c, c, True, True, label, model))
    out = [Chamber(*o) for o in opens] + singles
    return sorted(out, key=lambda ch: (ch.lo, ch.lo != ch.hi))


@dataclass(frozen=True)
class CoordinateRegime:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool
    form: str

    def __str__(self):
        if self.lo == self.hi:
            return f"{{{self.lo}}} {self.form}"
        return f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}{']' if self.hi_closed else ')'} {self.form}"


def coordinate_regimes(t: FiberType | None) -> list[CoordinateRegime]:
    """Intervals of ``[0, 1]`` on which a marked fiber keeps its relative model."""
    if t is None or not has_transition(t):
        form = "generic" if t is None else relative_model_form(t, 0).value
        return [CoordinateRegime(Fraction(0), Fraction(1), True, True, form)]
    a0 = threshold_a0(t)
    out = []
    if a0 > 0:
        out.append(CoordinateRegime(Fraction(0), a0, True, True, "Weierstrass"))
        out.append(CoordinateRegime(a0, Fraction(1), False, False, "Intermediate"))
    else:
        out.append(CoordinateRegime(Fraction(0), Fraction(0), True, True, "Weierstrass"))
        out.append(CoordinateRegime(Fraction(0), Fraction(1), False, False, "Intermediate"))
    out.append(CoordinateRegime(Fraction(1), Fraction(1), True, True, "Twisted"))
    return out


def cube_chambers(cfg: SurfaceConfig, max_cells: int = 512) -> ChamberReport:
    """Product decomposition of the weight cube, split by the section hyperplane."""
    types = [t for t, _ in cfg.marks] + [None] * len(cfg.generic_marks)
    per = [coordinate_regimes(t) for t in types]
    walls = []
    for i, t in enumerate(types):
        if t is not None:
            for v in sorted(fiber_walls(t)):
                walls.append(Wall((WallKind.FIBER,), v, (v, v), f"a_{i} = {v} ({t})", (i,)))
    plane = section_wall(cfg)
    notes = []
    chambers = []
    total = 1
    for p in per:
        total *= len(p)
    if plane is not None and not plane.degenerate:
        total *= 2
    if total > max_cells:
        notes.append(f"{total} cells; listing suppressed (limit {max_cells})")
    else:
        for combo in itertools.product(*per):
            base = " x ".join(str(r) for r in combo)
            if plane is None or plane.degenerate:
                chambers.append(Chamber(Fraction(0), Fraction(1), True, True, base + _side_label(cfg, None)))
                continue
            inf = sum((r.lo for r in combo), Fraction(0))
            sup = sum((r.hi for r in combo), Fraction(0))
            inf_attained = all(r.lo_closed for r in combo)
            if inf < plane.rhs or (inf == plane.rhs and inf_attained):
                chambers.append(Chamber(Fraction(0), Fraction(1), True, True, base + _side_label(cfg, True)))
            if sup > plane.rhs:
                chambers.append(Chamber(Fraction(0), Fraction(1), True, True, base + _side_label(cfg, False)))
    if plane is not None and plane.degenerate:
        notes.append("section contracted only at the corner where every weight is 0")
    if cfg.genus == 0 and cfg.deg_L <= 2:
        notes.append("pseudoelliptic walls are curved; compute them along a path with --path")
    return ChamberReport(f"weight cube [0, 1]^{len(types)}", tuple(walls), tuple(chambers),
                         (plane,) if plane is not None else (), notes=tuple(notes))


def _side_label(cfg, contracted) -> str:
    if contracted is None:
        return "; section kept" if cfg.genus >= 1 else ""
    return "; section contracted" if contracted else "; section kept (elliptic lc model)"


__all__ = [
    "Chamber", "ChamberReport", "CoordinateRegime", "Hyperplane", "Wall", "WallError", "WallKind", "apply_path",
    "coordinate_regimes", "cube_chambers", "fiber_walls", "parametric_walls", "parse_path", "section_wall",
]
