"""Global invariants of a weighted elliptic surface pair.

The surface is modelled numerically: a lattice spanned by the section ``S``, a
general fiber ``G`` and the surviving components of each marked fiber in its
relative log canonical model. Fiber data come from the MMP engine, the
regime of each fiber from the classifier.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classifier import delta_coefficient, relative_model_form
from .fibers import FiberType, Kind
from .lattice import DivisorClass, IntersectionForm, pair_classes
from .mmp import ModelForm, boundary_coefficient, relative_model
from .polynomial import Polynomial


class SurfaceError(ValueError):
    pass


def _is_symbolic(w) -> bool:
    return isinstance(w, Polynomial) and not w.is_constant()


def _numeric(w, sample):
    if isinstance(w, Polynomial):
        if w.is_constant():
            return w.constant()
        if sample is None:
            raise SurfaceError("symbolic weight needs a sample value of the parameter")
        return w(sample)
    return Fraction(w)


@dataclass(frozen=True)
class SurfaceConfig:
    """Base genus, ``deg L``, marked singular fibers and marked smooth fibers.

    Weights are Fractions, or Polynomials in a single path parameter.
    """

    genus: int
    deg_L: int
    marks: tuple = ()
    generic_marks: tuple = ()
    isotrivial_j_infinity: bool = False
    is_product: bool = False

    def __post_init__(self):
        marks = tuple((t if isinstance(t, FiberType) else FiberType.parse(t), _weight(w)) for t, w in self.marks)
        object.__setattr__(self, "marks", marks)
        object.__setattr__(self, "generic_marks", tuple(_weight(w) for w in self.generic_marks))
        if self.genus < 0 or self.deg_L < 0:
            raise SurfaceError("genus and deg_L must be non-negative")
        for w in self.weights:
            if not _is_symbolic(w):
                v = _numeric(w, None)
                if not 0 <= v <= 1:
                    raise SurfaceError(f"weight {v} outside [0, 1]")
        if self.isotrivial_j_infinity and any(t.kind != Kind.N for t, _ in self.marks):
            raise SurfaceError("an isotrivial j = infinity surface only has N-type fibers")
        if not self.isotrivial_j_infinity and any(t.kind == Kind.N for t, _ in self.marks):
            raise SurfaceError("N-type fibers need isotrivial_j_infinity")

    @property
    def weights(self) -> tuple:
        return tuple(w for _, w in self.marks) + self.generic_marks

    @property
    def symbolic(self) -> bool:
        return any(_is_symbolic(w) for w in self.weights)

    @property
    def symbol(self) -> str | None:
        for w in self.weights:
            if _is_symbolic(w):
                return w.symbol
        return None

    def at(self, value) -> "SurfaceConfig":
        """Substitute the path parameter."""
        return SurfaceConfig(self.genus, self.deg_L, tuple((t, _numeric(w, value)) for t, w in self.marks),
                             tuple(_numeric(w, value) for w in self.generic_marks),
                             self.isotrivial_j_infinity, self.is_product)

    def weight_sum(self):
        total = Fraction(0)
        for w in self.weights:
            total = w + total
        return total


def _weight(w):
    if isinstance(w, Polynomial):
        return w.constant() if w.is_constant() else w
    if isinstance(w, bool) or not isinstance(w, (int, Fraction)):
        raise SurfaceError(f"weight must be exact, got {w!r}")
    return Fraction(w)


def mark_label(i: int, cid: str) -> str:
    return f"F{i}.{cid}"


def fiber_forms(cfg: SurfaceConfig, sample=None) -> tuple:
    return tuple(relative_model_form(t, _numeric(w, sample)) for t, w in cfg.marks)


def _models(cfg, sample):
    return [relative_model(t, _numeric(w, sample)) for t, w in cfg.marks]


def section_self_intersection(cfg: SurfaceConfig, sample=None) -> Fraction:
    """``S^2`` on the relative model: ``-deg L`` raised by each twisted fiber.

    The raise is ``s_A (S.A)`` where ``s_A`` is the coefficient of ``A`` in the
    pullback of ``S`` when ``A`` is contracted; for a twisted I0* fiber this is 1/2.
    It is measured against the Weierstrass model (weight 0), since the N2
    semi-resolution already blows up a point of the section.
    """
    shift = Fraction(0)
    for (t, _), m in zip(cfg.marks, _models(cfg, sample)):
        shift += m.section_square_shift - relative_model(t, Fraction(0)).section_square_shift
    return -Fraction(cfg.deg_L) + shift


def surface_lattice(cfg: SurfaceConfig, sample=None) -> IntersectionForm:
    labels = ["S", "G"]
    pairs = {("S", "S"): section_self_intersection(cfg, sample), ("S", "G"): 1}
    for i, m in enumerate(_models(cfg, sample)):
        g = m.graph
        ids = g.ids
        labels += [mark_label(i, c) for c in ids]
        for x in ids:
            pairs[("S", mark_label(i, x))] = g.component(x).section_degree
            for y in ids:
                pairs[(mark_label(i, x), mark_label(i, y))] = g.intersection(x, y)
    return IntersectionForm.from_pairs(labels, pairs)


def canonical_class(cfg: SurfaceConfig, sample=None) -> DivisorClass:
    """``(2g - 2 + deg L) G`` plus the correction on non-Weierstrass II, III, IV fibers."""
    k = DivisorClass(G=2 * cfg.genus - 2 + cfg.deg_L)
    for i, ((t, _), form) in enumerate(zip(cfg.marks, fiber_forms(cfg, sample))):
        delta = delta_coefficient(t, form)
        if delta:
            k = k + DivisorClass.of(mark_label(i, "E"), delta)
    return k


def marked_boundary(cfg: SurfaceConfig, sample=None) -> DivisorClass:
    """``F_A`` on the relative model: each survivor carries its boundary coefficient."""
    out = DivisorClass()
    for i, ((_, w), m) in enumerate(zip(cfg.marks, _models(cfg, sample))):
        for c in m.graph.components:
            out = out + DivisorClass.of(mark_label(i, c.id), boundary_coefficient(c, w))
    for w in cfg.generic_marks:
        out = out + DivisorClass.of("G", w)
    return out


def log_canonical_class(cfg: SurfaceConfig, sample=None) -> DivisorClass:
    return canonical_class(cfg, sample) + DivisorClass.of("S") + marked_boundary(cfg, sample)


def section_pairing(cfg: SurfaceConfig):
    """``(K + S + F_A).S = 2g - 2 + sum a_i``."""
    return 2 * cfg.genus - 2 + cfg.weight_sum()


def section_pairing_lattice(cfg: SurfaceConfig, sample=None):
    """The same number computed by pairing classes in :func:`surface_lattice`."""
    form = surface_lattice(cfg, sample)
    return pair_classes(log_canonical_class(cfg, sample), DivisorClass.of("S"), form)


def section_contracted(cfg: SurfaceConfig, sample=None) -> bool:
    ws = [_numeric(w, sample) for w in cfg.weights]
    if cfg.genus == 0:
        return sum(ws, Fraction(0)) <= 2
    return cfg.genus == 1 and all(w == 0 for w in ws)


def lc_square_and_t(cfg: SurfaceConfig, sample=None):
    """``(square, t)`` for the pseudoelliptic obtained by contracting the section.

    With ``L = K + S + F_A`` on the relative model, the pullback of the log
    canonical class of the pseudoelliptic is ``L + xS`` with ``x`` fixed by
    orthogonality to ``S``; ``t = 1 + x`` is its ``S``-coefficient. Returns
    Polynomials when the config is symbolic (``sample`` then picks the regime).
    """
    if cfg.symbolic and sample is None:
        raise SurfaceError("symbolic config needs a sample value to fix the fiber regimes")
    if cfg.genus != 0 or not section_contracted(cfg, sample):
        raise SurfaceError("not in the pseudoelliptic regime (needs genus 0 and the section contracted)")
    form = surface_lattice(cfg, sample)
    lc = log_canonical_class(cfg, sample)
    s = DivisorClass.of("S")
    s2 = form.entry("S", "S")
    if s2 >= 0:
        raise SurfaceError(f"section has S^2 = {s2} and cannot be contracted")
    x = -pair_classes(lc, s, form) * Fraction(1) / s2
    pulled = lc + s * x
    return pair_classes(pulled, pulled, form), 1 + x


class GlobalKind(str, enum.Enum):
    ELLIPTIC = "elliptic_lc_model"
    PSEUDOELLIPTIC = "pseudoelliptic"
    CURVE = "curve"
    POINT = "point"
    PRODUCT = "product_to_elliptic_curve"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class GlobalModel:
    kind: GlobalKind
    detail: tuple
    section_contracted: bool
    iitaka_dimension: int | None
    t: Fraction | None = None
    square: Fraction | None = None
    notes: tuple = field(default=())

    @property
    def label(self) -> str:
        """Short description, distinguishing elliptic models by their fiber forms."""
        if self.kind is not GlobalKind.ELLIPTIC:
            return self.kind.value
        forms = ", ".join(f"F{i} {f.value}" for i, f in enumerate(self.detail) if f is not ModelForm.WEIERSTRASS)
        return f"{self.kind.value} ({forms})" if forms else self.kind.value


def _extrapolated_twists(cfg, forms) -> bool:
    return any(f is ModelForm.TWISTED and t != FiberType(Kind.ISTAR, 0) for (t, _), f in zip(cfg.marks, forms))


def global_model(cfg: SurfaceConfig) -> GlobalModel:
    if cfg.symbolic:
        raise SurfaceError("global_model needs numeric weights; substitute the parameter first")
    if cfg.deg_L == 0 and not cfg.isotrivial_j_infinity:
        raise SurfaceError("not an elliptic surface datum (deg L = 0 without isotrivial j = infinity)")
    forms = fiber_forms(cfg)
    contracted = section_contracted(cfg)
    notes = []
    if _extrapolated_twists(cfg, forms):
        notes.append("S^2 uses the twisted-fiber correction beyond the I0* case")
    if not contracted:
        return GlobalModel(GlobalKind.ELLIPTIC, forms, False, 2, notes=tuple(notes))
    if cfg.is_product:
        return GlobalModel(GlobalKind.PRODUCT, forms, True, 1, notes=tuple(notes))
    if cfg.genus == 1 or cfg.deg_L >= 3:
        return GlobalModel(GlobalKind.PSEUDOELLIPTIC, forms, True, 2, notes=tuple(notes))
    if cfg.deg_L == 2:
        if any(w > 0 for w in cfg.weights):
            return GlobalModel(GlobalKind.PSEUDOELLIPTIC, forms, True, 2, notes=tuple(notes))
        return GlobalModel(GlobalKind.POINT, forms, True, 0, notes=tuple(notes))
    square, t = lc_square_and_t(cfg)
    if t <= 0:
        kind, dim = GlobalKind.POINT, 0
    elif square <= 0:
        kind, dim = GlobalKind.CURVE, 1
    else:
        kind, dim = GlobalKind.PSEUDOELLIPTIC, 2
    return GlobalModel(kind, forms, True, dim, t, square, tuple(notes))


def rational_i0star_example(weight=None) -> SurfaceConfig:
    """Rational surface with two I0* fibers: F0 and G weighted ``weight``, F1 weighted 1.

    ``weight`` defaults to the symbolic parameter ``a``.
    """
    w = Polynomial.variable("a") if weight is None else weight
    return SurfaceConfig(0, 1, ((FiberType(Kind.ISTAR, 0), w), (FiberType(Kind.ISTAR, 0), Fraction(1))), (w,))


__all__: Sequence[str] = [
    "GlobalKind", "GlobalModel", "SurfaceConfig", "SurfaceError", "canonical_class", "fiber_forms", "global_model",
    "lc_square_and_t", "log_canonical_class", "marked_boundary", "rational_i0star_example", "section_contracted",
    "section_pairing", "section_pairing_lattice", "section_self_intersection", "surface_lattice",
]
