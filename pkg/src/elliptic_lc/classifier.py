"""Closed-form answers for single fibers.

These are table lookups that do not touch the MMP engine, so the two can be
checked against each other.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .fibers import FiberType, Kind
from .mmp import ModelForm, check_weight

REGIMES = ("weierstrass", "intermediate", "twisted")


class ClassifierError(ValueError):
    pass


_A0 = {
    Kind.II: Fraction(5, 6),
    Kind.III: Fraction(3, 4),
    Kind.IV: Fraction(2, 3),
    Kind.ISTAR: Fraction(0),
    Kind.IISTAR: Fraction(0),
    Kind.IIISTAR: Fraction(0),
    Kind.IVSTAR: Fraction(0),
}


def has_transition(t: FiberType) -> bool:
    return t.kind in _A0 or t == FiberType(Kind.N, 1)


def threshold_a0(t: FiberType) -> Fraction:
    """Largest weight at which the relative model is still Weierstrass."""
    if t.kind in _A0:
        return _A0[t.kind]
    if t == FiberType(Kind.N, 1):
        return Fraction(1, 2)
    raise ClassifierError(f"no transition for this type ({t})")


def relative_model_form(t: FiberType, a) -> ModelForm:
    a = check_weight(a)
    if t.kind == Kind.I:
        return ModelForm.WEIERSTRASS
    if t.kind == Kind.N and t.n != 1:
        return ModelForm.N0
    a0 = threshold_a0(t)
    if a <= a0:
        return ModelForm.WEIERSTRASS
    return ModelForm.INTERMEDIATE if a < 1 else ModelForm.TWISTED


def regime(form: ModelForm) -> str:
    return {ModelForm.WEIERSTRASS: "weierstrass", ModelForm.INTERMEDIATE: "intermediate",
            ModelForm.TWISTED: "twisted", ModelForm.N0: "weierstrass"}[form]


_EXCEPTIONAL_STAR = {
    Kind.IISTAR: (["E8"], ["A1", "A2", "A4"], ["A1", "A2", "A5"]),
    Kind.IIISTAR: (["E7"], ["A1", "A2", "A3"], ["A1", "A3", "A3"]),
    Kind.IVSTAR: (["E6"], ["A1", "A2", "A2"], ["A2", "A2", "A2"]),
    Kind.II: (["A0"], ["A1*", "A2*"], ["A1*", "A2*", "A5*"]),
    Kind.III: (["A1"], ["A1*", "A3*"], ["A1*", "A3*", "A3*"]),
    Kind.IV: (["A2"], ["A2*", "A2*"], ["A2*", "A2*", "A2*"]),
}


def singularity_table(t: FiberType, which: str) -> list[str]:
    """Published singularity multiset of the relative model, as labels.

    For ``I(n)`` this is the published ``A_n``; the engine, which names a chain
    of k (-2)-curves ``A_k``, produces ``A_{n-1}`` instead.
    """
    which = which.lower()
    if which not in REGIMES:
        raise ClassifierError(f"unknown regime {which!r}")
    if t.kind == Kind.N:
        raise ClassifierError(f"no published singularity table for {t}")
    if t.kind == Kind.I:
        if which != "weierstrass":
            raise ClassifierError(f"{t} only has a Weierstrass regime")
        return [f"A{t.n}"]
    if t.kind == Kind.ISTAR:
        n = t.n
        if which == "weierstrass":
            return [f"D{n + 4}"]
        extra = 1 if which == "twisted" else 0
        if n == 0:
            return ["A1"] * (3 + extra)
        tail = "A3" if n == 1 else f"D{n + 2}"
        return ["A1"] * (1 + extra) + [tail]
    return list(_EXCEPTIONAL_STAR[t.kind][REGIMES.index(which)])


def normalized(labels) -> Counter:
    """Multiset with A1* read as A1 and smooth points (A0) dropped."""
    out = Counter()
    for lab in labels:
        lab = getattr(lab, "canonical_label", lab)
        if lab in ("A1*",):
            lab = "A1"
        if lab not in ("A0", "A0*"):
            out[lab] += 1
    return out


def delta_coefficient(t: FiberType, form: ModelForm) -> int:
    """Coefficient of the non-reduced component in the canonical bundle correction."""
    if form in (ModelForm.INTERMEDIATE, ModelForm.TWISTED):
        return {Kind.II: 4, Kind.III: 2, Kind.IV: 1}.get(t.kind, 0)
    return 0
