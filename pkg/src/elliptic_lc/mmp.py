"""Relative log MMP for a single fiber over a DVR.

The log divisor on a fiber graph is ``K + S + sum coef(C) C`` where strict
transforms of fiber components carry the weight ``a`` and exceptional curves of
a log resolution carry 1. Negative curves are contracted in batches until the
divisor is nef, then the degree-zero curves are removed by the log canonical
contraction.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .fibers import (
    Component,
    FiberError,
    FiberGraph,
    FiberType,
    Geometry,
    Role,
    Stage,
    connected_pieces,
    mmp_start_graph,
)
from .lattice import DivisorClass, LatticeError, NotExceptionalError, is_negative_definite, solve_contraction_coefficients
from .polynomial import Polynomial
from .singularities import SingularityRecord, classify_configuration


class MmpError(ValueError):
    """Invalid input to the engine."""


class InternalError(RuntimeError):
    """An invariant that should hold for every catalog input was violated."""


class ModelForm(str, enum.Enum):
    WEIERSTRASS = "Weierstrass"
    INTERMEDIATE = "Intermediate"
    TWISTED = "Twisted"
    N0 = "N0"

    def __str__(self):
        return self.value


def check_weight(a):
    if isinstance(a, Polynomial):
        return a
    if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
        raise MmpError(f"weight must be an exact rational, got {a!r}")
    a = Fraction(a)
    if not 0 <= a <= 1:
        raise MmpError(f"weight {a} outside [0, 1]")
    return a


def boundary_coefficient(c: Component, a):
    return a if c.role is Role.FIBER else Fraction(1)


@dataclass(frozen=True)
class LogDegreeReport(Mapping):
    """Degrees of ``K + S + a F~ + Exc`` on each component of a graph."""

    degrees: dict
    weight: object = None

    def __getitem__(self, cid):
        return self.degrees[cid]

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def negative(self) -> list:
        return [c for c, d in self.degrees.items() if d < 0]

    def zero(self) -> list:
        return [c for c, d in self.degrees.items() if d == 0]

    def fiber_total(self, g: FiberGraph):
        """``sum m_i deg_i``, which must equal the degree on a general fiber (1)."""
        total = Fraction(0)
        for c in g.components:
            total = c.multiplicity * self.degrees[c.id] + total
        return total


def log_degrees(g: FiberGraph, a) -> LogDegreeReport:
    a = check_weight(a)
    if not g.log_smooth:
        raise MmpError(f"{g.fiber_type} graph at stage {g.stage.value} is not log smooth; use its log resolution")
    out = {}
    for c in g.components:
        d = c.k_degree + c.section_degree
        for other in g.components:
            m = g.intersection(other.id, c.id)
            if m:
                d = boundary_coefficient(other, a) * m + d
        out[c.id] = d
    return LogDegreeReport(out, a)


@dataclass(frozen=True)
class ContractionStep:
    contracted: tuple
    pullback: dict  # survivor -> {contracted id -> c}
    canonical: dict  # contracted id -> d, from (K + sum d E).E_j = 0
    section: dict  # contracted id -> s, from (S + sum s E).E_j = 0
    self_intersections: dict
    k_degrees: dict
    section_degrees: dict
    singularities: tuple
    lc_final: bool = False
    degrees: LogDegreeReport | None = None
    section_square_shift: Fraction = Fraction(0)


def _solve(matrix, rhs):
    try:
        return solve_contraction_coefficients(matrix, rhs)
    except NotExceptionalError as exc:
        raise MmpError(str(exc)) from exc


def contract(g: FiberGraph, ids, *, lc_final: bool = False) -> tuple[FiberGraph, ContractionStep]:
    """Contract ``ids`` and push all intersection data forward.

    Each survivor ``D`` is pulled back as ``D + sum c_E E`` with ``c`` chosen so
    the pullback is orthogonal to every contracted curve; the same is done for
    ``K`` and for the section.
    """
    order = [i for i in g.ids if i in set(ids)]
    if not order or len(order) != len(set(ids)):
        raise MmpError("contraction set must be a non-empty set of components of the graph")
    if len(order) == len(g.ids):
        raise MmpError("cannot contract every component of a fiber")
    if not lc_final and any(g.component(i).meets_section for i in order):
        raise MmpError("the section component is only contracted in the log canonical step")
    matrix = [[g.intersection(u, v) for v in order] for u in order]
    if not is_negative_definite(matrix):
        raise MmpError("contraction set not exceptional")
    survivors = [i for i in g.ids if i not in set(order)]

    d = _solve(matrix, [g.component(e).k_degree for e in order])
    s = _solve(matrix, [g.component(e).section_degree for e in order])
    pull = {}
    for x in survivors:
        c = _solve(matrix, [g.intersection(x, e) for e in order])
        pull[x] = dict(zip(order, c))
    canonical = dict(zip(order, d))
    section = dict(zip(order, s))

    def pulled(x, y):
        return g.intersection(x, y) + sum((pull[x][e] * g.intersection(e, y) for e in order), Fraction(0))

    new_sq = {x: pulled(x, x) for x in survivors}
    new_k = {x: g.component(x).k_degree + sum((canonical[e] * g.intersection(e, x) for e in order), Fraction(0)) for x in survivors}
    new_s = {x: g.component(x).section_degree + sum((section[e] * g.intersection(e, x) for e in order), Fraction(0)) for x in survivors}
    shift = sum((section[e] * g.component(e).section_degree for e in order), Fraction(0))
    edges = {}
    for i, x in enumerate(survivors):
        for y in survivors[i + 1:]:
            v = pulled(x, y)
            if v != pulled(y, x):
                raise InternalError("pulled-back pairing is not symmetric")
            if v:
                edges[frozenset((x, y))] = v

    start = g.start
    points = _merge_points(g, start, order)
    new_records = []
    records_on = {x: [] for x in survivors}
    for members, rec_new in points:
        carriers = tuple(x for x in survivors if any(start.intersection(x, m) for m in members))
        rec = classify_configuration(start, members, carriers, starred=start.stage is Stage.LOG_RESOLUTION)
        if rec_new:
            new_records.append(rec)
        for x in carriers:
            records_on[x].append(rec)
    comps = tuple(
        replace(g.component(x), self_intersection=new_sq[x], k_degree=new_k[x], section_degree=new_s[x],
                singularities_on=tuple(records_on[x]))
        for x in survivors
    )
    new_graph = replace(g, components=comps, edges=edges, stage=Stage.CONTRACTED, log_smooth=True,
                        canonical_correction=None, origin=start,
                        points=tuple(m for m, _ in points))
    step = ContractionStep(tuple(order), pull, canonical, section, new_sq, new_k, new_s,
                           tuple(new_records), lc_final, section_square_shift=shift)
    return new_graph, step


def _merge_points(g: FiberGraph, start: FiberGraph, order):
    """Group old points and newly contracted curves into the points of the new surface.

    A previously created point is absorbed into a new one when it lies on one
    of the curves being contracted now.
    """
    old = [frozenset(p) for p in g.points]
    pieces = [frozenset(p) for p in connected_pieces(g, order)]
    result = []
    used = set()
    for piece in pieces:
        members = set(piece)
        for k, p in enumerate(old):
            if k not in used and any(start.intersection(m, x) for m in p for x in piece):
                members |= p
                used.add(k)
        result.append((frozenset(members), True))
    kept = [(p, False) for k, p in enumerate(old) if k not in used]
    return kept + result


@dataclass
class MmpTrace:
    start: FiberGraph
    weight: object
    steps: list = field(default_factory=list)
    graphs: list = field(default_factory=list)
    final_degrees: LogDegreeReport | None = None

    @property
    def final(self) -> FiberGraph:
        return self.graphs[-1] if self.graphs else self.start

    def to_dict(self) -> dict:
        return {
            "fiber_type": str(self.start.fiber_type),
            "weight": str(self.weight),
            "steps": [_step_dict(s) for s in self.steps],
            "final_degrees": {k: str(v) for k, v in (self.final_degrees or {}).items()},
        }

    def to_text(self) -> str:
        lines = [f"trace {self.start.fiber_type} at a = {self.weight}"]
        for n, st in enumerate(self.steps, 1):
            kind = "lc contraction" if st.lc_final else "extremal"
            lines.append(f"step {n} ({kind}): contract {', '.join(st.contracted)}")
            if st.degrees is not None:
                lines.append("  degrees: " + ", ".join(f"{k} {v}" for k, v in st.degrees.items()))
            for x, coeffs in st.pullback.items():
                body = ", ".join(f"{e} {c}" for e, c in coeffs.items() if c)
                if body:
                    lines.append(f"  pullback {x}: {x} + ({body})")
            lines.append("  K correction: " + ", ".join(f"{e} {c}" for e, c in st.canonical.items()))
            for x in st.self_intersections:
                lines.append(f"  {x}: C^2 = {st.self_intersections[x]}, K.C = {st.k_degrees[x]}, S.C = {st.section_degrees[x]}")
            for rec in st.singularities:
                lines.append(f"  singularity {rec.label} on {', '.join(rec.carriers) or '-'}")
        if self.final_degrees is not None:
            lines.append("final degrees: " + ", ".join(f"{k} {v}" for k, v in self.final_degrees.items()))
        return "\n".join(lines)


def _step_dict(st: ContractionStep) -> dict:
    return {
        "contracted": list(st.contracted),
        "lc_final": st.lc_final,
        "pullback": {x: {e: str(c) for e, c in cs.items()} for x, cs in st.pullback.items()},
        "canonical": {e: str(c) for e, c in st.canonical.items()},
        "section": {e: str(c) for e, c in st.section.items()},
        "self_intersections": {x: str(v) for x, v in st.self_intersections.items()},
        "k_degrees": {x: str(v) for x, v in st.k_degrees.items()},
        "singularities": [r.label for r in st.singularities],
        "degrees": {k: str(v) for k, v in (st.degrees or {}).items()},
    }


@dataclass(frozen=True)
class RelativeModel:
    form: ModelForm | None
    survivors: tuple
    singularities: tuple
    trace: MmpTrace = field(compare=False)
    graph: FiberGraph = field(compare=False)
    section_square_shift: Fraction = Fraction(0)
    lc_trivial: bool = False

    @property
    def singular_points(self) -> tuple:
        return tuple(r for r in self.singularities if not r.is_smooth)

    def singularity_labels(self) -> list:
        return sorted(r.label for r in self.singular_points)


def run_relative_mmp(g: FiberGraph, a, *, rng: random.Random | None = None) -> RelativeModel:
    """Run the MMP on ``g`` at weight ``a``.

    Negative curves are contracted all at once unless ``rng`` is given, in which
    case one randomly chosen negative curve is contracted per step (used to test
    that the outcome does not depend on the order).
    """
    a = check_weight(a)
    if isinstance(a, Polynomial):
        raise MmpError("the MMP needs a numeric weight")
    log_degrees(g, a)
    trace = MmpTrace(g, a)
    seen = set()
    cur = g
    while True:
        state = frozenset(cur.ids)
        if state in seen:
            raise InternalError("MMP revisited a graph state")
        seen.add(state)
        deg = log_degrees(cur, a)
        neg = deg.negative()
        if not neg:
            break
        if any(cur.component(c).meets_section for c in neg):
            raise InternalError("section component became negative during the extremal phase")
        batch = [rng.choice(neg)] if rng is not None else neg
        cur = _step(cur, batch, trace, deg, lc_final=False)
    deg = log_degrees(cur, a)
    lc_trivial = len(deg.zero()) == len(cur.ids)
    if not lc_trivial:
        while deg.zero():
            zero = deg.zero()
            batch = [rng.choice(zero)] if rng is not None else zero
            cur = _step(cur, batch, trace, deg, lc_final=True)
            deg = log_degrees(cur, a)
    trace.final_degrees = deg
    form = None if lc_trivial else _classify_form(cur)
    records = []
    for p in cur.points:
        carriers = tuple(x for x in cur.ids if any(g.intersection(x, m) for m in p))
        records.append(classify_configuration(g, p, carriers, starred=g.stage is Stage.LOG_RESOLUTION))
    shift = sum((st.section_square_shift for st in trace.steps), Fraction(0))
    return RelativeModel(form, cur.ids, tuple(records), trace, cur, shift, lc_trivial)


def _step(cur, batch, trace, deg, *, lc_final):
    new, step = contract(cur, batch, lc_final=lc_final)
    trace.steps.append(replace(step, degrees=deg))
    trace.graphs.append(new)
    return new


def _classify_form(g: FiberGraph) -> ModelForm:
    comps = g.components
    if len(comps) == 1:
        c = comps[0]
        if c.multiplicity > 1:
            return ModelForm.TWISTED
        return ModelForm.N0 if c.geometry is Geometry.NODAL_CUBIC else ModelForm.WEIERSTRASS
    if len(comps) == 2:
        sec = [c for c in comps if c.meets_section]
        other = [c for c in comps if not c.meets_section]
        if len(sec) == 1 and sec[0].multiplicity == 1 and other[0].multiplicity > 1 \
                and g.intersection(sec[0].id, other[0].id) > 0:
            return ModelForm.INTERMEDIATE
    raise InternalError(f"unexpected final configuration {[c.id for c in comps]} for {g.fiber_type}")


@lru_cache(maxsize=4096)
def relative_model(t: FiberType, a) -> RelativeModel:
    """Run the MMP from the standard starting graph of ``t`` (cached)."""
    return run_relative_mmp(mmp_start_graph(t), Fraction(a))


def log_discrepancies(trace: MmpTrace, a=None) -> dict:
    """Coefficient ``-b_C`` for each contracted starting component ``C``.

    ``b_C`` is the coefficient of ``C`` in the pullback of the final log
    canonical divisor, obtained by composing every step's pullback. A value of
    ``-1`` marks a log canonical centre; anything smaller would not be lc.
    """
    a = trace.weight if a is None else check_weight(a)
    start = trace.start
    full = {c: DivisorClass.of(c) for c in start.ids}
    full_k = DivisorClass()
    full_s = DivisorClass()
    for st in trace.steps:
        new_full = {}
        for x, coeffs in st.pullback.items():
            cls = full[x]
            for e, c in coeffs.items():
                cls = cls + full[e] * c
            new_full[x] = cls
        for e, dcoef in st.canonical.items():
            full_k = full_k + full[e] * dcoef
        for e, scoef in st.section.items():
            full_s = full_s + full[e] * scoef
        full = new_full
    final = trace.final
    total = full_k + full_s
    for x in final.ids:
        total = total + full[x] * boundary_coefficient(final.component(x), a)
    contracted = [c for c in start.ids if c not in final.ids]
    return {c: -total[c] for c in contracted}


def one_shot_log_pullback(start: FiberGraph, survivors, a) -> dict:
    """Independent solve of the same coefficients directly on ``start``.

    With ``X`` the contracted curves, ``b`` solves
    ``sum_i b_i C_i.C_j = -(K + S + sum_s coef_s s).C_j`` for ``C_j`` in ``X``.
    Returns ``{C: -b_C}`` like :func:`log_discrepancies`.
    """
    xs = [c for c in start.ids if c not in set(survivors)]
    if not xs:
        return {}
    rhs = []
    for x in xs:
        v = start.component(x).k_degree + start.component(x).section_degree
        for s in survivors:
            v += boundary_coefficient(start.component(s), a) * start.intersection(s, x)
        rhs.append(v)
    matrix = [[start.intersection(u, v) for v in xs] for u in xs]
    try:
        b = solve_contraction_coefficients(matrix, rhs)
    except LatticeError as exc:
        raise MmpError(str(exc)) from exc
    return {x: -bx for x, bx in zip(xs, b)}


__all__ = [
    "ContractionStep", "FiberError", "InternalError", "LogDegreeReport", "MmpError", "MmpTrace", "ModelForm",
    "RelativeModel", "SingularityRecord", "boundary_coefficient", "contract", "log_degrees", "log_discrepancies",
    "one_shot_log_pullback", "relative_model", "run_relative_mmp",
]
