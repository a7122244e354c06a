"""Decorated dual graphs of singular fibers.

Each graph records, per component, its multiplicity in the scheme-theoretic
fiber, self-intersection, canonical degree ``K.C`` and intersection with the
section. Graphs are immutable; contraction builds new ones.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping

from .lattice import DivisorClass, IntersectionForm, is_negative_definite, pair_classes


class FiberError(ValueError):
    pass


class Kind(str, enum.Enum):
    I = "I"
    ISTAR = "Istar"
    II = "II"
    III = "III"
    IV = "IV"
    IISTAR = "IIstar"
    IIISTAR = "IIIstar"
    IVSTAR = "IVstar"
    N = "N"


_PARSE = re.compile(r"^(?:I(?P<n>\d+)(?P<star>\*)?|I\*(?P<n2>\d+)|(?P<roman>IV|III|II)(?P<rstar>\*)?|N(?P<k>\d+))$")


@dataclass(frozen=True, order=True)
class FiberType:
    kind: Kind
    n: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.n < 0:
            raise FiberError("fiber index must be non-negative")
        if self.kind == Kind.N and self.n > 2:
            raise FiberError("N_k fibers exist only for k in {0, 1, 2}")
        if self.kind not in (Kind.I, Kind.ISTAR, Kind.N) and self.n:
            raise FiberError(f"type {self.kind.value} takes no index")

    @classmethod
    def parse(cls, text: str) -> "FiberType":
        """Parse ``I5``, ``I2*``, ``II``, ``IV*``, ``N1`` (case-insensitive)."""
        s = text.strip().upper().replace("STAR", "*")
        m = _PARSE.match(s)
        if not m:
            raise FiberError(f"unknown fiber type {text!r}")
        if m["n"] is not None:
            return cls(Kind.ISTAR if m["star"] else Kind.I, int(m["n"]))
        if m["n2"] is not None:
            return cls(Kind.ISTAR, int(m["n2"]))
        if m["k"] is not None:
            return cls(Kind.N, int(m["k"]))
        roman = m["roman"]
        return cls(Kind(roman + ("star" if m["rstar"] else "")))

    def __str__(self):
        if self.kind == Kind.I:
            return f"I{self.n}"
        if self.kind == Kind.ISTAR:
            return f"I{self.n}*"
        if self.kind == Kind.N:
            return f"N{self.n}"
        return self.kind.value.replace("star", "*")

    @property
    def is_starred(self) -> bool:
        return self.kind in (Kind.ISTAR, Kind.IISTAR, Kind.IIISTAR, Kind.IVSTAR)

    @property
    def needs_log_resolution(self) -> bool:
        return self.kind in (Kind.II, Kind.III, Kind.IV) or (self.kind == Kind.N and self.n == 1)


def I(n: int) -> FiberType:  # noqa: E743
    return FiberType(Kind.I, n)


def Istar(n: int) -> FiberType:
    return FiberType(Kind.ISTAR, n)


def N(k: int) -> FiberType:
    return FiberType(Kind.N, k)


II = FiberType(Kind.II)
III = FiberType(Kind.III)
IV = FiberType(Kind.IV)
IISTAR = FiberType(Kind.IISTAR)
IIISTAR = FiberType(Kind.IIISTAR)
IVSTAR = FiberType(Kind.IVSTAR)


class Geometry(str, enum.Enum):
    SMOOTH_RATIONAL = "smooth rational"
    NODAL_RATIONAL = "nodal rational"
    CUSPIDAL_RATIONAL = "cuspidal rational"
    NODAL_CUBIC = "nodal cubic"
    SMOOTH_ELLIPTIC = "smooth elliptic"
    # Rational curve on a semi-smooth (non-normal) surface, where smooth-curve
    # adjunction does not apply.
    SEMI_SMOOTH_RATIONAL = "semi-smooth rational"


class Role(str, enum.Enum):
    """How a component enters the boundary: strict transforms carry the weight ``a``,
    exceptional curves of a log resolution carry coefficient 1."""

    FIBER = "fiber"
    EXCEPTIONAL = "exceptional"


class Stage(str, enum.Enum):
    MINIMAL = "minimal"
    LOG_RESOLUTION = "log_resolution"
    CONTRACTED = "contracted"


@dataclass(frozen=True)
class Component:
    id: str
    multiplicity: int
    self_intersection: Fraction
    k_degree: Fraction
    section_degree: Fraction = Fraction(0)
    geometry: Geometry = Geometry.SMOOTH_RATIONAL
    role: Role = Role.FIBER
    singularities_on: tuple = ()

    @property
    def meets_section(self) -> bool:
        return self.section_degree != 0


def _edge(u: str, v: str) -> frozenset:
    if u == v:
        raise FiberError("an edge needs two distinct components")
    return frozenset((u, v))


@dataclass(frozen=True)
class FiberGraph:
    """Dual graph of a reduced fiber together with its intersection data.

    ``edges`` maps unordered pairs to intersection numbers (which become
    fractional once contractions produce singular points).
    """

    fiber_type: FiberType
    components: tuple
    edges: Mapping = field(default_factory=dict)
    stage: Stage = Stage.MINIMAL
    log_smooth: bool = True
    configuration: str | None = None
    canonical_correction: DivisorClass | None = None
    # Contracted graphs remember the graph the MMP started from and, for each
    # singular point, the set of starting components lying over it.
    origin: "FiberGraph | None" = field(default=None, compare=False, repr=False)
    points: tuple = ()

    @property
    def start(self) -> "FiberGraph":
        return self if self.origin is None else self.origin

    @property
    def ids(self) -> tuple:
        return tuple(c.id for c in self.components)

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise FiberError(f"no component {cid!r} in {self.fiber_type} graph")

    def __contains__(self, cid) -> bool:
        return any(c.id == cid for c in self.components)

    def intersection(self, u: str, v: str) -> Fraction:
        if u == v:
            return self.component(u).self_intersection
        return self.edges.get(frozenset((u, v)), Fraction(0))

    def neighbors(self, cid: str) -> list[str]:
        return [c.id for c in self.components if c.id != cid and self.intersection(cid, c.id) != 0]

    @property
    def section_component(self) -> Component:
        meets = [c for c in self.components if c.meets_section]
        if len(meets) != 1:
            raise FiberError("expected exactly one component meeting the section")
        return meets[0]

    def intersection_form(self, ids: Iterable[str] | None = None) -> IntersectionForm:
        ids = list(self.ids if ids is None else ids)
        return IntersectionForm(ids, [[self.intersection(u, v) for v in ids] for u in ids])

    def fiber_class(self) -> DivisorClass:
        return DivisorClass({c.id: c.multiplicity for c in self.components})

    def reduced_fiber(self) -> DivisorClass:
        return DivisorClass({c.id: 1 for c in self.components})

    def is_connected(self, ids: Iterable[str] | None = None) -> bool:
        ids = set(self.ids if ids is None else ids)
        if not ids:
            return True
        return len(connected_pieces(self, ids)[0]) == len(ids)


def connected_pieces(g: FiberGraph, ids: Iterable[str]) -> list[list[str]]:
    """Connected components of the subgraph induced on ``ids``, in graph order."""
    remaining = [i for i in g.ids if i in set(ids)]
    pieces = []
    while remaining:
        stack = [remaining[0]]
        seen = {remaining[0]}
        while stack:
            u = stack.pop()
            for v in remaining:
                if v not in seen and g.intersection(u, v) != 0:
                    seen.add(v)
                    stack.append(v)
        piece = [i for i in remaining if i in seen]
        pieces.append(piece)
        remaining = [i for i in remaining if i not in seen]
    return pieces


def _graph(t, comps, edge_list, stage=Stage.MINIMAL, **kw) -> FiberGraph:
    edges: dict = {}
    for u, v, *mult in edge_list:
        key = _edge(u, v)
        edges[key] = edges.get(key, Fraction(0)) + Fraction(mult[0] if mult else 1)
    return FiberGraph(t, tuple(comps), edges, stage, **kw)


def _minus2(cid: str, mult: int = 1, *, section: bool = False) -> Component:
    return Component(cid, mult, Fraction(-2), Fraction(0), Fraction(1 if section else 0))


def _chain_edges(ids):
    return [(u, v) for u, v in zip(ids, ids[1:])]


def _affine_e(t: FiberType) -> FiberGraph:
    # Long arm from the branch curve E ends in A; D1 ends the short-long arm,
    # D2 the remaining arm. Multiplicities follow the affine E_n highest root.
    if t.kind == Kind.IISTAR:
        arm1 = [("D1", 2), ("B1", 4)]
        arm2 = [("D2", 3)]
        long = [("B2", 5), ("B3", 4), ("B4", 3), ("B5", 2), ("A", 1)]
        e_mult = 6
    elif t.kind == Kind.IIISTAR:
        arm1 = [("D1", 1), ("B1", 2), ("B2", 3)]
        arm2 = [("D2", 2)]
        long = [("B3", 3), ("B4", 2), ("A", 1)]
        e_mult = 4
    else:
        arm1 = [("D1", 1), ("B1", 2)]
        arm2 = [("D2", 1), ("B2", 2)]
        long = [("B3", 2), ("A", 1)]
        e_mult = 3
    comps = [_minus2("E", e_mult)]
    edges = []
    for arm in (arm1, arm2):
        ids = [cid for cid, _ in arm]
        edges += _chain_edges(ids) + [(ids[-1], "E")]
        comps += [_minus2(cid, m) for cid, m in arm]
    ids = [cid for cid, _ in long]
    edges += [("E", ids[0])] + _chain_edges(ids)
    comps += [_minus2(cid, m, section=(cid == "A")) for cid, m in long]
    order = {"A": 0, "E": 1}
    comps.sort(key=lambda c: (order.get(c.id, 2), c.id))
    return _graph(t, comps, edges)


def build_fiber_graph(t: FiberType) -> FiberGraph:
    """Relatively minimal (or minimal semi-resolution) graph of a fiber type.

    Minimal-stage II, III and IV are the singular Weierstrass-adjacent
    configurations and are flagged as not log smooth; use
    :func:`log_resolution_graph` before running the MMP on them.
    """
    k = t.kind
    zero = Fraction(0)
    one = Fraction(1)
    if k == Kind.I:
        if t.n == 0:
            return _graph(t, [Component("A", 1, zero, zero, one, Geometry.SMOOTH_ELLIPTIC)], [])
        if t.n == 1:
            return _graph(t, [Component("A", 1, zero, zero, one, Geometry.NODAL_RATIONAL)], [])
        ids = ["A"] + [f"D{i}" for i in range(1, t.n)]
        comps = [_minus2(cid, section=(cid == "A")) for cid in ids]
        return _graph(t, comps, _chain_edges(ids) + [(ids[-1], "A")])
    if k == Kind.ISTAR:
        chain = [f"E{i}" for i in range(t.n + 1)]
        comps = [_minus2("A", section=True)] + [_minus2(e, 2) for e in chain]
        comps += [_minus2(d) for d in ("D1", "D2", "D3")]
        edges = _chain_edges(chain)
        edges += [("A", "E0"), ("D1", "E0"), ("D2", chain[-1]), ("D3", chain[-1])]
        return _graph(t, comps, edges)
    if k in (Kind.IISTAR, Kind.IIISTAR, Kind.IVSTAR):
        return _affine_e(t)
    if k == Kind.II:
        return _graph(t, [Component("A", 1, zero, zero, one, Geometry.CUSPIDAL_RATIONAL)], [],
                      log_smooth=False, configuration="cusp")
    if k == Kind.III:
        # A.D1 = 2 at the tangency point; squares follow from F.C = 0.
        return _graph(t, [_minus2("A", section=True), _minus2("D1")], [("A", "D1", 2)],
                      log_smooth=False, configuration="tangent")
    if k == Kind.IV:
        return _graph(t, [_minus2("A", section=True), _minus2("D1"), _minus2("D2")],
                      [("A", "D1"), ("A", "D2"), ("D1", "D2")],
                      log_smooth=False, configuration="concurrent")
    if k == Kind.N:
        if t.n == 0:
            return _graph(t, [Component("A", 1, zero, zero, one, Geometry.NODAL_CUBIC)], [])
        if t.n == 1:
            return log_resolution_graph(t)
        comps = [
            Component("A", 1, Fraction(-1), Fraction(-1), one),
            Component("E", 1, Fraction(-1), one, zero, Geometry.NODAL_CUBIC),
        ]
        return _graph(t, comps, [("A", "E")])
    raise FiberError(f"unsupported fiber type {t}")


def _with_canonical(t, comps, edges, correction: DivisorClass) -> FiberGraph:
    """Fill in k_degree as ``correction . C`` (the pullback of K_X is trivial on fibers)."""
    g = _graph(t, comps, edges, Stage.LOG_RESOLUTION, canonical_correction=correction)
    form = g.intersection_form()
    fixed = tuple(replace(c, k_degree=pair_classes(correction, DivisorClass.of(c.id), form)) for c in g.components)
    return replace(g, components=fixed)


def log_resolution_graph(t: FiberType) -> FiberGraph:
    """Minimal log (semi-)resolution of a II, III, IV or N1 fiber.

    Star-shaped on the last exceptional curve ``E``; strict transforms of the
    original fiber have role FIBER, exceptional curves role EXCEPTIONAL.
    """
    if not t.needs_log_resolution:
        raise FiberError("type is already log smooth")
    one, zero = Fraction(1), Fraction(0)
    X = Role.EXCEPTIONAL

    def comp(cid, mult, sq, section=False, role=Role.FIBER):
        return Component(cid, mult, Fraction(sq), zero, one if section else zero, Geometry.SMOOTH_RATIONAL, role)

    star = [("E", "A"), ("E", "D1"), ("E", "D2")]
    if t.kind == Kind.II:
        comps = [comp("A", 1, -6, True), comp("D1", 2, -3, role=X), comp("D2", 3, -2, role=X), comp("E", 6, -1, role=X)]
        return _with_canonical(t, comps, star, DivisorClass(D1=1, D2=2, E=4))
    if t.kind == Kind.III:
        comps = [comp("A", 1, -4, True), comp("D1", 1, -4), comp("D2", 2, -2, role=X), comp("E", 4, -1, role=X)]
        return _with_canonical(t, comps, star, DivisorClass(D2=1, E=2))
    if t.kind == Kind.IV:
        comps = [comp("A", 1, -3, True), comp("D1", 1, -3), comp("D2", 1, -3), comp("E", 3, -1, role=X)]
        return _with_canonical(t, comps, star, DivisorClass(E=1))
    # N1: the semi-resolution is not normal, so K-degrees are stored, all zero.
    comps = [comp("A", 1, -2, True), comp("B", 1, -2, role=X),
             replace(comp("E", 2, -1, role=X), geometry=Geometry.SEMI_SMOOTH_RATIONAL)]
    return _graph(t, comps, [("A", "E"), ("B", "E")], Stage.LOG_RESOLUTION)


def mmp_start_graph(t: FiberType) -> FiberGraph:
    """The graph the relative MMP starts from for a fiber type."""
    return log_resolution_graph(t) if t.needs_log_resolution else build_fiber_graph(t)


def fiber_class_defect(g: FiberGraph) -> dict:
    """``(sum m_i C_i) . C`` for each component; all zero for a genuine fiber."""
    form = g.intersection_form()
    f = g.fiber_class()
    return {c.id: pair_classes(f, DivisorClass.of(c.id), form) for c in g.components}


def proper_subsets_negative_definite(g: FiberGraph) -> bool:
    """Every proper subset is negative definite iff every complement of one vertex is."""
    ids = g.ids
    if len(ids) == 1:
        return True
    return all(is_negative_definite(g.intersection_form([i for i in ids if i != drop]).matrix) for drop in ids)


def catalog(max_n: int = 9, max_star_n: int = 5) -> list[FiberType]:
    """Every fiber type the engine knows, with I_n and I_n* truncated."""
    types = [I(n) for n in range(max_n + 1)] + [Istar(n) for n in range(max_star_n + 1)]
    types += [II, III, IV, IISTAR, IIISTAR, IVSTAR, N(0), N(1), N(2)]
    return types
