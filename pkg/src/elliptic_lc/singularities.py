"""Naming the surface singularities produced by contracting fiber components.

A singular point is identified with the set of components of the *starting*
graph that map to it. Classification first blows down (-1)-curves in that
configuration (so a contracted set that resolves a smooth point is reported as
``A0``) and then matches the remaining configuration against chains of
(-2)-curves, the D/E trees, and single rational (-n)-curves.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .fibers import FiberGraph, Geometry


@dataclass(frozen=True)
class SingularityRecord:
    """``kind`` is ``A``, ``D``, ``E``, ``Astar``, ``chain``, ``tree`` or ``non-normal``.

    ``Astar`` with index n-1 is the cyclic quotient singularity of a single
    rational (-n)-curve; the remaining kinds carry the unrecognised
    configuration verbatim as ``-C^2`` values.
    """

    kind: str
    n: int = 0
    carriers: tuple = ()
    members: frozenset = frozenset()
    data: tuple = ()

    @property
    def label(self) -> str:
        if self.kind == "Astar":
            return f"A{self.n}*"
        if self.kind in ("A", "D", "E"):
            return f"{self.kind}{self.n}"
        body = ", ".join(str(x) for x in self.data)
        return f"{self.kind} [{body}]"

    @property
    def canonical_label(self) -> str:
        """Label with the coincidences A1* = A1 and A0* = A0 identified."""
        if self.kind == "Astar" and self.n <= 1:
            return f"A{self.n}"
        return self.label

    @property
    def is_smooth(self) -> bool:
        return self.kind in ("A", "Astar") and self.n == 0

    def __str__(self):
        return self.label


def multiset(records: Iterable) -> Counter:
    """Counter of canonical labels, ignoring smooth points unless nothing else is present."""
    return Counter(r.canonical_label if isinstance(r, SingularityRecord) else r for r in records)


def parse_label(text: str) -> SingularityRecord:
    """Inverse of :attr:`SingularityRecord.label` for the named kinds."""
    s = text.strip()
    if s.endswith("*"):
        return SingularityRecord("Astar", int(s[1:-1]))
    return SingularityRecord(s[0], int(s[1:]))


def _blow_down(sq: dict, k: dict, geo: dict, inter: dict) -> bool:
    """Blow down one (-1)-curve in place; return False if there is none."""
    for c in list(sq):
        if geo[c] is Geometry.SMOOTH_RATIONAL and sq[c] == -1 and k[c] == -1:
            others = [x for x in sq if x != c]
            meet = {x: inter.get(frozenset((x, c)), Fraction(0)) for x in others}
            for x in others:
                m = meet[x]
                if m:
                    sq[x] += m * m
                    k[x] -= m
                    if m > 1:
                        geo[x] = Geometry.CUSPIDAL_RATIONAL
            for i, x in enumerate(others):
                for y in others[i + 1:]:
                    if meet[x] and meet[y]:
                        key = frozenset((x, y))
                        inter[key] = inter.get(key, Fraction(0)) + meet[x] * meet[y]
            for key in [key for key in inter if c in key]:
                del inter[key]
            del sq[c], k[c], geo[c]
            return True
    return False


def _tree_shape(ids, inter):
    adj = {i: [j for j in ids if j != i and inter.get(frozenset((i, j)), 0)] for i in ids}
    edges = sum(len(v) for v in adj.values()) // 2
    return adj, edges == len(ids) - 1


def _chain_order(ids, adj):
    ends = [i for i in ids if len(adj[i]) <= 1]
    start = ends[0]
    order, prev = [start], None
    while len(order) < len(ids):
        nxt = [j for j in adj[order[-1]] if j != prev][0]
        prev = order[-1]
        order.append(nxt)
    return order


def classify_configuration(origin: FiberGraph, members: Iterable[str], carriers=(), starred: bool = False) -> SingularityRecord:
    """Name the singularity obtained by contracting ``members`` of ``origin``.

    ``starred`` selects the A*-notation for a single curve (used for the log
    resolutions of II, III, IV and N1, where a lone (-2)-curve is written A1*).
    """
    members = frozenset(members)
    ids = [i for i in origin.ids if i in members]
    sq = {i: origin.component(i).self_intersection for i in ids}
    k = {i: origin.component(i).k_degree for i in ids}
    geo = {i: origin.component(i).geometry for i in ids}
    inter = {}
    for x in ids:
        for y in ids:
            if x < y:
                v = origin.intersection(x, y)
                if v:
                    inter[frozenset((x, y))] = v
    blown = 0
    while _blow_down(sq, k, geo, inter):
        blown += 1
    rest = [i for i in ids if i in sq]
    common = dict(carriers=tuple(carriers), members=members)
    if not rest:
        return SingularityRecord("A", 0, **common)
    adj, is_tree = _tree_shape(rest, inter)
    degrees = {i: -sq[i] for i in rest}
    simple = all(v == 1 for v in inter.values()) and all(g is Geometry.SMOOTH_RATIONAL for g in geo.values())
    if any(g is not Geometry.SMOOTH_RATIONAL for g in geo.values()):
        return SingularityRecord("non-normal", 0, data=tuple(degrees[i] for i in rest), **common)
    if not (simple and is_tree):
        return SingularityRecord("tree", 0, data=tuple(degrees[i] for i in rest), **common)
    is_chain = all(len(adj[i]) <= 2 for i in rest)
    if len(rest) == 1:
        n = degrees[rest[0]]
        if n.denominator == 1 and n >= 2:
            if n == 2 and not (starred and blown == 0):
                return SingularityRecord("A", 1, **common)
            return SingularityRecord("Astar", int(n) - 1, **common)
    if all(d == 2 for d in degrees.values()):
        if is_chain:
            return SingularityRecord("A", len(rest), **common)
        branch = [i for i in rest if len(adj[i]) == 3]
        if len(branch) == 1 and all(len(adj[i]) <= 3 for i in rest):
            arms = sorted(_arm_length(branch[0], j, adj) for j in adj[branch[0]])
            if arms[0] == 1 and arms[1] == 1:
                return SingularityRecord("D", len(rest), **common)
            if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
                return SingularityRecord("E", len(rest), **common)
    if is_chain:
        order = _chain_order(rest, adj)
        return SingularityRecord("chain", 0, data=tuple(degrees[i] for i in order), **common)
    return SingularityRecord("tree", 0, data=tuple(degrees[i] for i in rest), **common)


def _arm_length(center, first, adj) -> int:
    length, prev, cur = 1, center, first
    while True:
        nxt = [j for j in adj[cur] if j != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1
