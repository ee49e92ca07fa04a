"""Annular link diagrams with exact rational geometry.

A diagram lives in the plane punctured at the origin; the reference ray
is the positive x-axis.  Crossings are PD records: four edge identifiers
in counterclockwise order starting from the incoming under-strand.
Edges are polylines with Fraction coordinates whose open ends meet at
crossing points.

Smoothing convention (ends numbered 1..4 as in the PD record): the
0-smoothing joins ends 1-2 and 3-4, the 1-smoothing joins 1-4 and 2-3.
Resolved circles are classified as trivial or essential by their winding
around the puncture, computed from signed crossings of the reference
ray, and essential circles are ordered innermost to outermost by the
radius of their innermost ray crossing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import product

from .errors import (
    ENDPOINT_MISMATCH,
    ORIGIN_ON_CURVE,
    RAY_TANGENCY,
    SELF_INTERSECTION,
    EmbeddingViolationError,
    InvalidDiagramError,
    Violation,
)

# ---------------------------------------------------------------------------
# exact planar predicates


def _pt(xy):
    return (Fraction(xy[0]), Fraction(xy[1]))


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _orient(a, b, c):
    return _cross(_sub(b, a), _sub(c, a))


def _dist2(a, b):
    dx, dy = a[0] - b[0], a[1] - b[1]
    return dx * dx + dy * dy


def _point_seg_dist2(p, a, b):
    ab = _sub(b, a)
    denom = ab[0] * ab[0] + ab[1] * ab[1]
    if denom == 0:
        return _dist2(p, a)
    t = (_sub(p, a)[0] * ab[0] + _sub(p, a)[1] * ab[1]) / denom
    if t < 0:
        t = Fraction(0)
    elif t > 1:
        t = Fraction(1)
    q = (a[0] + t * ab[0], a[1] + t * ab[1])
    return _dist2(p, q)


def _on_segment(a, b, p):
    if _orient(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _seg_intersection(p1, p2, p3, p4):
    """None, ("point", pt), or ("overlap", None) for closed segments."""
    o1 = _orient(p1, p2, p3)
    o2 = _orient(p1, p2, p4)
    o3 = _orient(p3, p4, p1)
    o4 = _orient(p3, p4, p2)
    if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
        # collinear
        axis = 0 if p1[0] != p2[0] else 1
        lo1, hi1 = sorted((p1[axis], p2[axis]))
        lo2, hi2 = sorted((p3[axis], p4[axis]))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return None
        if lo == hi:
            pt = p1 if p1[axis] == lo else p2
            return ("point", pt)
        return ("overlap", None)
    if (o1 > 0) != (o2 > 0) and o1 != 0 and o2 != 0:
        if (o3 > 0) != (o4 > 0) and o3 != 0 and o4 != 0:
            d = _sub(p2, p1)
            e = _sub(p4, p3)
            denom = _cross(d, e)
            t = _cross(_sub(p3, p1), e) / denom
            return ("point", (p1[0] + t * d[0], p1[1] + t * d[1]))
    # touching cases
    if o1 == 0 and _on_segment(p1, p2, p3):
        return ("point", p3)
    if o2 == 0 and _on_segment(p1, p2, p4):
        return ("point", p4)
    if o3 == 0 and _on_segment(p3, p4, p1):
        return ("point", p1)
    if o4 == 0 and _on_segment(p3, p4, p2):
        return ("point", p2)
    return None


def _ang_half(v):
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _ang_cmp(u, v):
    hu, hv = _ang_half(u), _ang_half(v)
    if hu != hv:
        return hu - hv
    c = _cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def signed_area_twice(points):
    """Twice the shoelace area; positive for counterclockwise traversal."""
    total = Fraction(0)
    n = len(points)
    for i in range(n):
        total += _cross(points[i], points[(i + 1) % n])
    return total


def is_counterclockwise(circle):
    """Orientation of an embedded circle as traced.  For essential
    circles this agrees with a winding number of +1."""
    return signed_area_twice(circle.points) > 0


def point_winding(points, p):
    """Winding number of a closed polyline around p (half-open rule)."""
    wn = 0
    n = len(points)
    for i in range(n):
        a = points[i]
        b = points[(i + 1) % n]
        left = _orient(a, b, p)
        if a[1] <= p[1]:
            if b[1] > p[1] and left > 0:
                wn += 1
        else:
            if b[1] <= p[1] and left < 0:
                wn -= 1
    return wn


def ray_stations(points):
    """Signed crossings of the positive x-axis, in traversal order.

    Upward crossings (counterclockwise around the origin) count +1.
    """
    out = []
    n = len(points)
    for i in range(n):
        a = points[i]
        b = points[(i + 1) % n]
        if a[1] <= 0 < b[1]:
            sign = 1
        elif b[1] <= 0 < a[1]:
            sign = -1
        else:
            continue
        x = a[0] + (b[0] - a[0]) * (0 - a[1]) / (b[1] - a[1])
        if x > 0:
            out.append((x, sign))
    return out


# ---------------------------------------------------------------------------
# circles and resolved diagrams


@dataclass(frozen=True)
class Circle:
    """One closed curve of a resolved diagram."""

    points: tuple  # closed polyline, first point not repeated
    edge_ids: frozenset
    stations: tuple  # (radius, sign) in traversal order
    winding: int
    essential: bool
    essential_index: object = None  # 1-based, innermost first; None if trivial

    @property
    def min_station(self):
        return min((x for x, _ in self.stations), default=None)


def winding_number(circle):
    """Signed station sum; embedded circles satisfy |w| <= 1."""
    if abs(circle.winding) > 1:
        raise EmbeddingViolationError(
            f"circle winds {circle.winding} times around the puncture"
        )
    return circle.winding


@dataclass(frozen=True)
class ResolvedDiagram:
    """A smoothing with classified, canonically ordered circles.

    Circles are listed trivial-first (sorted by smallest vertex), then
    essential circles ordered innermost to outermost.
    """

    smoothing: tuple
    circles: tuple
    oriented: bool = False

    @property
    def n_trivial(self):
        return sum(1 for c in self.circles if not c.essential)

    @property
    def n_essential(self):
        return sum(1 for c in self.circles if c.essential)


def nesting_depth(rd, index):
    """Number of circles separating the given circle from infinity."""
    probe = rd.circles[index].points[0]
    depth = 0
    for j, other in enumerate(rd.circles):
        if j == index:
            continue
        if point_winding(other.points, probe) != 0:
            depth += 1
    return depth


# ---------------------------------------------------------------------------
# the diagram proper


@dataclass(frozen=True)
class _End:
    edge: str
    end: int  # 0 = tail (polyline start), 1 = head (polyline end)
    neighbor: tuple
    direction: tuple  # neighbor - crossing point


_PAIRING = {
    0: {0: 1, 1: 0, 2: 3, 3: 2},
    1: {0: 3, 3: 0, 1: 2, 2: 1},
}


class AnnularDiagram:
    """An annular link diagram with exact geometric realization."""

    def __init__(self, crossings, edges, components, orientations):
        self.crossings = [tuple(c) for c in crossings]
        self.edges = {
            str(e): [_pt(p) for p in pts] for e, pts in edges.items()
        }
        self.components = [tuple(str(e) for e in comp) for comp in components]
        self.orientations = list(orientations)
        self._violations = None
        self._ends = None
        self._cross_pts = None
        self._trunc = None
        self._end_lookup = None
        self._crossing_edges = None
        self._resolve_cache = {}

    @property
    def n_crossings(self):
        return len(self.crossings)

    @property
    def n_components(self):
        return len(self.components)

    def comp_of_edge(self, eid):
        for i, comp in enumerate(self.components):
            if eid in comp:
                return i
        raise KeyError(eid)

    # -- validation --------------------------------------------------------

    def validate(self):
        if self._violations is None:
            self._violations = self._run_validation()
        return self._violations

    def is_valid(self):
        return not self.validate()

    def ensure_valid(self):
        v = self.validate()
        if v:
            raise InvalidDiagramError(v)

    def _run_validation(self):
        out = []
        out.extend(self._validate_structure())
        if out:
            return out
        out.extend(self._match_all_crossings())
        if out:
            return out
        out.extend(self._validate_components())
        out.extend(self._validate_geometry())
        if not out:
            self._prepare_cuts()
        return out

    def _validate_structure(self):
        out = []
        for eid, pts in self.edges.items():
            if len(pts) < 2:
                out.append(
                    Violation(ENDPOINT_MISMATCH, f"edge {eid}", "too few points")
                )
                continue
            for i in range(len(pts) - 1):
                if pts[i] == pts[i + 1]:
                    out.append(
                        Violation(
                            ENDPOINT_MISMATCH,
                            f"edge {eid}",
                            f"zero-length segment at index {i}",
                        )
                    )
        for k, rec in enumerate(self.crossings):
            if len(rec) != 4:
                out.append(
                    Violation(ENDPOINT_MISMATCH, f"crossing {k}", "needs 4 ends")
                )
                continue
            for eid in rec:
                if eid not in self.edges:
                    out.append(
                        Violation(
                            ENDPOINT_MISMATCH,
                            f"crossing {k}",
                            f"unknown edge {eid}",
                        )
                    )
        for eid, pts in self.edges.items():
            if len(pts) >= 2 and self._edge_is_closed(eid) and pts[0] != pts[-1]:
                out.append(
                    Violation(
                        ENDPOINT_MISMATCH,
                        f"edge {eid}",
                        "free edge must close up (first point = last point)",
                    )
                )
        declared = [e for comp in self.components for e in comp]
        if sorted(declared) != sorted(self.edges):
            out.append(
                Violation(
                    ENDPOINT_MISMATCH,
                    "components",
                    "components must partition the edge set",
                )
            )
        if len(self.orientations) != len(self.components):
            out.append(
                Violation(
                    ENDPOINT_MISMATCH,
                    "orientations",
                    "one flag per component required",
                )
            )
        return out

    def _edge_is_closed(self, eid):
        # closed edges are free loops: referenced by no crossing record
        # (an open loop edge can also have equal endpoints, both at one
        # crossing, so point equality alone does not decide)
        if self._crossing_edges is None:
            self._crossing_edges = {e for rec in self.crossings for e in rec}
        return eid not in self._crossing_edges

    def _candidate_ends(self, eid, point, role):
        """Ends of the edge sitting at the crossing point.

        role: 'head' (position 1), 'tail' (position 3), or 'any'.
        """
        pts = self.edges[eid]
        if self._edge_is_closed(eid):
            return []
        cands = []
        if role in ("tail", "any") and pts[0] == point:
            cands.append(_End(eid, 0, pts[1], _sub(pts[1], point)))
        if role in ("head", "any") and pts[-1] == point:
            cands.append(_End(eid, 1, pts[-2], _sub(pts[-2], point)))
        return cands

    def _match_crossing(self, k):
        rec = self.crossings[k]
        first = self.edges[rec[0]]
        if self._edge_is_closed(rec[0]):
            return None, None, Violation(
                ENDPOINT_MISMATCH, f"crossing {k}", f"closed edge {rec[0]}"
            )
        point = first[-1]  # position 1 is the incoming under-strand
        roles = ("head", "any", "tail", "any")
        cands = [self._candidate_ends(rec[q], point, roles[q]) for q in range(4)]
        if any(not c for c in cands):
            return None, None, Violation(
                ENDPOINT_MISMATCH,
                f"crossing {k}",
                "an end is missing at the crossing point",
            )
        valid = []
        for combo in product(*cands):
            keyset = {(e.edge, e.end) for e in combo}
            if len(keyset) != 4:
                continue
            # over-strand passes through: one incoming, one outgoing
            if {combo[1].end, combo[3].end} != {0, 1}:
                continue
            dirs = [e.direction for e in combo]
            if any(
                _ang_cmp(dirs[i], dirs[j]) == 0
                for i in range(4)
                for j in range(i + 1, 4)
            ):
                continue
            order = sorted(range(4), key=cmp_to_key(
                lambda a, b: _ang_cmp(dirs[a], dirs[b])))
            start = order.index(0)
            if [order[(start + i) % 4] for i in range(4)] == [0, 1, 2, 3]:
                valid.append(combo)
        if not valid:
            return None, None, Violation(
                ENDPOINT_MISMATCH,
                f"crossing {k}",
                "no end assignment matches the counterclockwise order",
            )
        assignments = {tuple((e.edge, e.end) for e in v) for v in valid}
        if len(assignments) > 1:
            return None, None, Violation(
                ENDPOINT_MISMATCH, f"crossing {k}", "ambiguous end assignment"
            )
        return valid[0], point, None

    def _match_all_crossings(self):
        out = []
        ends = []
        pts = []
        for k in range(len(self.crossings)):
            combo, point, err = self._match_crossing(k)
            if err:
                out.append(err)
                continue
            ends.append(combo)
            pts.append(point)
        if out:
            return out
        # every open end used exactly once
        usage = {}
        for k, combo in enumerate(ends):
            for e in combo:
                usage[(e.edge, e.end)] = usage.get((e.edge, e.end), 0) + 1
        for eid in self.edges:
            if self._edge_is_closed(eid):
                continue
            for end in (0, 1):
                n = usage.get((eid, end), 0)
                if n != 1:
                    out.append(
                        Violation(
                            ENDPOINT_MISMATCH,
                            f"edge {eid}",
                            f"end {end} used {n} times",
                        )
                    )
        if not out:
            self._ends = ends
            self._cross_pts = pts
            self._end_lookup = {}
            for k, combo in enumerate(ends):
                for q, e in enumerate(combo):
                    self._end_lookup[(e.edge, e.end)] = (k, q)
        return out

    def _validate_components(self):
        # strand continuity: positions 1-3 and 2-4 belong to one component
        out = []
        parent = {e: e for e in self.edges}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            parent[find(a)] = find(b)

        for rec in self.crossings:
            union(rec[0], rec[2])
            union(rec[1], rec[3])
        classes = {}
        for e in self.edges:
            classes.setdefault(find(e), set()).add(e)
        declared = {frozenset(comp) for comp in self.components}
        computed = {frozenset(c) for c in classes.values()}
        if declared != computed:
            out.append(
                Violation(
                    ENDPOINT_MISMATCH,
                    "components",
                    "declared components disagree with strand continuity",
                )
            )
        return out

    def _segments(self):
        segs = []
        for eid, pts in self.edges.items():
            for i in range(len(pts) - 1):
                segs.append((eid, i, pts[i], pts[i + 1]))
        return segs

    def _validate_geometry(self):
        out = []
        origin = (Fraction(0), Fraction(0))
        cross_pts = set(self._cross_pts)
        # segments adjacent to each crossing point
        adjacent = set()
        for k, combo in enumerate(self._ends):
            for e in combo:
                pts = self.edges[e.edge]
                idx = 0 if e.end == 0 else len(pts) - 2
                adjacent.add((e.edge, idx, self._cross_pts[k]))
        adj_lookup = {}
        for eid, idx, p in adjacent:
            adj_lookup.setdefault((eid, idx), set()).add(p)

        for eid, pts in self.edges.items():
            for p in pts:
                if p[1] == 0 and p[0] > 0:
                    out.append(
                        Violation(RAY_TANGENCY, f"edge {eid}", f"vertex {p}")
                    )
        for k, p in enumerate(self._cross_pts):
            if p[1] == 0 and p[0] > 0:
                out.append(Violation(RAY_TANGENCY, f"crossing {k}", str(p)))

        segs = self._segments()
        closed = {eid: self._edge_is_closed(eid) for eid in self.edges}
        nsegs = {eid: len(self.edges[eid]) - 1 for eid in self.edges}
        for a in range(len(segs)):
            e1, i1, a1, b1 = segs[a]
            if _on_segment(a1, b1, origin):
                out.append(
                    Violation(ORIGIN_ON_CURVE, f"edge {e1} segment {i1}")
                )
            for b in range(a + 1, len(segs)):
                e2, i2, a2, b2 = segs[b]
                hit = _seg_intersection(a1, b1, a2, b2)
                if hit is None:
                    continue
                kind, pt = hit
                if kind == "overlap":
                    out.append(
                        Violation(
                            SELF_INTERSECTION,
                            f"edges {e1}/{e2}",
                            "collinear overlap",
                        )
                    )
                    continue
                ok = False
                if (
                    pt in cross_pts
                    and pt in adj_lookup.get((e1, i1), ())
                    and pt in adj_lookup.get((e2, i2), ())
                ):
                    # end segments touching at their shared crossing point
                    ok = True
                elif e1 == e2:
                    consecutive = abs(i1 - i2) == 1 or (
                        closed[e1] and {i1, i2} == {0, nsegs[e1] - 1}
                    )
                    if consecutive:
                        shared = {a1, b1} & {a2, b2}
                        ok = pt in shared
                if not ok:
                    out.append(
                        Violation(
                            SELF_INTERSECTION,
                            f"edges {e1}/{e2}",
                            f"meet at {pt}",
                        )
                    )
        return out

    # -- crossing disks and truncation --------------------------------------

    def _prepare_cuts(self):
        segs = self._segments()
        cuts = {}
        for k, combo in enumerate(self._ends):
            p = self._cross_pts[k]
            adjacent = set()
            for e in combo:
                pts = self.edges[e.edge]
                adjacent.add((e.edge, 0 if e.end == 0 else len(pts) - 2))
            delta2 = None
            for eid, i, a, b in segs:
                if (eid, i) in adjacent:
                    continue
                d2 = _point_seg_dist2(p, a, b)
                if delta2 is None or d2 < delta2:
                    delta2 = d2
            for k2, p2 in enumerate(self._cross_pts):
                if k2 != k:
                    d2 = _dist2(p, p2)
                    if delta2 is None or d2 < delta2:
                        delta2 = d2
            if delta2 is None:
                delta2 = Fraction(4)  # isolated crossing, any radius works
            rho2 = delta2 / 4
            for q, e in enumerate(combo):
                t = Fraction(1, 2)
                d2 = _dist2(p, e.neighbor)
                while t * t * d2 >= rho2:
                    t /= 2
                cut = (
                    p[0] + t * (e.neighbor[0] - p[0]),
                    p[1] + t * (e.neighbor[1] - p[1]),
                )
                cuts[(k, q)] = cut
        trunc = {eid: list(pts) for eid, pts in self.edges.items()}
        for (k, q), cut in cuts.items():
            e = self._ends[k][q]
            if e.end == 0:
                trunc[e.edge][0] = cut
            else:
                trunc[e.edge][-1] = cut
        self._trunc = trunc

    # -- resolution ----------------------------------------------------------

    def resolve(self, u, oriented=None):
        """Smooth every crossing and trace the resulting circles.

        With ``oriented`` set to an orientation choice (one reversal flag
        per component, on top of the diagram's stored orientation), the
        circles are traced along their induced directions; tracing fails
        if the smoothing is inconsistent with the orientation.
        """
        u = tuple(int(x) for x in u)
        if len(u) != len(self.crossings) or any(x not in (0, 1) for x in u):
            raise ValueError(f"bad smoothing {u}")
        key = (u, tuple(oriented) if oriented is not None else None)
        if key in self._resolve_cache:
            return self._resolve_cache[key]
        self.ensure_valid()
        if oriented is not None:
            eff_reversed = [
                bool(self.orientations[i]) ^ bool(oriented[i])
                for i in range(len(self.components))
            ]
        else:
            eff_reversed = None

        visited = set()
        raw_circles = []
        for eid in sorted(self.edges):
            if eid in visited:
                continue
            if self._edge_is_closed(eid):
                visited.add(eid)
                pts = self.edges[eid][:-1]
                if eff_reversed is not None and eff_reversed[self.comp_of_edge(eid)]:
                    pts = pts[::-1]
                raw_circles.append((tuple(pts), frozenset([eid])))
                continue
            forward = True
            if eff_reversed is not None:
                forward = not eff_reversed[self.comp_of_edge(eid)]
            start = (eid, forward)
            cur_edge, cur_fwd = eid, forward
            pts = []
            ids = set()
            while True:
                visited.add(cur_edge)
                ids.add(cur_edge)
                poly = self._trunc[cur_edge]
                pts.extend(poly if cur_fwd else reversed(poly))
                arrive = 1 if cur_fwd else 0
                k, q = self._end_lookup[(cur_edge, arrive)]
                partner = _PAIRING[u[k]][q]
                nxt = self._ends[k][partner]
                nxt_fwd = nxt.end == 0
                if eff_reversed is not None:
                    want_fwd = not eff_reversed[self.comp_of_edge(nxt.edge)]
                    if nxt_fwd != want_fwd:
                        raise InvalidDiagramError(
                            [
                                Violation(
                                    ENDPOINT_MISMATCH,
                                    f"crossing {k}",
                                    "smoothing inconsistent with orientation",
                                )
                            ]
                        )
                if (nxt.edge, nxt_fwd) == start:
                    break
                cur_edge, cur_fwd = nxt.edge, nxt_fwd
            raw_circles.append((tuple(pts), frozenset(ids)))

        circles = []
        for pts, ids in raw_circles:
            st = tuple(ray_stations(pts))
            w = sum(s for _, s in st)
            if abs(w) > 1:
                raise EmbeddingViolationError(
                    f"circle through {sorted(ids)} winds {w} times"
                )
            circles.append(
                Circle(
                    points=pts,
                    edge_ids=ids,
                    stations=st,
                    winding=w,
                    essential=w != 0,
                )
            )
        trivial = sorted(
            (c for c in circles if not c.essential),
            key=lambda c: min(c.points),
        )
        essential = sorted(
            (c for c in circles if c.essential), key=lambda c: c.min_station
        )
        radii = [c.min_station for c in essential]
        assert radii == sorted(set(radii)), "essential radii must be distinct"
        essential = [
            Circle(
                points=c.points,
                edge_ids=c.edge_ids,
                stations=c.stations,
                winding=c.winding,
                essential=True,
                essential_index=i + 1,
            )
            for i, c in enumerate(essential)
        ]
        rd = ResolvedDiagram(
            smoothing=u,
            circles=tuple(trivial) + tuple(essential),
            oriented=oriented is not None,
        )
        self._resolve_cache[key] = rd
        return rd

    # -- signs and orientations ----------------------------------------------

    def base_crossing_sign(self, k):
        """Sign with respect to the polyline directions: the crossing is
        positive exactly when the over-strand leaves at position 2."""
        self.ensure_valid()
        return 1 if self._ends[k][1].end == 0 else -1

    def crossing_sign(self, k, choice=None):
        self.ensure_valid()
        if choice is None:
            choice = (False,) * len(self.components)
        under = self.comp_of_edge(self._ends[k][0].edge)
        over = self.comp_of_edge(self._ends[k][1].edge)
        rev_u = bool(self.orientations[under]) ^ bool(choice[under])
        rev_o = bool(self.orientations[over]) ^ bool(choice[over])
        base = self.base_crossing_sign(k)
        return -base if rev_u != rev_o else base

    def signs(self, choice=None):
        return [self.crossing_sign(k, choice) for k in range(self.n_crossings)]

    def n_plus_minus(self, choice=None):
        ss = self.signs(choice)
        return sum(1 for s in ss if s > 0), sum(1 for s in ss if s < 0)

    def oriented_resolution(self, choice=None):
        """The smoothing compatible with the orientation, with circles
        traced along their induced directions."""
        if choice is None:
            choice = (False,) * len(self.components)
        u = tuple(
            0 if self.crossing_sign(k, choice) > 0 else 1
            for k in range(self.n_crossings)
        )
        return u, self.resolve(u, oriented=choice)


def all_smoothings(n):
    return product((0, 1), repeat=n)


def all_orientations(diagram):
    return product((False, True), repeat=diagram.n_components)


def cube_edge_pairs(diagram, u):
    """Smoothings one step above u, with the changed coordinate."""
    out = []
    for i, x in enumerate(u):
        if x == 0:
            v = list(u)
            v[i] = 1
            out.append((i, tuple(v)))
    return out


# ---------------------------------------------------------------------------
# serialization


def _frac_str(x):
    return str(x)


def diagram_to_dict(d):
    return {
        "crossings": [list(c) for c in d.crossings],
        "edges": {
            eid: [[_frac_str(p[0]), _frac_str(p[1])] for p in pts]
            for eid, pts in d.edges.items()
        },
        "components": [list(c) for c in d.components],
        "orientations": [bool(b) for b in d.orientations],
    }


def diagram_from_dict(data):
    return AnnularDiagram(
        crossings=data["crossings"],
        edges={
            eid: [(Fraction(x), Fraction(y)) for x, y in pts]
            for eid, pts in data["edges"].items()
        },
        components=data["components"],
        orientations=data["orientations"],
    )


def dumps_diagram(d):
    return json.dumps(diagram_to_dict(d), indent=1, sort_keys=True)


def loads_diagram(text):
    return diagram_from_dict(json.loads(text))


def load_diagram(path):
    with open(path) as f:
        return loads_diagram(f.read())


def save_diagram(d, path):
    with open(path, "w") as f:
        f.write(dumps_diagram(d))
        f.write("\n")


def nudged(d, t=Fraction(1, 8)):
    """Rotate the whole diagram by the rational rotation with tangent
    half-angle t, so the reference ray meets it transversally."""
    c = (1 - t * t) / (1 + t * t)
    s = 2 * t / (1 + t * t)

    def rot(p):
        return (c * p[0] - s * p[1], s * p[0] + c * p[1])

    return AnnularDiagram(
        crossings=d.crossings,
        edges={eid: [rot(p) for p in pts] for eid, pts in d.edges.items()},
        components=d.components,
        orientations=d.orientations,
    )
