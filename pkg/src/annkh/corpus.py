"""Bundled diagram corpus, constructed with exact integer coordinates.

Run ``python -m annkh.corpus <directory>`` to (re)write the JSON corpus.

Hand-built diagrams cover the null-homotopic shapes; everything that
winds around the puncture is produced by :func:`braid_closure`, which
closes a braid word into concentric square strands with crossing
gadgets along the top side (away from the reference ray).
"""

from __future__ import annotations

import os
import sys
from fractions import Fraction

from .diagram import AnnularDiagram, save_diagram


def trivial_unknot():
    """One crossingless circle away from the puncture."""
    pts = [(1, 5), (1, 7), (-1, 7), (-1, 5), (1, 5)]
    return AnnularDiagram([], {"e0": pts}, [["e0"]], [False])


def essential_unknot(clockwise=False):
    """A crossingless square around the puncture, counterclockwise."""
    pts = [(2, -2), (2, 2), (-2, 2), (-2, -2), (2, -2)]
    return AnnularDiagram([], {"e0": pts}, [["e0"]], [bool(clockwise)])


def essential_unknot_r1():
    """The essential unknot with one negative kink (R1 partner)."""
    x = (-3, 0)
    e1 = [x, (-4, -1), (-4, 1), x]
    e2 = [x, (-2, -1), (-2, -2), (2, -2), (2, 2), (-2, 2), (-2, 1), x]
    return AnnularDiagram(
        [("e2", "e1", "e1", "e2")],
        {"e1": e1, "e2": e2},
        [["e1", "e2"]],
        [False],
    )


def hopf_null():
    """A Hopf link contained in a disk away from the puncture."""
    a1 = [(0, 7), (1, 6), (0, 5)]
    a2 = [(0, 5), (-1, 4), (-3, 6), (-1, 8), (0, 7)]
    b1 = [(0, 7), (1, 8), (3, 6), (1, 4), (0, 5)]
    b2 = [(0, 5), (-1, 6), (0, 7)]
    return AnnularDiagram(
        [("a2", "b2", "a1", "b1"), ("b1", "a1", "b2", "a2")],
        {"a1": a1, "a2": a2, "b1": b1, "b2": b2},
        [["a1", "a2"], ["b1", "b2"]],
        [False, False],
    )


def braid_closure(word, strands):
    """Close a braid word around the puncture.

    ``word`` is a list of nonzero integers: letter j swaps strands j and
    j+1 (counted from the puncture outward), positive letters putting
    the outgoing inner strand over.  All strands run counterclockwise.
    """
    n = strands
    k = len(word)
    for w in word:
        if not (1 <= abs(w) < n):
            raise ValueError(f"letter {w} out of range for {n} strands")
    r = [6 * k + 6 + 3 * i for i in range(n)]  # level radii, inner first
    xs = [3 * k - 6 * s for s in range(k)]  # gadget centers, east to west

    # sweep each token (east corner to west corner), tagging diagonals
    def token(start_level):
        level = start_level
        items = [("pt", (r[level], r[level]))]
        for s, w in enumerate(word):
            j = abs(w) - 1  # inner level of the swap
            if level == j:
                items.append(("pt", (xs[s] + 1, r[j])))
                items.append(("x", s, "asc"))
                items.append(("pt", (xs[s] - 1, r[j + 1])))
                level = j + 1
            elif level == j + 1:
                items.append(("pt", (xs[s] + 1, r[j + 1])))
                items.append(("x", s, "desc"))
                items.append(("pt", (xs[s] - 1, r[j])))
                level = j
        items.append(("pt", (-r[level], r[level])))
        return items, level

    tokens = {}
    perm = {}
    for i in range(n):
        tokens[i], perm[i] = token(i)

    # assemble closed component walks: token, closure arc, next token
    seen = set()
    walks = []
    for i in range(n):
        if i in seen:
            continue
        walk = []
        cur = i
        while True:
            seen.add(cur)
            walk.extend(tokens[cur])
            out_level = perm[cur]
            walk.append(("pt", (-r[out_level], -r[out_level])))
            walk.append(("pt", (r[out_level], -r[out_level])))
            cur = out_level
            if cur == i:
                break
        walks.append(walk)

    # crossing coordinates per gadget
    cross_pt = {}
    for s, w in enumerate(word):
        j = abs(w) - 1
        cross_pt[s] = (Fraction(xs[s]), Fraction(2 * r[j] + 3, 2))

    # split walks into edges at crossing tags
    edges = {}
    components = []
    counter = 0
    gadget_ends = {s: {} for s in range(k)}  # role_in / role_out -> edge id

    def new_edge(pts):
        nonlocal counter
        eid = f"e{counter}"
        counter += 1
        edges[eid] = pts
        return eid

    for walk in walks:
        tags = [t for t, item in enumerate(walk) if walk[t][0] == "x"]
        comp_edges = []
        if not tags:
            pts = [item[1] for item in walk]
            pts.append(pts[0])
            comp_edges.append(new_edge(pts))
        else:
            m = len(walk)
            for a, b in zip(tags, tags[1:] + [tags[0] + m]):
                s_a = walk[a % m][1]
                s_b = walk[b % m][1]
                pts = [cross_pt[s_a]]
                for t in range(a + 1, b):
                    kind, payload = walk[t % m][0], walk[t % m][1]
                    if kind == "pt":
                        pts.append(payload)
                pts.append(cross_pt[s_b])
                eid = new_edge(pts)
                comp_edges.append(eid)
                role_a = walk[a % m][2]
                role_b = walk[b % m][2]
                gadget_ends[s_a][f"{role_a}_out"] = eid
                gadget_ends[s_b][f"{role_b}_in"] = eid
        components.append(comp_edges)

    crossings = []
    for s, w in enumerate(word):
        g = gadget_ends[s]
        if w > 0:
            rec = (g["desc_in"], g["asc_out"], g["desc_out"], g["asc_in"])
        else:
            rec = (g["asc_in"], g["desc_in"], g["asc_out"], g["desc_out"])
        crossings.append(rec)

    return AnnularDiagram(
        crossings, edges, components, [False] * len(components)
    )


BUILDERS = {
    "trivial_unknot": trivial_unknot,
    "essential_unknot_ccw": lambda: essential_unknot(False),
    "essential_unknot_cw": lambda: essential_unknot(True),
    "essential_unknot_r1": essential_unknot_r1,
    "unknot_clasp": lambda: braid_closure([1], 2),
    "unlink2_essential": lambda: braid_closure([], 2),
    "unlink2_essential_r2": lambda: braid_closure([1, -1], 2),
    "hopf_null": hopf_null,
    "hopf_essential": lambda: braid_closure([1, 1], 2),
    "trefoil_right": lambda: braid_closure([1, 1, 1], 2),
    "trefoil_left": lambda: braid_closure([-1, -1, -1], 2),
    "braid3_r3_a": lambda: braid_closure([1, 2, 1], 3),
    "braid3_r3_b": lambda: braid_closure([2, 1, 2], 3),
}

# diagrams of the same link related by a single Reidemeister move
R_PAIRS = {
    "r1": ("essential_unknot_ccw", "essential_unknot_r1"),
    "r2": ("unlink2_essential", "unlink2_essential_r2"),
    "r3": ("braid3_r3_a", "braid3_r3_b"),
}

# expected component counts, for rank experiments
COMPONENTS = {
    "trivial_unknot": 1,
    "essential_unknot_ccw": 1,
    "essential_unknot_cw": 1,
    "essential_unknot_r1": 1,
    "unknot_clasp": 1,
    "unlink2_essential": 2,
    "unlink2_essential_r2": 2,
    "hopf_null": 2,
    "hopf_essential": 2,
    "trefoil_right": 1,
    "trefoil_left": 1,
    "braid3_r3_a": 2,
    "braid3_r3_b": 2,
}


def build_all():
    return {name: fn() for name, fn in BUILDERS.items()}


def write_corpus(directory):
    os.makedirs(directory, exist_ok=True)
    for name, d in sorted(build_all().items()):
        d.ensure_valid()
        save_diagram(d, os.path.join(directory, f"{name}.json"))


if __name__ == "__main__":
    write_corpus(sys.argv[1] if len(sys.argv) > 1 else "corpus")
    print("corpus written")
