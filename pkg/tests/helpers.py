"""Shared test machinery: diagram builders, generators, independent oracles.

The medial construction here inverts the Tait correspondence: given a signed
plane map it produces a PD code whose canonically colored Tait graph is
isomorphic to the input.  It exists only for building test inputs; the
package under test never consumes it.
"""

from __future__ import annotations

import random
from dataclasses import replace

from taitstates.diagram import (
    LinkDiagram,
    State,
    checkerboard,
    projection_map,
    segment_self_touch,
    tait,
)
from taitstates.sgraph import SignedMap, faces, face_of_half, graphs_isomorphic


# ---------------------------------------------------------------------------
# medial construction: signed plane map -> PD code
# ---------------------------------------------------------------------------


def medial_pd(g: SignedMap) -> LinkDiagram:
    """PD diagram whose Tait graph (under the right coloring) is ``g``.

    Crossing i corresponds to ``g.edges[i]``.  Arc labels are renumbered
    1..2n along oriented strands so the output looks like a knot-table code.
    """
    # one arc per corner (vertex, rotation position)
    arc_ids: dict[tuple[int, int], int] = {}
    for v, rot in enumerate(g.vertices):
        for i in range(len(rot)):
            arc_ids[(v, i)] = len(arc_ids) + 1

    def corner(v: int, i: int) -> int:
        return arc_ids[(v, i % len(g.vertices[v]))]

    crossings: list[tuple[int, int, int, int]] = []
    for e in g.edges:
        u = g.vertex_of_half(e.half_a)
        w = g.vertex_of_half(e.half_b)
        p1 = g.vertices[u].index(e.half_a)
        p2 = g.vertices[w].index(e.half_b)
        e1 = corner(u, p1 - 1)
        e2 = corner(u, p1)
        e3 = corner(w, p2 - 1)
        e4 = corner(w, p2)
        # cyclic slot order (e1, e2, e3, e4): quadrants (e1,e2)=black u side,
        # (e3,e4)=black w side.  Positive edges put the blacks in the
        # A-channel (q1, q3), so the listing starts one slot later.
        if e.sign > 0:
            crossings.append((e2, e3, e4, e1))
        else:
            crossings.append((e1, e2, e3, e4))

    return _renumber_arcs(LinkDiagram(tuple(crossings)))


def _renumber_arcs(d: LinkDiagram) -> LinkDiagram:
    """Renumber arcs 1..2n along oriented strands, under-in at slot 0."""
    n = d.n_crossings
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, cr in enumerate(d.crossings):
        for k, a in enumerate(cr):
            occ.setdefault(a, []).append((ci, k))

    # orient strands: entering slot k leaves via slot (k+2) % 4
    visited: set[tuple[int, int]] = set()
    new_label: dict[int, int] = {}
    next_label = 1
    under_in: dict[int, int] = {}  # crossing -> slot where an oriented strand enters under
    for a0 in sorted(occ):
        if a0 in new_label:
            continue
        # walk the strand containing arc a0, in the direction that traverses
        # its first occurrence "into" the crossing
        arc = a0
        entry = occ[a0][0]
        while True:
            if arc not in new_label:
                new_label[arc] = next_label
                next_label += 1
            ci, k = entry
            if (ci, k) in visited:
                break
            visited.add((ci, k))
            if k in (0, 2):
                under_in[ci] = k
            out_k = (k + 2) % 4
            out_arc = d.crossings[ci][out_k]
            nxt = [(cj, m) for (cj, m) in occ[out_arc] if (cj, m) != (ci, out_k)]
            arc = out_arc
            entry = nxt[0]

    rotated = []
    for ci, cr in enumerate(d.crossings):
        r = under_in.get(ci, 0) if under_in.get(ci, 0) in (0, 2) else 0
        cr2 = tuple(new_label[cr[(r + i) % 4]] for i in range(4))
        rotated.append(cr2)
    return LinkDiagram(tuple(rotated), outer_arc=None)


def diagram_for_graph(g: SignedMap, require_outer_white: bool = True) -> LinkDiagram:
    """Build a colored diagram whose canonical Tait graph is signed-isomorphic to ``g``.

    Scans outer_arc choices deterministically until the canonical coloring
    reproduces ``g``; raises if none does (which would mean the medial
    emitter broke).
    """
    d0 = medial_pd(g)
    for arc in d0.arcs():
        d = checkerboard(replace(d0, outer_arc=arc), "canonical")
        t, _ = tait(d)
        if t.n_vertices == g.n_vertices and graphs_isomorphic(t, g, respect_signs=True):
            if not require_outer_white or t.outer_face is not None:
                return d
    raise AssertionError("no outer_arc choice reproduces the input graph")


# ---------------------------------------------------------------------------
# standard families
# ---------------------------------------------------------------------------


def cycle_graph(n: int, sign: int = +1) -> SignedMap:
    verts = []
    for v in range(n):
        prev = (v - 1) % n
        verts.append((2 * prev + 1, 2 * v))
    edges = [(2 * i, 2 * i + 1, sign, i) for i in range(n)]
    return SignedMap(verts, edges)


def double_edge_path(n: int, sign: int = +1) -> SignedMap:
    """Path of n double edges: n+1 vertices, consecutive pairs doubly joined."""
    verts: list[list[int]] = [[] for _ in range(n + 1)]
    edges = []
    h = 0
    for i in range(n):
        # two parallel edges between i and i+1; nested rotations keep it plane
        e1 = (h, h + 1, sign, 2 * i)
        e2 = (h + 2, h + 3, sign, 2 * i + 1)
        verts[i].extend([h, h + 2])
        verts[i + 1].extend([h + 3, h + 1])
        edges.append(e1)
        edges.append(e2)
        h += 4
    return SignedMap([tuple(v) for v in verts], edges)


def torus2n_diagram(n: int) -> LinkDiagram:
    """Standard (2,n) torus link diagram, canonically colored, Tait graph C_n."""
    return diagram_for_graph(cycle_graph(n))


def hopf_sum_diagram(n: int) -> LinkDiagram:
    """Connect sum of n Hopf diagrams: Tait graph is a path of n double edges."""
    return diagram_for_graph(double_edge_path(n))


# ---------------------------------------------------------------------------
# random generators (seeded, deterministic)
# ---------------------------------------------------------------------------


def random_planar_map(n_edges: int, rng: random.Random, signed: bool = True,
                      allow_loops: bool = True) -> SignedMap:
    """Random connected plane map grown by inserting edges into face corners.

    Each insertion joins two corners of one face (or sprouts a leaf vertex
    into a face), which preserves planarity and connectivity by
    construction.  A "gap" (v, i) is the slot before rotation position i.
    """
    rotations: list[list[int]] = [[]]
    edges: list[tuple[int, int, int, object]] = []
    h = 0

    for step in range(n_edges):
        sign = rng.choice([+1, -1]) if signed else +1
        label = step
        if not edges:
            if allow_loops and rng.random() < 0.25:
                rotations[0] = [h, h + 1]
            else:
                rotations[0] = [h]
                rotations.append([h + 1])
            edges.append((h, h + 1, sign, label))
            h += 2
            continue

        m = SignedMap([tuple(r) for r in rotations], edges)
        foh = face_of_half(m)
        gaps_by_face: dict[int, list[tuple[int, int]]] = {}
        for v, rot in enumerate(rotations):
            for i in range(len(rot)):
                # the gap before position i opens into the face entered via rot[i]
                gaps_by_face.setdefault(foh[rot[i]], []).append((v, i))
        face = rng.choice(sorted(gaps_by_face))
        gaps = gaps_by_face[face]

        sprout = rng.random() < 0.35
        if not sprout:
            v1, i1 = rng.choice(gaps)
            v2, i2 = rng.choice(gaps)
            if v1 == v2 and not allow_loops:
                others = [(v, i) for (v, i) in gaps if v != v1]
                if others:
                    v2, i2 = rng.choice(others)
                else:
                    sprout = True
            if not sprout:
                if v1 == v2:
                    # insert at the larger index first so the smaller stays valid
                    if i1 < i2:
                        rotations[v1].insert(i2, h + 1)
                        rotations[v1].insert(i1, h)
                    else:
                        rotations[v1].insert(i1, h)
                        rotations[v1].insert(i2, h + 1)
                else:
                    rotations[v1].insert(i1, h)
                    rotations[v2].insert(i2, h + 1)
        if sprout:
            v1, i1 = rng.choice(gaps)
            rotations[v1].insert(i1, h)
            rotations.append([h + 1])
        edges.append((h, h + 1, sign, label))
        h += 2

    return SignedMap([tuple(r) for r in rotations], edges)


def random_bridgeless_map(n_edges: int, rng: random.Random, signed: bool = True) -> SignedMap:
    """Random loopless bridgeless plane map: a cycle plus chord insertions.

    Chords join corners of one face at distinct vertices, so every edge ends
    up on a cycle and no loops appear; the result is always reduced in the
    Tait sense.
    """
    if n_edges < 2:
        raise ValueError("need at least 2 edges for a bridgeless map")
    k = rng.randint(2, n_edges)
    base = cycle_graph(k)
    rotations = [list(rot) for rot in base.vertices]
    edges = [(e.half_a, e.half_b, rng.choice([+1, -1]) if signed else +1, e.label)
             for e in base.edges]
    h = 2 * k
    for step in range(k, n_edges):
        m = SignedMap([tuple(r) for r in rotations], edges)
        foh = face_of_half(m)
        gaps_by_face: dict[int, list[tuple[int, int]]] = {}
        for v, rot in enumerate(rotations):
            for i in range(len(rot)):
                gaps_by_face.setdefault(foh[rot[i]], []).append((v, i))
        candidates = [f for f in sorted(gaps_by_face)
                      if len({v for v, _ in gaps_by_face[f]}) >= 2]
        face = rng.choice(candidates)
        gaps = gaps_by_face[face]
        v1, i1 = rng.choice(gaps)
        v2, i2 = rng.choice([(v, i) for (v, i) in gaps if v != v1])
        rotations[v1].insert(i1, h)
        rotations[v2].insert(i2, h + 1)
        sign = rng.choice([+1, -1]) if signed else +1
        edges.append((h, h + 1, sign, step))
        h += 2
    return SignedMap([tuple(r) for r in rotations], edges)


def random_diagram(n_crossings: int, rng: random.Random, reduced_only: bool = False,
                   max_tries: int = 200) -> LinkDiagram:
    """Random connected colored diagram built through the Tait bijection."""
    from taitstates.diagram import is_reduced
    from taitstates.sgraph import classify_edges

    for _ in range(max_tries):
        if reduced_only:
            g = random_bridgeless_map(max(2, n_crossings), rng)
        else:
            g = random_planar_map(n_crossings, rng)
        if reduced_only:
            bridges, loops = classify_edges(g)
            if bridges or loops:
                continue
        d0 = medial_pd(g)
        arc = min(d0.arcs())
        d = checkerboard(replace(d0, outer_arc=arc), "canonical")
        if reduced_only and not is_reduced(d):
            continue
        return d
    raise AssertionError("generator failed to produce a diagram")


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def brute_spanning_tree_count(g: SignedMap) -> int:
    """Count spanning trees by exhausting edge subsets of size v-1."""
    from itertools import combinations

    n = g.n_vertices
    labels = [e.label for e in g.edges if not g.is_loop(e.label)]
    ends = {lab: g.endpoints(lab) for lab in labels}
    count = 0
    if n == 1:
        return 1
    for subset in combinations(labels, n - 1):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for lab in subset:
            u, v = ends[lab]
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[rv] = ru
        if ok:
            count += 1
    return count


def homogeneity_oracle(d: LinkDiagram, s: State) -> bool:
    """Definitional check: no complementary region of the state circles
    contains both A- and B-segments.

    Regions of the resolved diagram are projection regions merged across the
    open channel of each resolution.
    """
    proj = projection_map(d)
    walks = faces(proj)
    foh = face_of_half(proj)
    parent = list(range(len(walks)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    def corner_face(ci, k):
        return foh[4 * ci + (k + 1) % 4]

    seg_region: list[tuple[int, str]] = []
    for ci in range(d.n_crossings):
        res = s.resolution(ci)
        if res == "A":
            f1, f2 = corner_face(ci, 1), corner_face(ci, 3)
        else:
            f1, f2 = corner_face(ci, 0), corner_face(ci, 2)
        union(f1, f2)
        seg_region.append((f1, res))

    by_region: dict[int, set[str]] = {}
    for f, res in seg_region:
        by_region.setdefault(find(f), set()).add(res)
    return all(len(kinds) == 1 for kinds in by_region.values())


def adequacy_oracle(d: LinkDiagram, s: State) -> bool:
    return not segment_self_touch(d, s)


def all_states(d: LinkDiagram):
    n = d.n_crossings
    for mask in range(1 << n):
        yield State.from_dict({ci: ("A" if mask >> ci & 1 else "B") for ci in range(n)})


def crossing_change(d: LinkDiagram, ci: int) -> LinkDiagram:
    """Change the crossing type of a single crossing."""
    cr = list(d.crossings)
    a, b, c, dd = cr[ci]
    cr[ci] = (b, c, dd, a)
    return LinkDiagram(tuple(cr), d.outer_arc, d.swap_colors)
