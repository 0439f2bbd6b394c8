"""Signed multigraphs carried as combinatorial maps (rotation systems).

A ``SignedMap`` stores, for every vertex, the cyclic order of half-edge
identifiers around it, and for every edge the pair of half-edges it joins
plus a sign and a stable label.  Faces are recovered by rotation-and-pair
face tracing, so planar structure needs no coordinates.  Labels survive
restriction, deletion and contraction, which keeps the crossing-to-edge
correspondence of a Tait graph intact through graph surgery.

Maps are immutable values: every operation returns a new map.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Sequence

__all__ = [
    "Edge",
    "SignedMap",
    "UnknownEdgeError",
    "DisconnectedError",
    "restrict",
    "delete",
    "contract",
    "components",
    "is_connected",
    "classify_edges",
    "blocks",
    "faces",
    "face_of_half",
    "euler_genus_ok",
    "planar_dual",
    "cycle_membership",
    "flip_signs",
    "graphs_isomorphic",
    "label_sort_key",
    "to_json",
    "from_json",
]

Label = Hashable


class UnknownEdgeError(ValueError):
    """Raised when an edge set mentions a label the host map lacks."""


class DisconnectedError(ValueError):
    """Raised by operations that require a connected map."""


@dataclass(frozen=True)
class Edge:
    half_a: int
    half_b: int
    sign: int  # +1 or -1
    label: Label


def label_sort_key(label: Label):
    """Deterministic order for possibly mixed int/str labels."""
    if isinstance(label, bool):  # bools are ints; keep them distinct anyway
        return (2, str(label))
    if isinstance(label, int):
        return (0, label)
    return (1, str(label))


class SignedMap:
    """Immutable signed multigraph with a rotation system."""

    __slots__ = ("vertices", "edges", "outer_face", "outer_vertex",
                 "_half2vertex", "_half2edge", "_label2edge", "_faces")

    def __init__(
        self,
        vertices: Sequence[Sequence[int]],
        edges: Sequence[Edge | tuple],
        outer_face: int | None = None,
        outer_vertex: int | None = None,
    ):
        vtuple = tuple(tuple(rot) for rot in vertices)
        etuple = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)

        half2vertex: dict[int, int] = {}
        for vi, rot in enumerate(vtuple):
            for h in rot:
                if h in half2vertex:
                    raise ValueError(f"half-edge {h} appears in two rotations")
                half2vertex[h] = vi

        half2edge: dict[int, Edge] = {}
        label2edge: dict[Label, Edge] = {}
        for e in etuple:
            if e.sign not in (+1, -1):
                raise ValueError(f"edge {e.label!r} has sign {e.sign}")
            for h in (e.half_a, e.half_b):
                if h not in half2vertex:
                    raise ValueError(f"half-edge {h} of edge {e.label!r} not in any rotation")
                if h in half2edge:
                    raise ValueError(f"half-edge {h} appears in two edges")
                half2edge[h] = e
            if e.label in label2edge:
                raise ValueError(f"duplicate edge label {e.label!r}")
            label2edge[e.label] = e
        if len(half2edge) != len(half2vertex):
            missing = set(half2vertex) - set(half2edge)
            raise ValueError(f"half-edges {sorted(missing)} belong to no edge")

        self.vertices = vtuple
        self.edges = etuple
        self.outer_face = outer_face
        self.outer_vertex = outer_vertex
        self._half2vertex = half2vertex
        self._half2edge = half2edge
        self._label2edge = label2edge
        self._faces = None

    # -- basic queries -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def labels(self) -> frozenset:
        return frozenset(self._label2edge)

    def sorted_labels(self) -> list:
        return sorted(self._label2edge, key=label_sort_key)

    def edge(self, label: Label) -> Edge:
        try:
            return self._label2edge[label]
        except KeyError:
            raise UnknownEdgeError(f"unknown edge label {label!r}") from None

    def vertex_of_half(self, h: int) -> int:
        return self._half2vertex[h]

    def edge_of_half(self, h: int) -> Edge:
        return self._half2edge[h]

    def partner(self, h: int) -> int:
        e = self._half2edge[h]
        return e.half_b if h == e.half_a else e.half_a

    def endpoints(self, label: Label) -> tuple[int, int]:
        e = self.edge(label)
        return (self._half2vertex[e.half_a], self._half2vertex[e.half_b])

    def is_loop(self, label: Label) -> bool:
        u, v = self.endpoints(label)
        return u == v

    def sign(self, label: Label) -> int:
        return self.edge(label).sign

    def positive_labels(self) -> frozenset:
        return frozenset(e.label for e in self.edges if e.sign > 0)

    def negative_labels(self) -> frozenset:
        return frozenset(e.label for e in self.edges if e.sign < 0)

    def check_edge_set(self, labels: Iterable[Label]) -> frozenset:
        out = frozenset(labels)
        for lab in out:
            if lab not in self._label2edge:
                raise UnknownEdgeError(f"unknown edge label {lab!r}")
        return out

    def next_at_vertex(self, h: int) -> int:
        rot = self.vertices[self._half2vertex[h]]
        i = rot.index(h)
        return rot[(i + 1) % len(rot)]

    # -- equality ------------------------------------------------------

    def _key(self):
        return (self.vertices, self.edges, self.outer_face, self.outer_vertex)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedMap):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"SignedMap(v={self.n_vertices}, e={self.n_edges})"

    # -- structure sharing helpers --------------------------------------

    def with_markers(self, outer_face: int | None = None, outer_vertex: int | None = None) -> "SignedMap":
        return SignedMap(self.vertices, self.edges, outer_face, outer_vertex)


# ---------------------------------------------------------------------------
# surgery: restrict / delete / contract
# ---------------------------------------------------------------------------


def restrict(g: SignedMap, keep: Iterable[Label]) -> SignedMap:
    """Spanning subgraph on the given edges; rotations inherit the embedding."""
    keep = g.check_edge_set(keep)
    kept_halves = set()
    new_edges = []
    for e in g.edges:
        if e.label in keep:
            new_edges.append(e)
            kept_halves.add(e.half_a)
            kept_halves.add(e.half_b)
    new_vertices = [tuple(h for h in rot if h in kept_halves) for rot in g.vertices]
    return SignedMap(new_vertices, new_edges)


def delete(g: SignedMap, drop: Iterable[Label]) -> SignedMap:
    drop = g.check_edge_set(drop)
    return restrict(g, g.labels() - drop)


def contract(g: SignedMap, labels: Iterable[Label]) -> SignedMap:
    """Contract the given edges one at a time (loops contract as deletions).

    A non-loop contraction merges the two endpoint rotations by splicing at
    the contracted edge's half-edge positions, which keeps the embedding
    coherent (checked by the Euler-formula invariant in the test suite).
    """
    todo = sorted(g.check_edge_set(labels), key=label_sort_key)
    vertices: list[list[int] | None] = [list(rot) for rot in g.vertices]
    half2vertex = dict(g._half2vertex)

    for lab in todo:
        e = g.edge(lab)
        u = half2vertex[e.half_a]
        w = half2vertex[e.half_b]
        if u == w:
            vertices[u] = [h for h in vertices[u] if h not in (e.half_a, e.half_b)]
            continue
        rot_u = vertices[u]
        rot_w = vertices[w]
        ia = rot_u.index(e.half_a)
        ib = rot_w.index(e.half_b)
        merged = rot_u[ia + 1:] + rot_u[:ia] + rot_w[ib + 1:] + rot_w[:ib]
        vertices[u] = merged
        vertices[w] = None
        for h in rot_w[ib + 1:] + rot_w[:ib]:
            half2vertex[h] = u

    contracted = set(todo)
    new_vertices = [rot for rot in vertices if rot is not None]
    new_edges = [e for e in g.edges if e.label not in contracted]
    return SignedMap(new_vertices, new_edges)


# ---------------------------------------------------------------------------
# structural queries
# ---------------------------------------------------------------------------


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def components(g: SignedMap) -> tuple[int, tuple[int, ...]]:
    """Component count and a vertex -> component-id assignment."""
    dsu = _DSU(g.n_vertices)
    for e in g.edges:
        dsu.union(g.vertex_of_half(e.half_a), g.vertex_of_half(e.half_b))
    roots: dict[int, int] = {}
    assignment = []
    for v in range(g.n_vertices):
        r = dsu.find(v)
        roots.setdefault(r, len(roots))
        assignment.append(roots[r])
    return len(roots), tuple(assignment)


def is_connected(g: SignedMap) -> bool:
    return g.n_vertices <= 1 or components(g)[0] == 1


def _adjacency(g: SignedMap) -> list[list[tuple[int, int]]]:
    """vertex -> list of (neighbor, edge_index), loops listed twice."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n_vertices)]
    for idx, e in enumerate(g.edges):
        u = g.vertex_of_half(e.half_a)
        v = g.vertex_of_half(e.half_b)
        adj[u].append((v, idx))
        if u != v:
            adj[v].append((u, idx))
        else:
            adj[u].append((v, idx))
    return adj


def classify_edges(g: SignedMap) -> tuple[frozenset, frozenset]:
    """(bridges, loops) as label sets. Loops are never bridges."""
    loops = frozenset(e.label for e in g.edges if g.is_loop(e.label))
    n = g.n_vertices
    adj = _adjacency(g)
    disc = [-1] * n
    low = [0] * n
    bridges: set[Label] = set()
    timer = 0
    for start in range(n):
        if disc[start] != -1:
            continue
        stack: list[tuple[int, int, int]] = [(start, -1, 0)]  # vertex, parent edge idx, adj ptr
        while stack:
            v, pedge, ptr = stack[-1]
            if ptr == 0:
                disc[v] = low[v] = timer
                timer += 1
            if ptr < len(adj[v]):
                stack[-1] = (v, pedge, ptr + 1)
                w, eidx = adj[v][ptr]
                if eidx == pedge or w == v:
                    continue
                if disc[w] == -1:
                    stack.append((w, eidx, 0))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > disc[pv]:
                        bridges.add(g.edges[pedge].label)
    return frozenset(bridges), loops


def cycle_membership(g: SignedMap) -> dict[Label, bool]:
    """edge -> True iff the edge lies on some cycle (equivalently: not a bridge)."""
    bridges, _ = classify_edges(g)
    return {e.label: e.label not in bridges for e in g.edges}


def blocks(g: SignedMap) -> tuple[SignedMap, ...]:
    """Block decomposition: isolated vertices, bridges, loops, 2-connected pieces."""
    n = g.n_vertices
    adj = _adjacency(g)
    disc = [-1] * n
    low = [0] * n
    timer = 0
    edge_stack: list[int] = []
    block_edge_sets: list[list[int]] = []
    seen_edge = [False] * g.n_edges

    for start in range(n):
        if disc[start] != -1:
            continue
        stack: list[tuple[int, int, int]] = [(start, -1, 0)]
        while stack:
            v, pedge, ptr = stack[-1]
            if ptr == 0:
                disc[v] = low[v] = timer
                timer += 1
            if ptr < len(adj[v]):
                stack[-1] = (v, pedge, ptr + 1)
                w, eidx = adj[v][ptr]
                if eidx == pedge:
                    continue
                if w == v:
                    if not seen_edge[eidx]:
                        seen_edge[eidx] = True
                        block_edge_sets.append([eidx])  # a loop is its own block
                    continue
                if seen_edge[eidx]:
                    continue
                seen_edge[eidx] = True
                if disc[w] == -1:
                    edge_stack.append(eidx)
                    stack.append((w, eidx, 0))
                else:
                    edge_stack.append(eidx)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] >= disc[pv]:
                        # cut point (or root child): pop one block
                        blk: list[int] = []
                        while True:
                            eidx = edge_stack.pop()
                            blk.append(eidx)
                            if eidx == pedge:
                                break
                        block_edge_sets.append(blk)

    out: list[SignedMap] = []
    used_vertices: set[int] = set()
    for blk in block_edge_sets:
        labels = {g.edges[i].label for i in blk}
        sub = restrict(g, labels)
        keep_v = set()
        for i in blk:
            e = g.edges[i]
            keep_v.add(g.vertex_of_half(e.half_a))
            keep_v.add(g.vertex_of_half(e.half_b))
        used_vertices |= keep_v
        out.append(SignedMap([sub.vertices[v] for v in sorted(keep_v)],
                             [g.edges[i] for i in blk]))
    for v in range(n):
        if not adj[v] and v not in used_vertices:
            out.append(SignedMap([()], []))  # isolated vertex block
    return tuple(out)


# ---------------------------------------------------------------------------
# faces and duality
# ---------------------------------------------------------------------------


def faces(g: SignedMap) -> tuple[tuple[int, ...], ...]:
    """Face walks as half-edge cycles (orbits of h -> next-at-vertex(partner(h))).

    Isolated vertices contribute no walk.  The result is cached on the map.
    """
    if g._faces is not None:
        return g._faces
    seen: set[int] = set()
    walks: list[tuple[int, ...]] = []
    for rot in g.vertices:
        for h0 in rot:
            if h0 in seen:
                continue
            walk = []
            h = h0
            while True:
                walk.append(h)
                seen.add(h)
                h = g.next_at_vertex(g.partner(h))
                if h == h0:
                    break
            walks.append(tuple(walk))
    g._faces = tuple(walks)
    return g._faces


def face_of_half(g: SignedMap) -> dict[int, int]:
    """half-edge -> index of the face walk containing it."""
    out: dict[int, int] = {}
    for fi, walk in enumerate(faces(g)):
        for h in walk:
            out[h] = fi
    return out


def euler_genus_ok(g: SignedMap) -> bool:
    """Every connected piece satisfies v - e + f == 2 on its own sphere.

    Per-component genus is nonnegative, so the summed relation
    v - e + f == 2k holds exactly when every piece is spherical.
    """
    k, _ = components(g)
    iso = sum(1 for rot in g.vertices if not rot)
    f = len(faces(g)) + iso  # an isolated vertex is a sphere with one face
    return g.n_vertices - g.n_edges + f == 2 * k


def planar_dual(g: SignedMap) -> SignedMap:
    """Faces become vertices; edges correspond bijectively, keeping sign and label."""
    if not is_connected(g):
        raise DisconnectedError("planar dual requires a connected map")
    walks = faces(g)
    if g.n_vertices - g.n_edges + len(walks) != 2:
        raise ValueError("map is not spherical; dual undefined")
    dual_vertices = [tuple(walk) for walk in walks]
    dual_edges = [Edge(e.half_a, e.half_b, e.sign, e.label) for e in g.edges]

    outer_face = None
    outer_vertex = None
    if g.outer_face is not None:
        fo = face_of_half(g)[g.outer_face]
        outer_vertex = fo
    if g.outer_vertex is not None:
        # any half-edge whose dual face corresponds to the marked vertex
        rot = g.vertices[g.outer_vertex]
        if rot:
            outer_face = rot[0]
    dual = SignedMap(dual_vertices, dual_edges, outer_face=outer_face, outer_vertex=outer_vertex)
    return dual


def flip_signs(g: SignedMap) -> SignedMap:
    return SignedMap(
        g.vertices,
        [Edge(e.half_a, e.half_b, -e.sign, e.label) for e in g.edges],
        g.outer_face,
        g.outer_vertex,
    )


# ---------------------------------------------------------------------------
# isomorphism (desk scale, brute force with degree refinement)
# ---------------------------------------------------------------------------


def _graph_profile(g: SignedMap, respect_signs: bool):
    n = g.n_vertices
    pairs: dict[tuple[int, int, int], int] = {}
    loops: dict[tuple[int, int], int] = {}
    for e in g.edges:
        u = g.vertex_of_half(e.half_a)
        v = g.vertex_of_half(e.half_b)
        s = e.sign if respect_signs else 0
        if u == v:
            loops[(u, s)] = loops.get((u, s), 0) + 1
        else:
            key = (min(u, v), max(u, v), s)
            pairs[key] = pairs.get(key, 0) + 1
    return n, pairs, loops


def graphs_isomorphic(g1: SignedMap, g2: SignedMap, respect_signs: bool = False) -> bool:
    """Abstract multigraph isomorphism by brute force (desk scale only)."""
    n1, pairs1, loops1 = _graph_profile(g1, respect_signs)
    n2, pairs2, loops2 = _graph_profile(g2, respect_signs)
    if n1 != n2 or g1.n_edges != g2.n_edges:
        return False

    def degree_sig(n, pairs, loops):
        deg = [0] * n
        for (u, v, _s), m in pairs.items():
            deg[u] += m
            deg[v] += m
        for (u, _s), m in loops.items():
            deg[u] += 2 * m
        return deg

    deg1 = degree_sig(n1, pairs1, loops1)
    deg2 = degree_sig(n2, pairs2, loops2)
    if sorted(deg1) != sorted(deg2):
        return False
    if n1 > 12:
        raise ValueError("isomorphism test capped at 12 vertices")

    # group candidate images by degree to cut the permutation space
    order = sorted(range(n1), key=lambda v: deg1[v])
    buckets: dict[int, list[int]] = {}
    for v in range(n2):
        buckets.setdefault(deg2[v], []).append(v)

    def backtrack(i: int, mapping: dict[int, int], used: set[int]) -> bool:
        if i == len(order):
            mapped_pairs: dict[tuple[int, int, int], int] = {}
            for (u, v, s), m in pairs1.items():
                a, b = mapping[u], mapping[v]
                mapped_pairs[(min(a, b), max(a, b), s)] = mapped_pairs.get((min(a, b), max(a, b), s), 0) + m
            if mapped_pairs != pairs2:
                return False
            mapped_loops: dict[tuple[int, int], int] = {}
            for (u, s), m in loops1.items():
                mapped_loops[(mapping[u], s)] = mapped_loops.get((mapping[u], s), 0) + m
            return mapped_loops == loops2
        v = order[i]
        for w in buckets.get(deg1[v], []):
            if w in used:
                continue
            mapping[v] = w
            used.add(w)
            if backtrack(i + 1, mapping, used):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return backtrack(0, {}, set())


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def to_json(g: SignedMap) -> str:
    doc: dict[str, Any] = {
        "vertices": [list(rot) for rot in g.vertices],
        "edges": [
            {"halves": [e.half_a, e.half_b], "sign": "+" if e.sign > 0 else "-", "label": e.label}
            for e in g.edges
        ],
    }
    if g.outer_face is not None:
        doc["outer_face"] = g.outer_face
    return json.dumps(doc, indent=2)


def from_json(text: str) -> SignedMap:
    doc = json.loads(text)
    try:
        vertices = doc["vertices"]
        edges = [
            Edge(e["halves"][0], e["halves"][1], +1 if e["sign"] == "+" else -1, e["label"])
            for e in doc["edges"]
        ]
    except (KeyError, IndexError, TypeError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    return SignedMap(vertices, edges, outer_face=doc.get("outer_face"))
