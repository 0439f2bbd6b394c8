"""Adequate-state machinery on signed plane maps.

Everything here runs on the Tait-graph side of the dictionary: a state of
the diagram corresponds to the edge subset collecting positive A-resolved
and negative B-resolved crossings, and the diagram is adequate with respect
to the state exactly when that subset restricts without bridges and
contracts without loops.  Each adequate subset carries a nonvanishing
product of one-variable Tutte specializations, these products sum to the
diagonal Tutte polynomial of the whole graph, and their count is squeezed
between 2 and the spanning-tree count.  The enumeration below leans on all
three facts: the scan finds the subsets, the products certify them, and the
diagonal sum certifies completeness of the scan.

Homogeneous adequacy adds sign-purity constraints: per component of the
restriction, per bounded face of the embedded restriction, and in its
unbounded region.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from ._scan import adequate_subset_masks, adequate_subsets_pruned
from .bipoly import BiPoly
from .diagram import LinkDiagram, State, checkerboard, classify, tait
from .sgraph import (
    DisconnectedError,
    SignedMap,
    classify_edges,
    components,
    contract,
    face_of_half,
    faces,
    is_connected,
    label_sort_key,
    restrict,
)
from .tutte import CapExceededError, TutteEngine

__all__ = [
    "AdequacyReport",
    "StateRecord",
    "VerificationError",
    "adequate_by_partition",
    "adequacy_polynomial",
    "state_from_partition",
    "enumerate_adequate",
    "enumerate_homogeneous",
    "ab_adequacy",
    "homogeneous_adequate",
    "diagram_report",
    "report_to_json",
    "report_to_csv",
]

DEFAULT_MAX_EDGES = 24


class VerificationError(RuntimeError):
    """The state-sum identity failed; indicates an internal bug."""


def _require_connected(g: SignedMap) -> None:
    if not is_connected(g):
        raise DisconnectedError("operation requires a connected graph")


def adequate_by_partition(g: SignedMap, edge_subset: Iterable) -> bool:
    """Partition test: the restriction to ``edge_subset`` has no bridges and the
    contraction of ``edge_subset`` has no loops.

    Valid for non-reduced inputs too; on reduced diagrams it coincides with
    the cycle/endpoint formulation (the suite asserts the coincidence).
    """
    _require_connected(g)
    if g.n_edges == 0:
        raise ValueError("graph must have at least one edge")
    edge_subset = g.check_edge_set(edge_subset)
    bridges, _ = classify_edges(restrict(g, edge_subset))
    if bridges:
        return False
    contracted = contract(g, edge_subset)
    return not any(contracted.is_loop(lab) for lab in contracted.labels())


def adequacy_polynomial(g: SignedMap, edge_subset: Iterable,
                        engine: TutteEngine | None = None) -> BiPoly:
    """Product of the restriction polynomial at x=0 with the contraction
    polynomial at y=0; univariate in t, nonzero exactly on adequate subsets.
    """
    _require_connected(g)
    if g.n_edges == 0:
        raise ValueError("graph must have at least one edge")
    edge_subset = g.check_edge_set(edge_subset)
    eng = engine or TutteEngine()
    left = eng.tutte(restrict(g, edge_subset)).specialize("x_to_zero")
    right = eng.tutte(contract(g, edge_subset)).specialize("y_to_zero")
    return left * right


def state_from_partition(g: SignedMap, edge_subset: Iterable,
                         d: LinkDiagram | None = None,
                         corr: Mapping | None = None) -> State:
    """The unique state whose edge subset is ``edge_subset``.

    Positive edges inside are A-resolved, negative inside B-resolved,
    positive outside B-resolved, negative outside A-resolved.  When the
    diagram and correspondence are supplied the result is keyed by crossing
    and the round trip through ``classify`` is asserted.
    """
    edge_subset = g.check_edge_set(edge_subset)
    by_label = {}
    for lab in g.labels():
        positive = g.sign(lab) > 0
        inside = lab in edge_subset
        by_label[lab] = "A" if positive == inside else "B"
    if d is None:
        return State.from_dict(by_label)
    assert corr is not None, "corr is required along with the diagram"
    state = State.from_dict({ci: by_label[corr[ci]] for ci in range(d.n_crossings)})
    back = classify(d, g, corr, state)
    assert back.selected == edge_subset, "partition/state round trip failed"
    return state


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateRecord:
    state: State
    edge_subset: frozenset
    poly: BiPoly
    homogeneous: bool | None = None


@dataclass(frozen=True)
class AdequacyReport:
    states: tuple[StateRecord, ...]
    state_sum: BiPoly
    diagonal: BiPoly
    tree_count: int
    verified: bool

    @property
    def count(self) -> int:
        return len(self.states)

    @property
    def tree_gap(self) -> int:
        """Slack in the spanning-tree upper bound; no structural claim intended."""
        return self.tree_count - self.count


def _edge_endpoint_arrays(g: SignedMap) -> tuple[list, list[int], list[int]]:
    labels = g.sorted_labels()
    eu, ev = [], []
    for lab in labels:
        u, v = g.endpoints(lab)
        eu.append(u)
        ev.append(v)
    return labels, eu, ev


def enumerate_adequate(
    g: SignedMap,
    engine: TutteEngine | None = None,
    max_edges: int = DEFAULT_MAX_EDGES,
    strategy: str = "scan",
    require_verified: bool = True,
    with_homogeneous: bool = False,
) -> AdequacyReport:
    """All adequate edge subsets with their polynomials, verified against the
    diagonal Tutte polynomial.

    Records are ordered by subset size then lexicographic edge labels, so
    rendered reports are byte-stable.  ``strategy`` picks the full mask scan
    (kernel-accelerated when worthwhile) or the branch-pruned search.
    """
    _require_connected(g)
    if g.n_edges == 0:
        raise ValueError("graph must have at least one edge")
    if g.n_edges > max_edges:
        raise CapExceededError(
            f"enumeration capped at {max_edges} edges, got {g.n_edges}"
        )
    if strategy not in ("scan", "pruned"):
        raise ValueError("strategy must be 'scan' or 'pruned'")

    labels, eu, ev = _edge_endpoint_arrays(g)
    if strategy == "scan":
        masks = adequate_subset_masks(g.n_vertices, eu, ev)
    else:
        masks = adequate_subsets_pruned(g.n_vertices, eu, ev)

    eng = engine or TutteEngine()
    records = []
    total = BiPoly.zero()
    for mask in masks:
        subset = frozenset(labels[i] for i in range(len(labels)) if mask >> i & 1)
        poly = adequacy_polynomial(g, subset, eng)
        if poly.is_zero():
            raise VerificationError(
                f"subset {sorted(subset, key=label_sort_key)} passed the partition "
                "test but its polynomial vanishes"
            )
        flag = homogeneous_adequate(g, subset) if with_homogeneous else None
        records.append(StateRecord(state_from_partition(g, subset), subset, poly, flag))
        total = total + poly

    diagonal = eng.tutte(g).specialize("x_equals_y")
    verified = total == diagonal
    if require_verified and not verified:
        raise VerificationError(
            f"state sum {total.render_t()} differs from the diagonal {diagonal.render_t()}"
        )
    records.sort(key=lambda r: (len(r.edge_subset), tuple(sorted(map(label_sort_key, r.edge_subset)))))
    return AdequacyReport(
        states=tuple(records),
        state_sum=total,
        diagonal=diagonal,
        tree_count=diagonal.eval(1, 1),
        verified=verified,
    )


def enumerate_homogeneous(
    g: SignedMap,
    engine: TutteEngine | None = None,
    max_edges: int = DEFAULT_MAX_EDGES,
    strategy: str = "scan",
) -> AdequacyReport:
    """Adequate states filtered down to the homogeneously adequate ones.

    The verification fields still describe the full enumeration (the sum
    identity holds over all adequate states, not the filtered subset).
    """
    full = enumerate_adequate(g, engine, max_edges, strategy, with_homogeneous=True)
    kept = tuple(r for r in full.states if r.homogeneous)
    return replace(full, states=kept)


def ab_adequacy(g: SignedMap, engine: TutteEngine | None = None
                ) -> tuple[bool, bool, BiPoly, BiPoly]:
    """(A-adequate, B-adequate, plus-polynomial, minus-polynomial).

    The boolean answers come from the partition test and must agree with
    nonvanishing of the corresponding polynomial; disagreement would be an
    internal bug, so it is asserted.
    """
    eng = engine or TutteEngine()
    e_plus = g.positive_labels()
    e_minus = g.negative_labels()
    poly_plus = adequacy_polynomial(g, e_plus, eng)
    poly_minus = adequacy_polynomial(g, e_minus, eng)
    a_ok = adequate_by_partition(g, e_plus)
    b_ok = adequate_by_partition(g, e_minus)
    assert a_ok == (not poly_plus.is_zero()), "partition test vs polynomial mismatch (+)"
    assert b_ok == (not poly_minus.is_zero()), "partition test vs polynomial mismatch (-)"
    return a_ok, b_ok, poly_plus, poly_minus


# ---------------------------------------------------------------------------
# homogeneous adequacy
# ---------------------------------------------------------------------------


def homogeneous_adequate(g: SignedMap, edge_subset: Iterable) -> bool:
    """Sign-purity conditions on top of adequacy.

    * each edge-bearing component of the restriction is sign-pure;
    * complement edges grouped by the face of the embedded restriction that
      contains them are sign-pure per bounded face and in the unbounded one.

    Complement edges are located by merging the faces of ``g`` across every
    deleted edge: after the merge, a deleted edge's two former sides name
    the face of the restriction containing it.  Requires the map to carry
    an outer-face marker and to be reduced (no bridges, no loops).
    """
    _require_connected(g)
    edge_subset = g.check_edge_set(edge_subset)
    bridges, loops = classify_edges(g)
    if bridges or loops:
        raise ValueError("homogeneity conditions require a reduced graph")
    if g.outer_face is None:
        raise ValueError("homogeneity needs an outer-face marker on the graph")

    # condition on components of the restriction
    sub = restrict(g, edge_subset)
    _, assignment = components(sub)
    comp_signs: dict[int, set[int]] = {}
    for lab in edge_subset:
        cu = assignment[g.vertex_of_half(g.edge(lab).half_a)]
        comp_signs.setdefault(cu, set()).add(g.sign(lab))
    if any(len(s) > 1 for s in comp_signs.values()):
        return False

    # face-merge: deleting an edge fuses the two regions flanking it
    walks = faces(g)
    foh = face_of_half(g)
    parent = list(range(len(walks)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    complement = g.labels() - edge_subset
    for lab in complement:
        e = g.edge(lab)
        ra, rb = find(foh[e.half_a]), find(foh[e.half_b])
        if ra != rb:
            parent[rb] = ra

    region_signs: dict[int, set[int]] = {}
    for lab in complement:
        e = g.edge(lab)
        region_signs.setdefault(find(foh[e.half_a]), set()).add(g.sign(lab))
    # sign-purity inside every bounded region and in the unbounded one alike
    return all(len(s) == 1 for s in region_signs.values())


# ---------------------------------------------------------------------------
# diagram-level driver
# ---------------------------------------------------------------------------


def diagram_report(
    d: LinkDiagram,
    engine: TutteEngine | None = None,
    max_edges: int = DEFAULT_MAX_EDGES,
    strategy: str = "scan",
    with_homogeneous: bool = False,
) -> AdequacyReport:
    """Enumerate a colored diagram's adequate states.

    Homogeneity flags are always evaluated on the canonically colored Tait
    graph (states are coloring-independent, but the unbounded face is only a
    face of the graph when the unbounded region is white).
    """
    g, corr = tait(d)
    report = enumerate_adequate(g, engine, max_edges, strategy)
    if not with_homogeneous:
        return report
    if g.outer_face is not None:
        flagged = enumerate_adequate(g, engine, max_edges, strategy, with_homogeneous=True)
        return flagged
    # swapped coloring: recolor canonically, map each state across
    canon = checkerboard(LinkDiagram(d.crossings, d.outer_arc), "canonical")
    gc, corrc = tait(canon)
    flagged_records = []
    for rec in report.states:
        part = classify(canon, gc, corrc, rec.state)
        flag = homogeneous_adequate(gc, part.selected)
        flagged_records.append(replace(rec, homogeneous=flag))
    return replace(report, states=tuple(flagged_records))


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _sorted_labels(edge_subset: frozenset) -> list:
    return sorted(edge_subset, key=label_sort_key)


def report_to_json(report: AdequacyReport) -> str:
    doc = {
        "states": [
            {
                "state": {str(k): v for k, v in rec.state.items},
                "edge_subset": [str(x) for x in _sorted_labels(rec.edge_subset)],
                "poly_coeffs": rec.poly.t_coeffs(),
                **({"homogeneous": rec.homogeneous} if rec.homogeneous is not None else {}),
            }
            for rec in report.states
        ],
        "count": report.count,
        "state_sum_coeffs": report.state_sum.t_coeffs(),
        "diagonal_coeffs": report.diagonal.t_coeffs(),
        "spanning_trees": report.tree_count,
        "verified": report.verified,
    }
    return json.dumps(doc, indent=2)


def report_to_csv(report: AdequacyReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    has_flags = any(rec.homogeneous is not None for rec in report.states)
    header = ["state", "edge_subset", "polynomial"]
    if has_flags:
        header.append("homogeneous")
    writer.writerow(header)
    for rec in report.states:
        row = [
            str(rec.state),
            ";".join(str(x) for x in _sorted_labels(rec.edge_subset)),
            rec.poly.render_t(),
        ]
        if has_flags:
            row.append("" if rec.homogeneous is None else str(rec.homogeneous).lower())
        writer.writerow(row)
    return buf.getvalue()
