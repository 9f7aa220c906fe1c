"""Checkerboard polyhedral complex of a generalized augmented link, and the
plane multigraph obtained by crushing its shaded faces.

The complex is built from the *flat* picture: every half twist removed, the
knot strands drawn as disjoint nested loops in the plane (one pair per cap
column), and each crossing circle replaced by the vertical chord where its
disk meets the projection plane.  In that picture:

* white faces are the complementary regions of the chord diagram,
* each circle contributes two shaded faces (the two sides of its sliced
  disk), ideal (k+1)-gons whose vertices are the k strand segments beside
  the chord plus the circle's upper arc,
* edges are the chord segments, one copy per side, so every edge borders
  exactly one white and one shaded face,
* ideal vertices are the strand segments between consecutive chords and
  the circle arcs.

The corner unknot pierces the band rather than bounding a vertical disk;
its disk is not part of the shaded system here (the shaded count is two
per crossing circle), and its strand does not separate white faces.  Both
complementary-region counts (with and without it) are reported for
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, DiagramError

__all__ = [
    "CheckerboardComplex",
    "GammaGraph",
    "build_complex",
    "crush_to_gamma",
    "face_pairs_sharing",
    "complex_incidence_text",
    "gamma_dot",
]


# --------------------------------------------------------------------------
# A small plane-graph with explicit rotation systems.


class _PlaneGraph:
    def __init__(self):
        self.rot: dict[object, list] = {}  # node -> half-edge ids in ccw order
        self.edge_ends: dict[int, tuple] = {}  # edge id -> ((node, slot), (node, slot))
        self.edge_kind: dict[int, tuple] = {}
        self._next = 0

    def add_node(self, node, arity_hint=None):
        self.rot.setdefault(node, [])

    def add_edge(self, u, uslot, v, vslot, kind) -> int:
        """uslot/vslot are compass labels; rotation lists are filled later."""
        e = self._next
        self._next += 1
        self.edge_ends[e] = ((u, uslot), (v, vslot))
        self.edge_kind[e] = kind
        return e

    def finalize_rotations(self, order=("N", "W", "S", "E")):
        """Sort each node's half-edges by compass slot in ccw order."""
        slots: dict[object, dict[str, tuple]] = {}
        for e, ((u, us), (v, vs)) in self.edge_ends.items():
            slots.setdefault(u, {})[us] = (e, 0)
            slots.setdefault(v, {})[vs] = (e, 1)
        for node, by_slot in slots.items():
            self.rot[node] = [by_slot[s] for s in order if s in by_slot]

    def darts(self):
        for e in self.edge_ends:
            yield (e, 0)
            yield (e, 1)

    def head(self, dart):
        e, side = dart
        return self.edge_ends[e][1 - side][0]

    def faces(self) -> list[list]:
        """Face cycles: dart (e, side) means the edge traversed from
        endpoint[side] to endpoint[1-side]; next dart = rotation successor
        of the reversed dart at the head node."""
        index = {}
        for node, lst in self.rot.items():
            for i, (e, side) in enumerate(lst):
                index[(e, side)] = (node, i)
        out = []
        seen = set()
        for d in self.darts():
            if d in seen:
                continue
            cyc = []
            cur = d
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                e, side = cur
                head_end = (e, 1 - side)
                node, i = index[head_end]
                lst = self.rot[node]
                e2, side2 = lst[(i + 1) % len(lst)]
                cur = (e2, side2)
            out.append(cyc)
        return out


# --------------------------------------------------------------------------
# Complex data.


@dataclass(frozen=True)
class CheckerboardComplex:
    """Combinatorial checkerboard data of one of the two identical ideal
    polyhedra (the reflection gives the other)."""

    circles: tuple[str, ...]
    shaded_faces: tuple[tuple[str, str], ...]  # (circle, side) with side N|S
    ideal_vertices: tuple[object, ...]  # ('seg', loop, i) and ('arc', circle)
    edges: tuple[tuple[str, str, int], ...]  # (circle, side, segment index)
    white_count: int
    # incidences
    shaded_edges: dict  # (circle, side) -> tuple of edge ids
    edge_white: dict  # edge -> white face id
    shaded_vertices: dict  # (circle, side) -> tuple of ideal vertices
    white_vertices: dict  # white id -> frozenset of shaded faces met along it
    vertex_shaded: dict  # ideal vertex -> tuple of shaded faces containing it
    meta: dict = field(default_factory=dict)

    def euler(self) -> int:
        v = len(self.ideal_vertices)
        e = len(self.edges)
        f = self.white_count + len(self.shaded_faces)
        return v - e + f

    def validate(self):
        circle_shaded = [f for f in self.shaded_faces if f[0] in self.circles]
        if len(circle_shaded) != 2 * len(self.circles):
            raise DiagramError("shaded face count must be two per crossing circle")
        if self.euler() != 2:
            raise DiagramError(f"complex is not a sphere (chi = {self.euler()})")
        for edge in self.edges:
            circ, side, _i = edge
            if (circ, side) not in self.shaded_faces:
                raise DiagramError("edge without a shaded side")
            if edge not in self.edge_white:
                raise DiagramError("edge without a white side")


@dataclass(frozen=True)
class GammaGraph:
    """Crush each shaded face to a vertex; one edge per shared ideal vertex;
    faces inherited from the white faces."""

    vertices: tuple[tuple[str, str], ...]
    edges: tuple[tuple[tuple[str, str], tuple[str, str], object], ...]
    face_vertex_sets: dict  # white id -> frozenset of vertices on it
    white_count: int

    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + self.white_count

    def connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict = {v: set() for v in self.vertices}
        for a, b, _v in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.vertices)


# --------------------------------------------------------------------------
# Extraction of the flat chord picture from an augmented diagram.


def _flat_structure(d: Diagram):
    """(m, r, w, chords) for a fully/generalized augmented template diagram.

    A chord is (circle label, [(loop, lane index) ...] in crossing order,
    kind), where a loop is (pair, sheet).
    """
    meta = d.meta
    if "m" not in meta or "r" not in meta:
        raise DiagramError("diagram lacks the template metadata (m, r)")
    m, r = meta["m"], meta["r"]
    if not d.circles:
        raise DiagramError("diagram has no crossing-circle structure")
    w = None
    for key, reg in d.regions.items():
        if isinstance(reg.row, int):
            w = reg.strand_count // 2
            break
    if w is None:
        raise DiagramError("diagram has no grid twist regions")

    def sheet(bundle: int, lane: int) -> tuple[int, int]:
        pair = (bundle + 1) // 2
        s = lane if bundle % 2 == 1 else w + 1 - lane
        return (pair, s)

    chords = []
    for label, tag in sorted(d.circles.items()):
        reg = d.region(tag.region_key)
        if isinstance(reg.row, int):
            i, j = reg.row, reg.col
            crossing = [sheet(j, lane) for lane in range(1, w + 1)]
            crossing += [sheet(j + 1, lane) for lane in range(1, w + 1)]
            chords.append((label, crossing, ("row", i, j)))
        else:
            crossing = [sheet(1, lane) for lane in range(1, w + 1)]
            chords.append((label, crossing, ("clasp", reg.row)))
    return m, r, w, chords


def build_complex(d: Diagram, include_corner_disk: bool = False) -> CheckerboardComplex:
    """Checkerboard complex of the flat diagram underlying ``d``.

    ``d`` must be an augmented template diagram (every grid region
    encircled; twists live in annotations).  The complex describes one of
    the two identical ideal polyhedra; the default shaded system is exactly
    two faces per crossing circle.

    ``include_corner_disk`` also cuts along the disk bounded by the corner
    unknot: its two plane-intersection arcs act as one-puncture chords whose
    "arc" vertices are the corner component's above-plane remnants.  That
    adds four shaded bigons beyond the two-per-circle count, so it is off by
    default and offered for comparison.
    """
    m, r, w, chords = _flat_structure(d)
    chord_by_label = {lab: (crossing, kind) for lab, crossing, kind in chords}
    corner = include_corner_disk and "K" in d.components and any(
        kind[0] == "clasp" for _l, _c, kind in chords
    )
    clasp_chords = sorted(
        [lab for lab, _c, kind in chords if kind[0] == "clasp"],
        key=lambda lab: chord_by_label[lab][1][1],
    )
    if corner:
        # the corner disk meets the plane in one arc through the outer
        # band boundary and one through the inner
        chords = chords + [
            ("D/alpha", [(1, 1)], ("disk", 1)),
            ("D/omega", [(1, w)], ("disk", 2)),
        ]

    # punctures along each loop, in traversal order, with entry side
    loop_course: dict[tuple, list] = {}
    chord_hits: dict[str, dict[int, tuple]] = {lab: {} for lab, _c, _k in chords}
    grid = {}
    for lab, _c, kind in chords:
        if kind[0] == "row":
            grid[(kind[1], kind[2])] = lab

    def bundle_passes(bundle: int):
        """Chords met going DOWN this bundle, top to bottom: (label, idx_base)."""
        out = []
        for i in range(1, r + 1):
            for j in ((bundle - 1), bundle):
                if (i, j) in grid:
                    lab = grid[(i, j)]
                    base = w if j == bundle - 1 else 0
                    out.append((lab, base))
        return out

    for pair in range(1, m + 1):
        for s in range(1, w + 1):
            loop = (pair, s)
            course = []
            down_b = 2 * pair - 1
            lane = s
            for lab, base in bundle_passes(down_b):
                course.append(("chord", lab, base + lane - 1, "down"))
            if pair == 1:
                if clasp_chords:
                    course.append(("chord", clasp_chords[0], lane - 1, "down"))
                if corner and s == 1:
                    course.append(("chord", "D/alpha", 0, "down"))
                if corner and s == w:
                    course.append(("chord", "D/omega", 0, "down"))
                if len(clasp_chords) > 1:
                    course.append(("chord", clasp_chords[1], lane - 1, "down"))
            up_b = 2 * pair
            lane_up = w + 1 - s
            for lab, base in reversed(bundle_passes(up_b)):
                course.append(("chord", lab, base + lane_up - 1, "up"))
            loop_course[loop] = course
            for pos, stop in enumerate(course):
                _kind, lab, idx, direction = stop
                if idx in chord_hits[lab]:
                    raise DiagramError("chord index crossed twice")
                chord_hits[lab][idx] = (loop, pos, direction)

    # plane graph
    pg = _PlaneGraph()
    for lab, crossing, _k in chords:
        k = len(crossing)
        pg.add_node((lab, "endW"))
        pg.add_node((lab, "endE"))
        for idx in range(k):
            pg.add_node((lab, idx))
        prev = ((lab, "endW"), "E")
        for idx in range(k):
            pg.add_edge(prev[0], prev[1], (lab, idx), "W", ("chord", lab, idx))
            prev = ((lab, idx), "E")
        pg.add_edge(prev[0], prev[1], (lab, "endE"), "W", ("chord", lab, k))

    def node_of(stop):
        return (stop[1], stop[2])

    # strand ideal vertices: the segments between consecutive punctures
    seg_start: dict[tuple, dict[int, tuple]] = {}  # loop -> pos -> seg id
    seg_before: dict[tuple, dict[int, tuple]] = {}
    for loop, course in loop_course.items():
        if not course:
            raise DiagramError(f"loop {loop} meets no crossing disk")
        starts = {}
        befores = {}
        for si in range(len(course)):
            starts[si] = ("seg", loop, si)
            befores[(si + 1) % len(course)] = ("seg", loop, si)
        seg_start[loop] = starts
        seg_before[loop] = befores
        for pos in range(len(course)):
            stop1 = course[pos]
            stop2 = course[(pos + 1) % len(course)]
            out_side = "S" if stop1[-1] == "down" else "N"
            in_side = "N" if stop2[-1] == "down" else "S"
            pg.add_edge(node_of(stop1), out_side, node_of(stop2), in_side, starts[pos])
    pg.finalize_rotations()

    faces = pg.faces()
    face_of_dart = {}
    for fi, cyc in enumerate(faces):
        for dart in cyc:
            face_of_dart[dart] = fi
    white_count = len(faces)

    # chord-segment sides: for edge traversed west->east (side 0 at the W
    # endpoint), the face on its left is the NORTH side
    def chord_side_face(e: int, side: str) -> int:
        # dart (e, 0) runs from edge_ends[0] to edge_ends[1]: our chord edges
        # were added west-to-east, so dart (e,0) has north on its left
        return face_of_dart[(e, 0)] if side == "N" else face_of_dart[(e, 1)]

    circles = tuple(lab for lab, _c, kind in chords if kind[0] != "disk")
    disk_chords = tuple(lab for lab, _c, kind in chords if kind[0] == "disk")
    shaded = tuple(
        (lab, side) for lab, _c, _k in chords for side in ("N", "S")
    )

    shaded_edges = {}
    edge_white = {}
    shaded_vertices = {}
    vertex_shaded: dict = {}
    edges = []
    for lab, crossing, _k in chords:
        k = len(crossing)
        chord_edge_ids = [
            e for e, kind in pg.edge_kind.items() if kind[0] == "chord" and kind[1] == lab
        ]
        chord_edge_ids.sort(key=lambda e: pg.edge_kind[e][2])
        for side in ("N", "S"):
            eids = []
            verts = []
            for idx in range(k + 1):
                edge = (lab, side, idx)
                edges.append(edge)
                eids.append(edge)
                edge_white[edge] = chord_side_face(chord_edge_ids[idx], side)
            for idx in range(k):
                loop, pos, direction = chord_hits[lab][idx]
                # the strand segment beside the chord on this side: for a
                # downward passage the north side is the arriving segment
                if (side == "N") == (direction == "down"):
                    seg = seg_before[loop][pos]
                else:
                    seg = seg_start[loop][pos]
                verts.append(seg)
                vertex_shaded.setdefault(seg, []).append((lab, side))
            # the last vertex: the circle's upper arc, or for a disk chord
            # the corner component's above-plane remnant
            arc = ("arc", lab)
            verts.append(arc)
            vertex_shaded.setdefault(arc, []).append((lab, side))
            shaded_edges[(lab, side)] = tuple(eids)
            shaded_vertices[(lab, side)] = tuple(verts)

    white_vertices: dict[int, set] = {fi: set() for fi in range(white_count)}
    for edge in edges:
        lab, side, _i = edge
        white_vertices[edge_white[edge]].add((lab, side))

    ideal_vertices = tuple(
        sorted(
            {sid for starts in seg_start.values() for sid in starts.values()},
            key=str,
        )
    ) + tuple(("arc", lab) for lab, _c, _k in chords)

    cpx = CheckerboardComplex(
        circles=circles,
        shaded_faces=shaded,
        ideal_vertices=ideal_vertices,
        edges=tuple(edges),
        white_count=white_count,
        shaded_edges=shaded_edges,
        edge_white=edge_white,
        shaded_vertices=shaded_vertices,
        white_vertices={fi: frozenset(v) for fi, v in white_vertices.items()},
        vertex_shaded={v: tuple(fs) for v, fs in vertex_shaded.items()},
        meta={
            "m": m,
            "r": r,
            "w": w,
            "corner_disk_included": bool(disk_chords),
            "disk_chords": disk_chords,
            "flat_region_count": white_count,
            "source_family": d.meta.get("family"),
        },
    )
    cpx.validate()
    return cpx


def crush_to_gamma(cpx: CheckerboardComplex) -> GammaGraph:
    """One vertex per shaded face; one edge per shared ideal vertex (which
    allows parallel edges); faces inherited from the white faces."""
    edges = []
    for v, fs in cpx.vertex_shaded.items():
        if len(fs) == 2:
            edges.append((fs[0], fs[1], v))
        elif len(fs) > 2:
            raise DiagramError(f"ideal vertex {v} on more than two shaded faces")
    face_sets = {fi: cpx.white_vertices[fi] for fi in range(cpx.white_count)}
    return GammaGraph(
        vertices=cpx.shaded_faces,
        edges=tuple(edges),
        face_vertex_sets=face_sets,
        white_count=cpx.white_count,
    )


def face_pairs_sharing(gamma: GammaGraph, k: int) -> list[tuple[int, int, int]]:
    """All pairs of Gamma faces sharing at least k vertices, as
    (face id, face id, shared count), deterministically ordered."""
    if k < 2:
        raise ValueError("k must be >= 2")
    out = []
    ids = sorted(gamma.face_vertex_sets)
    for a_i in range(len(ids)):
        fa = gamma.face_vertex_sets[ids[a_i]]
        if len(fa) < k:
            continue
        for b_i in range(a_i + 1, len(ids)):
            fb = gamma.face_vertex_sets[ids[b_i]]
            shared = len(fa & fb)
            if shared >= k:
                out.append((ids[a_i], ids[b_i], shared))
    return out


# --------------------------------------------------------------------------
# Plain-text exports.


def complex_incidence_text(cpx: CheckerboardComplex) -> str:
    lines = [
        f"# checkerboard complex: {len(cpx.circles)} circles, "
        f"{len(cpx.shaded_faces)} shaded faces, {cpx.white_count} white faces, "
        f"{len(cpx.edges)} edges, {len(cpx.ideal_vertices)} ideal vertices",
    ]
    for face in cpx.shaded_faces:
        verts = " ".join(str(v) for v in cpx.shaded_vertices[face])
        lines.append(f"shaded {face[0]}/{face[1]}: vertices {verts}")
    for edge in cpx.edges:
        lines.append(
            f"edge {edge[0]}/{edge[1]}[{edge[2]}]: white {cpx.edge_white[edge]}"
        )
    return "\n".join(lines) + "\n"


def gamma_dot(gamma: GammaGraph) -> str:
    lines = ["graph gamma {"]
    for v in gamma.vertices:
        lines.append(f'  "{v[0]}/{v[1]}";')
    for a, b, via in gamma.edges:
        lines.append(f'  "{a[0]}/{a[1]}" -- "{b[0]}/{b[1]}" [label="{via}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
