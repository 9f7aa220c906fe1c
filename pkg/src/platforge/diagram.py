"""Decorated planar link diagrams.

A diagram is a 4-valent plane graph with over/under data, orientations,
component labels, and twist-region / crossing-circle annotations.  It is the
universal currency of this package: plats, augmented links and filled links
are all values of the one `Diagram` type.

Combinatorial conventions (fixed here, used everywhere):

* Each crossing has four arc-end slots 0..3 in *counterclockwise* plane
  order.  The under-strand occupies slots 0 and 2, the over-strand slots
  1 and 3.
* ``under_entry`` (0 or 2) and ``over_entry`` (1 or 3) record where each
  strand enters, which orients the diagram.  The crossing sign is +1
  (right-handed) exactly when ``(under_entry - over_entry) % 4 == 1``.
* In a half-twist block of handedness +1 the strand arriving from the right
  passes over; a co-oriented parallel pair then picks up +1 crossings per
  half twist.  Handedness is a property of the construction: a region's
  crossings share it even when mixed strand orientations make their signed
  values differ.
* Crossing circles are "vertical": the upper arc of the circle passes over
  every enclosed strand, the lower arc under every one.

Components with no crossings at all (split unknots) are carried separately
as ``free_loops``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .braid import BraidWord

__all__ = [
    "Diagram",
    "DiagramError",
    "TwistRegion",
    "CrossingCircleTag",
    "plat_diagram",
    "insert_half_twists",
    "add_crossing_circle",
    "fill_crossing_circle",
    "fill_circles",
    "linking_number",
    "writhe",
    "component_count",
    "crossing_count",
    "reverse_component",
]

Dart = tuple[int, int]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class TwistRegion:
    """A maximal chain of half twists on ``strand_count`` parallel strands.

    ``half_twists`` is signed; |half_twists| * k(k-1)/2 equals the number of
    crossings in the region.  ``gates`` anchor the region's top cut for
    twist insertion: per strand position (left to right), the entry dart
    into the region's topmost own structure and the strand's flow there
    (+1 downward, -1 upward).
    """

    key: str
    row: object  # int row index, or "clasp-a"/"clasp-b"
    col: Optional[int]
    strand_count: int
    half_twists: int
    crossings: tuple[int, ...]
    gates: tuple[tuple[Dart, int], ...]


@dataclass(frozen=True)
class CrossingCircleTag:
    """An unknotted circle encircling the strands of one twist region."""

    label: str
    region_key: str
    upper_crossings: tuple[int, ...]  # left to right
    lower_crossings: tuple[int, ...]


class Diagram:
    """Immutable decorated plane link diagram."""

    def __init__(
        self,
        adj: Sequence[Sequence[Dart]],
        under_entry: Sequence[int],
        over_entry: Sequence[int],
        comp_under: Sequence[int],
        comp_over: Sequence[int],
        components: Sequence[str],
        free_loops: Sequence[str] = (),
        regions: dict[str, TwistRegion] | None = None,
        circles: dict[str, CrossingCircleTag] | None = None,
        meta: dict | None = None,
    ):
        # normalize per-crossing slot labels so the under-strand always
        # enters at slot 0 (rotation by two slots is a pure relabelling);
        # canonical forms and codes rely on this
        rot = [2 if u == 2 else 0 for u in under_entry]
        n = len(rot)
        adj_n = [[None] * 4 for _ in range(n)]
        for c in range(n):
            for s in range(4):
                c2, s2 = adj[c][s]
                adj_n[c][(s - rot[c]) % 4] = (c2, (s2 - rot[c2]) % 4)
        self.adj = tuple(tuple(row) for row in adj_n)
        self.under_entry = tuple(0 for _ in range(n))
        self.over_entry = tuple((o - rot[c]) % 4 for c, o in enumerate(over_entry))
        self.comp_under = tuple(comp_under)
        self.comp_over = tuple(comp_over)
        self.components = tuple(components)
        self.free_loops = tuple(free_loops)

        def fix_dart(d):
            return (d[0], (d[1] - rot[d[0]]) % 4)

        regions = dict(regions or {})
        self.regions = {
            k: (
                r
                if not r.gates
                else TwistRegion(
                    key=r.key,
                    row=r.row,
                    col=r.col,
                    strand_count=r.strand_count,
                    half_twists=r.half_twists,
                    crossings=r.crossings,
                    gates=tuple((fix_dart(d), f) for d, f in r.gates),
                )
            )
            for k, r in regions.items()
        }
        self.circles = dict(circles or {})
        self.meta = dict(meta or {})
        self._canon = None
        self.validate()

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.adj)

    def crossing_count(self) -> int:
        return self.n

    def component_count(self) -> int:
        return len(self.components) + len(self.free_loops)

    def component_labels(self) -> tuple[str, ...]:
        return self.components + self.free_loops

    def sign(self, c: int) -> int:
        return 1 if (self.under_entry[c] - self.over_entry[c]) % 4 == 1 else -1

    def signs(self) -> list[int]:
        return [self.sign(c) for c in range(self.n)]

    def _comp_id(self, label: str) -> int:
        try:
            return self.components.index(label)
        except ValueError:
            raise DiagramError(f"unknown component {label!r}") from None

    def writhe(self, component: str | None = None) -> int:
        """Signed crossing sum, restricted to one component's self-crossings
        when ``component`` is given."""
        if component is None:
            return sum(self.sign(c) for c in range(self.n))
        if component in self.free_loops:
            return 0
        i = self._comp_id(component)
        return sum(
            self.sign(c)
            for c in range(self.n)
            if self.comp_under[c] == i and self.comp_over[c] == i
        )

    def linking_number(self, comp_a: str, comp_b: str) -> int:
        """Half the signed sum over crossings between the two components."""
        if comp_a == comp_b:
            raise DiagramError("linking number needs two distinct components")
        for lbl in (comp_a, comp_b):
            if lbl not in self.components and lbl not in self.free_loops:
                raise DiagramError(f"unknown component {lbl!r}")
        if comp_a in self.free_loops or comp_b in self.free_loops:
            return 0
        a, b = self._comp_id(comp_a), self._comp_id(comp_b)
        total = 0
        for c in range(self.n):
            if {self.comp_under[c], self.comp_over[c]} == {a, b}:
                total += self.sign(c)
        if total % 2:
            raise DiagramError("odd sign sum between closed components")
        return total // 2

    # -- structure --------------------------------------------------------

    def next_passage(self, c: int, entry_slot: int) -> Dart:
        """Follow the strand out of the crossing to the next entry dart."""
        return self.adj[c][(entry_slot + 2) % 4]

    def passage_component(self, c: int, entry_slot: int) -> int:
        return self.comp_under[c] if entry_slot % 2 == 0 else self.comp_over[c]

    def faces(self) -> list[list[Dart]]:
        """Faces of the plane graph as dart cycles (rotation-system walk)."""
        n4 = 4 * self.n
        nxt = [0] * n4
        for c in range(self.n):
            row = self.adj[c]
            base = 4 * c
            for s in range(4):
                c2, s2 = row[s]
                nxt[base + s] = 4 * c2 + ((s2 + 1) & 3)
        seen = bytearray(n4)
        out = []
        for d0 in range(n4):
            if seen[d0]:
                continue
            cyc = []
            d = d0
            while not seen[d]:
                seen[d] = 1
                cyc.append((d >> 2, d & 3))
                d = nxt[d]
            out.append(cyc)
        return out

    def connected_pieces(self) -> list[set[int]]:
        seen = bytearray(self.n)
        pieces = []
        for c0 in range(self.n):
            if seen[c0]:
                continue
            stack, piece = [c0], set()
            seen[c0] = 1
            while stack:
                c = stack.pop()
                piece.add(c)
                for s in range(4):
                    c2 = self.adj[c][s][0]
                    if not seen[c2]:
                        seen[c2] = 1
                        stack.append(c2)
            pieces.append(piece)
        return pieces

    def validate(self):
        n = self.n
        if not (len(self.under_entry) == len(self.over_entry) == n):
            raise DiagramError("entry tables must match crossing count")
        under_entry = self.under_entry
        over_entry = self.over_entry
        adj = self.adj
        for c in range(n):
            ue, oe = under_entry[c], over_entry[c]
            if ue not in (0, 2) or oe not in (1, 3):
                raise DiagramError(f"bad entry slots at crossing {c}")
            row = adj[c]
            for s in range(4):
                c2, s2 = row[s]
                if not (0 <= c2 < n and 0 <= s2 < 4):
                    raise DiagramError(f"dangling dart ({c},{s})")
                if adj[c2][s2] != (c, s):
                    raise DiagramError(f"adjacency not an involution at ({c},{s})")
                # every arc joins an exit to an entry
                here_entry = s == ue or s == oe
                there_entry = s2 == under_entry[c2] or s2 == over_entry[c2]
                if here_entry == there_entry:
                    raise DiagramError("arc does not join an exit to an entry")
            for entry in (ue, oe):
                comp = self.passage_component(c, entry)
                c2, s2 = self.next_passage(c, entry)
                if self.passage_component(c2, s2) != comp:
                    raise DiagramError("component labels inconsistent along strand")
        # planarity: V - E + F = 2 per connected piece (E = 2V, 4-valent)
        face_of = [0] * (4 * n)
        for i, f in enumerate(self.faces()):
            for c, s in f:
                face_of[4 * c + s] = i
        for piece in self.connected_pieces():
            v = len(piece)
            f = len({face_of[4 * c + s] for c in piece for s in range(4)})
            if f != v + 2:
                raise DiagramError(
                    f"rotation system is not planar on a piece (V={v}, F={f})"
                )
        for key, reg in self.regions.items():
            k = reg.strand_count
            expect = abs(reg.half_twists) * k * (k - 1) // 2
            if len(reg.crossings) != expect:
                raise DiagramError(
                    f"region {key}: {len(reg.crossings)} crossings, expected {expect}"
                )
        for label in self.circles:
            if label not in self.components:
                raise DiagramError(f"circle tag {label} has no component")

    # -- convenience -------------------------------------------------------

    def region(self, key: str) -> TwistRegion:
        if key not in self.regions:
            raise DiagramError(f"no twist region {key!r}")
        return self.regions[key]

    def circle_of_region(self, key: str) -> Optional[CrossingCircleTag]:
        for tag in self.circles.values():
            if tag.region_key == key:
                return tag
        return None

    def with_meta(self, **kv) -> "Diagram":
        d = self._shallow_copy()
        d.meta.update(kv)
        return d

    def _shallow_copy(self) -> "Diagram":
        new = object.__new__(Diagram)
        new.adj = self.adj
        new.under_entry = self.under_entry
        new.over_entry = self.over_entry
        new.comp_under = self.comp_under
        new.comp_over = self.comp_over
        new.components = self.components
        new.free_loops = self.free_loops
        new.regions = dict(self.regions)
        new.circles = dict(self.circles)
        new.meta = dict(self.meta)
        new._canon = None
        return new


# --------------------------------------------------------------------------
# Builder: fresh construction and surgery share this mutable workspace.


class _End:
    """One open end of an arc under construction."""

    __slots__ = ("other", "dart", "tag")

    def __init__(self, tag=None):
        self.other = None
        self.dart = None
        self.tag = tag


class Builder:
    def __init__(self):
        self.adj: list[list[Optional[Dart]]] = []
        self.alive: list[bool] = []
        self.free_loops: list[str] = []
        self.seeds: list[tuple[object, str]] = []  # (entry dart or _End, label)
        self.regions: dict[str, dict] = {}
        self.circles: dict[str, CrossingCircleTag] = {}
        self.meta: dict = {}
        self._flow: list[Dart] = []  # entry darts recorded at creation
        self._source: Diagram | None = None

    # ---- primitives

    def new_crossing(self) -> int:
        self.adj.append([None, None, None, None])
        self.alive.append(True)
        return len(self.adj) - 1

    def new_arc(self, tag=None) -> tuple[_End, _End]:
        e1, e2 = _End(tag), _End(tag)
        e1.other, e2.other = e2, e1
        return e1, e2

    def glue(self, a, b):
        """Connect two arc ends; each may be a Dart or an open _End."""
        if isinstance(a, _End) and isinstance(b, _End):
            if a.other is b:
                self.free_loops.append(a.tag or "loop")
                return
            ao, bo = a.other, b.other
            ao.other, bo.other = bo, ao
            tag = a.tag or b.tag or ao.tag or bo.tag
            ao.tag = ao.tag or tag
            bo.tag = bo.tag or tag
            if ao.dart is not None and bo.dart is not None:
                self._set(ao.dart, bo.dart)
            return
        if isinstance(a, _End):
            a, b = b, a
        if isinstance(b, _End):
            b.dart = a
            other = b.other
            if other.dart is not None:
                self._set(a, other.dart)
            return
        self._set(a, b)

    def _set(self, d1: Dart, d2: Dart):
        if self.adj[d1[0]][d1[1]] is not None or self.adj[d2[0]][d2[1]] is not None:
            raise DiagramError(f"dart already glued: {d1} or {d2}")
        self.adj[d1[0]][d1[1]] = d2
        self.adj[d2[0]][d2[1]] = d1

    def mark_seed(self, dart_or_end, label: str):
        """Declare an entry dart (or an end that will become one) of ``label``."""
        self.seeds.append((dart_or_end, label))

    # ---- the sweep front: open strand ends at horizontal positions.
    # Each front slot is (end, flow): flow +1 = the strand travels downward
    # through the cut, -1 = upward.

    def cross_adjacent(self, front: list, x: int, handedness: int) -> int:
        """One elementary crossing between front positions x and x+1."""
        (eL, dirL), (eR, dirR) = front[x], front[x + 1]
        c = self.new_crossing()
        if handedness >= 0:
            nw, sw, se, ne = 0, 1, 2, 3  # ccw (NW, SW, SE, NE); under = left strand
        else:
            ne, nw, sw, se = 0, 1, 2, 3  # ccw (NE, NW, SW, SE); under = right strand
        self.glue(eL, (c, nw))
        self.glue(eR, (c, ne))
        oL_in, oL_out = _End(), _End()
        oL_in.other, oL_out.other = oL_out, oL_in
        oL_in.dart = (c, se)
        oR_in, oR_out = _End(), _End()
        oR_in.other, oR_out.other = oR_out, oR_in
        oR_in.dart = (c, sw)
        front[x] = (oR_out, dirR)
        front[x + 1] = (oL_out, dirL)
        if handedness >= 0:
            self._flow.append((c, nw if dirL > 0 else se))
            self._flow.append((c, ne if dirR > 0 else sw))
        else:
            self._flow.append((c, ne if dirR > 0 else sw))
            self._flow.append((c, nw if dirL > 0 else se))
        return c

    def half_twist_block(self, front: list, lo: int, k: int, handedness: int) -> list[int]:
        """One half twist (Garside block) of the k strands at [lo, lo+k);
        k(k-1)/2 crossings, bundle order reversed."""
        made = []
        for width in range(1, k):
            for i in range(width, 0, -1):
                made.append(self.cross_adjacent(front, lo + i - 1, handedness))
        return made

    def crossing_circle(self, front: list, lo: int, k: int, label: str):
        """Encircle the k strands at [lo, lo+k): upper arc over all (moving
        right), lower arc under all (moving left); 2k crossings."""
        uppers, lowers = [], []
        prev_e = None
        first_w = None
        for i in range(k):
            e, flow = front[lo + i]
            c = self.new_crossing()
            uppers.append(c)
            # ccw (N, W, S, E): strand under on N(0)-S(2); circle over W(1)-E(3)
            self.glue(e, (c, 0))
            out = self.new_arc()
            self.glue(out[0], (c, 2))
            front[lo + i] = (out[1], flow)
            self._flow.append((c, 0 if flow > 0 else 2))
            self._flow.append((c, 1))
            if prev_e is None:
                first_w = (c, 1)
            else:
                self.glue(prev_e, (c, 1))
            prev_e = (c, 3)
        upper_right = prev_e
        prev_e = None
        first_w_low = None
        for i in range(k):
            e, flow = front[lo + i]
            c = self.new_crossing()
            lowers.append(c)
            # ccw (W, S, E, N): circle under on W(0)-E(2); strand over S(1)-N(3)
            self.glue(e, (c, 3))
            out = self.new_arc()
            self.glue(out[0], (c, 1))
            front[lo + i] = (out[1], flow)
            self._flow.append((c, 3 if flow > 0 else 1))
            self._flow.append((c, 2))
            if prev_e is None:
                first_w_low = (c, 0)
            else:
                self.glue(prev_e, (c, 0))
            prev_e = (c, 2)
        lower_right = prev_e
        self.glue(upper_right, lower_right)  # right side arc
        self.glue(first_w_low, first_w)  # left side arc
        self.mark_seed(first_w, label)
        return uppers, lowers

    def marker_circle(self, front: list, lo: int, k: int, label: str):
        """The band-piercing unknot (the corner component).

        Top arc, moving right: over strand 1, under strand 2, over strand
        3, ...; bottom arc, moving left: the opposite pattern.  For k = 2
        this circle pierces the band cobounded by the two strands twice and
        has linking number of magnitude 1 with each of them.
        """
        tops, bottoms = [], []
        prev_e = None
        first_w = None
        for i in range(k):
            e, flow = front[lo + i]
            c = self.new_crossing()
            tops.append(c)
            if i % 2 == 0:
                # circle over: ccw (N, W, S, E), circle W(1)->E(3)
                self.glue(e, (c, 0))
                out = self.new_arc()
                self.glue(out[0], (c, 2))
                self._flow.append((c, 0 if flow > 0 else 2))
                self._flow.append((c, 1))
                w_dart, e_dart = (c, 1), (c, 3)
            else:
                # circle under: ccw (W, S, E, N), circle W(0)->E(2)
                self.glue(e, (c, 3))
                out = self.new_arc()
                self.glue(out[0], (c, 1))
                self._flow.append((c, 3 if flow > 0 else 1))
                self._flow.append((c, 0))
                w_dart, e_dart = (c, 0), (c, 2)
            front[lo + i] = (out[1], flow)
            if prev_e is None:
                first_w = w_dart
            else:
                self.glue(prev_e, w_dart)
            prev_e = e_dart
        top_right = prev_e
        prev_e = None
        first_w_low = None
        for i in range(k):
            e, flow = front[lo + i]
            c = self.new_crossing()
            bottoms.append(c)
            if i % 2 == 1:
                # circle over, moving left: enters E(3), exits W(1)
                self.glue(e, (c, 0))
                out = self.new_arc()
                self.glue(out[0], (c, 2))
                self._flow.append((c, 0 if flow > 0 else 2))
                self._flow.append((c, 3))
                w_dart, e_dart = (c, 1), (c, 3)
            else:
                # circle under, moving left: enters E(2), exits W(0)
                self.glue(e, (c, 3))
                out = self.new_arc()
                self.glue(out[0], (c, 1))
                self._flow.append((c, 3 if flow > 0 else 1))
                self._flow.append((c, 2))
                w_dart, e_dart = (c, 0), (c, 2)
            front[lo + i] = (out[1], flow)
            if prev_e is None:
                first_w_low = w_dart
            else:
                self.glue(prev_e, w_dart)
            prev_e = e_dart
        self.glue(top_right, prev_e)  # right side arc
        self.glue(first_w_low, first_w)  # left side arc
        self.mark_seed(first_w, label)
        return tops, bottoms

    # ---- surgery (builders seeded from a frozen Diagram)

    @classmethod
    def from_diagram(cls, d: Diagram) -> "Builder":
        b = cls()
        b.adj = [list(row) for row in d.adj]
        b.alive = [True] * d.n
        b.free_loops = list(d.free_loops)
        b.regions = {
            k: {
                "row": r.row,
                "col": r.col,
                "strand_count": r.strand_count,
                "half_twists": r.half_twists,
                "crossings": list(r.crossings),
                "gates": list(r.gates),
            }
            for k, r in d.regions.items()
        }
        b.circles = dict(d.circles)
        b.meta = dict(d.meta)
        for c in range(d.n):
            b.seeds.append(((c, d.under_entry[c]), d.components[d.comp_under[c]]))
            b.seeds.append(((c, d.over_entry[c]), d.components[d.comp_over[c]]))
        b._source = d
        return b

    def unglue(self, d: Dart) -> Dart:
        partner = self.adj[d[0]][d[1]]
        if partner is None:
            raise DiagramError(f"dart {d} already open")
        self.adj[d[0]][d[1]] = None
        self.adj[partner[0]][partner[1]] = None
        return partner

    def kill_crossings(self, dead: set[int]):
        """Delete crossings outright, opening the darts of their live
        neighbours.  The caller is responsible for rewiring everything."""
        for c in dead:
            for s in range(4):
                d = self.adj[c][s]
                if d is not None and d[0] not in dead:
                    self.adj[d[0]][d[1]] = None
            self.alive[c] = False
            self.adj[c] = [None, None, None, None]
        self.seeds = [
            s for s in self.seeds if not (isinstance(s[0], tuple) and s[0][0] in dead)
        ]

    # ---- freeze

    def freeze(self) -> Diagram:
        remap = {}
        for c, ok in enumerate(self.alive):
            if ok:
                remap[c] = len(remap)
        n = len(remap)
        adj: list[list[Optional[Dart]]] = [[None] * 4 for _ in range(n)]
        for c_old, c_new in remap.items():
            for s in range(4):
                d = self.adj[c_old][s]
                if d is None:
                    raise DiagramError(f"open dart ({c_old},{s}) at freeze")
                adj[c_new][s] = (remap[d[0]], d[1])

        entry_of: dict[tuple[int, int], int] = {}  # (crossing, diag) -> entry slot
        comp_of: dict[tuple[int, int], int] = {}
        names: list[str] = []

        def orient_walk(start: Dart, label: str):
            c, s = start
            if (c, s % 2) in entry_of:
                return
            base = label
            k = 2
            while label in names:
                label = f"{base}.{k}"
                k += 1
            comp = len(names)
            names.append(label)
            cur = start
            while True:
                c, s = cur
                key = (c, s % 2)
                if key in entry_of:
                    return
                entry_of[key] = s
                comp_of[key] = comp
                cur = adj[c][(s + 2) % 4]

        for dart_or_end, label in self.seeds:
            d = dart_or_end
            if isinstance(d, _End):
                d = d.dart
            if d is None or d[0] not in remap:
                continue
            orient_walk((remap[d[0]], d[1]), label)
        for d in self._flow:
            if d[0] in remap:
                d2 = (remap[d[0]], d[1])
                if (d2[0], d2[1] % 2) not in entry_of:
                    orient_walk(d2, f"c{len(names)}")
        for c in range(n):
            for dg in (0, 1):
                if (c, dg) not in entry_of:
                    orient_walk((c, dg), f"c{len(names)}")

        under_entry = [entry_of[(c, 0)] for c in range(n)]
        over_entry = [entry_of[(c, 1)] for c in range(n)]
        comp_under = [comp_of[(c, 0)] for c in range(n)]
        comp_over = [comp_of[(c, 1)] for c in range(n)]

        used = sorted(set(comp_under) | set(comp_over))
        relab = {old: i for i, old in enumerate(used)}
        components = [names[old] for old in used]
        comp_under = [relab[i] for i in comp_under]
        comp_over = [relab[i] for i in comp_over]

        regions = {}
        for key, r in self.regions.items():
            gates = []
            for dart_or_end, f in r["gates"]:
                resolved = resolve_gate(dart_or_end, f)
                if resolved is None:
                    gates = []
                    break
                dart, f = resolved
                if dart[0] not in remap:
                    gates = []
                    break
                gates.append(((remap[dart[0]], dart[1]), f))
            regions[key] = TwistRegion(
                key=key,
                row=r["row"],
                col=r["col"],
                strand_count=r["strand_count"],
                half_twists=r["half_twists"],
                crossings=tuple(remap[c] for c in r["crossings"]),
                gates=tuple(gates),
            )
        circles = {}
        for lbl, tag in self.circles.items():
            circles[lbl] = CrossingCircleTag(
                label=lbl,
                region_key=tag.region_key,
                upper_crossings=tuple(remap[c] for c in tag.upper_crossings),
                lower_crossings=tuple(remap[c] for c in tag.lower_crossings),
            )
        return Diagram(
            adj,
            under_entry,
            over_entry,
            comp_under,
            comp_over,
            components,
            self.free_loops,
            regions,
            circles,
            self.meta,
        )


def resolve_gate(end_or_dart, flow):
    e = end_or_dart
    if isinstance(e, _End):
        if e.dart is None:
            return None
        return (e.dart, flow)
    return (e, flow)


def _true_flow(d: Diagram, dart: Dart) -> int:
    """+1 when the strand runs from the arc into this dart (an entry),
    -1 when it leaves through it.  Gate flows stored at construction time
    are sweep-order guesses; operations re-derive them from the diagram's
    actual orientation so that rebuilt components keep their direction."""
    c, s = dart
    return 1 if s in (d.under_entry[c], d.over_entry[c]) else -1


# --------------------------------------------------------------------------
# Plat closures.


def plat_diagram(word: BraidWord, region_meta: Sequence[tuple] | None = None) -> Diagram:
    """Plat closure of a braid word as a decorated diagram.

    The 2m strands are joined by m nested caps at top and bottom.  Every
    letter sigma_j^p becomes a 2-strand twist region with p half twists;
    keys are ``t<index>``, or ``r<i>c<j>`` when ``region_meta`` supplies
    (row, col) pairs per letter.
    """
    b = Builder()
    front: list = [None] * word.strands
    m = word.strands // 2
    for p in range(m):
        e1, e2 = b.new_arc(tag=f"cap{p + 1}")
        front[2 * p] = (e1, 1)
        front[2 * p + 1] = (e2, -1)
        b.mark_seed(e1, f"cap{p + 1}")
    for idx, let in enumerate(word.letters):
        x = let.generator_index - 1
        gate_ends = [front[x], front[x + 1]]
        crossings: list[int] = []
        for _ in range(abs(let.power)):
            crossings += b.half_twist_block(front, x, 2, 1 if let.power > 0 else -1)
        if region_meta is not None:
            row, col = region_meta[idx]
            key = f"r{row}c{col}"
        else:
            row, col, key = None, None, f"t{idx}"
        # gate ends resolve at freeze time (a zero-power region's strands
        # may only attach to structure built later in the sweep)
        b.regions[key] = {
            "row": row,
            "col": col,
            "strand_count": 2,
            "half_twists": let.power,
            "crossings": crossings,
            "gates": list(gate_ends),
        }
    for p in range(m):
        b.glue(front[2 * p][0], front[2 * p + 1][0])
    return _relabel_components(b.freeze())


def _relabel_components(d: Diagram, prefix: str = "K") -> Diagram:
    mapping = {}
    for i, lbl in enumerate(d.components):
        mapping[lbl] = prefix if i == 0 else f"{prefix}{i + 1}"
    loops = []
    for i, _ in enumerate(d.free_loops):
        if not d.components and i == 0:
            loops.append(prefix)
        else:
            loops.append(f"U{i + 1}")
    new = d._shallow_copy()
    new.components = tuple(mapping[l] for l in d.components)
    new.free_loops = tuple(loops)
    return new


# --------------------------------------------------------------------------
# Twist insertion, crossing circles, Dehn filling.


def _rebuild_regions(d: Diagram, jobs: list[tuple[str, int, Optional[str]]]) -> Diagram:
    """Jointly replace several regions' half-twist stacks.

    Each job is (region key, half-twist delta, circle label to delete or
    None); the rebuilt region gets |existing + delta| uniform blocks.  All
    scheduled regions are excised between their top cuts (at the gates) and
    bottom cuts simultaneously, then rewired through the surviving arcs;
    a strand running from one excised region straight into another (or back
    into the same one) is reconnected stack-to-stack.  One freeze.
    """
    dead: set[int] = set()
    job_of: dict[int, int] = {}  # crossing -> owning job
    gate_port: dict[Dart, tuple[int, int]] = {}  # gate dart -> (job, position)
    regs = []
    for ji, (key, _delta, circle_label) in enumerate(jobs):
        reg = d.region(key)
        regs.append(reg)
        job_dead = set(reg.crossings)
        if circle_label is not None:
            tag = d.circles[circle_label]
            job_dead |= set(tag.upper_crossings) | set(tag.lower_crossings)
        if len(reg.gates) != reg.strand_count:
            raise DiagramError(f"region {key!r} has no usable gates")
        for pos, (g, _f) in enumerate(reg.gates):
            if g[0] not in job_dead:
                raise DiagramError("gate anchor does not sit on the region structure")
            gate_port[g] = (ji, pos)
        for c in job_dead:
            if c in job_of:
                raise DiagramError("jobs overlap on a crossing")
            job_of[c] = ji
        dead |= job_dead

    # bottom boundary ports: from each gate, the strand makes a known number
    # of passages through its own stack (2 for the circle, k-1 per block);
    # the dart after the last passage is the bottom boundary
    bot_port: dict[Dart, tuple[int, int]] = {}  # boundary dart -> (job, position)
    for ji, (reg, (key, _delta, circle_label)) in enumerate(zip(regs, jobs)):
        k = reg.strand_count
        passages = abs(reg.half_twists) * (k - 1)
        if circle_label is not None:
            passages += 2
        exits = []
        for g, _f in reg.gates:
            cur = g
            for _step in range(passages - 1):
                cur = d.adj[cur[0]][(cur[1] + 2) % 4]
                if job_of.get(cur[0]) != ji:
                    raise DiagramError("region walk left its own structure")
            exits.append((cur[0], (cur[1] + 2) % 4))
        # strand entering position i exits at position rho(i): rho is the
        # bundle reversal iff the old block count is odd
        if abs(reg.half_twists) % 2 == 1:
            exits = list(reversed(exits))
        for pos, e in enumerate(exits):
            bot_port[e] = (ji, pos)

    # boundary arcs, each recorded once as its two classified endpoints
    def classify(dart):
        if dart in gate_port:
            return ("top", *gate_port[dart])
        if dart in bot_port:
            return ("bot", *bot_port[dart])
        if dart[0] in dead:
            raise DiagramError("boundary arc touches a non-port dead dart")
        return ("live", dart)

    boundary = []
    seen_ports = set()
    for port_dart in list(gate_port) + list(bot_port):
        if port_dart in seen_ports:
            continue
        other = d.adj[port_dart[0]][port_dart[1]]
        seen_ports.add(port_dart)
        seen_ports.add(other)
        boundary.append((classify(port_dart), classify(other)))

    b = Builder.from_diagram(d)
    b.kill_crossings(dead)

    # build every new stack
    tops: list[list] = []  # per job: outward partner end per position
    outs: list[list] = []  # per job: bottom end per position
    new_regions = []
    for ji, (reg, (key, delta, circle_label)) in enumerate(zip(regs, jobs)):
        net = reg.half_twists + delta
        k = reg.strand_count
        front = []
        job_tops = []
        for g, _stored_flow in reg.gates:
            comp_label = d.components[d.passage_component(g[0], g[1])]
            e, p = b.new_arc(tag=comp_label)
            job_tops.append(p)
            front.append((e, _true_flow(d, g)))
        gate_probe = [e for e, _f in front]
        crossings: list[int] = []
        for _ in range(abs(net)):
            crossings += b.half_twist_block(front, 0, k, 1 if net > 0 else -1)
        tops.append(job_tops)
        outs.append([e for e, _f in front])
        flows = [f for _e, f in front] if not crossings else None
        if crossings:
            gates = []
            for e, (g, _sf) in zip(gate_probe, reg.gates):
                resolved = resolve_gate(e, _true_flow(d, g))
                if resolved is None:
                    raise DiagramError("gate resolution failed after rebuild")
                gates.append(resolved)
        else:
            # an emptied region re-anchors on its strands' downstream
            # attachments; the ends resolve at freeze time (or not at all,
            # when the strand loops straight back without live structure)
            gates = [(end, f) for end, f in zip(outs[-1], flows)]
        new_regions.append(
            {
                "row": reg.row,
                "col": reg.col,
                "strand_count": k,
                "half_twists": net,
                "crossings": crossings,
                "gates": gates,
            }
        )

    def endpoint(tagged):
        kind = tagged[0]
        if kind == "live":
            return tagged[1]
        if kind == "top":
            return tops[tagged[1]][tagged[2]]
        return outs[tagged[1]][tagged[2]]

    for p_end, q_end in boundary:
        b.glue(endpoint(p_end), endpoint(q_end))

    for (key, _delta, circle_label), new_reg in zip(jobs, new_regions):
        b.regions[key] = new_reg
        if circle_label is not None:
            del b.circles[circle_label]
    return b.freeze()


def _rebuild_region(d: Diagram, key: str, delta: int, circle_label=None) -> Diagram:
    return _rebuild_regions(d, [(key, delta, circle_label)])


def fill_circles(d: Diagram, fills: Sequence[tuple[str, int]]) -> Diagram:
    """Dehn fill several crossing circles at once (one rebuild pass).

    Equivalent to folding `fill_crossing_circle` over the list.
    """
    jobs = []
    for label, q in fills:
        if label not in d.circles:
            raise DiagramError(f"no crossing circle {label!r}")
        tag = d.circles[label]
        jobs.append((tag.region_key, 2 * q, label))
    return _rebuild_regions(d, jobs)


def _insert_into_empty_region(d: Diagram, key: str, t: int) -> Diagram:
    """Build a fresh half-twist stack on a region that currently has no
    crossings.  The gates anchor the strands' nearest downstream arc
    attachments; the blocks are spliced in there."""
    reg = d.region(key)
    k = reg.strand_count
    if len(reg.gates) != k:
        raise DiagramError(
            f"region {key!r} has no crossings and no anchor; cannot insert"
        )
    b = Builder.from_diagram(d)
    front = []
    belows = []
    for anchor, _stored_flow in reg.gates:
        # the anchor is the strand's downstream attachment: flow runs
        # toward an entry anchor and away from an exit anchor
        flow = _true_flow(d, anchor)
        partner = b.unglue(anchor)
        front.append((partner, flow))
        belows.append(anchor)
    tops = [p for p, _f in front]
    top_flows = [f for _p, f in front]
    crossings: list[int] = []
    for _ in range(abs(t)):
        crossings += b.half_twist_block(front, 0, k, 1 if t > 0 else -1)
    for x in range(k):
        end, _flow = front[x]
        b.glue(end, belows[x])
    gates = []
    for i, flow in enumerate(top_flows):
        dart = tops[i]
        target = b.adj[dart[0]][dart[1]]
        gates.append((target, flow))
    b.regions[key] = {
        "row": reg.row,
        "col": reg.col,
        "strand_count": k,
        "half_twists": t,
        "crossings": crossings,
        "gates": gates,
    }
    return b.freeze()


def insert_half_twists(d: Diagram, region_key: str, t: int) -> Diagram:
    """Add t half twists to a region, renormalizing to |existing + t|.

    Opposite-handed insertion cancels pairwise (Reidemeister II), so the
    region always ends up a uniform chain.  Crossing count changes by
    |t| * k(k-1)/2 when the handedness agrees.  Component labels are
    preserved whenever the insertion parity keeps the strand connectivity
    (always the case for the even insertions Dehn filling produces).
    """
    reg = d.region(region_key)
    if t == 0:
        return d
    tag = d.circle_of_region(region_key)
    if tag is not None:
        bare = fill_crossing_circle(d, tag.label, 0)
        twisted = insert_half_twists(bare, region_key, t)
        return add_crossing_circle(twisted, region_key, tag.label)
    if not reg.crossings:
        new = _insert_into_empty_region(d, region_key, t)
    else:
        new = _rebuild_region(d, region_key, t)
    delta = (abs(reg.half_twists + t) - abs(reg.half_twists))
    assert new.n == d.n + delta * reg.strand_count * (reg.strand_count - 1) // 2
    return new


def add_crossing_circle(d: Diagram, region_key: str, label: str | None = None) -> Diagram:
    """Add an unknotted crossing circle around a region's strands (2k new
    crossings, one new component)."""
    reg = d.region(region_key)
    if d.circle_of_region(region_key) is not None:
        raise DiagramError(f"region {region_key!r} is already encircled")
    if not reg.gates:
        raise DiagramError(f"region {region_key!r} has no anchor for a circle")
    label = label or f"C[{region_key}]"
    if label in d.components or label in d.free_loops:
        raise DiagramError(f"component {label!r} already exists")
    b = Builder.from_diagram(d)
    k = reg.strand_count
    gate_set = {dart for dart, _f in reg.gates}
    front: list = [None] * k
    reattach = []
    pos_of_gate = {dart: i for i, (dart, _f) in enumerate(reg.gates)}
    for i, (dart, _stored_flow) in enumerate(reg.gates):
        reattach.append(dart)
        if front[i] is not None:
            continue
        flow = _true_flow(d, dart)
        above = d.adj[dart[0]][dart[1]]
        if above in gate_set:
            # the arc above loops straight to another gate of this region
            # (a cap): it becomes the arc between the two circle tops
            j = pos_of_gate[above]
            e_i, e_j = b.new_arc()
            b.unglue(dart)
            front[i] = (e_i, flow)
            front[j] = (e_j, _true_flow(d, above))
        else:
            b.unglue(above)
            front[i] = (above, flow)
    uppers, lowers = b.crossing_circle(front, 0, k, label)
    for pos in range(k):
        end, _ = front[pos]
        b.glue(end, reattach[pos])
    b.circles[label] = CrossingCircleTag(
        label=label,
        region_key=region_key,
        upper_crossings=tuple(uppers),
        lower_crossings=tuple(lowers),
    )
    # the circle is now the region's topmost structure: re-anchor the gates
    b.regions[region_key]["gates"] = [
        ((uppers[i], 0), front[i][1]) for i in range(k)
    ]
    new = b.freeze()
    assert new.n == d.n + 2 * k
    return new


def fill_crossing_circle(d: Diagram, circle_label: str, q: int) -> Diagram:
    """Dehn fill a crossing circle along slope 1/q.

    The circle disappears and the enclosed region gains 2q half twists
    (q full twists); q = 0 is the meridian filling and restores the
    unaugmented diagram.
    """
    if circle_label not in d.circles:
        if circle_label in d.components or circle_label in d.free_loops:
            raise DiagramError(f"component {circle_label!r} is not a crossing circle")
        raise DiagramError(f"no crossing circle {circle_label!r}")
    tag = d.circles[circle_label]
    return _rebuild_region(d, tag.region_key, 2 * q, circle_label=circle_label)


# --------------------------------------------------------------------------
# Free-function spellings of the diagram invariants.


def linking_number(d: Diagram, comp_a: str, comp_b: str) -> int:
    return d.linking_number(comp_a, comp_b)


def writhe(d: Diagram, component: str | None = None) -> int:
    return d.writhe(component)


def component_count(d: Diagram) -> int:
    return d.component_count()


def crossing_count(d: Diagram) -> int:
    return d.crossing_count()


def reverse_component(d: Diagram, label: str) -> Diagram:
    """Reverse one component's orientation (flips its passage entries)."""
    if label in d.free_loops:
        return d
    i = d._comp_id(label)
    under_entry = list(d.under_entry)
    over_entry = list(d.over_entry)
    for c in range(d.n):
        if d.comp_under[c] == i:
            under_entry[c] = (under_entry[c] + 2) % 4
        if d.comp_over[c] == i:
            over_entry[c] = (over_entry[c] + 2) % 4
    return Diagram(
        d.adj,
        under_entry,
        over_entry,
        d.comp_under,
        d.comp_over,
        d.components,
        d.free_loops,
        d.regions,
        d.circles,
        d.meta,
    )
