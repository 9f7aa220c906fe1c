"""Constructors for the link families and the filling schedules between them.

Everything is built from one parameterized template, the *cabled twisted
plat*: a braid on 2m wire bundles closed by nested caps, where every wire
carries ``w`` parallel sheets and the (i, j) grid entry twists the full
2w-strand bundle a_{i,j} half-turns.

* w = 1 gives the highly twisted plat knots themselves;
* w = 2 gives the banded families: the two sheets are the flat pushoffs
  L1, L2 cobounding an annulus whose core follows the plat, with a clasp
  (two 2-strand twist sub-regions at the bottom of the first column) and a
  small unknot K piercing the band twice between the clasp groups;
* w = 2n gives the explicit result of winding K n times around the band in
  each direction: the sheets are the winding circuits, chained into a
  single component at the corner.

The augmented variants add a vertical crossing circle around every grid
region and around each clasp crossing; Dehn filling those circles with the
schedule below reproduces the unaugmented family, which is checked at the
diagram level by `fill_to_l_prime`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .braid import BraidLetter, BraidWord
from .diagram import (
    Builder,
    CrossingCircleTag,
    Diagram,
    DiagramError,
    fill_circles,
    resolve_gate,
)

__all__ = [
    "FamilyParams",
    "FillingInstruction",
    "KnRepresentation",
    "random_params",
    "braid_word_for",
    "k_g_prime",
    "l_prime",
    "l_g_augmented",
    "script_l",
    "fill_schedule",
    "fill_to_l_prime",
    "k_n",
    "fixed_bridge_family",
    "manifest_for",
    "from_manifest",
]


def row_generators(m: int, i: int) -> list[int]:
    """Generator indices used by row i: even indices on odd rows, odd on even."""
    if i % 2 == 1:
        return list(range(2, 2 * m - 1, 2))
    return list(range(1, 2 * m, 2))


@dataclass(frozen=True)
class FamilyParams:
    """The parameter pack (g, m, r, a_{i,j}).

    ``a`` is a ragged list: row i (1-based) holds the twist counts for that
    row's generators in increasing order (m-1 entries on odd rows, m on
    even rows).  The highly-twisted constraints: every |a_{i,j}| >= 6 (7
    when ``min_magnitude`` says so), first-row entries odd, all others
    even, and r odd.
    """

    g: int
    r: int
    a: tuple[tuple[int, ...], ...]
    m: int = None  # type: ignore[assignment]
    seed: Optional[int] = None
    min_magnitude: int = 6

    def __post_init__(self):
        if self.g < 1:
            raise ValueError(
                "g must be >= 1 (m - 2 = 0 degenerates the distance formula)"
            )
        if self.m is None:
            object.__setattr__(self, "m", self.g + 2)
        if self.m < 3:
            raise ValueError("m must be >= 3")
        if self.r < 1 or self.r % 2 == 0:
            raise ValueError("row count r must be odd and positive")
        if len(self.a) != self.r:
            raise ValueError(f"need {self.r} rows of twist counts, got {len(self.a)}")
        object.__setattr__(self, "a", tuple(tuple(row) for row in self.a))
        for i, row in enumerate(self.a, 1):
            gens = row_generators(self.m, i)
            if len(row) != len(gens):
                raise ValueError(
                    f"row {i} must have {len(gens)} entries, got {len(row)}"
                )
            for j, val in zip(gens, row):
                if abs(val) < self.min_magnitude:
                    raise ValueError(
                        f"|a[{i},{j}]| must be >= {self.min_magnitude}, got {val}"
                    )
                if i == 1 and val % 2 == 0:
                    raise ValueError(f"first-row twist counts must be odd, a[1,{j}]={val}")
                if i > 1 and val % 2 == 1:
                    raise ValueError(f"twist counts below row 1 must be even, a[{i},{j}]={val}")

    def value(self, i: int, j: int) -> int:
        gens = row_generators(self.m, i)
        return self.a[i - 1][gens.index(j)]

    def grid(self) -> list[tuple[int, int, int]]:
        """All (row, generator, twists) triples in row-major order."""
        out = []
        for i in range(1, self.r + 1):
            for j, val in zip(row_generators(self.m, i), self.a[i - 1]):
                out.append((i, j, val))
        return out

    def twist_region_count(self) -> int:
        return sum(len(row) for row in self.a)

    def crossing_total(self) -> int:
        return sum(abs(v) for row in self.a for v in row)


@dataclass(frozen=True)
class FillingInstruction:
    circle: str
    denominator: int  # slope 1/q
    numerator: int = 1

    def __post_init__(self):
        if self.numerator != 1:
            raise ValueError("only 1/q slopes arise on crossing circles")


def theorem_row_count(m: int) -> int:
    return 4 * m * (m - 2) + 1


def random_params(g: int, seed: int, magnitude_bound: int = 9) -> FamilyParams:
    """Draw a valid parameter matrix, deterministically in ``seed``.

    Row one gets odd magnitudes in [7, bound], other rows even magnitudes
    in [6, bound]; signs are uniform.
    """
    if g < 1:
        raise ValueError("g must be >= 1 (m - 2 = 0 degenerates the distance formula)")
    if magnitude_bound < 7:
        raise ValueError("magnitude_bound must be >= 7")
    m = g + 2
    r = theorem_row_count(m)
    rng = random.Random(seed)
    rows = []
    for i in range(1, r + 1):
        vals = []
        for _ in row_generators(m, i):
            if i == 1:
                mag = rng.randrange(7, magnitude_bound + 1, 2)
            else:
                mag = rng.randrange(6, magnitude_bound + 1, 2)
            vals.append(mag * rng.choice((1, -1)))
        rows.append(tuple(vals))
    return FamilyParams(g=g, r=r, a=tuple(rows), seed=seed)


def braid_word_for(p: FamilyParams) -> tuple[BraidWord, list[tuple[int, int]]]:
    """The plat braid word of the parameter grid, with (row, col) per letter."""
    letters = []
    meta = []
    for i, j, val in p.grid():
        letters.append(BraidLetter(j, val))
        meta.append((i, j))
    return BraidWord(2 * p.m, tuple(letters)), meta


# --------------------------------------------------------------------------
# The cabled template.


def _sheet_label(w: int, s: int) -> str:
    if w == 1:
        return "K"
    if w == 2:
        return "L1" if s == 1 else "L2"
    return f"sheet{s}"


def _cabled_template(
    m: int,
    r: int,
    a_of: Callable[[int, int], int],
    w: int,
    clasp: Optional[tuple[int, int]] = None,
    augment: bool = False,
    clasp_circles: bool = False,
    corner: Optional[str] = None,  # "marker" | "winding" | None
    corner_wiring: Optional[dict[int, int]] = None,
    corner_probe: Optional[list] = None,
) -> Builder:
    b = Builder()
    front: list = [None] * (2 * m * w)
    for pair in range(1, m + 1):
        for s in range(1, w + 1):
            e1, e2 = b.new_arc(tag=_sheet_label(w, s))
            left = (2 * pair - 2) * w + (s - 1)
            right = (2 * pair - 1) * w + (w - s)
            front[left] = (e1, 1)
            front[right] = (e2, -1)
            if pair == 1:
                b.mark_seed(e1, _sheet_label(w, s))

    for i in range(1, r + 1):
        for j in row_generators(m, i):
            lo = (j - 1) * w
            k = 2 * w
            ht = a_of(i, j)
            key = f"r{i}c{j}"
            label = f"C[{i},{j}]"
            flows = [front[lo + x][1] for x in range(k)]
            circle_gates = None
            if augment:
                uppers, lowers = b.crossing_circle(front, lo, k, label)
                b.circles[label] = CrossingCircleTag(
                    label=label,
                    region_key=key,
                    upper_crossings=tuple(uppers),
                    lower_crossings=tuple(lowers),
                )
                circle_gates = [((uppers[x], 0), flows[x]) for x in range(k)]
            gate_ends = [front[lo + x] for x in range(k)]
            crossings: list[int] = []
            for _ in range(abs(ht)):
                crossings += b.half_twist_block(front, lo, k, 1 if ht > 0 else -1)
            if circle_gates is not None:
                gates = circle_gates
            else:
                resolved = [resolve_gate(e, f) for e, f in gate_ends]
                gates = [] if None in resolved else resolved
            b.regions[key] = {
                "row": i,
                "col": j,
                "strand_count": k,
                "half_twists": ht,
                "crossings": crossings,
                "gates": gates,
            }

    if clasp is not None:
        _build_clasp(b, front, w, clasp, clasp_circles, corner, corner_wiring, corner_probe)

    for pair in range(1, m + 1):
        for s in range(1, w + 1):
            left = (2 * pair - 2) * w + (s - 1)
            right = (2 * pair - 1) * w + (w - s)
            b.glue(front[left][0], front[right][0])
    return b


def _build_clasp(b, front, w, clasp, clasp_circles, corner, corner_wiring, corner_probe):
    """Clasp sub-regions and the corner tangle, on the first wire bundle."""
    for half, count in zip(("a", "b"), clasp):
        key = f"clasp-{half}"
        label = "C1" if half == "a" else "C2"
        flows = [front[x][1] for x in range(w)]
        circle_gates = None
        if clasp_circles:
            uppers, lowers = b.crossing_circle(front, 0, w, label)
            b.circles[label] = CrossingCircleTag(
                label=label,
                region_key=key,
                upper_crossings=tuple(uppers),
                lower_crossings=tuple(lowers),
            )
            circle_gates = [((uppers[x], 0), flows[x]) for x in range(w)]
        gate_ends = [front[x] for x in range(w)]
        crossings: list[int] = []
        for _ in range(abs(count)):
            crossings += b.half_twist_block(front, 0, w, 1 if count > 0 else -1)
        if circle_gates is not None:
            gates = circle_gates
        else:
            resolved = [resolve_gate(e, f) for e, f in gate_ends]
            gates = [] if None in resolved else resolved
        b.regions[key] = {
            "row": key,
            "col": None,
            "strand_count": w,
            "half_twists": count,
            "crossings": crossings,
            "gates": gates,
        }
        if half == "a":
            if corner == "marker":
                b.marker_circle(front, 0, w, "K")
            elif corner == "winding":
                if corner_probe is not None:
                    corner_probe.extend(front[:w])  # pass-through probe
                elif corner_wiring is not None:
                    _permute_front(b, front, 0, w, corner_wiring)


def _permute_front(b: Builder, front, lo: int, k: int, perm: dict[int, int]):
    """Realize the wiring top position x -> bottom position perm[x] with
    adjacent crossings (insertion sort, incoming strand passes over)."""
    inv = {v: x for x, v in perm.items()}
    cur = list(range(k))
    for target in range(k):
        want = inv[target]
        pos = cur.index(want)
        for q in range(pos, target, -1):
            b.cross_adjacent(front, lo + q - 1, 1)
            cur[q - 1], cur[q] = cur[q], cur[q - 1]


# --------------------------------------------------------------------------
# Family constructors.


def k_g_prime(p: FamilyParams) -> Diagram:
    """The highly twisted plat knot of the parameter grid (w = 1)."""
    b = _cabled_template(p.m, p.r, p.value, w=1)
    d = b.freeze()
    d = _force_label(d, "K")
    return d.with_meta(
        family="k_g_prime",
        g=p.g,
        m=p.m,
        r=p.r,
        reported_bridge_number={"value": p.m, "provenance": "cited theorem, not computed"},
        reported_tunnel_number={"value": p.m - 1, "provenance": "cited theorem, not computed"},
        reported_hyperbolic={"value": True, "provenance": "cited theorem, not computed"},
    )


def _force_label(d: Diagram, label: str) -> Diagram:
    if d.component_count() != 1:
        return d
    new = d._shallow_copy()
    if d.components:
        new.components = (label,)
    else:
        new.free_loops = (label,)
    return new


def l_prime(p: FamilyParams) -> Diagram:
    """The 3-component link K u L1 u L2: flat band pushoffs of the plat with
    a_{i,j} half twists in each 4-strand region, a 7+7 positive clasp at the
    bottom of the first column, and the band-piercing unknot K between the
    clasp groups."""
    b = _cabled_template(p.m, p.r, p.value, w=2, clasp=(7, 7), corner="marker")
    d = b.freeze()
    d = d.with_meta(
        family="l_prime",
        g=p.g,
        m=p.m,
        r=p.r,
        annulus={
            "boundary": ("L1", "L2"),
            "core": "the underlying twisted plat",
            "pierced_by": "K",
            "piercings": 2,
        },
    )
    _check_components(d, {"K", "L1", "L2"})
    return d


def l_g_augmented(g: int) -> Diagram:
    """The fully augmented link: the plat template with one positive crossing
    per first-row region, none elsewhere, and a crossing circle around every
    region."""
    if g < 1:
        raise ValueError("g must be >= 1 (m - 2 = 0 degenerates the distance formula)")
    m = g + 2
    r = theorem_row_count(m)
    b = _cabled_template(m, r, lambda i, j: 1 if i == 1 else 0, w=1, augment=True)
    d = b.freeze()
    return d.with_meta(family="l_g", g=g, m=m, r=r)


def script_l(g: int) -> Diagram:
    """The generalized augmented link L1 u L2 u K u C1 u C2 u (all C_{i,j}).

    The band template with one half twist of four parallel strands per
    first-row region, flat elsewhere; every region encircled; the clasp is
    two single positive crossings each with its own circle; K pierces the
    band between them."""
    if g < 1:
        raise ValueError("g must be >= 1 (m - 2 = 0 degenerates the distance formula)")
    m = g + 2
    r = theorem_row_count(m)
    b = _cabled_template(
        m,
        r,
        lambda i, j: 1 if i == 1 else 0,
        w=2,
        clasp=(1, 1),
        augment=True,
        clasp_circles=True,
        corner="marker",
    )
    d = b.freeze()
    d = d.with_meta(family="script_l", g=g, m=m, r=r)
    _check_components(d, {"K", "L1", "L2", "C1", "C2"})
    return d


def _check_components(d: Diagram, expected: set[str]):
    missing = expected - set(d.component_labels())
    if missing:
        raise DiagramError(f"construction lost components: {missing}")


def fill_schedule(p: FamilyParams) -> list[FillingInstruction]:
    """The Dehn filling schedule turning the augmented template into the
    twisted family: slope 1/3 on the clasp circles, 1/((a-1)/2) on first-row
    circles, 1/(a/2) elsewhere."""
    out = [FillingInstruction("C1", 3), FillingInstruction("C2", 3)]
    for i, j, val in p.grid():
        if i == 1:
            if (val - 1) % 2 != 0:
                raise ValueError(f"a[1,{j}] must be odd, got {val}")
            q = (val - 1) // 2
        else:
            if val % 2 != 0:
                raise ValueError(f"a[{i},{j}] must be even, got {val}")
            q = val // 2
        out.append(FillingInstruction(f"C[{i},{j}]", q))
    return out


def fill_to_l_prime(g: int, p: FamilyParams) -> Diagram:
    """Apply the filling schedule to the generalized augmented link; the
    result reproduces `l_prime(p)` at the diagram level (K untouched)."""
    if p.g != g:
        raise ValueError("parameter pack belongs to a different g")
    d = script_l(g)
    d = fill_circles(d, [(i.circle, i.denominator) for i in fill_schedule(p)])
    return d.with_meta(family="l_prime_via_filling", g=g)


@dataclass(frozen=True)
class KnRepresentation:
    """K twisted n times along the band: implicit form always (the base
    diagram plus the twist count, i.e. 1/n-type fillings on the band
    boundaries with the band framing), explicit diagram for small n."""

    base: Diagram
    n: int
    explicit: Optional[Diagram]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.explicit is not None and self.explicit.component_count() != 1:
            raise DiagramError("explicit twisted knot must be a single component")


def k_n(p: FamilyParams, n: int, explicit_limit: int = 10) -> KnRepresentation:
    """The n-fold annular twist of the corner unknot.

    The implicit form (base link + n) always exists; for n <= explicit_limit
    the explicit diagram is constructed by winding: 2n sheets follow the
    band around the plat (n per piercing arc), chained into one circuit at
    the corner.  Filling slopes on the band boundaries are recorded as
    -1/n and +1/n in the band framing.
    """
    if n < 0:
        raise ValueError("twist count n must be >= 0")
    base = l_prime(p)
    explicit = None
    if n <= explicit_limit:
        explicit = _explicit_k_n(p, n)
    meta = {
        "family": "k_n",
        "g": p.g,
        "n": n,
        "filling_slopes": {"L1": f"-1/{n}", "L2": f"+1/{n}"} if n else {},
        "explicit_crossings": None if explicit is None else explicit.n,
        "winding_sheets": 2 * n,
        "crossing_growth": {
            "model": "quadratic",
            "note": "the 2n winding circuits pairwise link through every "
            "twist region, so the constructed diagrams grow quadratically "
            "in n; per-n counts are exact",
        },
    }
    return KnRepresentation(base=base, n=n, explicit=explicit, meta=meta)


def _explicit_k_n(p: FamilyParams, n: int) -> Diagram:
    if n == 0:
        d = Diagram([], [], [], [], [], [], free_loops=("K",))
        return d.with_meta(family="k_n_explicit", g=p.g, n=0)
    w = 2 * n
    # pass 1: corner left as a straight pass-through; measure the circuit
    # monodromy at the corner
    probe: list = []
    b1 = _cabled_template(
        p.m, p.r, p.value, w=w, clasp=(7, 7), corner="winding", corner_probe=probe
    )
    sigma = _corner_monodromy(b1, probe)
    # visit the sheets in cross-section order: wiring tau chains circuit i
    # to circuit i+1, closing up after all 2n
    tau = {}
    for i in range(w):
        tau[sigma[i]] = (i + 1) % w
    b2 = _cabled_template(
        p.m, p.r, p.value, w=w, clasp=(7, 7), corner="winding", corner_wiring=tau
    )
    d = b2.freeze()
    if d.component_count() != 1:
        raise DiagramError("winding corner failed to chain the sheets")
    d = _force_label(d, "K")
    return d.with_meta(family="k_n_explicit", g=p.g, n=n)


def _corner_monodromy(b: Builder, probe: list) -> dict[int, int]:
    """From the pass-through corner, the map: corner-bottom position x ->
    corner-top position arrived at after one full circuit."""
    a_exit = {}
    b_gate = {}
    for x, (end, _flow) in enumerate(probe):
        if end.dart is None or end.other.dart is None:
            raise DiagramError("corner probe ends unattached")
        b_gate[x] = end.dart
        a_exit[end.other.dart] = x
    sigma = {}
    for x in range(len(probe)):
        cur = b_gate[x]
        while True:
            exit_dart = (cur[0], (cur[1] + 2) % 4)
            if exit_dart in a_exit:
                sigma[x] = a_exit[exit_dart]
                break
            nxt = b.adj[exit_dart[0]][exit_dart[1]]
            if nxt is None:
                raise DiagramError("monodromy walk hit an open dart")
            cur = nxt
    return sigma


def fixed_bridge_family(
    g: int, bridges: int, r: int, magnitude_bound: int = 9, seed: int = 0
) -> Diagram:
    """A plat with m = g + b wire pairs, r > 4m(m-2) rows, and magnitudes
    >= 7: the genus-g bridge number stays b while the twist count grows
    with r."""
    if g + bridges < 3:
        raise ValueError(
            "g + b must be >= 3 (smaller cases are 2-bridge, out of scope)"
        )
    m = g + bridges
    if r <= 4 * m * (m - 2):
        raise ValueError(f"row count must exceed 4m(m-2) = {4 * m * (m - 2)}")
    if r % 2 == 0:
        raise ValueError("row count r must be odd")
    if magnitude_bound < 7:
        raise ValueError("magnitude_bound must be >= 7")
    rng = random.Random(seed)
    rows = []
    for i in range(1, r + 1):
        vals = []
        for _ in row_generators(m, i):
            if i == 1:
                mag = rng.randrange(7, magnitude_bound + 1, 2)
            else:
                lobound = 8
                hi = max(magnitude_bound, lobound)
                mag = rng.randrange(lobound, hi + 1, 2)
            vals.append(mag * rng.choice((1, -1)))
        rows.append(tuple(vals))
    p = FamilyParams(g=g, m=m, r=r, a=tuple(rows), seed=seed, min_magnitude=7)
    b = _cabled_template(m, r, p.value, w=1)
    d = b.freeze()
    d = _force_label(d, "K")
    return d.with_meta(
        family="fixed_bridge",
        g=g,
        b=bridges,
        m=m,
        r=r,
        seed=seed,
        reported_bridge_number={"value": bridges, "provenance": "cited theorem, not computed"},
        twist_region_count=p.twist_region_count(),
    )


# --------------------------------------------------------------------------
# Manifests.


def manifest_for(obj) -> dict:
    """The JSON manifest describing a constructed family member."""
    if isinstance(obj, KnRepresentation):
        man = dict(obj.meta)
        man["family"] = "k_n"
        return man
    if isinstance(obj, Diagram):
        keys = ("family", "g", "b", "r", "n", "seed", "m")
        return {k: obj.meta[k] for k in keys if k in obj.meta}
    if isinstance(obj, FamilyParams):
        return {
            "family": "params",
            "g": obj.g,
            "m": obj.m,
            "r": obj.r,
            "a": [list(row) for row in obj.a],
            "seed": obj.seed,
        }
    raise TypeError(f"no manifest for {type(obj)!r}")


def params_from_manifest(man: dict) -> FamilyParams:
    return FamilyParams(
        g=man["g"],
        m=man.get("m") or man["g"] + 2,
        r=man["r"],
        a=tuple(tuple(row) for row in man["a"]),
        seed=man.get("seed"),
        min_magnitude=man.get("min_magnitude", 6),
    )


def from_manifest(man: dict):
    """Rebuild a family member from its manifest."""
    fam = man["family"]
    if fam == "params":
        return params_from_manifest(man)
    if fam in ("k_g_prime", "l_prime", "k_n"):
        if "a" in man:
            p = params_from_manifest(man)
        else:
            p = random_params(man["g"], man.get("seed", 0))
        if fam == "k_g_prime":
            return k_g_prime(p)
        if fam == "l_prime":
            return l_prime(p)
        return k_n(p, man["n"])
    if fam == "l_g":
        return l_g_augmented(man["g"])
    if fam == "script_l":
        return script_l(man["g"])
    if fam == "fixed_bridge":
        return fixed_bridge_family(
            man["g"], man["b"], man["r"], man.get("magnitude_bound", 9), man.get("seed", 0)
        )
    raise ValueError(f"unknown family {fam!r}")
