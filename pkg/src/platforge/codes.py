"""Interchange codes: PD, Gauss, and DT.

PD code: one crossing per line, ``X(a,b,c,d)`` with arc labels 1..2N; slot a
is the incoming understrand and b, c, d follow counterclockwise.  Arc labels
run sequentially along each component, component after component.

Gauss code: one line per component, ``<label>: O+3 U-1 ...`` with the sign
of each crossing attached to its token.

DT code: the standard even-label sequence; knots only.

Crossing-free components cannot be carried by PD/Gauss crossing lists; the
0-crossing unknot exports as an empty PD code, and free loops travel in the
family manifests instead.
"""

from __future__ import annotations

import re
from collections import defaultdict

from .diagram import Diagram, DiagramError

__all__ = [
    "to_pd_code",
    "from_pd_code",
    "to_gauss_code",
    "parse_gauss_code",
    "linking_from_gauss",
    "to_dt_code",
]


def _passage_order(d: Diagram):
    """Deterministic traversal: components in label order of first passage.

    Returns (per-component list of (crossing, entry_slot) passages, arc
    labels): arcs are numbered 1..2N along the traversal; ``arc_at[dart]``
    maps both darts of an arc to its label.
    """
    comp_first: dict[int, tuple] = {}
    for c in range(d.n):
        for entry in (d.under_entry[c], d.over_entry[c]):
            comp = d.passage_component(c, entry)
            if comp not in comp_first:
                comp_first[comp] = (c, entry)
    arc_at: dict[tuple, int] = {}
    passages: dict[int, list] = {}
    label = 0
    for comp in sorted(comp_first):
        start = comp_first[comp]
        walk = []
        cur = start
        while True:
            walk.append(cur)
            c, s = cur
            exit_dart = (c, (s + 2) % 4)
            label += 1
            arc_at[exit_dart] = label
            nxt = d.adj[c][(s + 2) % 4]
            arc_at[nxt] = label
            cur = nxt
            if cur == start:
                break
        # the final arc wraps to the start: keep its label
        passages[comp] = walk
    return passages, arc_at


def to_pd_code(d: Diagram) -> str:
    passages, arc_at = _passage_order(d)
    lines = []
    for c in range(d.n):
        u = d.under_entry[c]
        slots = [(c, (u + i) % 4) for i in range(4)]
        a, b_, c_, d_ = (arc_at[s] for s in slots)
        lines.append(f"X({a},{b_},{c_},{d_})")
    return "\n".join(lines) + ("\n" if lines else "")


_PD_LINE = re.compile(r"^\s*X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def from_pd_code(text: str) -> Diagram:
    """Rebuild a diagram from PD text.

    Orientations are recovered from the arc-label matching: the understrand
    runs a -> c; over-strand direction is propagated through shared arcs,
    with an arbitrary (deterministic) choice for any all-over component.
    Raises DiagramError for codes that do not close up into a planar
    diagram.
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        m = _PD_LINE.match(line)
        if not m:
            raise DiagramError(f"bad PD line {lineno}: {line!r}")
        rows.append(tuple(int(g) for g in m.groups()))
    n = len(rows)
    if n == 0:
        return Diagram([], [], [], [], [], [], free_loops=("K",))

    occur = defaultdict(list)  # arc label -> [(crossing, slot)]
    for c, row in enumerate(rows):
        for s, lab in enumerate(row):
            occur[lab].append((c, s))
    for lab, occ in occur.items():
        if len(occ) != 2:
            raise DiagramError(f"arc label {lab} appears {len(occ)} times")

    # role[dart] = True if the arc enters the crossing here (head)
    role: dict[tuple, bool] = {}
    pending = []
    for c in range(n):
        role[(c, 0)] = True
        role[(c, 2)] = False
        pending.append((c, 0))
        pending.append((c, 2))
    def propagate(stack):
        while stack:
            d0 = stack.pop()
            lab = rows[d0[0]][d0[1]]
            o1, o2 = occur[lab]
            d1 = o2 if o1 == d0 else o1
            want = not role[d0]
            if d1 in role:
                if role[d1] != want:
                    raise DiagramError(f"inconsistent orientations at arc {lab}")
                continue
            role[d1] = want
            stack.append(d1)
            c2, s2 = d1
            if s2 in (1, 3):
                mate = (c2, 4 - s2)
                if mate not in role:
                    role[mate] = not want
                    stack.append(mate)

    propagate(pending)
    # any untouched all-over components: orient deterministically
    for c in range(n):
        if (c, 1) not in role:
            role[(c, 1)] = True
            role[(c, 3)] = False
            propagate([(c, 1), (c, 3)])

    adj = [[None] * 4 for _ in range(n)]
    for lab, (d0, d1) in occur.items():
        adj[d0[0]][d0[1]] = d1
        adj[d1[0]][d1[1]] = d0
    under_entry = [0] * n
    over_entry = [1 if role[(c, 1)] else 3 for c in range(n)]

    # components by traversal
    comp_under = [-1] * n
    comp_over = [-1] * n
    names = []

    def set_comp(c, entry, comp):
        if entry % 2 == 0:
            comp_under[c] = comp
        else:
            comp_over[c] = comp

    for c0 in range(n):
        for entry in (0, over_entry[c0]):
            if (comp_under[c0] if entry % 2 == 0 else comp_over[c0]) >= 0:
                continue
            comp = len(names)
            names.append(f"c{comp}")
            cur = (c0, entry)
            while True:
                cc, ss = cur
                if (comp_under[cc] if ss % 2 == 0 else comp_over[cc]) >= 0:
                    break
                set_comp(cc, ss, comp)
                cur = adj[cc][(ss + 2) % 4]
    return Diagram(adj, under_entry, over_entry, comp_under, comp_over, names)


def to_gauss_code(d: Diagram) -> str:
    """Per-component signed O/U sequences; crossings numbered by first visit."""
    passages, _ = _passage_order(d)
    number: dict[int, int] = {}
    for comp in sorted(passages):
        for c, _s in passages[comp]:
            if c not in number:
                number[c] = len(number) + 1
    lines = []
    for comp in sorted(passages):
        toks = []
        for c, s in passages[comp]:
            ou = "U" if s == d.under_entry[c] else "O"
            sgn = "+" if d.sign(c) > 0 else "-"
            toks.append(f"{ou}{sgn}{number[c]}")
        lines.append(f"{d.components[comp]}: " + " ".join(toks))
    for loop in d.free_loops:
        lines.append(f"{loop}:")
    return "\n".join(lines) + ("\n" if lines else "")


_GAUSS_TOKEN = re.compile(r"^([OU])([+-])(\d+)$")


def parse_gauss_code(text: str) -> dict[str, list[tuple[str, int, int]]]:
    """Parse Gauss text into {component: [(O|U, sign, crossing id), ...]}."""
    out: dict[str, list] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if ":" not in line:
            raise DiagramError(f"bad Gauss line {lineno}: {line!r}")
        label, rest = line.split(":", 1)
        toks = []
        for tok in rest.split():
            m = _GAUSS_TOKEN.match(tok)
            if not m:
                raise DiagramError(f"bad Gauss token {tok!r} on line {lineno}")
            toks.append((m.group(1), 1 if m.group(2) == "+" else -1, int(m.group(3))))
        out[label.strip()] = toks
    return out


def linking_from_gauss(text: str, comp_a: str, comp_b: str) -> int:
    """Recompute a linking number from Gauss text alone.

    Independent of the diagram structures: uses only the serialized
    sequences.  Half the signed count of crossings shared by the two
    component lines.
    """
    seqs = parse_gauss_code(text)
    if comp_a not in seqs or comp_b not in seqs:
        raise DiagramError("component missing from Gauss code")
    ids_a = {cid: sgn for _ou, sgn, cid in seqs[comp_a]}
    total = 0
    for _ou, sgn, cid in seqs[comp_b]:
        if cid in ids_a:
            if ids_a[cid] != sgn:
                raise DiagramError(f"sign mismatch for crossing {cid}")
            total += sgn
    if total % 2:
        raise DiagramError("odd shared-sign sum in Gauss code")
    return total // 2


def to_dt_code(d: Diagram) -> str:
    """Standard DT sequence; defined for knot diagrams only.

    The even label is negated when that visit passes over.  The emitted
    sequence is the lexicographic minimum over basepoints and directions.
    """
    if d.component_count() != 1:
        raise DiagramError("DT codes exist for knots only")
    if d.n == 0:
        return "\n"
    # the knot's passage cycle
    start = (0, d.under_entry[0])
    cycle = []
    cur = start
    while True:
        cycle.append(cur)
        c, s = cur
        cur = d.adj[c][(s + 2) % 4]
        if cur == start:
            break
    L = len(cycle)  # = 2N
    reversed_cycle = _reverse_passages(d, cycle)

    best = None
    for seq in (cycle, reversed_cycle):
        for shift in range(L):
            rot = seq[shift:] + seq[:shift]
            labels = {}
            pairs = {}
            for idx, (c, s) in enumerate(rot, 1):
                pairs.setdefault(c, []).append((idx, s))
            code = []
            ok = True
            for idx, (c, s) in enumerate(rot, 1):
                if idx % 2 == 1:
                    (i1, s1), (i2, s2) = pairs[c]
                    even_idx, even_slot = (i2, s2) if i1 == idx else (i1, s1)
                    if even_idx % 2 != 0:
                        ok = False
                        break
                    over = even_slot % 2 == 1
                    code.append(-even_idx if over else even_idx)
            if not ok:
                continue
            key = (tuple(abs(x) for x in code), tuple(x < 0 for x in code))
            if best is None or key < best[0]:
                best = (key, code)
    if best is None:
        raise DiagramError("no alternating odd/even labelling exists (non-realizable?)")
    return " ".join(str(x) for x in best[1]) + "\n"


def _reverse_passages(d: Diagram, cycle):
    """The same knot walked in the opposite direction."""
    rev = []
    for c, s in reversed(cycle):
        rev.append((c, (s + 2) % 4))
    return rev
