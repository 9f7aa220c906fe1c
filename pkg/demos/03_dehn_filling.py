"""Dehn filling crossing circles, checked at the diagram level.

Filling a crossing circle along slope 1/q deletes the circle and inserts q
full twists (2q half twists) into its region.  The schedule 1/3 on the two
clasp circles, 1/((a-1)/2) on first-row circles, 1/(a/2) elsewhere turns
the generalized augmented link into the banded link with twist matrix a;
the two construction routes agree up to diagram isomorphism, and an
off-by-one slope breaks the agreement.
"""

from platforge.canonical import diagram_isomorphic
from platforge.diagram import add_crossing_circle, fill_crossing_circle, plat_diagram
from platforge.braid import parse_braid
from platforge.families import (
    FillingInstruction,
    fill_schedule,
    fill_to_l_prime,
    l_prime,
    random_params,
    script_l,
)
from platforge.diagram import fill_circles

# the local picture: one crossing, slope 1/3, seven crossings
d = plat_diagram(parse_braid("strands=4; 2^1"))
d = add_crossing_circle(d, "t0", "C")
d = fill_crossing_circle(d, "C", 3)
print("1 crossing + 1/3 filling ->", d.regions["t0"].half_twists, "half twists")

# meridian filling undoes the augmentation
base = plat_diagram(parse_braid("strands=6; 2^7 4^-9"))
again = fill_crossing_circle(add_crossing_circle(base, "t0", "C"), "C", 0)
print("meridian filling restores the diagram:", diagram_isomorphic(again, base))

# the full schedule
p = random_params(g=1, seed=7)
sched = fill_schedule(p)
print(f"\nschedule: {len(sched)} fillings, first three:",
      [(s.circle, f"1/{s.denominator}") for s in sched[:3]])
filled = fill_to_l_prime(1, p)
target = l_prime(p)
print("filled diagram isomorphic to the direct construction:",
      diagram_isomorphic(filled, target))

# negative control
sched[5] = FillingInstruction(sched[5].circle, sched[5].denominator + 1)
corrupt = fill_circles(script_l(1), [(s.circle, s.denominator) for s in sched])
print("one slope off by one still isomorphic?",
      diagram_isomorphic(corrupt, target))
