"""A tour of the link families.

Everything descends from one template: a highly twisted plat on 2m = 2(g+2)
strands with r = 4m(m-2)+1 rows, first-row twist counts odd, the rest even,
all magnitudes at least six.
"""

from platforge.families import (
    k_g_prime,
    k_n,
    l_g_augmented,
    l_prime,
    random_params,
    script_l,
)

p = random_params(g=1, seed=7)
print(f"parameters: g={p.g}, m={p.m}, r={p.r}, regions={p.twist_region_count()}")

kg = k_g_prime(p)
print(
    f"\ntwisted plat knot: {kg.crossing_count()} crossings, "
    f"{kg.component_count()} component,"
    f" reported bridge number {kg.meta['reported_bridge_number']['value']}"
)

lp = l_prime(p)
print(
    f"banded link K u L1 u L2: {lp.component_count()} components, "
    f"clasp {len(lp.regions['clasp-a'].crossings) + len(lp.regions['clasp-b'].crossings)} "
    f"positive crossings, lk(K,L1)={lp.linking_number('K','L1')}, "
    f"lk(K,L2)={lp.linking_number('K','L2')}"
)

lg = l_g_augmented(1)
print(f"fully augmented link: {lg.component_count()} components "
      f"(1 knot + {len(lg.circles)} crossing circles)")

sl = script_l(1)
print(f"generalized augmented link: {sl.component_count()} components "
      f"(3 + 2 clasp circles + {len(sl.circles) - 2} region circles)")

rep = k_n(p, 3)
print(
    f"\nthree annular twists: explicit diagram has "
    f"{rep.explicit.crossing_count()} crossings in "
    f"{rep.explicit.component_count()} component; "
    f"filling slopes {rep.meta['filling_slopes']}"
)
