"""Braid words and plat closures.

A plat closes a braid on 2m strands with m nested caps at top and bottom.
The number of link components is pure permutation-group data: the orbits
of the cap involution together with its conjugate by the braid's
underlying permutation.
"""

from platforge.braid import (
    format_braid,
    parse_braid,
    plat_component_count,
    underlying_permutation,
)
from platforge.diagram import plat_diagram
from platforge.render import plat_svg

word = parse_braid("strands=6; 2^7 4^-9")
print("word:", format_braid(word))
print("underlying permutation:", underlying_permutation(word))
print("plat components:", plat_component_count(word))

# the trefoil is the 2-strand plat with three half twists
trefoil = plat_diagram(parse_braid("strands=2; 1^3"))
print("\ntrefoil: crossings", trefoil.crossing_count(), "writhe", trefoil.writhe())

# even powers never change the plat's component count
for extra in ("", " 3^2", " 3^2 3^-2"):
    w = parse_braid("strands=6; 2^7 4^-9" + extra)
    print(f"components of {format_braid(w)!r}:", plat_component_count(w))

with open("plat_demo.svg", "w", encoding="utf-8") as fh:
    fh.write(plat_svg(word))
print("\nwrote plat_demo.svg (debug rendering, no correctness contract)")
