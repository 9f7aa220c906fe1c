"""The closed-form bounds, in exact rational arithmetic.

The genus-g bridge number after n annular twists is at least
(1/2)(n/(-36 chi) - 2g + 1) for a catching surface of Euler characteristic
chi; the two-punctured disk gives chi = -1 and the familiar n/36.
"""

from fractions import Fraction

from platforge.bounds import (
    bgl_lower_bound,
    bounds_table_csv,
    bridge_distance,
    euler_char_planar,
    jm_condition,
    min_twists_for,
)

chi = euler_char_planar(2)
print("chi of the 2-punctured disk:", chi)

for n in (0, 36, 108, 1080, 10**6):
    print(f"n = {n:>8}: bound = {bgl_lower_bound(n, 1, chi)}")

print("\nleast n forcing bridge number > b (g = 1):")
for b in (1, 5, 25):
    print(f"  b = {b:>3}: n = {min_twists_for(b, 1, chi)}")

print("\nbridge-sphere distance at the theorem's row count:")
for m in (3, 4, 5, 10):
    r = 4 * m * (m - 2) + 1
    print(f"  m = {m}: distance {bridge_distance(m, r)} > 2m: {jm_condition(m, r)}")

print("\nCSV table head:")
print("\n".join(bounds_table_csv(1, -1, list(range(0, 145, 36))).splitlines()[:5]))
