"""Why the vanishing hypothesis matters: stars alone do not give duality.

The surface_r3 fixture is a two-dimensional fan in rank three whose proper
face stars all satisfy duality; the fan itself does not, because its
Borel-Moore homology is not concentrated in the top degree. The signed Euler
characteristic already betrays the obstruction: it counts -1 where the vertex
module has dimension 1.
"""

from tropfan import (
    bm_chain_complex,
    euler_characteristic,
    fixtures,
    is_tpd,
    star_row_complex,
    tpd_from_stars_check,
)

wf = fixtures.load("surface_r3")
fan = wf.fan
print(f"rays: {len(fan.rays)}, two-cones: {len(fan.faces_of_dim(2))}")
print("weights:", sorted(wf.weights.values()))

chi = euler_characteristic(bm_chain_complex(fan, 2, wf.ring))
print(f"\nsigned Euler characteristic of the top coefficient complex: {chi}")
table = bm_chain_complex(fan, 2, wf.ring).homology()
print("homology dims:", {q: table.group(q).free_rank for q in table.entries})

report = tpd_from_stars_check(wf)
print("\nstar-criterion report:")
print("  homology concentrated in top degree:", report.global_vanishing)
print("  all proper stars satisfy duality:", report.proper_stars_tpd)
print("  global duality:", report.conclusion)
print("  status:", report.status)
assert not is_tpd(wf).verdict

print("\nthe star top-homology row still assembles (closure is certified):")
row = star_row_complex(wf, 0, wf.ring)
print("  block ranks by degree:", {q: row.rank(q) for q in row.degrees})
print("  homology of the row sits in degrees", row.homology().nonzero_degrees())
