"""Build a fan by hand and compute its exact homology tables.

The running example is the cross: four rays along the coordinate axes of the
plane. Its top Borel-Moore homology is large (rank 3 for constant
coefficients), which is exactly why this fan fails Poincare duality later on.
"""

from tropfan import RingTag, bm_chain_complex, build_fan, compact_cochain_complex

Z = RingTag.Z()

fan = build_fan(
    ambient_rank=2,
    rays=[(1, 0), (0, 1), (-1, 0), (0, -1)],
    maximal_cones=[[0], [1], [2], [3]],
)
print(f"faces: {fan.face_count()} (vertex + {len(fan.faces_of_dim(1))} rays)")

for p in range(fan.dim + 1):
    complex_ = bm_chain_complex(fan, p, Z)
    table = complex_.homology()
    print(f"\ncoefficients in degree p = {p}:")
    print("  chain ranks:", {q: complex_.rank(q) for q in complex_.degrees})
    for q in sorted(table.entries, reverse=True):
        entry = table.entries[q]
        print(f"  H_{q}^BM = {entry.group}")
        for rep in entry.representatives:
            print(f"    cycle representative {rep}")

print("\ncompact-support cochain complex is the transpose dual:")
cc = compact_cochain_complex(fan, 1, Z)
print("  coboundary:", cc.diffs[0].data)
