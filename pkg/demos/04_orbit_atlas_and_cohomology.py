#!/usr/bin/env python3
"""Classification atlas and invariant cohomology.

Sweeps every stabilizer subset of a chosen algebra, printing the three-way
verdict and the vanishing witness for the orbits that admit no compatible
pair; then computes invariant-complex cohomology against the Weyl-coset
oracle on a branching orbit.
"""

from itertools import combinations

from orbitpoisson import (
    LinearForm,
    betti_numbers,
    build_chevalley_basis,
    build_levi,
    build_root_system,
    classify_good,
    de_rham_betti,
    kks,
)

rs = build_root_system("D", 4)
tb = build_chevalley_basis(rs)

print("== orbit atlas for D4 (gamma = stabilizer simple roots)")
for size in range(rs.rank + 1):
    for gamma in combinations(range(1, rs.rank + 1), size):
        verdict = classify_good(rs, gamma, tb)
        mark = "good" if verdict.good else "not good"
        extra = ""
        if verdict.witness is not None:
            extra = f"  (form forced to vanish on {verdict.witness.quasiroot})"
        print(f"   gamma={str(set(gamma) or '{}'):<14} {mark}{extra}")

print("\n== cohomology of the good orbit gamma={1,2}")
levi = build_levi(rs, (1, 2))
v = kks(levi, LinearForm(levi, [1, 1]))
betti = betti_numbers(levi, tb, v)
oracle = de_rham_betti(rs, (1, 2))
print("   invariant complex:", betti)
print("   Weyl-coset oracle:", oracle)
print("   equal:", betti == oracle,
      "  Euler characteristic:", sum(b * (-1) ** k for k, b in enumerate(betti)))
