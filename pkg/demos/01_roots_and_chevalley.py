#!/usr/bin/env python3
"""Walk through the exact root-system and Chevalley-basis layer.

Builds a few simple types, prints their root counts and highest roots, and
shows the normalized structure constants with the identities that pin them
down: the trace-form pairing of opposite root vectors is 1, the cyclic
identity holds on zero-sum triples, and the Jacobi identity holds on every
basis triple.
"""

from itertools import combinations

from orbitpoisson import build_chevalley_basis, build_root_system, highest_root_coefficients
from orbitpoisson.roots import add, negate

for type_label, rank in [("A", 2), ("B", 2), ("D", 4), ("G", 2)]:
    rs = build_root_system(type_label, rank)
    print(f"== {type_label}{rank}: {len(rs.roots)} roots, "
          f"{len(rs.positive_roots)} positive")
    print("   highest root coefficients:", highest_root_coefficients(rs))

    tb = build_chevalley_basis(rs)
    alpha = rs.simple_roots[0]
    E, F = tb.root_vector(alpha), tb.root_vector(negate(alpha))
    print("   K(E, F) =", tb.killing(E, F), "  [E, F] =",
          {tb.basis_name(i): str(c) for i, c in tb.bracket(E, F).items()})

    # one zero-sum triple and its cyclic constants
    for a in rs.positive_roots:
        for b in rs.positive_roots:
            c = negate(add(a, b))
            if c in rs.roots:
                print(f"   cyclic: N{a},{b} = N{b},{c} = N{c},{a} =",
                      tb.structure_constant(a, b))
                break
        else:
            continue
        break

    bad = 0
    for i, j, k in combinations(range(tb.dim), 3):
        total = {}
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            for w, f in tb.bracket_index(y, z):
                for v, g in tb.bracket_index(x, w):
                    total[v] = total.get(v, 0) + f * g
        bad += any(total.values())
    print(f"   Jacobi defects over all basis triples: {bad}")
