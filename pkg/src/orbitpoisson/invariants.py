"""Finite-dimensional exact linear algebra on the invariant exterior powers
of the orbit tangent space: bases, the Cartan-involution split, the bracket
differential and its cohomology, the Weyl-coset de Rham oracle, and tensor
multiplicity checks.

Invariance is decided against generators: a weight-zero vector killed by the
raising operators of the simple Levi roots generates a trivial summand, hence
is invariant; the lowering operators are applied afterwards as a hard
assertion.  All kernels are computed exactly over the rationals.

The weight-zero monomial space splits under the class signature (the multiset
of quasiroots of the wedge factors), which the Levi operators preserve; the
kernel computation runs block by block.
"""

from __future__ import annotations

from fractions import Fraction

from .brackets import InternalInvariantError, InvariantBivector, realize
from .chevalley import ChevalleyBasis
from .levi import LeviDatum, Quasiroot
from .linalg import SpanSolver, kernel_basis, rank_of
from .multivec import Multivector, ad_action, project_to_m, schouten
from .roots import Coords, RootSystem, add, negate
from .scalars import GaussianRational, as_scalar


def weight_zero_monomials(
    levi: LeviDatum, basis: ChevalleyBasis, k: int
) -> list[tuple[int, ...]]:
    """Strictly increasing k-tuples of tangent-root basis indices whose roots
    sum to zero."""
    if k < 0 or k > levi.dim_m():
        return []
    if k == 0:
        return [()]
    idx_roots = sorted(
        (basis.index_of_root[r], r) for r in levi.m_roots
    )
    n = len(idx_roots)
    rank = levi.rs.rank
    maxabs = [max(abs(r[j]) for _, r in idx_roots) for j in range(rank)]
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def descend(start: int, remaining: int, partial: tuple[int, ...]):
        if remaining == 0:
            if not any(partial):
                out.append(tuple(chosen))
            return
        if n - start < remaining:
            return
        for j in range(rank):
            if abs(partial[j]) > remaining * maxabs[j]:
                return
        for pos in range(start, n - remaining + 1):
            idx, root = idx_roots[pos]
            chosen.append(idx)
            descend(pos + 1, remaining - 1, add(partial, root))
            chosen.pop()

    descend(0, k, (0,) * rank)
    return out


def _signature(levi: LeviDatum, basis: ChevalleyBasis, monomial) -> tuple:
    return tuple(
        sorted(levi.project(basis.root_order[i - basis.rank]) for i in monomial)
    )


def _raising_rows(levi, basis, monomials):
    """Rows of the stacked raising operators (one per simple Levi root) over
    the given monomial columns."""
    col = {m: j for j, m in enumerate(monomials)}
    rows: dict[tuple, dict[int, Fraction]] = {}
    for g in sorted(levi.gamma):
        gamma_root = levi.rs.simple_roots[g - 1]
        for m, j in col.items():
            for image, coeff in _ad_root_monomial(basis, gamma_root, m):
                row = rows.setdefault((g, image), {})
                row[j] = row.get(j, Fraction(0)) + coeff
    return [
        {j: v for j, v in row.items() if v} for row in rows.values()
    ]


def _ad_root_monomial(basis: ChevalleyBasis, gamma_root: Coords, monomial):
    """Action of ad(E_gamma) on a wedge monomial of root vectors, as
    (image monomial, coefficient) pairs; images stay inside the tangent
    space."""
    rs = basis.rs
    n = basis.rank
    for p, idx in enumerate(monomial):
        mu = basis.root_order[idx - n]
        target = add(gamma_root, mu)
        if target not in rs._root_set:
            continue
        coeff = basis.structure_constant(gamma_root, mu)
        t_idx = basis.index_of_root[target]
        rest = monomial[:p] + monomial[p + 1 :]
        # insert t_idx into rest with the derivation sign
        lo = 0
        while lo < len(rest) and rest[lo] < t_idx:
            lo += 1
        if lo < len(rest) and rest[lo] == t_idx:
            continue
        sign = -1 if (p + lo) % 2 else 1
        yield rest[:lo] + (t_idx,) + rest[lo:], coeff * sign


def invariant_basis(
    levi: LeviDatum, basis: ChevalleyBasis, k: int
) -> list[Multivector]:
    """Exact basis of the invariant subspace of the k-th exterior power of the
    tangent space."""
    monos = weight_zero_monomials(levi, basis, k)
    if not monos:
        return []
    if k == 0:
        return [Multivector(0, {(): as_scalar(1)})]
    blocks: dict[tuple, list[tuple[int, ...]]] = {}
    for m in monos:
        blocks.setdefault(_signature(levi, basis, m), []).append(m)
    vectors: list[Multivector] = []
    for sig in sorted(blocks):
        block = blocks[sig]
        rows = _raising_rows(levi, basis, block)
        for kern in kernel_basis(rows, len(block)):
            mv = Multivector(
                k, {block[j]: as_scalar(c) for j, c in kern.items()}
            )
            vectors.append(mv)
    for mv in vectors:
        for g in sorted(levi.gamma):
            lower = basis.root_vector(negate(levi.rs.simple_roots[g - 1]))
            if not ad_action(basis, lower, mv).is_zero():
                raise InternalInvariantError(
                    "raising-kernel vector not killed by a lowering operator"
                )
    return vectors


def invariant_dimension(levi: LeviDatum, basis: ChevalleyBasis, k: int) -> int:
    return len(invariant_basis(levi, basis, k))


def theta_apply(basis: ChevalleyBasis, mv: Multivector) -> Multivector:
    """The Cartan involution extended multiplicatively to multivectors."""
    out = Multivector.zero(mv.degree)
    for key, coeff in mv.terms.items():
        scale = coeff
        images = []
        for i in key:
            j, s = basis.theta_index(i)
            images.append(j)
            scale = scale * s
        perm = sorted(range(len(images)), key=lambda p: images[p])
        sorted_imgs = tuple(images[p] for p in perm)
        if len(set(sorted_imgs)) != len(sorted_imgs):
            continue
        sign = _permutation_sign(perm)
        out._accumulate(sorted_imgs, scale * sign)
    return out


def _permutation_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        p = start
        while not seen[p]:
            seen[p] = True
            p = perm[p]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def theta_split(
    basis: ChevalleyBasis, vectors: list[Multivector]
) -> tuple[list[Multivector], list[Multivector]]:
    """Split a theta-stable span into (invariant, anti-invariant) parts."""
    if not vectors:
        return [], []
    solver = SpanSolver([v.terms for v in vectors])
    n = len(vectors)
    coords = []
    for v in vectors:
        coords.append(solver.express(theta_apply(basis, v).terms))
    plus_rows = []
    minus_rows = []
    for i in range(n):
        prow = {}
        mrow = {}
        for j in range(n):
            tval = coords[j][i]  # matrix entry T[i][j]
            diag = Fraction(1) if i == j else Fraction(0)
            if tval - diag:
                prow[j] = tval - diag
            if tval + diag:
                mrow[j] = tval + diag
        if prow:
            plus_rows.append(prow)
        if mrow:
            minus_rows.append(mrow)
    degree = vectors[0].degree

    def combine(kern) -> Multivector:
        out = Multivector.zero(degree)
        for j, c in kern.items():
            out = out + vectors[j].scale(c)
        return out

    plus = [combine(kern) for kern in kernel_basis(plus_rows, n)]
    minus = [combine(kern) for kern in kernel_basis(minus_rows, n)]
    if len(plus) + len(minus) != n:
        raise InternalInvariantError("theta eigensplit dimensions do not add up")
    return plus, minus


class InvariantComplex:
    """The invariant polyvector complex of an orbit with the differential
    given by the projected Schouten bracket with a fixed bivector.

    The differential squares to zero exactly; this is asserted during
    construction of each consecutive pair of matrices."""

    def __init__(self, levi: LeviDatum, basis: ChevalleyBasis, v: InvariantBivector):
        self.levi = levi
        self.basis = basis
        self.bivector = v
        self._vmv = realize(v, basis, check=False)
        self._bases: dict[int, list[Multivector]] = {}
        self._solvers: dict[int, SpanSolver | None] = {}
        self._deltas: dict[int, list[list[GaussianRational]]] = {}

    def basis_at(self, k: int) -> list[Multivector]:
        if k not in self._bases:
            self._bases[k] = invariant_basis(self.levi, self.basis, k)
        return self._bases[k]

    def _solver_at(self, k: int) -> SpanSolver | None:
        if k not in self._solvers:
            vecs = self.basis_at(k)
            self._solvers[k] = SpanSolver([v.terms for v in vecs]) if vecs else None
        return self._solvers[k]

    def differential(self, u: Multivector) -> Multivector:
        return project_to_m(
            schouten(self.basis, self._vmv, u), self.basis, self.levi
        )

    def delta_matrix(self, k: int) -> list[list[GaussianRational]]:
        """Columns are images of the degree-k basis in degree-(k+1)
        coordinates."""
        if k in self._deltas:
            return self._deltas[k]
        domain = self.basis_at(k)
        cols = []
        solver = self._solver_at(k + 1)
        for u in domain:
            img = self.differential(u)
            if img.is_zero():
                cols.append([as_scalar(0)] * len(self.basis_at(k + 1)))
                continue
            if solver is None:
                raise InternalInvariantError(
                    "differential image fell outside the invariant space"
                )
            cols.append([as_scalar(c) for c in solver.express(img.terms)])
        self._deltas[k] = cols
        return cols

    def betti_numbers(self) -> list[int]:
        dim_m = self.levi.dim_m()
        dims = [len(self.basis_at(k)) for k in range(dim_m + 1)]
        ranks = []
        prev_cols = None
        for k in range(dim_m + 1):
            cols = self.delta_matrix(k)
            rows = []
            for j, col in enumerate(cols):
                for i, c in enumerate(col):
                    if c:
                        while len(rows) <= i:
                            rows.append({})
                        rows[i][j] = c
            ranks.append(rank_of(rows))
            if prev_cols is not None:
                self._assert_square_zero(k, prev_cols, cols)
            prev_cols = cols
        betti = []
        for k in range(dim_m + 1):
            incoming = ranks[k - 1] if k else 0
            betti.append(dims[k] - ranks[k] - incoming)
        return betti

    def _assert_square_zero(self, k: int, prev_cols, cols) -> None:
        # matrix product delta_k . delta_{k-1} must vanish entrywise
        n_next = len(self.basis_at(k + 1))
        for col in prev_cols:
            acc = [as_scalar(0)] * n_next
            for j, cj in enumerate(col):
                if cj:
                    target = cols[j]
                    for i in range(n_next):
                        if target[i]:
                            acc[i] = acc[i] + cj * target[i]
            if any(acc):
                raise InternalInvariantError(
                    f"differential does not square to zero at degree {k - 1}"
                )


def betti_numbers(
    levi: LeviDatum, basis: ChevalleyBasis, v: InvariantBivector
) -> list[int]:
    """Cohomology dimensions of the invariant complex for a verified
    bivector."""
    return InvariantComplex(levi, basis, v).betti_numbers()


class WeylBoundExceeded(ValueError):
    pass


def de_rham_betti(
    rs: RootSystem, gamma, weyl_bound: int = 60000
) -> list[int]:
    """Even-degree Betti numbers of the orbit from the length generating
    function of minimal coset representatives, computed by an orbit walk on a
    dominant weight with exactly the prescribed stabilizer."""
    if rs.weyl_order > weyl_bound:
        raise WeylBoundExceeded(
            f"Weyl group order {rs.weyl_order} exceeds bound {weyl_bound}"
        )
    gamma = frozenset(gamma)
    n = rs.rank
    start = tuple(0 if (i + 1) in gamma else 1 for i in range(n))
    cartan = rs.cartan
    lengths = {start: 0}
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for w in frontier:
            for i in range(n):
                wi = w[i]
                if not wi:
                    continue
                img = tuple(
                    w[j] - wi * cartan[i][j] for j in range(n)
                )
                if img not in lengths:
                    lengths[img] = depth
                    nxt.append(img)
        frontier = nxt
    top = max(lengths.values())
    betti = [0] * (2 * top + 1)
    for ell in lengths.values():
        betti[2 * ell] += 1
    free = [i for i in range(1, n + 1) if i not in gamma]
    if top >= 1:
        assert betti[2] == len(free), "degree-2 Betti number must count removed nodes"
    return betti


def tensor_multiplicity(
    levi: LeviDatum, basis: ChevalleyBasis, q1: Quasiroot, q2: Quasiroot
) -> int:
    """Multiplicity of the class module of q1+q2 inside the tensor product of
    the class modules of q1 and q2, computed as the dimension of invariants in
    the triple tensor product with the dual class."""
    q1, q2 = tuple(q1), tuple(q2)
    s = add(q1, q2)
    if s not in levi.quasiroots:
        raise ValueError(f"{q1} + {q2} is not a quasiroot")
    c1 = levi.classes[q1]
    c2 = levi.classes[q2]
    c3 = levi.classes[negate(s)]
    triples = [
        (a, b, c)
        for a in c1
        for b in c2
        for c in c3
        if not any(add(add(a, b), c))
    ]
    if not triples:
        return 0
    col = {t: j for j, t in enumerate(triples)}
    rows: dict[tuple, dict[int, Fraction]] = {}
    for g in sorted(levi.gamma):
        for gamma_root in (
            levi.rs.simple_roots[g - 1],
            negate(levi.rs.simple_roots[g - 1]),
        ):
            for t, j in col.items():
                for slot in range(3):
                    mu = t[slot]
                    target = add(gamma_root, mu)
                    if target not in levi.rs._root_set:
                        continue
                    coeff = basis.structure_constant(gamma_root, mu)
                    image = t[:slot] + (target,) + t[slot + 1 :]
                    row = rows.setdefault((g, gamma_root, image), {})
                    row[j] = row.get(j, Fraction(0)) + coeff
    kern = kernel_basis(list(rows.values()), len(triples))
    return len(kern)


def admissibility_probe(
    levi: LeviDatum,
    basis: ChevalleyBasis,
    samples: int,
    rng_seed: int = 0,
    K=1,
) -> list[dict]:
    """Empirical probe: random verified bivectors from the recursion, their
    cohomology, and whether it matches the Weyl oracle.  On a mismatch the
    sample is redrawn once and both outcomes are reported."""
    import random as _random

    from .brackets import solve_recursion, verify_square

    rng = _random.Random(rng_seed)
    oracle = de_rham_betti(levi.rs, levi.gamma)
    results = []
    for trial in range(samples):
        record: dict = {"trial": trial}
        for attempt in range(2):
            seeds = [rng.randint(1, 19) for _ in levi.simple_quasiroots]
            outcome = solve_recursion(levi, seeds, K)
            if not outcome.is_success:
                record[f"attempt{attempt}"] = {"seeds": seeds, "witness": True}
                continue
            assert verify_square(outcome.solution, K, basis).ok
            betti = betti_numbers(levi, basis, outcome.solution)
            padded = betti + [0] * (len(oracle) - len(betti))
            match = padded[: len(oracle)] == oracle and all(
                b == 0 for b in padded[len(oracle):]
            )
            record[f"attempt{attempt}"] = {
                "seeds": seeds,
                "betti": betti,
                "match": match,
            }
            if match:
                break
        results.append(record)
    return results
