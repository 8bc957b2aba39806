"""Quasiroot combinatorics for a Levi subset of the simple roots.

For a subset Gamma of the simple roots, the roots lying in the span of Gamma
form the root system of the Levi stabilizer; the remaining roots project onto
the coordinates outside Gamma, and the nonzero projections (quasiroots) index
the irreducible summands of the tangent space m.  Projection is literally
coordinate deletion, so everything here is integer-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .roots import Coords, RootSystem, add

Quasiroot = tuple[int, ...]


class LeviDatum:
    def __init__(self, rs: RootSystem, gamma):
        gamma = frozenset(gamma)
        for i in gamma:
            if not isinstance(i, int) or not 1 <= i <= rs.rank:
                raise ValueError(f"gamma index {i!r} out of range 1..{rs.rank}")
        self.rs = rs
        self.gamma = gamma
        self.free_positions = tuple(i for i in range(1, rs.rank + 1) if i not in gamma)
        self._free0 = tuple(i - 1 for i in self.free_positions)

        self.omega_gamma = frozenset(
            r for r in rs.roots if all(r[i] == 0 for i in self._free0)
        )
        self.m_roots = frozenset(rs.roots - self.omega_gamma)
        self.m_positive = tuple(
            sorted((r for r in self.m_roots if min(r) >= 0), key=rs._sort_key)
        )

        classes: dict[Quasiroot, list[Coords]] = {}
        for r in sorted(self.m_roots, key=rs._sort_key):
            q = self.project(r)
            classes.setdefault(q, []).append(r)
        self.classes = {q: tuple(rs_) for q, rs_ in classes.items()}
        self.quasiroots = frozenset(self.classes)
        self.positive_quasiroots = tuple(
            sorted((q for q in self.quasiroots if min(q) >= 0), key=lambda q: (sum(q), q))
        )
        # mixed-sign projections cannot occur: roots are sign-definite
        assert 2 * len(self.positive_quasiroots) == len(self.quasiroots)
        self.simple_quasiroots = tuple(
            self.project(rs.simple_roots[i]) for i in self._free0
        )
        self.heights = {q: sum(q) for q in self.quasiroots}

    def project(self, root: Coords) -> Quasiroot:
        """Coordinate restriction to the positions outside Gamma."""
        return tuple(root[i] for i in self._free0)

    def quasiroot_of(self, root: Coords) -> Quasiroot | None:
        q = self.project(root)
        return q if any(q) else None

    def class_of(self, q: Quasiroot) -> tuple[Coords, ...]:
        return self.classes[q]

    def is_quasiroot(self, q) -> bool:
        return tuple(q) in self.quasiroots

    def dim_m(self) -> int:
        return len(self.m_roots)

    def __repr__(self):
        g = ",".join(map(str, sorted(self.gamma))) or "-"
        return f"LeviDatum({self.rs.type_label}{self.rs.rank}, gamma={{{g}}})"


def build_levi(rs: RootSystem, gamma) -> LeviDatum:
    return LeviDatum(rs, gamma)


def admissible_pairs(levi: LeviDatum) -> tuple[tuple[Quasiroot, Quasiroot], ...]:
    """Ordered pairs of positive quasiroots whose sum is again a quasiroot."""
    qs = levi.positive_quasiroots
    out = []
    for a in qs:
        for b in qs:
            if add(a, b) in levi.quasiroots:
                out.append((a, b))
    return tuple(out)


def admissible_triples(
    levi: LeviDatum,
) -> tuple[tuple[Quasiroot, Quasiroot, Quasiroot], ...]:
    """Ordered triples (a, b, c), repetitions permitted, with a+b, b+c and
    a+b+c all quasiroots."""
    qs = levi.positive_quasiroots
    quasi = levi.quasiroots
    out = []
    for a in qs:
        for b in qs:
            if add(a, b) not in quasi:
                continue
            for c in qs:
                if add(b, c) in quasi and add(add(a, b), c) in quasi:
                    out.append((a, b, c))
    return tuple(out)


@dataclass
class ChainReport:
    ok: bool
    chains: dict  # (root, root) within one class -> connecting chain of Levi roots
    pair_representatives: dict  # admissible pair -> (root_a, root_b) with root sum
    failures: list


def verify_connecting_chains(levi: LeviDatum) -> ChainReport:
    """Exhibit, for each class, chains of Levi-root additions connecting its
    members through roots, and for each admissible pair a pair of class
    representatives whose actual root sum projects onto the pair sum.

    A failure here would mean the class data is inconsistent; it is reported,
    never silently ignored.
    """
    rs = levi.rs
    failures = []
    chains = {}
    for q, members in levi.classes.items():
        base = members[0]
        # BFS within the class along Levi-root additions
        seen = {base: ()}
        frontier = [base]
        while frontier:
            nxt = []
            for cur in frontier:
                for g in levi.omega_gamma:
                    step = add(cur, g)
                    if step in levi.m_roots and step not in seen and levi.project(step) == q:
                        seen[step] = seen[cur] + (g,)
                        nxt.append(step)
            frontier = nxt
        for other in members[1:]:
            if other in seen:
                chains[(base, other)] = seen[other]
            else:
                failures.append(("disconnected class", q, base, other))

    pair_reps = {}
    for a, b in admissible_pairs(levi):
        found = None
        for ra in levi.classes[a]:
            for rb in levi.classes[b]:
                s = add(ra, rb)
                if s in rs._root_set:
                    found = (ra, rb)
                    break
            if found:
                break
        if found is None:
            failures.append(("no representative sum", a, b))
        else:
            pair_reps[(a, b)] = found

    return ChainReport(ok=not failures, chains=chains,
                       pair_representatives=pair_reps, failures=failures)


@dataclass(frozen=True)
class QuasirootTypeVerdict:
    is_type_a: bool
    k: int
    chain: tuple[Quasiroot, ...] | None

    def __bool__(self):
        return self.is_type_a


def quasiroot_system_type(levi: LeviDatum) -> QuasirootTypeVerdict:
    """Decide whether the positive quasiroots are exactly the consecutive sums
    of some ordering of the simple quasiroots (the A_k pattern).

    When two orderings fit (a path read in either direction), the one starting
    at the lowest Bourbaki index wins.
    """
    simple = levi.simple_quasiroots
    k = len(simple)
    positive = set(levi.positive_quasiroots)
    if len(positive) != k * (k + 1) // 2:
        return QuasirootTypeVerdict(False, k, None)
    if k == 0:
        return QuasirootTypeVerdict(True, 0, ())
    if k == 1:
        ok = positive == {simple[0]}
        return QuasirootTypeVerdict(ok, 1, simple if ok else None)

    valid = []
    for perm in permutations(range(k)):
        if perm[0] > perm[-1]:
            continue  # each path would be found twice; keep low-index start
        sums = set()
        good = True
        for i in range(k):
            total = simple[perm[i]]
            sums.add(total)
            for j in range(i + 1, k):
                total = add(total, simple[perm[j]])
                sums.add(total)
            if not good:
                break
        if sums == positive:
            valid.append(perm)
    if not valid:
        return QuasirootTypeVerdict(False, k, None)
    perm = min(valid)
    return QuasirootTypeVerdict(True, k, tuple(simple[i] for i in perm))
