"""Root systems of the finite simple types, in simple-root coordinates.

Roots are integer coordinate vectors with respect to the simple roots,
numbered in the Bourbaki convention.  The invariant bilinear form is scaled
so that long roots have squared length 2.

Some references number the D_n and E6 diagrams differently (for instance
putting the three branch ends of D_n first); here the D_n branch ends are
alpha_1, alpha_{n-1}, alpha_n and the E6 branch node is alpha_4, so the two
coefficient-1 end nodes of E6 are alpha_1 and alpha_6.
"""

from __future__ import annotations

from fractions import Fraction

Coords = tuple[int, ...]

#: (minimum rank, maximum rank or None) per simple type.
RANK_RULES: dict[str, tuple[int, int | None]] = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def validate_type(type_label: str, rank: int) -> None:
    rule = RANK_RULES.get(type_label)
    if rule is None:
        raise ValueError(f"unknown simple type {type_label!r}")
    lo, hi = rule
    if rank < lo or (hi is not None and rank > hi):
        raise ValueError(f"invalid rank {rank} for type {type_label}")


def _edges(type_label: str, rank: int) -> list[tuple[int, int]]:
    # 1-based Dynkin diagram edges, Bourbaki numbering
    chain = [(i, i + 1) for i in range(1, rank)]
    if type_label in ("A", "B", "C", "F", "G"):
        return chain
    if type_label == "D":
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    if type_label == "E":
        return [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, rank)]
    raise AssertionError(type_label)


def _length_halves(type_label: str, rank: int) -> list[Fraction]:
    # d_i = (alpha_i, alpha_i) / 2 with long roots normalized to 2
    one = Fraction(1)
    half = Fraction(1, 2)
    if type_label in ("A", "D", "E"):
        return [one] * rank
    if type_label == "B":
        return [one] * (rank - 1) + [half]
    if type_label == "C":
        return [half] * (rank - 1) + [one]
    if type_label == "F":
        return [one, one, half, half]
    if type_label == "G":
        return [Fraction(1, 3), one]
    raise AssertionError(type_label)


def cartan_matrix(type_label: str, rank: int) -> list[list[int]]:
    """Cartan matrix A[i][j] = <alpha_i, alpha_j^vee> (0-based indices)."""
    validate_type(type_label, rank)
    d = _length_halves(type_label, rank)
    A = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i1, j1 in _edges(type_label, rank):
        i, j = i1 - 1, j1 - 1
        # (alpha_i, alpha_j) = -max(d_i, d_j) for an edge of the diagram
        inner = -max(d[i], d[j])
        A[i][j] = int(inner / d[j])
        A[j][i] = int(inner / d[i])
    return A


ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}

WEYL_ORDERS = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: 2**n * _factorial(n),
    "C": lambda n: 2**n * _factorial(n),
    "D": lambda n: 2 ** (n - 1) * _factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


class RootSystem:
    """The finite root system of one simple type.

    Attributes mirror the construction: ``roots`` is the full set of
    coordinate vectors, ``positive_roots`` are those with all-nonnegative
    coordinates (sorted by height, then lexicographically), ``simple_roots``
    the unit vectors, and ``highest_root`` the unique coordinatewise-maximal
    root.
    """

    def __init__(self, type_label: str, rank: int):
        validate_type(type_label, rank)
        self.type_label = type_label
        self.rank = rank
        self.cartan = cartan_matrix(type_label, rank)
        d = _length_halves(type_label, rank)
        self.bilinear_form = [
            [Fraction(self.cartan[i][j]) * d[j] for j in range(rank)]
            for i in range(rank)
        ]
        for i in range(rank):
            for j in range(rank):
                assert self.bilinear_form[i][j] == self.bilinear_form[j][i]
        self.simple_roots = tuple(
            tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)
        )
        self.roots = self._generate()
        self.positive_roots = tuple(
            sorted((r for r in self.roots if min(r) >= 0), key=self._sort_key)
        )
        self._root_set = frozenset(self.roots)
        self._positive_set = frozenset(self.positive_roots)
        expected = ROOT_COUNTS[type_label](rank)
        if len(self.roots) != expected:
            raise AssertionError(
                f"{type_label}{rank}: generated {len(self.roots)} roots, expected {expected}"
            )
        self.highest_root = max(self.positive_roots, key=self._sort_key)
        for r in self.roots:
            assert all(h >= c for h, c in zip(self.highest_root, r))

    @staticmethod
    def _sort_key(root: Coords):
        return (sum(root), root)

    def _generate(self) -> frozenset[Coords]:
        found: set[Coords] = set(self.simple_roots)
        queue = list(self.simple_roots)
        while queue:
            beta = queue.pop()
            for i in range(self.rank):
                img = self.reflect(beta, i)
                if img not in found:
                    found.add(img)
                    queue.append(img)
        return frozenset(found) | frozenset(tuple(-c for c in r) for r in found)

    # -- exact geometry -------------------------------------------------------

    def coroot_pairing(self, beta: Coords, i: int) -> int:
        """<beta, alpha_i^vee> for 0-based i."""
        return sum(beta[j] * self.cartan[j][i] for j in range(self.rank))

    def reflect(self, beta: Coords, i: int) -> Coords:
        k = self.coroot_pairing(beta, i)
        out = list(beta)
        out[i] -= k
        return tuple(out)

    def inner(self, beta: Coords, gamma: Coords) -> Fraction:
        B = self.bilinear_form
        total = Fraction(0)
        for i, bi in enumerate(beta):
            if not bi:
                continue
            row = B[i]
            for j, gj in enumerate(gamma):
                if gj:
                    total += bi * gj * row[j]
        return total

    def is_root(self, v: Coords) -> bool:
        return v in self._root_set

    def is_positive(self, v: Coords) -> bool:
        return v in self._positive_set

    @staticmethod
    def height(root: Coords) -> int:
        return sum(root)

    def all_roots_sorted(self) -> tuple[Coords, ...]:
        return tuple(sorted(self.roots, key=self._sort_key))

    @property
    def weyl_order(self) -> int:
        return WEYL_ORDERS[self.type_label](self.rank)

    def __repr__(self):
        return f"RootSystem({self.type_label}{self.rank}, {len(self.roots)} roots)"


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Construct the root system of a valid simple type by reflection closure."""
    return RootSystem(type_label, rank)


def highest_root_coefficients(rs: RootSystem) -> dict[int, int]:
    """Coordinates of the highest root, keyed by 1-based simple-root index."""
    return {i + 1: c for i, c in enumerate(rs.highest_root)}


def negate(root: Coords) -> Coords:
    return tuple(-c for c in root)


def add(a: Coords, b: Coords) -> Coords:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Coords, b: Coords) -> Coords:
    return tuple(x - y for x, y in zip(a, b))
