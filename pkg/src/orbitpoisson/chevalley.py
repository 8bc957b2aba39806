"""Chevalley-type basis with exact structure constants, normalized so that the
trace form pairs opposite root vectors to 1.

Construction goes in two stages.  First an integral basis {x_mu} is built with
the classical extraspecial-pair sign convention: positive roots are totally
ordered by (height, coordinates); for each non-simple positive root the
minimal decomposition pair gets a positive structure constant p+1, and every
other constant follows from the standard antisymmetry, negation, and
four-root relations.  Second, the Killing form is computed exactly as the
trace form of the adjoint action, and each negative root vector is rescaled
so that K(E_mu, E_{-mu}) = 1.  In the rescaled basis [E_mu, E_{-mu}] = t_mu,
the Killing-dual of mu, and the cyclic identity

    N(a, b) = N(b, c) = N(c, a)   whenever a + b + c = 0

holds with equal (unweighted) values.

Basis layout: indices 0..rank-1 are the Cartan elements t_1..t_rank (duals of
the simple roots), index rank+k is E_mu for the k-th root in the global
(height, coordinates) order; negative roots therefore come first.
"""

from __future__ import annotations

from fractions import Fraction

from .roots import Coords, RootSystem, add, negate, sub
from .scalars import GaussianRational, as_scalar

#: A Lie-algebra element: sparse map from basis index to exact coefficient.
Element = dict[int, GaussianRational]


class ChevalleyBasis:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        self.root_order: tuple[Coords, ...] = rs.all_roots_sorted()
        self.index_of_root = {r: self.rank + k for k, r in enumerate(self.root_order)}
        self.dim = self.rank + len(self.root_order)

        self._norm = {r: rs.inner(r, r) for r in rs.roots}
        self._n_int = _integral_constants(rs, self._norm)
        self._killing_c = self._killing_opposite_pairs()
        self._killing_h = self._killing_cartan_gram()
        self._t_mat = self._solve_t_basis()
        self._weights = self._weight_table()
        self._n_norm = self._normalized_constants()
        self._table = self._bracket_table()
        self._theta = self._theta_table()
        self._phi_cache = None

    # -- integral layer -------------------------------------------------------

    def integral_structure_constant(self, a: Coords, b: Coords) -> int:
        """N(a,b) in the integral basis; 0 when a+b is not a root."""
        if add(a, b) not in self.rs._root_set:
            return 0
        return self._n_int[(a, b)]

    def string_length_p(self, a: Coords, b: Coords) -> int:
        """Largest p with b - p*a a root."""
        p = 0
        cur = sub(b, a)
        while cur in self.rs._root_set:
            p += 1
            cur = sub(cur, a)
        return p

    def killing_opposite(self, alpha: Coords) -> int:
        """Trace-form pairing of the integral vectors x_alpha, x_{-alpha}."""
        key = alpha if min(alpha) >= 0 else negate(alpha)
        return self._killing_c[key]

    def _killing_opposite_pairs(self) -> dict[Coords, int]:
        # Tr(ad x_a ad x_{-a}) = 4 + sum over root strings through a
        rs = self.rs
        out = {}
        for alpha in rs.positive_roots:
            total = 4
            for mu in rs.roots:
                if mu == alpha:
                    continue
                shifted = sub(mu, alpha)
                if shifted in rs._root_set:
                    total += self.integral_structure_constant(
                        negate(alpha), mu
                    ) * self.integral_structure_constant(alpha, shifted)
            out[alpha] = total
        return out

    def _killing_cartan_gram(self) -> list[list[int]]:
        # Tr(ad h_a ad h_b) over root spaces; the Cartan block contributes 0
        rs = self.rs
        n = self.rank
        gram = [[0] * n for _ in range(n)]
        pair = [
            [rs.coroot_pairing(mu, a) for a in range(n)] for mu in rs.roots
        ]
        for row in pair:
            for a in range(n):
                pa = row[a]
                if not pa:
                    continue
                for b in range(n):
                    gram[a][b] += pa * row[b]
        return gram

    def _solve_t_basis(self) -> list[list[Fraction]]:
        # coordinates of t_i (Killing dual of alpha_i) in the coroot basis
        n = self.rank
        K = [[Fraction(v) for v in row] for row in self._killing_h]
        rhs = [[Fraction(self.rs.cartan[i][a]) for a in range(n)] for i in range(n)]
        return [_solve_linear(K, rhs[i]) for i in range(n)]

    def _weight_table(self) -> dict[Coords, tuple[Fraction, ...]]:
        # weights[mu][i] = mu(t_i)
        rs = self.rs
        n = self.rank
        out = {}
        for mu in rs.roots:
            pairing = [rs.coroot_pairing(mu, a) for a in range(n)]
            out[mu] = tuple(
                sum((self._t_mat[i][a] * pairing[a] for a in range(n)), Fraction(0))
                for i in range(n)
            )
        return out

    # -- normalized layer ------------------------------------------------------

    def _scale(self, mu: Coords) -> Fraction:
        # E_mu = x_mu / scale(mu)
        if min(mu) >= 0:
            return Fraction(1)
        return Fraction(self._killing_c[negate(mu)])

    def _normalized_constants(self) -> dict[tuple[Coords, Coords], Fraction]:
        out = {}
        for (a, b), n in self._n_int.items():
            out[(a, b)] = (
                Fraction(n) * self._scale(add(a, b)) / (self._scale(a) * self._scale(b))
            )
        return out

    def structure_constant(self, a: Coords, b: Coords) -> Fraction:
        """Normalized N(a,b); 0 when a+b is not a root."""
        return self._n_norm.get((a, b), Fraction(0))

    @property
    def structure_constants(self) -> dict[tuple[Coords, Coords], Fraction]:
        return dict(self._n_norm)

    @property
    def cartan_brackets(self) -> dict[Coords, tuple[Fraction, ...]]:
        """[E_mu, E_{-mu}] = t_mu, as coordinates over the t-basis."""
        return {mu: tuple(Fraction(c) for c in mu) for mu in self.rs.roots}

    def weight(self, mu: Coords, i: int) -> Fraction:
        """mu(t_i), the action of the i-th Cartan basis element on E_mu."""
        return self._weights[mu][i]

    # -- bracket table ----------------------------------------------------------

    def _bracket_table(self) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
        table: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
        n = self.rank
        for k, mu in enumerate(self.root_order):
            i_mu = n + k
            w = self._weights[mu]
            for i in range(n):
                if w[i]:
                    table[(i, i_mu)] = ((i_mu, w[i]),)
            for l in range(k + 1, len(self.root_order)):
                nu = self.root_order[l]
                i_nu = n + l
                if nu == negate(mu):
                    entries = tuple(
                        (i, Fraction(c)) for i, c in enumerate(mu) if c
                    )
                    table[(i_mu, i_nu)] = entries
                else:
                    s = add(mu, nu)
                    if s in self.rs._root_set:
                        table[(i_mu, i_nu)] = (
                            (self.index_of_root[s], self._n_norm[(mu, nu)]),
                        )
        return table

    def bracket_index(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """Bracket of two basis elements as ((index, coefficient), ...)."""
        if i == j:
            return ()
        if i < j:
            return self._table.get((i, j), ())
        entries = self._table.get((j, i), ())
        return tuple((k, -c) for k, c in entries)

    def _theta_table(self) -> tuple[tuple[int, Fraction], ...]:
        out = [(i, Fraction(-1)) for i in range(self.rank)]
        for k, mu in enumerate(self.root_order):
            scale = -self._scale(negate(mu)) / self._scale(mu)
            out.append((self.index_of_root[negate(mu)], scale))
        return tuple(out)

    # -- element-level operations ------------------------------------------------

    def zero(self) -> Element:
        return {}

    def root_vector(self, mu: Coords, coeff=1) -> Element:
        return {self.index_of_root[mu]: as_scalar(coeff)}

    def cartan_element(self, t_coords) -> Element:
        return {
            i: as_scalar(c) for i, c in enumerate(t_coords) if as_scalar(c)
        }

    def t_alpha(self, mu: Coords) -> Element:
        """The Killing dual of a root, i.e. the value of [E_mu, E_{-mu}]."""
        return self.cartan_element(mu)

    def bracket(self, x: Element, y: Element) -> Element:
        """Bilinear extension of the basis bracket."""
        out: Element = {}
        for i, ci in x.items():
            for j, cj in y.items():
                c = ci * cj
                for k, f in self.bracket_index(i, j):
                    v = out.get(k)
                    v = c * f if v is None else v + c * f
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def cartan_involution(self, x: Element) -> Element:
        """The involutive automorphism acting as -1 on the Cartan subalgebra
        and sending each root vector to a multiple of its opposite."""
        out: Element = {}
        for i, c in x.items():
            j, scale = self._theta[i]
            v = out.get(j)
            v = c * scale if v is None else v + c * scale
            if v:
                out[j] = v
            else:
                out.pop(j, None)
        return out

    def theta_index(self, i: int) -> tuple[int, Fraction]:
        return self._theta[i]

    def killing(self, x: Element, y: Element) -> GaussianRational:
        """Trace-form pairing, exact."""
        total = as_scalar(0)
        for i, ci in x.items():
            for j, cj in y.items():
                g = self.killing_gram_entry(i, j)
                if g:
                    total = total + ci * cj * g
        return total

    def killing_gram_entry(self, i: int, j: int) -> Fraction:
        n = self.rank
        if i < n and j < n:
            # K(t_i, t_j) = alpha_j(t_i)
            return self._weights[self.rs.simple_roots[j]][i]
        if i < n or j < n:
            return Fraction(0)
        mu = self.root_order[i - n]
        nu = self.root_order[j - n]
        return Fraction(1) if nu == negate(mu) else Fraction(0)

    def basis_name(self, i: int) -> str:
        if i < self.rank:
            return f"t{i + 1}"
        mu = self.root_order[i - self.rank]
        return f"E[{','.join(map(str, mu))}]"

    def __repr__(self):
        return f"ChevalleyBasis({self.rs.type_label}{self.rs.rank})"


def build_chevalley_basis(rs: RootSystem) -> ChevalleyBasis:
    """Construct the normalized basis; total for every valid root system."""
    return ChevalleyBasis(rs)


def bracket(basis: ChevalleyBasis, x: Element, y: Element) -> Element:
    return basis.bracket(x, y)


def cartan_involution(basis: ChevalleyBasis, x: Element) -> Element:
    return basis.cartan_involution(x)


# -- integral structure constants ------------------------------------------------


def _integral_constants(
    rs: RootSystem, norm: dict[Coords, Fraction]
) -> dict[tuple[Coords, Coords], int]:
    positives = rs.positive_roots
    pos_set = rs._positive_set
    root_set = rs._root_set
    order = {r: k for k, r in enumerate(positives)}

    def pval(a: Coords, b: Coords) -> int:
        p = 0
        cur = sub(b, a)
        while cur in root_set:
            p += 1
            cur = sub(cur, a)
        return p

    special: dict[tuple[Coords, Coords], Fraction] = {}

    def n_pos(a: Coords, b: Coords) -> Fraction:
        if order[a] < order[b]:
            return special[(a, b)]
        return -special[(b, a)]

    def n_any(u: Coords, v: Coords) -> Fraction:
        # u+v assumed nonzero; returns 0 when u+v is not a root
        w = add(u, v)
        if w not in root_set:
            return Fraction(0)
        u_pos = u in pos_set
        v_pos = v in pos_set
        if u_pos and v_pos:
            return n_pos(u, v)
        if not u_pos and not v_pos:
            return -n_any(negate(u), negate(v))
        if not u_pos:
            return -n_any(v, u)
        vp = negate(v)
        if w in pos_set:
            # pair (vp, w) sums to u
            return -norm[w] / norm[u] * n_pos(vp, w)
        wp = negate(w)
        # pair (wp, u) sums to vp
        return norm[w] / norm[vp] * n_pos(wp, u)

    # extraspecial decomposition of each non-simple positive root
    extraspecial: dict[Coords, tuple[Coords, Coords]] = {}
    for s in positives:
        if sum(s) < 2:
            continue
        for a in positives:
            b = sub(s, a)
            if b in pos_set and order[a] < order[b]:
                extraspecial[s] = (a, b)
                break
        else:
            raise AssertionError(f"no decomposition pair for {s}")

    for s in positives:  # ordered by height, so lower constants exist first
        if sum(s) < 2:
            continue
        a, b = extraspecial[s]
        special[(a, b)] = Fraction(pval(a, b) + 1)
        ns = norm[s]
        pairs = [
            (x, sub(s, x))
            for x in positives
            if sub(s, x) in pos_set and order[x] < order[sub(s, x)]
        ]
        for x, y in pairs:
            if (x, y) == (a, b):
                continue
            # four-root relation on (x, y, -a, -b)
            t2 = Fraction(0)
            d1 = sub(y, a)
            if d1 in root_set:
                t2 = n_any(y, negate(a)) * n_any(x, negate(b)) / norm[d1]
            t3 = Fraction(0)
            d2 = sub(x, a)
            if d2 in root_set:
                t3 = n_any(negate(a), x) * n_any(y, negate(b)) / norm[d2]
            value = ns * (t2 + t3) / special[(a, b)]
            assert value.denominator == 1 and value != 0, (s, x, y, value)
            special[(x, y)] = value

    table: dict[tuple[Coords, Coords], int] = {}
    for u in root_set:
        for v in root_set:
            s = add(u, v)
            if s in root_set:
                value = n_any(u, v)
                assert value.denominator == 1
                table[(u, v)] = int(value)
    return table


def _solve_linear(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a small nonsingular exact system by Gaussian elimination."""
    n = len(matrix)
    M = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col])
        M[col], M[piv] = M[piv], M[col]
        inv = Fraction(1) / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]
