"""Exact sparse linear algebra over Fraction or GaussianRational entries.

Rows are sparse maps column -> coefficient; columns may be ints or tuples
(one kind per matrix).  Pivot sets are kept fully reduced: every pivot column
is eliminated from every other pivot row, so reducing a row is a single pass
and kernel extraction reads coefficients straight off the pivot rows.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational


def _reciprocal(x):
    if isinstance(x, GaussianRational):
        return x.reciprocal()
    return Fraction(1) / x


class Echelon:
    """Incremental fully-reduced echelon form of a set of sparse rows."""

    def __init__(self):
        self.pivot_rows: dict = {}  # pivot column -> row dict with leading 1
        self._uses: dict = {}  # column -> set of pivot columns whose row hits it

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: dict) -> dict:
        """Reduce a row against the pivots (new dict; single pass suffices
        because pivot rows contain no other pivot columns)."""
        r = {c: v for c, v in row.items() if v}
        for c in [c for c in list(r) if c in self.pivot_rows]:
            f = r.pop(c, None)
            if not f:
                continue
            for cc, vv in self.pivot_rows[c].items():
                if cc == c:
                    continue
                nv = r.get(cc, 0) - f * vv
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        return r

    def add(self, row: dict):
        """Reduce and, if independent, register a new pivot.

        Returns the pivot column, or None when the row was dependent."""
        r = self.reduce(row)
        if not r:
            return None
        c = min(r)
        inv = _reciprocal(r[c])
        r = {cc: vv * inv for cc, vv in r.items()}
        self._eliminate_column(c, r)
        self.pivot_rows[c] = r
        for cc in r:
            if cc != c:
                self._uses.setdefault(cc, set()).add(c)
        return c

    def _eliminate_column(self, c, unit_row: dict) -> None:
        for p in list(self._uses.get(c, ())):
            prow = self.pivot_rows[p]
            f = prow.get(c)
            if not f:
                continue
            for cc, vv in unit_row.items():
                nv = prow.get(cc, 0) - f * vv
                if nv:
                    prow[cc] = nv
                    if cc != p:
                        self._uses.setdefault(cc, set()).add(p)
                else:
                    prow.pop(cc, None)
                    if cc in self._uses:
                        self._uses[cc].discard(p)
        self._uses.pop(c, None)


def rank_of(rows) -> int:
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return ech.rank


def kernel_basis(rows, ncols: int, one=Fraction(1)) -> list[dict]:
    """Basis of the right kernel of the matrix with the given sparse rows over
    integer columns 0..ncols-1."""
    ech = Echelon()
    for row in rows:
        ech.add(row)
    pivots = ech.pivot_rows
    out = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: one}
        for p, prow in pivots.items():
            v = prow.get(free)
            if v:
                vec[p] = -v * one
        out.append(vec)
    return out


class SpanSolver:
    """Express vectors in the span of a fixed independent list of sparse
    vectors (columns may be arbitrary mutually comparable keys)."""

    def __init__(self, vectors):
        self.n = len(vectors)
        self._pivots: dict = {}
        self._aug: dict = {}
        self._uses: dict = {}
        for pos, vec in enumerate(vectors):
            row, comb = self._reduce(dict(vec), {pos: Fraction(1)})
            if not row:
                raise ValueError(f"basis vector {pos} depends on earlier ones")
            c = min(row)
            inv = _reciprocal(row[c])
            row = {cc: vv * inv for cc, vv in row.items()}
            comb = {cc: vv * inv for cc, vv in comb.items()}
            self._eliminate(c, row, comb)
            self._pivots[c] = row
            self._aug[c] = comb
            for cc in row:
                if cc != c:
                    self._uses.setdefault(cc, set()).add(c)

    def _reduce(self, row: dict, comb: dict):
        row = {c: v for c, v in row.items() if v}
        for c in [c for c in list(row) if c in self._pivots]:
            f = row.pop(c, None)
            if not f:
                continue
            for cc, vv in self._pivots[c].items():
                if cc == c:
                    continue
                nv = row.get(cc, 0) - f * vv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
            for cc, vv in self._aug[c].items():
                nv = comb.get(cc, 0) - f * vv
                if nv:
                    comb[cc] = nv
                else:
                    comb.pop(cc, None)
        return row, comb

    def _eliminate(self, c, unit_row: dict, unit_comb: dict) -> None:
        for p in list(self._uses.get(c, ())):
            prow = self._pivots[p]
            f = prow.get(c)
            if not f:
                continue
            for cc, vv in unit_row.items():
                nv = prow.get(cc, 0) - f * vv
                if nv:
                    prow[cc] = nv
                    if cc != p:
                        self._uses.setdefault(cc, set()).add(p)
                else:
                    prow.pop(cc, None)
                    if cc in self._uses:
                        self._uses[cc].discard(p)
            pcomb = self._aug[p]
            for cc, vv in unit_comb.items():
                nv = pcomb.get(cc, 0) - f * vv
                if nv:
                    pcomb[cc] = nv
                else:
                    pcomb.pop(cc, None)
        self._uses.pop(c, None)

    def express(self, vector) -> list:
        """Coordinates in the span; raises ValueError outside the span."""
        row, comb = self._reduce(dict(vector), {})
        if row:
            raise ValueError("vector is not in the span")
        return [-comb.get(i, Fraction(0)) for i in range(self.n)]

    def contains(self, vector) -> bool:
        row, _ = self._reduce(dict(vector), {})
        return not row
