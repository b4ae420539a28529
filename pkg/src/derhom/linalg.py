"""Exact sparse linear algebra over Q.

Matrices are stored as sparse maps (row, col) -> Fraction.  Rank and kernel
computations use fraction-free (integer pivot) Gaussian elimination: each row
is scaled to integer entries and reduced by its content, and the update rule

    row := pivot_lead * row - row_lead * pivot_row

keeps everything integral.  Pivots are chosen deterministically (lowest column
index first, then lowest row index), so kernel bases are reproducible
regardless of how the entries were assembled.

Everything here is plain rational arithmetic -- no floating point anywhere.
"""

from fractions import Fraction
from math import gcd


class CompositionNotZero(Exception):
    """Raised when homology_dim is handed matrices with d_out * d_in != 0."""


class RationalMatrix:
    """A rows x cols matrix over Q with sparse storage.

    Only nonzero entries are stored.  Use set_entry/add_entry to build,
    entry() to read.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        assert rows >= 0 and cols >= 0
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                self.set_entry(r, c, v)

    @classmethod
    def from_rows(cls, row_lists):
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        M = cls(rows, cols)
        for r, row in enumerate(row_lists):
            assert len(row) == cols
            for c, v in enumerate(row):
                M.set_entry(r, c, v)
        return M

    @classmethod
    def identity(cls, n):
        M = cls(n, n)
        for i in range(n):
            M.set_entry(i, i, 1)
        return M

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    def set_entry(self, r, c, v):
        assert 0 <= r < self.rows and 0 <= c < self.cols
        v = Fraction(v)
        if v == 0:
            self.entries.pop((r, c), None)
        else:
            self.entries[(r, c)] = v

    def add_entry(self, r, c, v):
        self.set_entry(r, c, self.entry(r, c) + Fraction(v))

    def entry(self, r, c):
        return self.entries.get((r, c), Fraction(0))

    def transpose(self):
        T = RationalMatrix(self.cols, self.rows)
        for (r, c), v in self.entries.items():
            T.entries[(c, r)] = v
        return T

    def matmul(self, other):
        assert self.cols == other.rows
        # group other's entries by row for sparse product
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        P = RationalMatrix(self.rows, other.cols)
        acc = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), Fraction(0)) + v * w
        for key, v in acc.items():
            if v != 0:
                P.entries[key] = v
        return P

    def apply_to_vector(self, vec):
        """Matrix times column vector (sequence of length cols)."""
        assert len(vec) == self.cols
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    def is_zero(self):
        return not self.entries

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return "RationalMatrix(%d, %d, nnz=%d)" % (
            self.rows, self.cols, len(self.entries))


def _integer_rows(M):
    """Rows of M as dicts col -> int, denominators cleared, content reduced."""
    rows = [{} for _ in range(M.rows)]
    for (r, c), v in M.entries.items():
        rows[r][c] = v
    out = []
    for row in rows:
        if not row:
            out.append({})
            continue
        denom = 1
        for v in row.values():
            denom = denom * v.denominator // gcd(denom, v.denominator)
        introw = {c: int(v * denom) for c, v in row.items()}
        g = 0
        for v in introw.values():
            g = gcd(g, v)
        if g > 1:
            introw = {c: v // g for c, v in introw.items()}
        out.append(introw)
    return out


def _reduce_content(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _echelon(rows, cols):
    """Fraction-free echelon form.

    rows: list of dicts col -> int (consumed).  Returns a list of
    (pivot_col, row_dict) in increasing pivot_col order.  Pivot choice: lowest
    column with a nonzero entry among the remaining rows, then the earliest
    remaining row (original assembly order), so the result is deterministic.
    """
    active = [r for r in rows if r]
    pivots = []
    for col in range(cols):
        pivot_row = None
        rest = []
        for row in active:
            if pivot_row is None and col in row:
                pivot_row = row
            else:
                rest.append(row)
        if pivot_row is None:
            continue
        lead = pivot_row[col]
        new_active = []
        for row in rest:
            if col in row:
                coef = row[col]
                newrow = {}
                for c in set(row) | set(pivot_row):
                    v = lead * row.get(c, 0) - coef * pivot_row.get(c, 0)
                    if v:
                        newrow[c] = v
                if newrow:
                    new_active.append(_reduce_content(newrow))
            else:
                new_active.append(row)
        pivots.append((col, pivot_row))
        active = new_active
        if not active:
            break
    return pivots


def rank(M):
    """Rank of M over Q."""
    return len(_echelon(_integer_rows(M), M.cols))


def kernel_basis(M):
    """Basis of ker(M) as a list of length-cols Fraction vectors.

    The basis is in canonical (reduced-echelon) form: free column j of the
    j-th basis vector carries a 1 and all other free columns carry 0, so a
    vector already known to lie in the kernel can be expressed in this basis
    by reading off its free-column coordinates.
    """
    basis, _free = kernel_basis_with_free_columns(M)
    return basis


def kernel_basis_with_free_columns(M):
    """Like kernel_basis, but also return the list of free column indices."""
    pivots = _echelon(_integer_rows(M), M.cols)
    pivot_cols = [c for c, _ in pivots]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        vec = [Fraction(0)] * M.cols
        vec[f] = Fraction(1)
        # back substitution: pivots are in increasing column order and each
        # pivot row only involves columns >= its pivot column
        for col, row in reversed(pivots):
            if col > f:
                continue
            s = Fraction(0)
            for c, v in row.items():
                if c != col:
                    s += v * vec[c]
            vec[col] = -s / row[col]
        basis.append(vec)
    return basis, free_cols


def solve(M, b):
    """One solution x of M x = b, or None if inconsistent.

    Free variables are set to 0; the result is deterministic.
    """
    assert len(b) == M.rows
    BCOL = M.cols  # augmented column index
    frac_rows = [{} for _ in range(M.rows)]
    for (r, c), v in M.entries.items():
        frac_rows[r][c] = v
    for r, v in enumerate(b):
        v = Fraction(v)
        if v != 0:
            frac_rows[r][BCOL] = v
    aug = RationalMatrix(M.rows, M.cols + 1)
    for r, row in enumerate(frac_rows):
        for c, v in row.items():
            aug.set_entry(r, c, v)
    pivots = _echelon(_integer_rows(aug), M.cols + 1)
    x = [Fraction(0)] * M.cols
    for col, row in pivots:
        if col == BCOL:
            return None  # row reduces to 0 = nonzero
    for col, row in reversed(pivots):
        s = Fraction(0)
        for c, v in row.items():
            if c == col or c == BCOL:
                continue
            s += v * x[c]
        rhs = Fraction(row.get(BCOL, 0))
        x[col] = (rhs - s) / row[col]
    return x


def homology_dim(d_in, d_out):
    """dim ker(d_out) - rank(d_in) for a pair C_in --d_in--> C --d_out--> C_out.

    d_in has as many rows as dim C; d_out has as many columns.  Raises
    CompositionNotZero unless d_out * d_in = 0 exactly.
    """
    assert d_in.rows == d_out.cols, "middle dimensions disagree"
    if not d_out.matmul(d_in).is_zero():
        raise CompositionNotZero("d_out * d_in has a nonzero entry")
    return (d_out.cols - rank(d_out)) - rank(d_in)


class ColumnSolver:
    """Incremental exact solver for membership in a span of tagged vectors.

    Vectors are dicts index -> Fraction (or sequences).  add() inserts a new
    vector with a tag; reduce() rewrites a vector against the stored ones and
    returns (residual, combination) where combination maps tags to
    coefficients such that  vector = sum(coeff * tagged) + residual.
    """

    def __init__(self):
        self._rows = []  # list of (pivot_index, vec_dict, combo_dict)

    @staticmethod
    def _to_dict(vec):
        if isinstance(vec, dict):
            return {k: Fraction(v) for k, v in vec.items() if v}
        return {i: Fraction(v) for i, v in enumerate(vec) if v}

    def reduce(self, vec):
        v = self._to_dict(vec)
        combo = {}
        for piv, row, rcombo in self._rows:
            if piv in v:
                coef = v[piv] / row[piv]
                for c, w in row.items():
                    nv = v.get(c, Fraction(0)) - coef * w
                    if nv:
                        v[c] = nv
                    else:
                        v.pop(c, None)
                for t, w in rcombo.items():
                    combo[t] = combo.get(t, Fraction(0)) + coef * w
        return v, combo

    def add(self, vec, tag):
        """Insert vec; returns False (and stores nothing) if dependent."""
        v, combo = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        combo = {t: -w for t, w in combo.items()}
        combo[tag] = Fraction(1)
        self._rows.append((piv, v, combo))
        return True

    def contains(self, vec):
        v, _ = self.reduce(vec)
        return not v

    def coefficients(self, vec):
        """Express vec in the stored vectors; None if not in the span."""
        v, combo = self.reduce(vec)
        if v:
            return None
        return combo

    def __len__(self):
        return len(self._rows)
