"""Exact rational linear algebra: fraction-free elimination and nullspaces.

All routines are deterministic: pivots are chosen leftmost-first, ties
broken by row order, so identical inputs give identical outputs.  Rows may
be dense sequences or sparse ``{column: value}`` dicts of rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _sparse_int_rows(rows):
    """Normalize rows to primitive sparse integer dicts, dropping zero rows."""
    out = []
    for row in rows:
        items = row.items() if isinstance(row, dict) else enumerate(row)
        fr = {j: Fraction(v) for j, v in items if v != 0}
        if not fr:
            continue
        denom = lcm(*[v.denominator for v in fr.values()])
        ints = {j: int(v * denom) for j, v in fr.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, abs(v))
        if g > 1:
            ints = {j: v // g for j, v in ints.items()}
        out.append(ints)
    return out


def row_echelon_fraction_free(rows):
    """Fraction-free elimination with per-row gcd reduction.

    Returns a list of (pivot_col, sparse_int_row) with strictly increasing
    pivot columns.
    """
    work = _sparse_int_rows(rows)
    echelon = []
    while work:
        c = min(min(r) for r in work)
        pi = next(i for i, r in enumerate(work) if min(r) == c)
        piv_row = work.pop(pi)
        piv = piv_row[c]
        echelon.append((c, piv_row))
        nxt = []
        for r in work:
            f = r.get(c)
            if f is None:
                nxt.append(r)
                continue
            nr = {}
            for j in r.keys() | piv_row.keys():
                val = piv * r.get(j, 0) - f * piv_row.get(j, 0)
                if val:
                    nr[j] = val
            if nr:
                g = 0
                for v in nr.values():
                    g = gcd(g, abs(v))
                if g > 1:
                    nr = {j: v // g for j, v in nr.items()}
                nxt.append(nr)
        work = nxt
    return echelon


def nullspace(rows, ncols):
    """Canonical nullspace basis of a rational matrix with ncols columns.

    One basis vector per free column, in ascending column order, normalized
    to a primitive integer vector whose first nonzero entry is positive.
    """
    if ncols == 0:
        return []
    echelon = row_echelon_fraction_free(rows)
    pivot_cols = [c for c, _ in echelon]
    pivot_set = set(pivot_cols)
    basis = []
    for fc in range(ncols):
        if fc in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for c, row in reversed(echelon):
            s = Fraction(0)
            for j, v in row.items():
                if j != c:
                    s += v * vec[j]
            vec[c] = -s / row[c]
        basis.append(normalize_primitive(vec))
    return basis


def normalize_primitive(vec):
    """Scale a rational vector to primitive integers, first nonzero > 0."""
    denom = lcm(*[x.denominator for x in vec]) if vec else 1
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(Fraction(x) for x in ints)


def rref(rows):
    """Reduced row echelon form over exact rationals.

    Returns (rref_rows, pivot_cols); rows are dense lists.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [m[i][j] - f * m[r][j] for j in range(ncols)]
        pivot_cols.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivot_cols


def solve_exact(matrix, rhs):
    """Solve ``matrix @ x = rhs`` exactly.

    Returns one solution vector (free variables zero), or None if the
    system is inconsistent.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [list(matrix[i]) + [rhs[i]] for i in range(nrows)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x
