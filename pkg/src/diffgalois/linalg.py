"""Exact linear algebra: Gaussian elimination over Q and integer lattices
(kernels in Hermite normal form)."""

from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form over Q. Returns (matrix, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {x : A x = 0} over Q, one vector per free column."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    m, pivots = rref(rows)
    n = len(m[0])
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][free]
        basis.append(v)
    return basis


def primitive_integer_vector(v):
    """Scale a rational vector to a primitive integer vector whose first
    nonzero entry is positive."""
    from math import gcd

    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return [-x for x in ints] if lead < 0 else ints


def solve(rows, rhs):
    """One solution x of A x = rhs over Q, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return []
    m, pivots = rref(aug)
    n = len(rows[0])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = m[i][n]
    return x


# -- integer lattices -------------------------------------------------------


def _xgcd(a: int, b: int):
    """(g, s, t) with s*a + t*b = g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hermite_normal_form(rows):
    """Row-style HNF of an integer matrix; zero rows dropped.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    """
    m = [list(map(int, r)) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        # gcd-combine rows r.. on column c
        for i in range(r + 1, len(m)):
            if m[i][c]:
                a, b = m[r][c], m[i][c]
                g, s, t = _xgcd(a, b)
                ra, rb = m[r], m[i]
                m[r] = [s * x + t * y for x, y in zip(ra, rb)]
                m[i] = [(a // g) * y - (b // g) * x for x, y in zip(ra, rb)]
        if r < len(m) and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            p = m[r][c]
            for i in range(r):
                f = m[i][c] // p
                if f:
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m if any(row)]


def integer_kernel(rows, ncols=None):
    """Basis (in HNF) of {x in Z^n : A x = 0} by unimodular column reduction."""
    A = [list(map(int, r)) for r in rows]
    n = len(A[0]) if A else (ncols or 0)
    # columns of [A; I], stored as lists of length len(A) + n
    cols = [[A[i][j] for i in range(len(A))] + [int(k == j) for k in range(n)] for j in range(n)]
    mrows = len(A)
    start = 0
    for i in range(mrows):
        for j in range(start + 1, n):
            if cols[j][i]:
                a, b = cols[start][i], cols[j][i]
                g, s, t = _xgcd(a, b)
                ca, cb = cols[start], cols[j]
                cols[start] = [s * x + t * y for x, y in zip(ca, cb)]
                cols[j] = [(a // g) * y - (b // g) * x for x, y in zip(ca, cb)]
        if start < n and cols[start][i]:
            start += 1
    kernel = [c[mrows:] for c in cols[start:]]
    return hermite_normal_form(kernel)


def lattice_contains(basis, v) -> bool:
    """Membership of an integer vector in the Z-span of an HNF basis."""
    v = list(v)
    for row in basis:
        c = next(i for i, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        f = v[c] // row[c]
        v = [x - f * y for x, y in zip(v, row)]
    return not any(v)
