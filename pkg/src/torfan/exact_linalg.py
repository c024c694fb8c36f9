"""Exact integer and rational linear algebra over Z^n.

Conventions used across the package:

* a vector is a tuple of Python ints (arbitrary precision),
* a matrix is a tuple of row vectors, all of equal length,
* sublattices of Z^n are described by tuples of basis rows.

Everything here is exact; no value is ever converted to floating point.
"""

from fractions import Fraction
from math import gcd

Vector = tuple
Matrix = tuple


def _as_rows(m):
    rows = [tuple(int(x) for x in row) for row in m]
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ValueError("matrix rows have unequal lengths")
    return rows


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def primitive(v):
    """Divide an integer vector by the gcd of its entries, keeping direction."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def hermite_normal_form(m):
    """Row-style Hermite normal form.

    Returns (hnf, transform) where transform is unimodular,
    transform @ m == hnf, pivots are positive, entries above each pivot
    are reduced into [0, pivot), and zero rows sit at the bottom.  Pivot
    columns increase left to right, which makes the nonzero rows a
    canonical basis of the row lattice.
    """
    rows = _as_rows(m)
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    rows = [list(r) for r in rows]
    t = _identity(nr)
    pr = 0
    for col in range(nc):
        piv = None
        for i in range(pr, nr):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != pr:
            rows[pr], rows[piv] = rows[piv], rows[pr]
            t[pr], t[piv] = t[piv], t[pr]
        for i in range(pr + 1, nr):
            if not rows[i][col]:
                continue
            a, b = rows[pr][col], rows[i][col]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            rows[pr], rows[i] = (
                [x * p + y * q for p, q in zip(rows[pr], rows[i])],
                [-bg * p + ag * q for p, q in zip(rows[pr], rows[i])],
            )
            t[pr], t[i] = (
                [x * p + y * q for p, q in zip(t[pr], t[i])],
                [-bg * p + ag * q for p, q in zip(t[pr], t[i])],
            )
        if rows[pr][col] < 0:
            rows[pr] = [-x for x in rows[pr]]
            t[pr] = [-x for x in t[pr]]
        p = rows[pr][col]
        for j in range(pr):
            q = rows[j][col] // p
            if q:
                rows[j] = [a - q * b for a, b in zip(rows[j], rows[pr])]
                t[j] = [a - q * b for a, b in zip(t[j], t[pr])]
        pr += 1
        if pr == nr:
            break
    return tuple(tuple(r) for r in rows), tuple(tuple(r) for r in t)


def hnf_basis(m):
    """Nonzero rows of the Hermite normal form: canonical lattice basis."""
    h, _ = hermite_normal_form(m)
    return tuple(r for r in h if any(r))


def _smith_with_inverses(m):
    """Smith normal form with transforms and their inverses.

    Returns (d, left, right, left_inv, right_inv) with
    left @ m @ right == d, d diagonal with d[i][i] | d[i+1][i+1],
    left @ left_inv == I, right @ right_inv == I.
    """
    rows = _as_rows(m)
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    d = [list(r) for r in rows]
    left = _identity(nr)
    left_inv = _identity(nr)
    right = _identity(nc)
    right_inv = _identity(nc)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        left[i], left[j] = left[j], left[i]
        for r in left_inv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]
        right_inv[i], right_inv[j] = right_inv[j], right_inv[i]

    def add_row(dst, src, c):
        # row[dst] += c * row[src]
        d[dst] = [a + c * b for a, b in zip(d[dst], d[src])]
        left[dst] = [a + c * b for a, b in zip(left[dst], left[src])]
        for r in left_inv:
            r[src] -= c * r[dst]

    def add_col(dst, src, c):
        for r in d:
            r[dst] += c * r[src]
        for r in right:
            r[dst] += c * r[src]
        right_inv[src] = [a - c * b for a, b in zip(right_inv[src], right_inv[dst])]

    def negate_row(i):
        d[i] = [-a for a in d[i]]
        left[i] = [-a for a in left[i]]
        for r in left_inv:
            r[i] = -r[i]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        while True:
            i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            pivot = d[t][t]
            dirty = False
            for i in range(nr):
                if i != t and d[i][t]:
                    add_row(i, t, -(d[i][t] // pivot))
                    if d[i][t]:
                        dirty = True
            for j in range(nc):
                if j != t and d[t][j]:
                    add_col(j, t, -(d[t][j] // pivot))
                    if d[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, nr):
                    for j in range(t, nc):
                        if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                            best = (i, j)
                continue
            # pivot must divide every remaining entry for the chain d_i | d_{i+1}
            stray = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if d[i][j] % pivot:
                        stray = (i, j)
                        break
                if stray:
                    break
            if stray is None:
                break
            add_row(t, stray[0], 1)
            best = (t, t)
        if d[t][t] < 0:
            negate_row(t)
        t += 1
    return (
        tuple(tuple(r) for r in d),
        tuple(tuple(r) for r in left),
        tuple(tuple(r) for r in right),
        tuple(tuple(r) for r in left_inv),
        tuple(tuple(r) for r in right_inv),
    )


def smith_normal_form(m):
    """Smith normal form: (d, left, right) with left @ m @ right == d.

    d is diagonal, each diagonal entry divides the next, and both
    transforms are unimodular.
    """
    d, left, right, _, _ = _smith_with_inverses(m)
    return d, left, right


def det(m):
    """Exact determinant of a square integer matrix (Bareiss)."""
    rows = _as_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("det requires a square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m):
    rows = _as_rows(m)
    if not rows:
        return True
    return abs(det(rows)) == 1


def kernel_basis(m, cols=None):
    """Basis rows of the integer kernel {x : m @ x = 0} of an integer matrix.

    `cols` is required when m has no rows (the kernel then is all of Z^cols).
    """
    rows = _as_rows(m)
    if not rows:
        if cols is None:
            raise ValueError("kernel of an empty matrix needs an explicit column count")
        return tuple(tuple(r) for r in _identity(cols))
    nc = len(rows[0])
    d, _, right, _, _ = _smith_with_inverses(rows)
    rank = sum(1 for i in range(min(len(d), nc)) if d[i][i])
    cols_out = []
    for j in range(rank, nc):
        cols_out.append(tuple(right[i][j] for i in range(nc)))
    return tuple(cols_out)


def saturate(span_basis, cols=None):
    """Basis of the saturation of the row lattice of `span_basis`.

    The saturation is {v in Z^n : m*v lies in the lattice for some nonzero
    integer m}; equivalently the intersection of Z^n with the real span of
    the rows.  Computed as a double integer-orthogonal complement and
    returned as a canonical (HNF) basis.
    """
    rows = _as_rows(span_basis)
    if not rows:
        if cols is None:
            raise ValueError("saturating an empty basis needs an explicit column count")
        return ()
    n = len(rows[0])
    perp = kernel_basis(rows, cols=n)
    if not perp:
        return tuple(tuple(r) for r in _identity(n))
    return hnf_basis(kernel_basis(perp, cols=n))


def complement(saturated_basis, cols=None):
    """Basis of a direct complement: input (+) output = Z^n.

    The input rows must be a basis of a saturated sublattice; non-saturated
    or dependent input is rejected (detected through the Smith invariant
    factors).
    """
    rows = _as_rows(saturated_basis)
    if not rows:
        if cols is None:
            raise ValueError("complementing an empty basis needs an explicit column count")
        return tuple(tuple(r) for r in _identity(cols))
    n = len(rows[0])
    r = len(rows)
    d, _, _, _, right_inv = _smith_with_inverses(rows)
    factors = [d[i][i] for i in range(min(r, n))]
    if len(factors) < r or any(f != 1 for f in factors):
        raise ValueError("input rows are not a basis of a saturated sublattice")
    return tuple(tuple(right_inv[i]) for i in range(r, n))


def solve_rational(rows, target):
    """Solve sum_i x_i * rows[i] == target over the rationals.

    Returns a tuple of Fractions (free coordinates set to 0), or None when
    the system is inconsistent.
    """
    rows = [tuple(r) for r in rows]
    nr = len(rows)
    target = tuple(target)
    nc = len(target)
    if any(len(r) != nc for r in rows):
        raise ValueError("dimension mismatch")
    # columns = unknowns, one equation per coordinate
    eqs = [[Fraction(rows[i][j]) for i in range(nr)] + [Fraction(target[j])] for j in range(nc)]
    pivots = []
    rr = 0
    for col in range(nr):
        piv = next((i for i in range(rr, nc) if eqs[i][col]), None)
        if piv is None:
            continue
        eqs[rr], eqs[piv] = eqs[piv], eqs[rr]
        pv = eqs[rr][col]
        eqs[rr] = [Fraction(x, pv) for x in eqs[rr]]
        for i in range(nc):
            if i != rr and eqs[i][col]:
                f = eqs[i][col]
                eqs[i] = [a - f * b for a, b in zip(eqs[i], eqs[rr])]
        pivots.append(col)
        rr += 1
    for i in range(rr, nc):
        if eqs[i][nr]:
            return None
    x = [Fraction(0)] * nr
    for i, col in enumerate(pivots):
        x[col] = eqs[i][nr]
    return tuple(x)


def lattice_coords(basis_rows, v):
    """Integer coordinates of v in the given lattice basis, or None.

    None means v is not in the lattice (either outside the real span or
    with non-integral coordinates).
    """
    sol = solve_rational(basis_rows, v)
    if sol is None:
        return None
    if any(c.denominator != 1 for c in sol):
        return None
    return tuple(c.numerator for c in sol)


def in_lattice(basis_rows, v):
    """Is v an integer combination of the given rows (not necessarily a basis)?"""
    rows = [r for r in basis_rows if any(r)]
    if not rows:
        return not any(v)
    h = hnf_basis(rows)
    w = list(v)
    for row in h:
        c = next(j for j, x in enumerate(row) if x)
        if w[c] == 0:
            continue
        q, r = divmod(w[c], row[c])
        if r:
            return False
        w = [a - q * b for a, b in zip(w, row)]
    return not any(w)
