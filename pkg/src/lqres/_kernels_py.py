"""Pure-Python row-reduction kernels (fallback for the compiled ``_kernels``).

Both kernels run Gauss-Jordan elimination: columns are scanned left to right
and the pivot is the first remaining row with a nonzero entry in that column.
The output rows are the nonzero rows of the reduced echelon form.
"""

from math import gcd

IMPLEMENTATION = "python"


def rref_modp(rows, ncols, p):
    """Reduced echelon form over GF(p); pivots are normalized to 1.

    ``rows`` holds ints in ``range(p)`` and is not modified.
    Returns ``(reduced_rows, pivot_columns)``.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        if a != 1:
            inv = pow(a, -1, p)
            prow = [x * inv % p for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            b = row[c]
            if b:
                for j in nz:
                    row[j] = (row[j] - b * prow[j]) % p
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref_int(rows, ncols):
    """Fraction-free reduced echelon form over the integers.

    Each output row is primitive (content 1) with a positive pivot, and every
    pivot column is zero outside its pivot row.  Dividing each row by its
    pivot gives the reduced echelon form over QQ.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if prow[c] < 0:
            prow = [-x for x in prow]
            rows[r] = prow
        a = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            b = row[c]
            if not b:
                continue
            if a == 1:
                for j in nz:
                    row[j] -= b * prow[j]
            else:
                g = gcd(a, b)
                a1 = a // g
                b1 = b // g
                row = [a1 * x for x in row]
                for j in nz:
                    row[j] -= b1 * prow[j]
                g = gcd(*row)
                if g > 1:
                    row = [x // g for x in row]
                rows[i] = row
        pivots.append(c)
        r += 1
    return rows[:r], pivots
