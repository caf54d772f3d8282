"""Pure-Python prime-field rank kernel.

Reference implementation of the routine in ``_modrank.pyx``; used as the
import-time fallback when the compiled extension is unavailable.
"""


def rank_mod_p(flat, nrows, ncols, p):
    """Rank over F_p of the row-major matrix stored in ``flat``.

    Entries must already be reduced into [0, p).  ``flat`` is any indexable
    of length nrows*ncols.  The input is not modified.
    """
    if nrows == 0 or ncols == 0:
        return 0
    m = [list(flat[r * ncols:(r + 1) * ncols]) for r in range(nrows)]
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
        mrow = m[row]
        inv = pow(mrow[col], p - 2, p)
        for r in range(row + 1, nrows):
            f = m[r][col]
            if f:
                f = f * inv % p
                mr = m[r]
                for c in range(col, ncols):
                    mr[c] = (mr[c] - f * mrow[c]) % p
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank
