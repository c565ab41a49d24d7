"""Exact linear algebra over fields and integral domains.

Entries are any objects with ring operators and an exact equality test
against 0 (Fraction, CycNumber, Laurent polynomials).  Matrices are lists
of row lists, always small here, so plain Gaussian elimination is the
whole story: `rank_over_field` divides by pivots, `rank_division_free`
uses cross-multiplication only and therefore also works over polynomial
rings where division is unavailable.
"""


def _is_zero(x):
    return x == 0


def rank_over_field(rows):
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(a)):
            if not _is_zero(a[r][c]):
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv_lead = a[rank][c]
        for r in range(rank + 1, len(a)):
            if not _is_zero(a[r][c]):
                factor = a[r][c] / inv_lead
                a[r] = [x - factor * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank


def rank_division_free(rows):
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(a)):
            if not _is_zero(a[r][c]):
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        lead = a[rank][c]
        for r in range(rank + 1, len(a)):
            if not _is_zero(a[r][c]):
                f = a[r][c]
                a[r] = [lead * x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank


def kernel_basis(rows, ncols, one, zero):
    """Basis of the right kernel over a field.

    `one` and `zero` supply the scalar constants of the entry type, since
    the matrix may be empty in a way that leaves no entry to copy from.
    """
    a = [list(r) for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(a)):
            if not _is_zero(a[r][c]):
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        lead = a[rank][c]
        a[rank] = [x / lead for x in a[rank]]
        for r in range(len(a)):
            if r != rank and not _is_zero(a[r][c]):
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        pivots.append(c)
        rank += 1
        if rank == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = zero - a[r][fc]
        basis.append(vec)
    return basis


