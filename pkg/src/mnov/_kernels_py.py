"""Pure-Python fallback for the compiled kernels in ``_kernels.pyx``."""

PRIME = 2147483647  # 2**31 - 1; products of residues fit in a signed 64-bit word


def rank_mod_p(rows, ncols, p=PRIME):
    """Rank modulo ``p`` of sparse integer rows (``list`` of ``{col: int}``)."""
    pivots = {}
    rank = 0
    for row in rows:
        r = {}
        for c, v in row.items():
            v %= p
            if v:
                r[c] = v
        while r:
            col = min(r)
            prow = pivots.get(col)
            if prow is None:
                inv = pow(r[col], p - 2, p)
                pivots[col] = {c: v * inv % p for c, v in r.items()}
                rank += 1
                break
            f = r[col]
            for c, v in prow.items():
                nv = (r.get(c, 0) - f * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return rank


def dense_rank_mod_p(matrix, p=PRIME):
    """Rank modulo ``p`` of a dense integer matrix given as a list of lists."""
    a = [[v % p for v in row] for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        inv = pow(prow[col], p - 2, p)
        for j in range(col, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, nrows):
            f = a[i][col]
            if f:
                row = a[i]
                for j in range(col, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        if rank == nrows:
            break
    return rank
