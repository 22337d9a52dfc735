"""Smith normal form over the integers.

Boundary matrices of order complexes are very sparse and almost every pivot
is a unit, so :func:`invariant_factors` first eliminates unit pivots on a
sparse representation and only runs the dense algorithm on what remains.
All arithmetic uses Python integers, so there is no overflow.
"""
from __future__ import annotations


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Non-zero invariant factors d_1 | d_2 | ... of a dense integer matrix.

    Pivots are chosen with minimal absolute value to limit coefficient growth.
    """
    A = [list(row) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]

        while True:
            p = A[t][t]
            done = True
            # clear column t
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        ri, rt = A[i], A[t]
                        for k in range(t, n):
                            ri[k] -= q * rt[k]
                    if A[i][t]:
                        done = False
            # clear row t
            rt = A[t]
            for j in range(t + 1, n):
                if rt[j]:
                    q = rt[j] // p
                    if q:
                        for row in A[t:]:
                            row[j] -= q * row[t]
                    if rt[j]:
                        done = False
            if done:
                # enforce divisibility of the remaining block by the pivot
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for k in range(t, n):
                    A[t][k] += A[bad][k]
                continue
            # move the smallest remaining entry of row/column t into the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cand)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def invariant_factors(columns: dict[int, dict[int, int]]) -> tuple[int, list[int]]:
    """Rank and torsion coefficients (> 1) of a sparse integer matrix.

    ``columns`` maps a column key to ``{row key: non-zero value}``. The input
    is not modified.
    """
    cols = {c: dict(entries) for c, entries in columns.items() if entries}
    rows: dict[int, set[int]] = {}
    for c, entries in cols.items():
        for r in entries:
            rows.setdefault(r, set()).add(c)

    rank = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda k: len(cols[k])):
            if c not in cols:
                continue
            col = cols[c]
            units = [r for r, v in col.items() if v in (1, -1)]
            if not units:
                continue
            r = min(units, key=lambda k: len(rows[k]))
            u = col[r]
            # column operations clear row r outside the pivot column
            for c2 in list(rows[r]):
                if c2 == c:
                    continue
                other = cols[c2]
                q = other[r] * u  # u is its own inverse
                for rr, v in col.items():
                    nv = other.get(rr, 0) - q * v
                    if nv:
                        if rr not in other:
                            rows[rr].add(c2)
                        other[rr] = nv
                    elif rr in other:
                        del other[rr]
                        rows[rr].discard(c2)
                if not other:
                    del cols[c2]
            # row r now only meets column c, so c and r drop out together
            for rr in col:
                rows[rr].discard(c)
            del rows[r]
            del cols[c]
            rank += 1
            progress = True

    if not cols:
        return rank, []
    row_keys = sorted({r for entries in cols.values() for r in entries})
    col_keys = sorted(cols)
    dense = [[cols[c].get(r, 0) for c in col_keys] for r in row_keys]
    diag = smith_diagonal(dense)
    return rank + len(diag), [d for d in diag if d > 1]


def normalize_torsion(values: list[int]) -> list[int]:
    """Invariant-factor form of a direct sum of cyclic groups Z/d_i."""
    vals = [v for v in values if v > 1]
    if not vals:
        return []
    out = smith_diagonal([[v if i == j else 0 for j in range(len(vals))] for i, v in enumerate(vals)])
    return [d for d in out if d > 1]

