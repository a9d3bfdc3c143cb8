"""Dense linear algebra over an abstract field (see :mod:`orepoly._poly`)."""

from __future__ import annotations

from functools import lru_cache


def det(F, M):
    A = [list(row) for row in M]
    n = len(A)
    result = F.one
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            result = F.neg(result)
        pv = A[col][col]
        result = F.mul(result, pv)
        inv = F.inv(pv)
        for i in range(col + 1, n):
            f = A[i][col]
            if f == F.zero:
                continue
            f = F.mul(f, inv)
            A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[col])]
    return result


def det_division_free(R, M):
    """Determinant over a commutative ring by Laplace expansion along rows,
    memoised on the set of columns still available."""
    n = len(M)

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return R.one
        acc = R.zero
        sign = False
        for c in range(n):
            if not cols >> c & 1:
                continue
            entry = M[row][c]
            if entry != R.zero:
                term = R.mul(entry, minor(row + 1, cols & ~(1 << c)))
                acc = R.sub(acc, term) if sign else R.add(acc, term)
            sign = not sign
        return acc

    return minor(0, (1 << n) - 1)


def rank(F, M):
    A = [list(row) for row in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    rk = 0
    for col in range(cols):
        piv = next((i for i in range(rk, rows) if A[i][col] != F.zero), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        inv = F.inv(A[rk][col])
        for i in range(rk + 1, rows):
            f = A[i][col]
            if f == F.zero:
                continue
            f = F.mul(f, inv)
            A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[rk])]
        rk += 1
        if rk == rows:
            break
    return rk


def matmul(F, A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = F.zero
            for l in range(m):
                a = A[i][l]
                if a != F.zero:
                    acc = F.add(acc, F.mul(a, B[l][j]))
            row.append(acc)
        out.append(row)
    return out


def charpoly(F, M):
    """Monic characteristic polynomial det(T I - M), constant term first."""
    from . import _poly
    n = len(M)
    H = [list(row) for row in M]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1] != F.zero), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        inv = F.inv(H[m][m - 1])
        for j in range(m + 1, n):
            u = H[j][m - 1]
            if u == F.zero:
                continue
            u = F.mul(u, inv)
            H[j] = [F.sub(x, F.mul(u, y)) for x, y in zip(H[j], H[m])]
            for row in H:
                row[m] = F.add(row[m], F.mul(u, row[j]))
    polys = [[F.one]]
    for m in range(1, n + 1):
        pm = _poly.mul(F, [F.neg(H[m - 1][m - 1]), F.one], polys[m - 1])
        t = F.one
        for i in range(1, m):
            t = F.mul(t, H[m - i][m - i - 1])
            coef = F.mul(t, H[m - i - 1][m - 1])
            if coef != F.zero:
                pm = _poly.sub(F, pm, _poly.scale(F, coef, polys[m - i - 1]))
        polys.append(pm)
    return polys[n]


class IncrementalBasis:
    """Echelon basis that reports the first vector dependent on earlier ones.

    ``add(v)`` returns None while the vectors stay independent and otherwise
    the coefficients c_0..c_{k-1} with v = sum c_i v_i over the vectors added
    so far.
    """

    def __init__(self, F):
        self.F = F
        self.rows = []    # (pivot, reduced vector, combination of originals)
        self.count = 0

    def add(self, v):
        F = self.F
        v = list(v)
        comb = [F.zero] * self.count + [F.one]
        for piv, row, rcomb in self.rows:
            f = v[piv]
            if f == F.zero:
                continue
            v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
            comb = [F.sub(comb[i], F.mul(f, rcomb[i]) if i < len(rcomb) else F.zero)
                    for i in range(len(comb))]
        piv = next((i for i, x in enumerate(v) if x != F.zero), None)
        if piv is None:
            # 0 = v - sum(...) => v = -(comb without the last entry)
            return [F.neg(c) for c in comb[:-1]]
        inv = F.inv(v[piv])
        self.rows.append((piv, [F.mul(inv, x) for x in v], [F.mul(inv, c) for c in comb]))
        self.count += 1
        return None
