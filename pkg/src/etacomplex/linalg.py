"""Exact linear-system solving over the supported rings.

Over Z the workhorse is Smith normal form; Z/m systems are solved by lifting
to Z with m*Id columns adjoined; fields use Gaussian elimination.  The solver
returns one arbitrary solution of a consistent system, never "the" solution.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .matrix import RingMatrix, mat_mul
from .rings import ZZ, CoeffRing


# -- Smith normal form over Z ----------------------------------------------


def smith_normal_form(a: RingMatrix) -> Tuple[RingMatrix, RingMatrix, RingMatrix]:
    """Return (U, D, V) with U*a*V = D diagonal, d1 | d2 | ..., U,V unimodular."""
    if a.ring != ZZ:
        raise ValueError(f"Smith normal form requires ring Z, got {a.ring}")
    n, m = a.rows, a.cols
    A = [a.row(i) for i in range(n)]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    V = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_op(i, k, c):  # row_i -= c * row_k  (on A and U)
        Ai, Ak = A[i], A[k]
        for j in range(m):
            Ai[j] -= c * Ak[j]
        Ui, Uk = U[i], U[k]
        for j in range(n):
            Ui[j] -= c * Uk[j]

    def col_op(j, k, c):  # col_j -= c * col_k  (on A and V)
        for i in range(n):
            A[i][j] -= c * A[i][k]
        for i in range(m):
            V[i][j] -= c * V[i][k]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(n, m):
        while True:
            # bring the entry of least magnitude to the pivot; re-selecting on
            # every pass keeps intermediate entries from exploding
            piv = None
            for i in range(t, n):
                for j in range(t, m):
                    x = A[i][j]
                    if x and (piv is None or abs(x) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    row_op(i, t, A[i][t] // A[t][t])
                    if A[i][t]:  # nonzero remainder: smaller pivot next pass
                        dirty = True
            for j in range(t + 1, m):
                if A[t][j]:
                    col_op(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the trailing block for the chain d_k | d_{k+1}
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if A[i][j] % A[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, -1)  # fold the offending row in; next pass shrinks the pivot
        if A[t][t] == 0:
            break
        if A[t][t] < 0:
            for j in range(m):
                A[t][j] = -A[t][j]
            for j in range(n):
                U[t][j] = -U[t][j]
        t += 1

    Um = RingMatrix.from_rows(ZZ, U) if n else RingMatrix(ZZ, 0, 0, [])
    Vm = RingMatrix.from_rows(ZZ, V) if m else RingMatrix(ZZ, 0, 0, [])
    Dm = RingMatrix(ZZ, n, m, [A[i][j] for i in range(n) for j in range(m)])
    return Um, Dm, Vm


# -- system solving --------------------------------------------------------


def _solve_field(a: RingMatrix, rhs_cols: List[List], want_kernel: bool):
    """Gaussian elimination over GF(p) or Q.  rhs may have several columns."""
    ring = a.ring
    n, m = a.rows, a.cols
    M = [a.row(i) + [col[i] for col in rhs_cols] for i in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        pr = None
        for i in range(r, n):
            if M[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = ring.inv(M[r][c])
        M[r] = [ring.mul(inv, x) for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    # consistency
    sols = []
    for t in range(len(rhs_cols)):
        col = m + t
        ok = True
        for i in range(r, n):
            if M[i][col] != 0:
                ok = False
                break
        if not ok:
            sols.append(None)
            continue
        x = [ring.zero()] * m
        for i, c in enumerate(pivots):
            x[c] = M[i][col]
        sols.append(x)
    kern = []
    if want_kernel:
        pivset = set(pivots)
        for free in range(m):
            if free in pivset:
                continue
            v = [ring.zero()] * m
            v[free] = ring.one()
            for i, c in enumerate(pivots):
                v[c] = ring.neg(M[i][free])
            kern.append(v)
    return sols, kern


def _solve_integer(a: RingMatrix, rhs_cols: List[List], want_kernel: bool):
    """Solve over Z via Smith normal form.  rhs entries are ints."""
    n, m = a.rows, a.cols
    U, D, V = smith_normal_form(a)
    diag = [D[(i, i)] for i in range(min(n, m))]
    rank = sum(1 for d in diag if d != 0)
    sols = []
    for rhs in rhs_cols:
        ub = [sum(U[(i, j)] * rhs[j] for j in range(n)) for i in range(n)]
        y = [0] * m
        ok = True
        for i in range(n):
            if i < rank:
                if ub[i] % diag[i] != 0:
                    ok = False
                    break
                y[i] = ub[i] // diag[i]
            elif ub[i] != 0:
                ok = False
                break
        if not ok:
            sols.append(None)
            continue
        x = [sum(V[(i, j)] * y[j] for j in range(m)) for i in range(m)]
        sols.append(x)
    kern = []
    if want_kernel:
        for j in range(rank, m):
            kern.append(V.column(j))
    return sols, kern


def _solve_zmod(a: RingMatrix, rhs_cols: List[List], want_kernel: bool):
    """Solve over Z/m via the integer Smith form of the lifted coefficients.

    With U a V = D diagonal, a x = b (mod m) becomes D y = U b (mod m) for
    y = V^{-1} x; each congruence d_i y_i = c_i (mod m) is solved by gcd.
    """
    from math import gcd

    mod = a.ring.modulus
    n, m = a.rows, a.cols
    lifted = RingMatrix(ZZ, n, m, [int(x) for x in a.entries])
    U, D, V = smith_normal_form(lifted)
    diag = [D[(i, i)] for i in range(min(n, m))]
    sols = []
    for rhs in rhs_cols:
        ub = [sum(U[(i, j)] * int(rhs[j]) for j in range(n)) % mod for i in range(n)]
        y = [0] * m
        ok = True
        for i in range(n):
            c = ub[i]
            d = diag[i] % mod if i < min(n, m) else 0
            if d == 0:
                if c % mod != 0:
                    ok = False
                    break
                continue
            g = gcd(d, mod)
            if c % g != 0:
                ok = False
                break
            # solve d*y = c (mod mod): y = (c/g) * inv(d/g) (mod mod/g)
            mg = mod // g
            y[i] = ((c // g) * pow(d // g, -1, mg)) % mg if mg > 1 else 0
        if not ok:
            sols.append(None)
            continue
        x = [sum(V[(i, j)] * y[j] for j in range(m)) % mod for i in range(m)]
        sols.append(x)
    kern = []
    if want_kernel:
        gens_y = []
        for j in range(m):
            d = diag[j] if j < min(n, m) else 0
            if d % mod == 0:
                step = 1  # free coordinate
            else:
                g = gcd(d % mod, mod)
                if g == mod:
                    step = 1
                elif mod // g == 1:
                    continue
                else:
                    step = mod // g
            gens_y.append((j, step))
        seen = set()
        for j, step in gens_y:
            v = tuple((V[(i, j)] * step) % mod for i in range(m))
            if any(v) and v not in seen:
                seen.add(v)
                kern.append(list(v))
    return sols, kern


def _dispatch(a: RingMatrix, rhs_cols: List[List], want_kernel: bool):
    if a.ring.is_field:
        return _solve_field(a, rhs_cols, want_kernel)
    if a.ring.kind == "Z":
        return _solve_integer(a, rhs_cols, want_kernel)
    return _solve_zmod(a, rhs_cols, want_kernel)


def solve_linear_system(coeffs: RingMatrix, rhs: RingMatrix) -> Optional[RingMatrix]:
    """Return some x with coeffs*x = rhs over the ring, or None if inconsistent."""
    if coeffs.ring != rhs.ring:
        raise ValueError(f"ring mismatch: {coeffs.ring} vs {rhs.ring}")
    if rhs.cols != 1 or rhs.rows != coeffs.rows:
        raise ValueError("rhs must be a column matching coeffs.rows")
    sols, _ = _dispatch(coeffs, [rhs.column(0)], want_kernel=False)
    if sols[0] is None:
        return None
    return RingMatrix(coeffs.ring, coeffs.cols, 1, sols[0])


def solve_with_kernel(
    coeffs: RingMatrix, rhs: RingMatrix
) -> Tuple[Optional[RingMatrix], List[RingMatrix]]:
    """Like solve_linear_system, but also return generators of the kernel."""
    if coeffs.ring != rhs.ring:
        raise ValueError("ring mismatch")
    sols, kern = _dispatch(coeffs, [rhs.column(0)], want_kernel=True)
    part = None if sols[0] is None else RingMatrix(coeffs.ring, coeffs.cols, 1, sols[0])
    gens = [RingMatrix(coeffs.ring, coeffs.cols, 1, v) for v in kern]
    return part, gens


def kernel_generators(coeffs: RingMatrix) -> List[RingMatrix]:
    zero = RingMatrix.zero(coeffs.ring, coeffs.rows, 1)
    _, gens = solve_with_kernel(coeffs, zero)
    return gens


def verify_snf(a: RingMatrix, U: RingMatrix, D: RingMatrix, V: RingMatrix) -> bool:
    """Check U*a*V = D, diagonality, divisibility chain and unimodularity."""
    if mat_mul(mat_mul(U, a), V) != D:
        return False
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j and D[(i, j)] != 0:
                return False
    diag = [D[(i, i)] for i in range(min(D.rows, D.cols))]
    for x, y in zip(diag, diag[1:]):
        if x == 0 and y != 0:
            return False
        if x != 0 and y % x != 0:
            return False
    return abs(_det(U)) == 1 and abs(_det(V)) == 1


def _det(m: RingMatrix) -> int:
    """Integer determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = m.rows
    if n == 0:
        return 1
    a = [list(m.row(i)) for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
