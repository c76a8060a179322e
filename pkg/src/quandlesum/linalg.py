"""Exact linear algebra: integer Smith normal form and rational elimination.

Matrices are plain lists of rows holding Python ints or Fractions, so
nothing here ever overflows or rounds.
"""

from __future__ import annotations

from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _swap_rows(M, i, j):
    if M is not None and i != j:
        M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    if M is not None and i != j:
        for row in M:
            row[i], row[j] = row[j], row[i]


def _add_row(M, src, dst, k):
    # row[dst] += k * row[src]
    if M is not None and k:
        rs, rd = M[src], M[dst]
        for c, v in enumerate(rs):
            if v:
                rd[c] += k * v


def _add_col(M, src, dst, k):
    if M is not None and k:
        for row in M:
            v = row[src]
            if v:
                row[dst] += k * v


def _neg_row(M, i):
    if M is not None:
        M[i] = [-v for v in M[i]]


def smith_normal_form(A, transforms=False):
    """Smith normal form of an integer matrix.

    Returns ``(diag, U, V)`` with ``U @ A @ V`` diagonal, the diagonal
    being ``diag`` (non-negative, each entry dividing the next, zeros at
    the end).  ``U`` and ``V`` are unimodular; they are ``None`` unless
    ``transforms`` is set (``"right"`` tracks ``V`` only).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(map(int, row)) for row in A]
    U = identity(m) if transforms and transforms != "right" else None
    V = identity(n) if transforms else None

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = S[i]
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
        _, pi, pj = best
        _swap_rows(S, t, pi)
        _swap_rows(U, t, pi)
        _swap_cols(S, t, pj)
        _swap_cols(V, t, pj)

        while True:
            p = S[t][t]
            moved = False
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // p
                    _add_row(S, t, i, -q)
                    _add_row(U, t, i, -q)
                    if S[i][t]:
                        moved = True
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // p
                    _add_col(S, t, j, -q)
                    _add_col(V, t, j, -q)
                    if S[t][j]:
                        moved = True
            if moved:
                # a remainder smaller than the pivot survived; make it the pivot
                cand = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, ci, cj = min(cand)
                _swap_rows(S, t, ci)
                _swap_rows(U, t, ci)
                _swap_cols(S, t, cj)
                _swap_cols(V, t, cj)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _add_row(S, bad, t, 1)
            _add_row(U, bad, t, 1)
        if S[t][t] < 0:
            _neg_row(S, t)
            _neg_row(U, t)
        t += 1

    diag = [S[i][i] for i in range(min(m, n))]
    return diag, U, V


def invariant_factors(A):
    """Nonzero diagonal of the Smith normal form."""
    if not A or not A[0]:
        return []
    diag, _, _ = smith_normal_form(A)
    return [d for d in diag if d]


def integer_rank(A):
    return len(invariant_factors(A))


def rref(A):
    """Reduced row echelon form over Q.  Returns ``(R, pivot_columns)``."""
    R = [[Fraction(v) for v in row] for row in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        pv = R[r][c]
        if pv != 1:
            R[r] = [v / pv for v in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                ri, rr = R[i], R[r]
                for k in range(c, n):
                    if rr[k]:
                        ri[k] -= f * rr[k]
        pivots.append(c)
        r += 1
    return R, pivots


def rational_rank(A):
    return len(rref(A)[1]) if A else 0


def rational_nullspace(A, ncols=None):
    """Basis of ``{x : A x = 0}`` over Q, one vector per free column."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(A)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        x = [Fraction(0)] * n
        x[free] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[free]
        basis.append(x)
    return basis


def rational_solve(A, b):
    """One solution of ``A x = b`` over Q, or ``None`` when inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def _solve_diagonal(diag, rhs, modulus):
    """Solve ``diag[i] * z[i] = rhs[i]`` (mod ``modulus``; over Z if 0)."""
    from math import gcd

    z = [0] * len(rhs)
    for i, r in enumerate(rhs):
        d = diag[i] if i < len(diag) else 0
        if modulus:
            r %= modulus
            g = gcd(d, modulus)
            if r % g:
                return None
            if d % modulus == 0:
                continue  # r == 0 here, z free
            m2 = modulus // g
            z[i] = (r // g) * pow(d // g, -1, m2) % m2
        else:
            if d == 0:
                if r:
                    return None
                continue
            if r % d:
                return None
            z[i] = r // d
    return z


def integer_solve(A, b, modulus=0):
    """Solve ``A x = b`` over Z, or over Z/modulus when ``modulus >= 2``.

    Uses the Smith decomposition ``U A V = S``: solve ``S z = U b`` entry
    by entry and return ``x = V z``.  Returns ``None`` if there is no
    solution.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        ok = all((v % modulus if modulus else v) == 0 for v in b)
        return [] if ok else None
    diag, U, V = smith_normal_form(A, transforms=True)
    ub = [sum(u * v for u, v in zip(row, b) if u) for row in U]
    z = _solve_diagonal(diag + [0] * (m - len(diag)), ub, modulus)
    if z is None:
        return None
    z = z[:n] + [0] * max(0, n - len(z))
    x = [sum(V[i][j] * z[j] for j in range(n) if z[j]) for i in range(n)]
    if modulus:
        x = [v % modulus for v in x]
    return x


def modular_kernel(A, modulus, ncols=None):
    """Generating set of ``{x in (Z/modulus)^n : A x = 0}``.

    With ``U A V = S``, ``x = V y`` is a solution iff ``S y = 0`` mod
    ``modulus``; the generators are ``V`` applied to the minimal
    solution of each diagonal congruence.
    """
    from math import gcd

    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    diag, _, V = smith_normal_form(A, transforms="right")
    gens = []
    for j in range(n):
        d = diag[j] if j < len(diag) else 0
        step = modulus // gcd(d, modulus)  # gcd(0, m) = m -> step 1
        if step % modulus == 0:
            continue
        vec = [(V[i][j] * step) % modulus for i in range(n)]
        if any(vec):
            gens.append(vec)
    return gens
