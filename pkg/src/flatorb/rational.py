"""Exact linear algebra over the rationals for small dense systems.

Everything here works on plain ``list[list[Fraction]]`` matrices and
``list[Fraction]`` vectors.  Sizes stay tiny (n <= 8 in practice), so the
routines favour clarity and exactness over asymptotics.  Integers are
arbitrary precision by construction; overflow cannot occur.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

Vec = list[Fraction]
Mat = list[list[Fraction]]


def frac(x) -> Fraction:
    """Coerce ints, strings like '3/2' or '0.25', and Fractions exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        # decimal literal semantics: 0.1 -> 1/10, not the binary expansion
        return Fraction(repr(x))
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def vec(xs) -> Vec:
    return [frac(x) for x in xs]


def mat(rows) -> Mat:
    return [[frac(x) for x in row] for row in rows]


def identity(n: int) -> Mat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Mat:
    return [[Fraction(0)] * n for _ in range(m)]


def transpose(M: Mat) -> Mat:
    return [list(col) for col in zip(*M)]


def mat_mul(A: Mat, B: Mat) -> Mat:
    if len(A[0]) != len(B):
        raise ValueError("dimension mismatch in matrix product")
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A: Mat, v: Vec) -> Vec:
    if len(A[0]) != len(v):
        raise ValueError("dimension mismatch in matrix-vector product")
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def vec_add(u: Vec, v: Vec) -> Vec:
    return [a + b for a, b in zip(u, v)]


def vec_sub(u: Vec, v: Vec) -> Vec:
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, v: Vec) -> Vec:
    c = frac(c)
    return [c * x for x in v]


def vec_dot(u: Vec, v: Vec) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def mat_eq(A: Mat, B: Mat) -> bool:
    return len(A) == len(B) and all(ra == rb for ra, rb in zip(A, B))


def copy_mat(M: Mat) -> Mat:
    return [row[:] for row in M]


def rref(M: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    R = copy_mat(M)
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(M: Mat) -> int:
    return len(rref(M)[1])


def det(M: Mat) -> Fraction:
    n = len(M)
    A = copy_mat(M)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def inverse(M: Mat) -> Mat:
    n = len(M)
    A = [row[:] + ident_row for row, ident_row in zip(M, identity(n))]
    R, pivots = rref(A)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def solve(A: Mat, b: Vec) -> Vec | None:
    """Particular solution of A x = b, or None if inconsistent."""
    if len(A) != len(b):
        raise ValueError("dimension mismatch in solve")
    n = len(A[0])
    aug = [row[:] + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = R[r][n]
    return x


def kernel(A: Mat) -> list[Vec]:
    """Basis of the right kernel of A."""
    n = len(A[0]) if A else 0
    if not A:
        return [e for e in identity(n)]
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -R[r][f]
        basis.append(v)
    return basis


def solve_rational(A: Mat, b: Vec) -> tuple[Vec, list[Vec]] | None:
    """Exact particular solution plus kernel basis, or None if inconsistent."""
    x = solve(A, b)
    if x is None:
        return None
    return x, kernel(A)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return x, y, g


def hnf(M) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form H = U @ M with U unimodular.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    Zero matrices are fine (H = 0, U = I).
    """
    H = [[int(x) for x in row] for row in M]
    m = len(H)
    cols = len(H[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    if any(Fraction(x) != x or x != int(x) for row in M for x in row):
        raise ValueError("hnf requires integer entries")

    def rowop_sub(i, j, q):
        # row_i -= q * row_j
        H[i] = [a - q * b for a, b in zip(H[i], H[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    r = 0
    for c in range(cols):
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(H[i][c]))
            progressed = False
            for i in nz:
                if i == i0:
                    continue
                q = H[i][c] // H[i0][c]
                rowop_sub(i, i0, q)
                progressed = True
            if not progressed:
                break
        nz = [i for i in range(r, m) if H[i][c] != 0]
        if not nz:
            continue
        i0 = nz[0]
        if i0 != r:
            H[r], H[i0] = H[i0], H[r]
            U[r], U[i0] = U[i0], U[r]
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                rowop_sub(i, r, q)
        r += 1
        if r == m:
            break
    return H, U


def _common_denominator(rows) -> int:
    d = 1
    for row in rows:
        for x in row:
            f = frac(x)
            d = d * f.denominator // gcd(d, f.denominator)
    return d


def lattice_basis(generators: list[Vec]) -> list[Vec]:
    """Basis of the abelian group generated by rational vectors.

    Returns the nonzero rows of the scaled Hermite form, as rational vectors.
    """
    gens = [vec(g) for g in generators]
    if not gens:
        return []
    d = _common_denominator(gens)
    scaled = [[int(x * d) for x in g] for g in gens]
    H, _ = hnf(scaled)
    return [[Fraction(x, d) for x in row] for row in H if any(row)]


def integer_combination(target: Vec, generators: list[Vec]) -> list[int] | None:
    """Integer coefficients c with sum(c_i * g_i) = target, or None."""
    gens = [vec(g) for g in generators]
    tgt = vec(target)
    if not gens:
        return [] if not any(tgt) else None
    d = _common_denominator(gens + [tgt])
    G = [[int(x * d) for x in g] for g in gens]
    t = [int(x * d) for x in tgt]
    H, U = hnf(G)
    coeff = [0] * len(H)
    w = t[:]
    for i, row in enumerate(H):
        p = next((j for j, x in enumerate(row) if x != 0), None)
        if p is None:
            continue
        if w[p] % row[p] != 0:
            return None
        q = w[p] // row[p]
        coeff[i] = q
        w = [a - q * b for a, b in zip(w, row)]
    if any(w):
        return None
    # target = coeff . H = coeff . U . G
    return [sum(c * u for c, u in zip(coeff, col)) for col in zip(*U)]


def lattice_member(v: Vec, basis_vectors: list[Vec]) -> bool:
    """Exact test: is v an integer combination of a full-rank basis?"""
    B = [vec(b) for b in basis_vectors]
    if rank(B) != len(B):
        raise ValueError("basis is rank-deficient")
    cols = transpose(B)
    x = solve(cols, vec(v))
    if x is None:
        return False
    return all(xi.denominator == 1 for xi in x)


def gram_orth_projector(G: Mat, W_cols: Mat) -> Mat:
    """Projector onto span of the columns of W, orthogonal w.r.t. G."""
    Wt = transpose(W_cols)
    M = mat_mul(Wt, mat_mul(G, W_cols))
    Minv = inverse(M)
    return mat_mul(W_cols, mat_mul(Minv, mat_mul(Wt, G)))


def char_poly(M: Mat) -> list[Fraction]:
    """Coefficients [c_0 .. c_n] with p(x) = sum c_k x^k, monic, c_n = 1."""
    n = len(M)
    # Faddeev-LeVerrier
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    A = identity(n)
    for k in range(1, n + 1):
        A = mat_mul(M, A)
        tr = sum(A[i][i] for i in range(n))
        ck = -tr / k
        c[n - k] = ck
        for i in range(n):
            A[i][i] += ck
    return c


def matrix_order(M: Mat, cap: int = 64) -> int | None:
    """Multiplicative order of M, or None if it exceeds cap."""
    I = identity(len(M))
    P = copy_mat(M)
    for k in range(1, cap + 1):
        if mat_eq(P, I):
            return k
        P = mat_mul(P, M)
    return None


def is_symmetric(G: Mat) -> bool:
    return mat_eq(G, transpose(G))


def is_positive_definite(G: Mat) -> bool:
    """Sylvester criterion on leading principal minors."""
    n = len(G)
    return all(det([row[: k + 1] for row in G[: k + 1]]) > 0 for k in range(n))


def exterior_power(M: Mat, k: int) -> Mat:
    """k-th compound matrix: entries are k x k minors, subsets in lex order."""
    n = len(M)
    subsets = list(combinations(range(n), k))
    out = []
    for rows_idx in subsets:
        out_row = []
        for cols_idx in subsets:
            minor = [[M[i][j] for j in cols_idx] for i in rows_idx]
            out_row.append(det(minor) if k else Fraction(1))
        out.append(out_row)
    return out


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
