"""Lattice reduction and flat-torus geometry at desk scale.

Implements angle-bounded reduced bases, the canonical "special basis"
(the lexicographic minimum, by non-increasing norm tuples, of all
angle-bounded bases inside the closed ball of radius R0), certified
covering-radius enclosures, the diameter lower bound diam >= beta_n |u1|,
and limit extraction for collapsing families of lattices.

The angle constant is theta_n = arcsin(2^(-n(n-1)/4)) and
beta_n = min(1/2, sin(2 theta_n)); in particular beta_2 = beta_3 = 1/2.
Everything is exhaustive search over short-vector enumerations, which is
exactly what these desk-scale inputs (n <= 4) need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .groups import FlatOrbError

ENUM_CAP = 1_000_000
COMBO_CAP = 2_000_000
ANGLE_SLACK = 1e-9


class LatticeEnumerationError(FlatOrbError):
    pass


class NoLimitError(FlatOrbError):
    pass


def theta_n(n: int) -> float:
    if n < 2:
        return math.pi / 2
    return math.asin(2.0 ** (-n * (n - 1) / 4.0))


def beta_n(n: int) -> float:
    return min(0.5, math.sin(2 * theta_n(n)))


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice given by basis column vectors."""

    basis: np.ndarray

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=float)
        object.__setattr__(self, "basis", B)
        if B.ndim != 2 or B.shape[0] != B.shape[1]:
            raise ValueError("basis must be a square matrix of column vectors")
        if abs(np.linalg.det(B)) < 1e-12:
            raise ValueError("basis is singular")

    @staticmethod
    def from_rows(rows) -> "Lattice":
        return Lattice(np.asarray(rows, dtype=float).T)

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def gram(self) -> np.ndarray:
        return self.basis.T @ self.basis


@dataclass(frozen=True)
class SpecialBasis:
    vectors: tuple[np.ndarray, ...]  # ordered by non-increasing norm
    coefficients: np.ndarray  # integer matrix, columns express vectors in the input basis
    R0: float
    theta: float
    beta: float

    @property
    def norms(self) -> tuple[float, ...]:
        return tuple(float(np.linalg.norm(v)) for v in self.vectors)

    def matrix(self) -> np.ndarray:
        return np.column_stack(self.vectors)


def short_vectors(lattice: Lattice, r: float) -> list[tuple[tuple[int, ...], np.ndarray]]:
    """All nonzero lattice vectors with |v| <= r, both signs included.

    Exhaustive Fincke-Pohst style enumeration with per-coordinate bounds
    from the Cholesky factor of the gram matrix.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    B = lattice.basis
    n = lattice.n
    R = np.linalg.cholesky(lattice.gram).T  # upper triangular, G = R^T R
    out: list[tuple[tuple[int, ...], np.ndarray]] = []

    def recurse(k: int, partial: np.ndarray, coeffs: list[int], budget: float):
        if k < 0:
            if any(coeffs):
                z = tuple(coeffs)
                out.append((z, B @ np.array(z)))
                if len(out) > ENUM_CAP:
                    raise LatticeEnumerationError("short-vector enumeration cap exceeded; radius too large")
            return
        rkk = R[k, k]
        center = -partial[k] / rkk
        span = math.sqrt(max(budget, 0.0)) / abs(rkk)
        lo = math.ceil(center - span - 1e-12)
        hi = math.floor(center + span + 1e-12)
        for zk in range(lo, hi + 1):
            val = partial[k] + rkk * zk
            rem = budget - val * val
            if rem < -1e-12:
                continue
            child = coeffs[:]
            child[k] = zk
            recurse(k - 1, partial + R[:, k] * zk, child, rem)

    recurse(n - 1, np.zeros(n), [0] * n, r * r * (1 + 1e-12))
    out.sort(key=lambda t: (float(np.linalg.norm(t[1])), t[0]))
    return out


def _canonical_sign(z: tuple[int, ...]) -> tuple[int, ...]:
    for x in z:
        if x > 0:
            return z
        if x < 0:
            return tuple(-y for y in z)
    return z


def _half_set(vectors):
    seen = {}
    for z, v in vectors:
        zc = _canonical_sign(z)
        if zc not in seen:
            seen[zc] = v if zc == z else -v
    return list(seen.items())


def _min_sine(cols: np.ndarray) -> float:
    """min over i of sin(angle(v_i, span of the others))."""
    n = cols.shape[1]
    worst = 1.0
    for i in range(n):
        v = cols[:, i]
        others = np.delete(cols, i, axis=1)
        Q, _ = np.linalg.qr(others)
        resid = v - Q @ (Q.T @ v)
        worst = min(worst, float(np.linalg.norm(resid) / np.linalg.norm(v)))
    return worst


def _sorted_by_norm(cols_list):
    def skey(v):
        return (-float(np.linalg.norm(v)), tuple(np.round(_signfix(v), 9)))

    return sorted(cols_list, key=skey)


def _signfix(v: np.ndarray) -> np.ndarray:
    for x in v:
        if x > 1e-12:
            return v
        if x < -1e-12:
            return -v
    return v


def _candidate_list(lattice: Lattice, r: float):
    """Canonical-sign half set of short vectors, sorted by (norm, coords)."""
    vecs = _half_set(short_vectors(lattice, r))
    items = [
        (float(np.linalg.norm(v)), tuple(np.round(_signfix(v), 9)), z, _signfix(v))
        for z, v in vecs
    ]
    items.sort(key=lambda t: (t[0], t[1]))
    return items


def _basis_ok(combo, *, angle_bound, det_bound) -> bool:
    n = len(combo)
    Z = np.array([z for _, _, z, _ in combo]).T
    if abs(round(np.linalg.det(Z))) != 1:
        return False
    cols = np.column_stack([v for _, _, _, v in combo])
    if det_bound:
        bound = 2.0 ** (-n * (n - 1) / 4.0) * np.prod([nm for nm, _, _, _ in combo])
        if abs(np.linalg.det(cols)) < bound * (1 - 1e-12):
            return False
    if angle_bound is not None and _min_sine(cols) < angle_bound - ANGLE_SLACK:
        return False
    return True


def _search_bases(candidates, n, *, angle_bound, det_bound, shell_indices=None, first_only=False):
    """Pruned DFS for the lexicographically minimal admissible basis.

    ``candidates`` is sorted ascending by (norm, coords); a basis is built
    in canonical order u_1, ..., u_n with strictly decreasing candidate
    indices, i.e. non-increasing (norm, coords).  The u_1 pool is either
    ``shell_indices`` (the R0 shell, for the canonical-basis search) or all
    indices.  ``first_only`` turns the search into an existence test that
    scans u_1 from the largest candidate down.  Returns the winning combo
    (position order u_1 first) or None.
    """
    best_key = None
    best_combo = None
    counter = [0]

    def partial_independent(combo) -> bool:
        cols = np.column_stack([v for _, _, _, v in combo])
        return np.linalg.matrix_rank(cols, tol=1e-10) == len(combo)

    def dfs(prev_idx, combo):
        nonlocal best_key, best_combo
        depth = len(combo)
        if depth == n:
            if _basis_ok(combo, angle_bound=angle_bound, det_bound=det_bound):
                key = (
                    tuple(round(nm, 12) for nm, _, _, _ in combo),
                    tuple(x for _, ct, _, _ in combo for x in ct),
                )
                if best_key is None or key < best_key:
                    best_key = key
                    best_combo = list(combo)
            return
        if depth == 0:
            pool = shell_indices if shell_indices is not None else list(range(len(candidates)))
            if first_only:
                pool = list(reversed(pool))
        else:
            pool = range(prev_idx)  # ascending scan below the previous index
        for idx in pool:
            counter[0] += 1
            if counter[0] > COMBO_CAP:
                raise LatticeEnumerationError("basis search cap exceeded")
            entry = candidates[idx]
            if best_key is not None:
                if first_only:
                    return
                prefix = tuple(round(c[0], 12) for c in combo) + (round(entry[0], 12),)
                if prefix > best_key[0][: depth + 1]:
                    if depth > 0:
                        break  # pool ascends in norm: no later candidate can help
                    continue
            combo.append(entry)
            if partial_independent(combo):
                dfs(idx, combo)
            combo.pop()
            if first_only and best_key is not None:
                return

    dfs(len(candidates), [])
    return best_combo


def lll_reduce(basis: np.ndarray, delta: float = 0.75) -> np.ndarray:
    """Classic LLL reduction on column vectors (floats, desk scale).

    A delta=3/4 reduced basis has orthogonality defect at most
    2^(n(n-1)/4), hence satisfies both the determinant inequality and the
    angle bound used throughout this module.
    """
    B = np.array(basis, dtype=float)
    n = B.shape[1]

    def gso(B):
        Bs = np.zeros_like(B)
        mu = np.zeros((n, n))
        for i in range(n):
            Bs[:, i] = B[:, i]
            for j in range(i):
                mu[i, j] = (B[:, i] @ Bs[:, j]) / (Bs[:, j] @ Bs[:, j])
                Bs[:, i] -= mu[i, j] * Bs[:, j]
        return Bs, mu

    Bs, mu = gso(B)
    k = 1
    steps = 0
    while k < n:
        steps += 1
        if steps > 10_000:
            raise LatticeEnumerationError("LLL did not converge")
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                B[:, k] -= q * B[:, j]
                Bs, mu = gso(B)
        if Bs[:, k] @ Bs[:, k] >= (delta - mu[k, k - 1] ** 2) * (Bs[:, k - 1] @ Bs[:, k - 1]):
            k += 1
        else:
            B[:, [k - 1, k]] = B[:, [k, k - 1]]
            Bs, mu = gso(B)
            k = max(k - 1, 1)
    return B


def reduced_basis(lattice: Lattice) -> np.ndarray:
    """A basis meeting det(B) >= 2^(-n(n-1)/4) * prod |v_i| (columns).

    LLL already guarantees the inequality; the exhaustive search is kept
    as a fallback for floating-point edge cases.
    """
    n = lattice.n
    B = lll_reduce(lattice.basis)
    bound = 2.0 ** (-n * (n - 1) / 4.0) * np.prod(np.linalg.norm(B, axis=0))
    if abs(np.linalg.det(B)) >= bound * (1 - 1e-12):
        order = np.argsort([-np.linalg.norm(B[:, j]) for j in range(n)], kind="stable")
        return np.column_stack([_signfix(B[:, j]) for j in order])
    r = float(max(np.linalg.norm(B[:, j]) for j in range(n)))
    for _ in range(60):
        cands = _candidate_list(lattice, r)
        combo = _search_bases(cands, n, angle_bound=None, det_bound=True, first_only=True)
        if combo is not None:
            return np.column_stack([v for _, _, _, v in combo])
        r *= 1.5
    raise LatticeEnumerationError("no admissible basis found within the search radius cap")


def _independent_radius(cands, n: int) -> float:
    """Smallest norm at which n linearly independent candidates exist."""
    picked: list[np.ndarray] = []
    for nm, _, _, v in cands:
        trial = picked + [v]
        if np.linalg.matrix_rank(np.column_stack(trial), tol=1e-10) == len(trial):
            picked.append(v)
            if len(picked) == n:
                return nm
    raise LatticeEnumerationError("candidate list does not span the lattice")


def special_basis(lattice: Lattice) -> SpecialBasis:
    """The canonical angle-bounded basis inside the closed R0-ball.

    R0 is the smallest radius whose closed ball contains an angle-bounded
    basis; among all such bases (ordered by non-increasing norm) the
    lexicographically minimal norm tuple wins, with a deterministic
    coordinate tie-break between equal-norm bases.
    """
    n = lattice.n
    bound = math.sin(theta_n(n))
    seed = lll_reduce(lattice.basis)
    r_found = float(max(np.linalg.norm(seed[:, j]) for j in range(n)))
    if _min_sine(seed) < bound - ANGLE_SLACK:
        # extremely rare fp corner: fall back to a growing existence search
        for _ in range(60):
            cands = _candidate_list(lattice, r_found)
            if _search_bases(cands, n, angle_bound=bound, det_bound=False, first_only=True):
                break
            r_found *= 1.5
        else:
            raise LatticeEnumerationError("no angle-bounded basis found")
    all_cands = _candidate_list(lattice, r_found * (1 + 1e-12))
    lam_n = _independent_radius(all_cands, n)
    norms = sorted({c[0] for c in all_cands if lam_n - 1e-12 <= c[0] <= r_found * (1 + 1e-12)})

    def feasible(rad: float) -> bool:
        cands = [c for c in all_cands if c[0] <= rad * (1 + 1e-12)]
        return (
            _search_bases(cands, n, angle_bound=bound, det_bound=False, first_only=True)
            is not None
        )

    lo, hi = 0, len(norms) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(norms[mid]):
            hi = mid
        else:
            lo = mid + 1
    R0 = norms[lo]

    cands = [c for c in all_cands if c[0] <= R0 * (1 + 1e-12)]
    shell = [i for i, c in enumerate(cands) if c[0] >= R0 - 1e-9 * max(1.0, R0)]
    combo = _search_bases(cands, n, angle_bound=bound, det_bound=False, shell_indices=shell)
    assert combo is not None
    vectors = tuple(v for _, _, _, v in combo)
    Binv = np.linalg.inv(lattice.basis)
    coeffs = np.rint(Binv @ np.column_stack(vectors)).astype(int)
    if not np.allclose(lattice.basis @ coeffs, np.column_stack(vectors), atol=1e-8):
        raise LatticeEnumerationError("special basis is not integral in the input basis")
    sb = SpecialBasis(
        vectors=vectors,
        coefficients=coeffs,
        R0=float(R0),
        theta=theta_n(n),
        beta=beta_n(n),
    )
    if abs(sb.norms[0] - R0) > 1e-9 * max(1.0, R0):
        raise LatticeEnumerationError("special basis does not realize R0")
    return sb


# -- covering radius ------------------------------------------------------


def _dist_to_lattice(points_f: np.ndarray, B: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Distance from B @ f to the lattice for fractional coordinates f in [0,1)^n."""
    # candidate nearest points: round(f) + offset over a fixed window
    best = None
    base = np.rint(points_f)
    for off in offsets:
        diff = (points_f - base - off) @ B.T
        d = np.linalg.norm(diff, axis=1)
        best = d if best is None else np.minimum(best, d)
    return best


def covering_radius(
    lattice: Lattice, eps: float, *, lower_target: float | None = None
) -> tuple[float, float]:
    """Certified enclosure [lo, hi] of the covering radius, hi - lo <= eps.

    Exact closed forms for n = 1 and for rectangular (diagonal gram)
    lattices; branch-and-bound over the fundamental cell otherwise.  With
    ``lower_target`` set, returns early once lo certifies the target.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = lattice.n
    if n == 1:
        mu = abs(float(lattice.basis[0, 0])) / 2
        return (mu, mu)
    G = lattice.gram
    if np.allclose(G, np.diag(np.diag(G)), atol=1e-12):
        mu = 0.5 * math.sqrt(float(np.sum(np.diag(G))))
        return (mu, mu)

    B = special_basis(lattice).matrix()
    window = 2
    offsets = np.array(list(product(range(-window, window + 1), repeat=n)))
    signs = np.array(list(product([-1.0, 1.0], repeat=n)))
    mstar = float(max(np.linalg.norm(B @ s) for s in signs))
    trivial_upper = 0.5 * float(sum(np.linalg.norm(B[:, j]) for j in range(n)))

    cells = np.array(list(product(range(4), repeat=n)), dtype=float) / 4 + 1.0 / 8
    half = 1.0 / 8
    lo = 0.0
    pruned_hi = 0.0
    while True:
        d = _dist_to_lattice(cells, B, offsets)
        lo = max(lo, float(np.max(d)))
        if lower_target is not None and lo >= lower_target:
            return (lo, min(lo + 2 * half * mstar, trivial_upper))
        uppers = d + half * mstar
        keep = uppers > lo + 1e-15
        if half * mstar <= eps / 2:
            hi = max(lo, pruned_hi, float(np.max(uppers)) if keep.any() else lo)
            return (lo, min(hi, trivial_upper))
        pruned_hi = max(pruned_hi, lo)
        cells = cells[keep]
        if len(cells) == 0:
            return (lo, min(max(lo, pruned_hi), trivial_upper))
        shifts = np.array(list(product([-0.5, 0.5], repeat=n))) * half
        cells = (cells[:, None, :] + shifts[None, :, :]).reshape(-1, n)
        half /= 2
        if len(cells) > 400_000:
            raise LatticeEnumerationError("covering-radius refinement exceeded the cell budget")


@dataclass(frozen=True)
class DiameterReport:
    diam_lo: float
    diam_hi: float
    bound: float
    holds: bool
    trivial_upper: float
    trivial_upper_ok: bool
    special: SpecialBasis


def check_diameter_bound(lattice: Lattice) -> DiameterReport:
    """Verify diam(R^n / L) >= beta_n |u1| via the covering-radius enclosure."""
    sb = special_basis(lattice)
    bound = sb.beta * sb.norms[0]
    trivial_upper = 0.5 * sum(sb.norms)
    eps = 0.05 * sb.norms[0]
    lo = hi = 0.0
    holds = False
    for _ in range(8):
        lo, hi = covering_radius(lattice, eps, lower_target=bound)
        if lo >= bound - 1e-12:
            holds = True
            break
        if hi < bound - 1e-12:
            holds = False  # genuine violation: the inequality is a theorem, treat as a bug
            break
        eps /= 4
    return DiameterReport(
        diam_lo=lo,
        diam_hi=hi,
        bound=bound,
        holds=holds,
        trivial_upper=trivial_upper,
        trivial_upper_ok=lo <= trivial_upper + 1e-9,
        special=sb,
    )


# -- collapsing sequences --------------------------------------------------


@dataclass(frozen=True)
class TorusLimit:
    limit_dim: int
    limit_basis: np.ndarray  # n x m columns spanning the limit lattice
    vanishing_directions: np.ndarray  # n x (n - m) unit columns
    norms_history: tuple[tuple[float, ...], ...] = field(default=())

    @property
    def circumferences(self) -> tuple[float, ...]:
        return tuple(float(np.linalg.norm(self.limit_basis[:, j])) for j in range(self.limit_basis.shape[1]))


def sequence_limit(
    family: Callable[[float], Lattice | np.ndarray],
    t_schedule: Sequence[float],
    *,
    vanish_tol: float = 1e-2,
    conv_tol: float = 1e-6,
) -> TorusLimit:
    """Classify special-basis vectors of a shrinking family into limits.

    A basis vector is *vanishing* when its norms strictly decrease along
    the schedule and end below ``vanish_tol``; it is *convergent* when its
    last three values agree within ``conv_tol``.  Anything else aborts
    with ``NoLimitError``.
    """
    ts = list(t_schedule)
    if len(ts) < 3:
        raise ValueError("schedule needs at least three values")
    if any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("schedule must be strictly decreasing")
    bases = []
    for t in ts:
        L = family(t)
        if not isinstance(L, Lattice):
            L = Lattice(np.asarray(L, dtype=float))
        bases.append(special_basis(L).matrix())
    n = bases[0].shape[0]
    norms = np.array([[np.linalg.norm(B[:, j]) for j in range(n)] for B in bases])
    diam_proxy = 0.5 * norms.sum(axis=1)
    if np.max(diam_proxy) > 10 * diam_proxy[0] + 1:
        raise NoLimitError("diameters grow along the schedule; no limit detected")
    convergent, vanishing = [], []
    for j in range(n):
        col = norms[:, j]
        tail = [bases[k][:, j] for k in range(len(ts) - 3, len(ts))]
        cauchy = all(
            np.linalg.norm(tail[a] - tail[b]) < conv_tol for a in range(3) for b in range(a + 1, 3)
        )
        shrinking = all(col[k + 1] < col[k] - 1e-15 for k in range(len(ts) - 1)) and col[-1] < vanish_tol
        if cauchy:
            convergent.append(j)
        elif shrinking:
            vanishing.append(j)
        else:
            raise NoLimitError("no limit detected along schedule")
    B_last = bases[-1]
    m = len(convergent)
    limit = B_last[:, convergent] if m else np.zeros((n, 0))
    vdirs = []
    for j in vanishing:
        v = B_last[:, j]
        nv = np.linalg.norm(v)
        vdirs.append(v / nv if nv > 0 else v)
    vmat = np.column_stack(vdirs) if vdirs else np.zeros((n, 0))
    return TorusLimit(
        limit_dim=m,
        limit_basis=limit,
        vanishing_directions=vmat,
        norms_history=tuple(tuple(float(x) for x in row) for row in norms),
    )


def axis_scaling_family(lattice: Lattice, directions: np.ndarray) -> Callable[[float], Lattice]:
    """Family L_t that scales the span of ``directions`` (columns) by t."""
    B = lattice.basis
    D = np.asarray(directions, dtype=float)
    if D.ndim == 1:
        D = D[:, None]
    Q, _ = np.linalg.qr(D)
    P = Q @ Q.T

    def fam(t: float) -> Lattice:
        M = (np.eye(lattice.n) - P) + t * P
        return Lattice(M @ B)

    return fam
