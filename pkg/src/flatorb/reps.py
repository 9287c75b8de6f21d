"""Isotypic decomposition of a finite orthogonal group action.

The decomposition itself is numerical: a random symmetric operator is
averaged over the group in a gram-orthonormal frame, its eigenspaces are
split into irreducibles, and irreducibles are grouped into isotypic classes
by testing for nonzero equivariant maps.  The division type of a class is
read off the dimension of the equivariant endomorphism algebra of one
irreducible (1, 2 or 4), and the deformation-space dimension of a class of
multiplicity m is

    m(m+1)/2   real type,
    m^2        complex type,
    m(2m-1)    quaternionic type.

Two independent cross-checks guard the numerics: the summed factor
dimensions must equal the exact (rational) dimension of the space of
invariant symmetric forms, and a rerun with the next seed must reproduce
the same component signature.  Any disagreement raises
``DecompositionUnstableError`` rather than returning a silently wrong
answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rational as ra
from .groups import CrystalGroup, FlatOrbError

EIG_TOL = 1e-8

FACTOR_DIM = {
    "R": lambda m: m * (m + 1) // 2,
    "C": lambda m: m * m,
    "H": lambda m: m * (2 * m - 1),
}


class DecompositionUnstableError(FlatOrbError):
    pass


@dataclass(frozen=True)
class IsotypicComponent:
    basis: np.ndarray  # columns: gram-orthonormal vectors in lattice coordinates
    irreducible_dim: int
    multiplicity: int
    division_type: str  # 'R', 'C' or 'H'
    factor_dim: int

    @property
    def dim(self) -> int:
        return self.irreducible_dim * self.multiplicity

    def signature(self) -> tuple[int, int, str, int]:
        return (self.irreducible_dim, self.multiplicity, self.division_type, self.factor_dim)


@dataclass(frozen=True)
class IsotypicReport:
    n: int
    components: tuple[IsotypicComponent, ...]
    total_dim: int
    invariant_form_dim: int

    def signature(self) -> tuple:
        return tuple(sorted(c.signature() for c in self.components))

    def summary(self) -> str:
        parts = ",".join(
            f"(m={c.multiplicity},{c.division_type},d={c.factor_dim})" for c in self.components
        )
        return f"components: {parts}; dim {self.total_dim}"


# -- exact commutant / invariant forms -----------------------------------


def commutant_basis(elements, n: int) -> list[ra.Mat]:
    """Exact basis of matrices commuting with every element of the list."""
    rows: list[list[Fraction]] = []
    for A in elements:
        M = ra.mat(A)
        # (A X - X A) entry (i,j) as a linear form in vec(X)
        for i in range(n):
            for j in range(n):
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    row[k * n + j] += M[i][k]
                    row[i * n + k] -= M[k][j]
                rows.append(row)
    ker = ra.kernel(rows) if rows else [e for e in ra.identity(n * n)]
    return [[v[i * n : (i + 1) * n] for i in range(n)] for v in ker]


def invariant_forms_basis(elements, n: int) -> list[ra.Mat]:
    """Exact basis of symmetric S with A^T S A = S for every element."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(pairs)}
    rows: list[list[Fraction]] = []
    for A in elements:
        M = ra.mat(A)
        for i, j in pairs:
            row = [Fraction(0)] * len(pairs)
            # (A^T S A - S)_{ij} = sum_{k,l} M_ki S_kl M_lj - S_ij
            for k in range(n):
                for l in range(n):
                    key = (k, l) if k <= l else (l, k)
                    row[index[key]] += M[k][i] * M[l][j]
            row[index[(i, j)]] -= 1
            rows.append(row)
    ker = ra.kernel(rows) if rows else [e for e in ra.identity(len(pairs))]
    out = []
    for v in ker:
        S = ra.zeros(n, n)
        for (i, j), k in index.items():
            S[i][j] = v[k]
            S[j][i] = v[k]
        out.append(S)
    return out


def invariant_form_dim(elements, n: int) -> int:
    return len(invariant_forms_basis(elements, n))


# -- numerical isotypic decomposition ------------------------------------


def _orthonormal_frame(gram) -> tuple[np.ndarray, np.ndarray]:
    G = np.array([[float(x) for x in row] for row in gram])
    L = np.linalg.cholesky(G)
    return L, np.linalg.inv(L)


def _orthogonal_images(elements, L, Linv) -> list[np.ndarray]:
    # lattice matrix A acts as L^T A L^{-T} on the orthonormal frame
    return [L.T @ np.array(A, dtype=float) @ Linv.T for A in elements]


def _averaged_operator(ops, rng, dim, basis=None) -> np.ndarray:
    k = dim if basis is None else basis.shape[1]
    S = rng.standard_normal((k, k))
    S = (S + S.T) / 2
    if basis is not None:
        S_full = basis @ S @ basis.T
    else:
        S_full = S
    avg = sum(O.T @ S_full @ O for O in ops) / len(ops)
    avg = (avg + avg.T) / 2
    if basis is not None:
        avg = basis.T @ avg @ basis
    nrm = np.linalg.norm(avg)
    return avg / nrm if nrm > 0 else avg


def _cluster_eigens(w, V, tol=EIG_TOL):
    blocks = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > tol:
            blocks.append((np.mean(w[start:i]), V[:, start:i]))
            start = i
    return blocks


def _restricted_ops(ops, basis) -> list[np.ndarray]:
    return [basis.T @ O @ basis for O in ops]


def _hom_space_dim(ops_a, ops_b, tol=EIG_TOL) -> int:
    """dim of equivariant maps from rep a (dim p) to rep b (dim q)."""
    p = ops_a[0].shape[0]
    q = ops_b[0].shape[0]
    rows = []
    for Ma, Mb in zip(ops_a, ops_b):
        # X Ma - Mb X = 0, X is q x p
        rows.append(np.kron(Ma.T, np.eye(q)) - np.kron(np.eye(p), Mb))
    stack = np.vstack(rows)
    s = np.linalg.svd(stack, compute_uv=False)
    return int(np.sum(s <= tol * max(1.0, s[0])))


def _sym_end_dim(sub_ops, tol=EIG_TOL) -> int:
    """dim of symmetric equivariant endomorphisms; 1 iff irreducible."""
    d = sub_ops[0].shape[0]
    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    rows = []
    for M in sub_ops:
        block = np.zeros((d * d, len(pairs)))
        for col, (i, j) in enumerate(pairs):
            S = np.zeros((d, d))
            S[i, j] = 1.0
            S[j, i] = 1.0
            block[:, col] = (M.T @ S @ M - S).ravel()
        rows.append(block)
    stack = np.vstack(rows)
    s = np.linalg.svd(stack, compute_uv=False)
    return int(np.sum(s <= tol * max(1.0, s[0])))


def _split_into_irreducibles(ops, basis, rng, depth=0) -> list[np.ndarray]:
    """Recursively split an invariant subspace into irreducible pieces."""
    if _sym_end_dim(_restricted_ops(ops, basis)) == 1:
        return [basis]
    if depth > 6:
        raise DecompositionUnstableError("decomposition unstable; retry with new seed")
    avg = _averaged_operator(ops, rng, basis.shape[0], basis=basis)
    w, V = np.linalg.eigh(avg)
    blocks = _cluster_eigens(w, V)
    if len(blocks) == 1:
        raise DecompositionUnstableError("decomposition unstable; retry with new seed")
    pieces = []
    for _, Vb in blocks:
        pieces.extend(_split_into_irreducibles(ops, basis @ Vb, rng, depth + 1))
    return pieces


def _decompose_once(elements, gram, seed):
    n = len(gram)
    L, Linv = _orthonormal_frame(gram)
    ops = _orthogonal_images(elements, L, Linv)
    rng = np.random.default_rng(seed)
    avg = _averaged_operator(ops, rng, n)
    w, V = np.linalg.eigh(avg)
    irreducibles = []
    for _, Vb in _cluster_eigens(w, V):
        irreducibles.extend(_split_into_irreducibles(ops, Vb, rng))

    # group irreducibles into isotypic classes
    restricted = [_restricted_ops(ops, B) for B in irreducibles]
    classes: list[list[int]] = []
    for i, Bi in enumerate(irreducibles):
        placed = False
        for cls in classes:
            j = cls[0]
            if Bi.shape[1] != irreducibles[j].shape[1]:
                continue
            if _hom_space_dim(restricted[i], restricted[j]) > 0:
                cls.append(i)
                placed = True
                break
        if not placed:
            classes.append([i])

    comps = []
    for cls in classes:
        reps_ops = restricted[cls[0]]
        end_dim = _hom_space_dim(reps_ops, reps_ops)
        if end_dim not in (1, 2, 4):
            raise DecompositionUnstableError("decomposition unstable; retry with new seed")
        if len(cls) >= 2:
            second = _hom_space_dim(restricted[cls[1]], restricted[cls[1]])
            if second != end_dim:
                raise DecompositionUnstableError("decomposition unstable; retry with new seed")
        dtype = {1: "R", 2: "C", 4: "H"}[end_dim]
        m = len(cls)
        basis_on = np.hstack([irreducibles[i] for i in cls])
        basis_lattice = Linv.T @ basis_on
        comps.append(
            IsotypicComponent(
                basis=basis_lattice,
                irreducible_dim=irreducibles[cls[0]].shape[1],
                multiplicity=m,
                division_type=dtype,
                factor_dim=FACTOR_DIM[dtype](m),
            )
        )
    comps.sort(key=lambda c: (c.irreducible_dim, c.multiplicity, c.division_type))

    # reconstruction and invariance checks
    total = sum(c.dim for c in comps)
    if total != n:
        raise DecompositionUnstableError("decomposition unstable; retry with new seed")
    all_on = np.hstack([L.T @ c.basis for c in comps])
    if np.linalg.norm(all_on.T @ all_on - np.eye(n)) > 1e-6:
        raise DecompositionUnstableError("decomposition unstable; retry with new seed")
    for c in comps:
        Bon = L.T @ c.basis
        P = Bon @ Bon.T
        for O in ops:
            img = O @ Bon
            if np.linalg.norm(img - P @ img) > 1e-6:
                raise DecompositionUnstableError("decomposition unstable; retry with new seed")
    return comps


def isotypic_decompose(elements, gram, seed: int = 0) -> IsotypicReport:
    """Decompose the action into isotypic components with a doubled run.

    ``elements`` is the complete list of point-group matrices (integer or
    rational entries) preserving ``gram``.  The result is checked against
    the exact invariant-form dimension and against a rerun with seed + 1.
    """
    elements = list(elements)
    n = len(gram)
    comps = _decompose_once(elements, gram, seed)
    comps2 = _decompose_once(elements, gram, seed + 1)
    sig = tuple(sorted(c.signature() for c in comps))
    if sig != tuple(sorted(c.signature() for c in comps2)):
        raise DecompositionUnstableError("decomposition unstable; retry with new seed")
    total = sum(c.factor_dim for c in comps)
    exact = invariant_form_dim(elements, n)
    if total != exact:
        raise DecompositionUnstableError("decomposition unstable; retry with new seed")
    return IsotypicReport(
        n=n, components=tuple(comps), total_dim=total, invariant_form_dim=exact
    )


def teich_report(group: CrystalGroup, seed: int = 0) -> IsotypicReport:
    """Holonomy, then decomposition; enforces the reducibility consequences."""
    grp = group if group.normalized else group.normalize()
    hol = grp.holonomy()
    report = isotypic_decompose(hol.elements, grp.gram, seed=seed)
    if grp.is_torsion_free().torsion_free and hol.order > 1:
        if len(report.components) < 2 or report.total_dim < 2:
            raise FlatOrbError(
                "torsion-free group produced an irreducible decomposition; "
                "this contradicts the reducibility of such holonomy actions"
            )
    return report
