"""Degeneration of flat manifolds and orbifolds along invariant subspaces.

Collapsing a rational, holonomy-invariant subspace W is realized as the
metric degeneration that projects the whole group orthogonally (w.r.t.
the Gram form) onto the complement of W: lattice and coset translations
are projected, linear parts restrict, and the result is re-expressed over
a basis of the projected lattice.  The quotient is a crystallographic
group of dimension n - dim W and is classified by dimension (point,
interval, circle, or a wallpaper class).

``rational_closure`` enlarges a direction that is not rational or not
invariant to the smallest subspace that is both: saturation under the
point group, plus promotion of non-rationalizable float directions to the
full isotypic component containing them.

``product_resolution`` builds the block-diagonal flat manifold that
resolves an orbifold against a torsion-free partner with isomorphic
holonomy; collapsing the partner block recovers the orbifold.

``verify_theorem_c`` sweeps every holonomy-invariant rational direction of
the ten flat 3-manifolds (components, bounded-slope lines and planes in
scalar components) plus all iterated collapses of the 2- and 1-dimensional
limits, and compares the resulting label set with the classical claim.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import rational as ra
from .groups import (
    CrystalGroup,
    FlatOrbError,
    holonomy_signature,
    _freeze_int_mat,
)
from .reps import isotypic_decompose
from .wallpaper import OrbifoldLabel, POINT_LABEL, classify_low_dim

RATIONALIZE_DEN = 10**6
SLOPE_BOUND = 3
PAIRING_CAP = 48


class NotInvariantError(FlatOrbError):
    pass


class NotRationalError(FlatOrbError):
    pass


class NoIsomorphismError(FlatOrbError):
    pass


# -- subspaces -------------------------------------------------------------


def _span_basis(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    R, pivots = ra.rref([list(v) for v in vectors])
    return [row[:] for row, _ in zip(R, pivots)]


def _saturate(group: CrystalGroup, basis: list[list[Fraction]]) -> list[list[Fraction]]:
    hol = group.holonomy()
    current = _span_basis(basis)
    while True:
        images = list(current)
        for A in hol.elements:
            M = ra.mat(A)
            images.extend(ra.mat_vec(M, v) for v in current)
        new = _span_basis(images)
        if len(new) == len(current):
            return new
        current = new


def is_invariant(group: CrystalGroup, basis: list[list[Fraction]]) -> bool:
    span = _span_basis(basis)
    return len(_saturate(group, span)) == len(span)


def _try_rationalize(
    v: np.ndarray, max_den: int = RATIONALIZE_DEN, tol: float = 1e-14
) -> list[Fraction] | None:
    """Per-coordinate rational reconstruction, or None past the tolerance.

    The default settings implement an *exactness* test: a coordinate must
    sit within 1e-14 (relative) of a fraction with denominator <= 10^6,
    which genuine rationals of that height do and quadratic irrationals do
    not.  Numerically computed basis vectors use a looser variant with
    small denominators.
    """
    out = []
    for x in v:
        x = float(x)
        f = Fraction(x).limit_denominator(max_den)
        if abs(float(f) - x) > tol * max(1.0, abs(x)):
            return None
        out.append(f)
    if not any(out):
        return None
    return out


def _rational_span_from_float(cols: np.ndarray) -> list[list[Fraction]] | None:
    """Exact basis of a rational subspace given any float basis of it.

    The reduced row echelon form of the span is basis independent and has
    rational entries whenever the subspace is rational; those entries are
    reconstructed with small denominators.
    """
    A = np.array(cols.T, dtype=float)
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = r + int(np.argmax(np.abs(A[r:, c])))
        if abs(A[piv, c]) < 1e-9:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] / A[r, c]
        for i in range(m):
            if i != r:
                A[i] = A[i] - A[i, c] * A[r]
        r += 1
    rows = []
    for i in range(r):
        rat = _try_rationalize(A[i], max_den=1000, tol=1e-6)
        if rat is None:
            return None
        rows.append(rat)
    return rows if len(rows) == m else None


def rational_closure(group: CrystalGroup, vectors, seed: int = 0) -> list[list[Fraction]]:
    """Smallest holonomy-invariant rational subspace containing the input.

    Exact rational vectors (ints, Fractions, 'p/q' strings) close under the
    point group only.  Float vectors are first rationalized with
    denominators up to 10^6; directions that fail are promoted to the full
    isotypic component containing them before saturation.
    """
    grp = group if group.normalized else group.normalize()
    exact: list[list[Fraction]] = []
    floats: list[np.ndarray] = []
    for v in vectors:
        if all(isinstance(x, (int, Fraction, str)) for x in v):
            exact.append(ra.vec(v))
        else:
            arr = np.asarray([float(x) for x in v], dtype=float)
            r = _try_rationalize(arr)
            if r is not None:
                exact.append(r)
            else:
                floats.append(arr)
    if floats:
        hol = grp.holonomy()
        report = isotypic_decompose(hol.elements, grp.gram, seed=seed)
        G = np.array([[float(x) for x in row] for row in grp.gram])
        for w in floats:
            hit = False
            for comp in report.components:
                proj = comp.basis @ (comp.basis.T @ (G @ w))
                if np.linalg.norm(proj) > 1e-8 * max(1.0, float(np.linalg.norm(w))):
                    hit = True
                    span = _rational_span_from_float(comp.basis)
                    if span is None:
                        raise NotRationalError(
                            "isotypic component is not rational; cannot close this direction"
                        )
                    exact.extend(span)
            if not hit:
                raise NotRationalError("direction has no isotypic support")
    if not exact:
        raise ValueError("empty subspace")
    return _saturate(grp, exact)


# -- collapse ---------------------------------------------------------------


@dataclass(frozen=True)
class CollapseResult:
    quotient: CrystalGroup
    label: OrbifoldLabel
    log: tuple[str, ...]
    subspace: tuple[tuple[Fraction, ...], ...]
    coord_map: tuple[tuple[Fraction, ...], ...]  # old lattice coords -> quotient coords

    @property
    def collapsed_dim(self) -> int:
        return len(self.subspace)

    def push_forward(self, vectors) -> list[list[Fraction]]:
        M = ra.mat(self.coord_map)
        return [ra.mat_vec(M, ra.vec(v)) for v in vectors]


def collapse(group: CrystalGroup, subspace, *, closure: bool = True) -> CollapseResult:
    """Collapse a holonomy-invariant rational subspace to its flat limit."""
    grp = group if group.normalized else group.normalize()
    n = grp.n
    if closure:
        W = rational_closure(grp, subspace)
    else:
        W = _span_basis([ra.vec(v) for v in subspace])
        if not is_invariant(grp, W):
            raise NotInvariantError("subspace is not invariant under the holonomy action")
    k = len(W)
    log = [f"collapsing a {k}-dimensional invariant rational subspace of R^{n}"]
    hol = grp.holonomy()
    G = ra.mat(grp.gram)
    m = n - k
    if m == 0:
        quotient = CrystalGroup.make(0, [], gram=[], name=(grp.name or "") + "/collapse")
        quotient.normalized = True
        return CollapseResult(
            quotient, POINT_LABEL, tuple(log + ["everything collapsed: limit is a point"]),
            tuple(tuple(v) for v in W), tuple(),
        )

    # complement: kernel of W^T G, columns C
    WtG = [ra.mat_vec(G, list(w)) for w in W]
    C = ra.transpose(ra.kernel(WtG))
    P = ra.gram_orth_projector(G, C)
    log.append(f"orthogonal complement has dimension {m}")

    # projected lattice: solve C y = P e_i, assemble a basis via Hermite form
    proj_coords = []
    for e in ra.identity(n):
        y = ra.solve(C, ra.mat_vec(P, e))
        assert y is not None
        proj_coords.append(y)
    Y_rows = ra.lattice_basis(proj_coords)
    if len(Y_rows) != m:
        raise FlatOrbError("projected lattice is rank deficient")  # internal guard
    Y = ra.transpose(Y_rows)  # columns
    D = ra.mat_mul(C, Y)  # new lattice basis in old coordinates

    gens = []
    for A in hol.elements:
        M = ra.mat(A)
        v = list(hol.translations[A])
        AD = ra.mat_mul(M, D)
        cols = []
        for j in range(m):
            col = ra.solve(D, [AD[i][j] for i in range(n)])
            if col is None:
                raise NotInvariantError("subspace is not invariant under the holonomy action")
            cols.append(col)
        Aq = ra.transpose(cols)
        if any(x.denominator != 1 for row in Aq for x in row):
            raise FlatOrbError("projected holonomy is not integral")  # internal guard
        vq = ra.solve(D, ra.mat_vec(P, v))
        assert vq is not None
        gens.append((Aq, vq))
    Gq = ra.mat_mul(ra.transpose(D), ra.mat_mul(G, D))
    quotient = CrystalGroup.make(m, gens, gram=Gq, name=(grp.name or "group") + "/collapse")
    quotient = quotient.normalize()
    label = classify_low_dim(quotient)
    log.append(f"quotient is {m}-dimensional with holonomy order {quotient.holonomy().order}")
    log.append(f"classified as {label.orbifold_name}")

    Cplus = ra.mat_mul(ra.inverse(ra.mat_mul(ra.transpose(C), ra.mat_mul(G, C))), ra.mat_mul(ra.transpose(C), G))
    coord_map = ra.mat_mul(ra.inverse(Y), Cplus)
    # normalize() may refine the quotient lattice once more; fold that
    # basis change into the coordinate map so push_forward stays exact
    bc = quotient.notes.get("basis_change")
    if bc is not None:
        coord_map = ra.mat_mul(ra.inverse(ra.mat(bc)), coord_map)
    return CollapseResult(
        quotient,
        label,
        tuple(log),
        tuple(tuple(v) for v in W),
        tuple(tuple(row) for row in coord_map),
    )


# -- product resolution ------------------------------------------------------


def _generating_indices(n: int, mult, ident: int) -> list[int]:
    """Small generating set of the finite group, as indices."""
    rest = [i for i in range(n) if i != ident]
    for size in range(1, 4):
        for combo in itertools.combinations(rest, size):
            seen = {ident}
            frontier = [ident]
            while frontier:
                new = []
                for a in frontier:
                    for g in combo:
                        b = mult[a][g]
                        if b not in seen:
                            seen.add(b)
                            new.append(b)
                frontier = new
            if len(seen) == n:
                return list(combo)
    return rest


def _iso_search(els_a, els_b):
    """Group isomorphism as an index map a -> b, or None."""
    na, nb = len(els_a), len(els_b)
    if na != nb:
        return None
    idx_a = {A: i for i, A in enumerate(els_a)}
    idx_b = {B: i for i, B in enumerate(els_b)}

    def table(els, idx):
        return [
            [idx[_freeze_int_mat(ra.mat_mul(ra.mat(x), ra.mat(y)))] for y in els] for x in els
        ]

    ta = table(els_a, idx_a)
    tb = table(els_b, idx_b)

    def order_of(t, i):
        o, j = 1, i
        while j != _identity_index(t):
            j = t[j][i]
            o += 1
        return o

    def _identity_index(t):
        for i in range(len(t)):
            if all(t[i][j] == j for j in range(len(t))):
                return i
        raise AssertionError

    ia = _identity_index(ta)
    ib = _identity_index(tb)
    gens = _generating_indices(na, ta, ia) if na > 1 else []
    orders_b: dict[int, list[int]] = {}
    for j in range(nb):
        orders_b.setdefault(order_of(tb, j), []).append(j)

    def extend(mapping):
        # close the partial map under products; None on any inconsistency
        full = dict(mapping)
        full[ia] = ib
        changed = True
        while changed:
            changed = False
            for x in list(full):
                for g in list(full):
                    xy = ta[x][g]
                    img = tb[full[x]][full[g]]
                    if xy in full:
                        if full[xy] != img:
                            return None
                    else:
                        full[xy] = img
                        changed = True
        if len(full) != na or len(set(full.values())) != na:
            return None
        return full

    def backtrack(k, mapping):
        if k == len(gens):
            return extend(mapping)
        g = gens[k]
        for cand in orders_b.get(order_of(ta, g), []):
            if cand in mapping.values():
                continue
            mapping[g] = cand
            res = backtrack(k + 1, mapping)
            if res is not None:
                return res
            del mapping[g]
        return None

    return backtrack(0, {})


def product_resolution(
    orb: CrystalGroup,
    mfd: CrystalGroup,
    pairing: dict | None = None,
    scale: Fraction | int = 1,
) -> CrystalGroup:
    """Block-diagonal flat manifold resolving ``orb`` against ``mfd``.

    ``pairing`` maps each holonomy matrix of ``orb`` to one of ``mfd`` and
    must be a group isomorphism; without one, a backtracking search runs
    (holonomy order capped at 48).  The result is torsion-free and
    collapsing its second block returns the orbifold.
    """
    orb = orb if orb.normalized else orb.normalize()
    mfd = mfd if mfd.normalized else mfd.normalize()
    if not mfd.is_torsion_free().torsion_free:
        raise FlatOrbError("the resolving partner must be torsion-free")
    hol_o = orb.holonomy()
    hol_m = mfd.holonomy()
    if pairing is None:
        if hol_o.order > PAIRING_CAP:
            raise NoIsomorphismError("holonomy too large for the pairing search; pass one explicitly")
        iso = _iso_search(list(hol_o.elements), list(hol_m.elements))
        if iso is None:
            raise NoIsomorphismError("no isomorphism between the holonomy groups")
        pairing = {hol_o.elements[i]: hol_m.elements[j] for i, j in iso.items()}
    else:
        pairing = { _freeze_int_mat(k): _freeze_int_mat(v) for k, v in pairing.items() }
        for A in hol_o.elements:
            for B in hol_o.elements:
                AB = _freeze_int_mat(ra.mat_mul(ra.mat(A), ra.mat(B)))
                img = _freeze_int_mat(ra.mat_mul(ra.mat(pairing[A]), ra.mat(pairing[B])))
                if pairing[AB] != img:
                    raise NoIsomorphismError("supplied pairing is not a homomorphism")
        if len(set(pairing.values())) != hol_m.order:
            raise NoIsomorphismError("supplied pairing is not a bijection")

    n, m = orb.n, mfd.n
    gens = []
    for A in hol_o.elements:
        B = pairing[A]
        block = ra.zeros(n + m, n + m)
        for i in range(n):
            for j in range(n):
                block[i][j] = ra.frac(A[i][j])
        for i in range(m):
            for j in range(m):
                block[n + i][n + j] = ra.frac(B[i][j])
        v = list(hol_o.translations[A]) + list(hol_m.translations[B])
        gens.append((block, v))
    lam = ra.frac(scale)
    gram = ra.zeros(n + m, n + m)
    Go = ra.mat(orb.gram)
    Gm = ra.mat(mfd.gram)
    for i in range(n):
        for j in range(n):
            gram[i][j] = Go[i][j]
    for i in range(m):
        for j in range(m):
            gram[n + i][n + j] = lam * Gm[i][j]
    name = f"({orb.name or 'orb'}x{mfd.name or 'mfd'})/H"
    product = CrystalGroup.make(n + m, gens, gram=gram, name=name).normalize()

    if not product.is_torsion_free().torsion_free:
        raise NoIsomorphismError("pairing produced torsion; invalid resolution")
    block_w = [[Fraction(0)] * (n + m) for _ in range(m)]
    for i in range(m):
        block_w[i][n + i] = Fraction(1)
    back = collapse(product, block_w, closure=False)
    if holonomy_signature(back.quotient) != holonomy_signature(orb):
        raise FlatOrbError("collapse of the resolved manifold does not recover the orbifold")
    return product


# -- the collapsed-limit survey ----------------------------------------------


CLAIMED_3MFD_LIMIT_LABELS = {
    "point",
    "interval",
    "circle",
    "T2",
    "K2",
    "M2",
    "S1xI",
    "D2(4;2)",
    "D2(3;3)",
    "D2(2,2;)",
    "S2(3,3,3;)",
    "S2(2,2,2,2;)",
    "RP2(2,2;)",
}


def _cyclotomic_factors(order: int):
    polys = {
        1: [-1, 1],
        2: [1, 1],
        3: [1, 1, 1],
        4: [1, 0, 1],
        6: [1, -1, 1],
    }
    return [(d, polys[d]) for d in (1, 2, 3, 4, 6) if order % d == 0]


def _eval_poly(coeffs, M):
    n = len(M)
    out = ra.zeros(n, n)
    P = ra.identity(n)
    for c in coeffs:
        for i in range(n):
            for j in range(n):
                out[i][j] += c * P[i][j]
        P = ra.mat_mul(P, M)
    return out


def rational_isotypic_components(group: CrystalGroup) -> list[list[list[Fraction]]]:
    """Exact isotypic components for groups with abelian holonomy.

    Joint kernels of cyclotomic-polynomial evaluations of the holonomy
    elements; exact and deterministic.  Raises for nonabelian holonomy.
    """
    grp = group if group.normalized else group.normalize()
    hol = grp.holonomy()
    for A in hol.elements:
        for B in hol.elements:
            if ra.mat_mul(ra.mat(A), ra.mat(B)) != ra.mat_mul(ra.mat(B), ra.mat(A)):
                raise FlatOrbError("exact components need abelian holonomy; use the numeric route")
    pieces = [[list(e) for e in ra.identity(grp.n)]]
    for A in hol.elements:
        M = ra.mat(A)
        order = ra.matrix_order(M, cap=24)
        if order is None or any(order % d == 0 for d in (5, 7, 8, 9)) or order > 12:
            # cyclotomic pieces of degree > 2 would merge distinct real
            # isotypic components; those groups go through the numeric route
            raise FlatOrbError("exact components support element orders {1,2,3,4,6} only")
        new_pieces = []
        for piece in pieces:
            split = []
            for d, poly in _cyclotomic_factors(order):
                PM = _eval_poly(poly, M)
                images = [ra.mat_vec(PM, list(v)) for v in piece]
                # coefficients c with sum c_i * images_i = 0
                ker_coords = ra.kernel(ra.transpose(images))
                if not ker_coords:
                    continue
                sub = [
                    [sum(c[i] * piece[i][j] for i in range(len(piece))) for j in range(grp.n)]
                    for c in ker_coords
                ]
                sub = _span_basis(sub)
                if sub:
                    split.append(sub)
            if sum(len(s) for s in split) != len(piece):
                raise FlatOrbError("cyclotomic refinement failed")  # non-semisimple input
            new_pieces.extend(split)
        pieces = new_pieces
    # canonical order: trivial component first, then by leading coordinate
    pieces = [_span_basis(p) for p in pieces]
    pieces.sort(key=lambda p: _component_sort_key(grp, p))
    return pieces


def _component_sort_key(group: CrystalGroup, piece):
    hol = group.holonomy()
    trivial = all(
        ra.mat_vec(ra.mat(A), list(v)) == list(v) for A in hol.elements for v in piece
    )
    pivot = min(next(j for j, x in enumerate(v) if x != 0) for v in piece)
    return (0 if trivial else 1, pivot, len(piece), [[str(x) for x in row] for row in piece])


def _scalar_action(group: CrystalGroup, piece) -> bool:
    """True when every holonomy element acts as +1 or -1 on the span."""
    hol = group.holonomy()
    for A in hol.elements:
        M = ra.mat(A)
        for sign in (1, -1):
            if all(ra.mat_vec(M, list(v)) == ra.vec_scale(sign, list(v)) for v in piece):
                break
        else:
            return False
    return True


def _sublattice_basis(piece) -> list[list[Fraction]]:
    """Basis of Z^n intersected with the rational span of the piece."""
    n = len(piece[0])
    rows = [list(p) for p in piece]
    R, pivots = ra.rref(rows)
    constraints = []
    for j in range(n):
        if j not in pivots:
            v = [Fraction(0)] * n
            v[j] = Fraction(-1)
            for r, c in enumerate(pivots):
                v[c] = R[r][j]
            constraints.append(v)
    if not constraints:
        return [list(e) for e in ra.identity(n)]
    # integer kernel of the constraint matrix: rows of U against zero rows of H
    den = 1
    for row in constraints:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    K = [[int(x * den) for x in row] for row in constraints]
    Kt = [[K[i][j] for i in range(len(K))] for j in range(n)]
    H, U = ra.hnf(Kt)
    basis = [
        [Fraction(u) for u in U[i]]
        for i in range(n)
        if not any(H[i])
    ]
    return basis


def invariant_directions(group: CrystalGroup, slope_bound: int = SLOPE_BOUND):
    """Named invariant rational subspaces to sweep for a collapse survey."""
    grp = group if group.normalized else group.normalize()
    try:
        comps = rational_isotypic_components(grp)
    except FlatOrbError:
        # nonabelian or large-order holonomy: numeric components, rationalized
        hol = grp.holonomy()
        report = isotypic_decompose(hol.elements, grp.gram)
        comps = []
        for comp in report.components:
            span = _rational_span_from_float(comp.basis)
            if span is None:
                raise NotRationalError(
                    "isotypic component is not rational; no sweep available"
                )
            comps.append(_span_basis(span))
        comps.sort(key=lambda p: _component_sort_key(grp, p))
    directions: list[tuple[str, list[list[Fraction]]]] = []
    for idx, piece in enumerate(comps, start=1):
        directions.append((f"W{idx}", piece))
    # rational lines inside scalar components of dimension >= 2
    line_pool: list[tuple[str, list[list[Fraction]]]] = []
    for idx, piece in enumerate(comps, start=1):
        if len(piece) >= 2 and _scalar_action(grp, piece):
            lat = _sublattice_basis(piece)
            dim = len(piece)
            bound = slope_bound if dim == 2 else 1
            seen = set()
            for coeffs in itertools.product(range(-bound, bound + 1), repeat=dim):
                if not any(coeffs):
                    continue
                g = 0
                for c in coeffs:
                    g = math.gcd(g, abs(c))
                if g != 1:
                    continue
                canon = coeffs
                for c in coeffs:
                    if c != 0:
                        if c < 0:
                            canon = tuple(-x for x in coeffs)
                        break
                if canon in seen:
                    continue
                seen.add(canon)
                vec = [
                    sum(ra.frac(c) * lat[i][j] for i, c in enumerate(canon))
                    for j in range(grp.n)
                ]
                slope = ":".join(str(c) for c in canon)
                line_pool.append((f"W{idx}[{slope}]", [vec]))
        elif len(piece) >= 2:
            # non-scalar 2-dimensional components: rational lines close up to
            # the whole component, but sweep them anyway to observe that
            lat = _sublattice_basis(piece)
            for p, q in ((1, 0), (0, 1), (1, 1), (1, -1)):
                vec = [ra.frac(p) * lat[0][j] + ra.frac(q) * lat[1][j] for j in range(grp.n)]
                line_pool.append((f"W{idx}[{p}:{q}]", [vec]))
    directions.extend(line_pool)
    # invariant rational planes: sums of invariant pieces of total dimension 2
    units: list[tuple[str, list[list[Fraction]]]] = []
    for idx, piece in enumerate(comps, start=1):
        if len(piece) == 1:
            units.append((f"W{idx}", piece))
    units.extend(nm_line for nm_line in line_pool if len(nm_line[1]) == 1)
    for (na, va), (nb, vb) in itertools.combinations(units, 2):
        span = _span_basis([ra.vec(v) for v in va + vb])
        if len(span) != 2:
            continue
        if not is_invariant(grp, span):
            continue
        directions.append((f"{na}+{nb}", span))
    # dedupe by span signature; a full-space component collapses to a point
    seen_spans = set()
    out = []
    for name, basis in directions:
        span = _span_basis([ra.vec(v) for v in basis])
        key = tuple(tuple(x for x in row) for row in span)
        if key in seen_spans:
            continue
        seen_spans.add(key)
        out.append((name, basis))
    return out


@dataclass
class TheoremCReport:
    collapses: list[tuple[str, str, str]] = field(default_factory=list)  # group, direction, label
    label_set: set[str] = field(default_factory=set)
    claimed_set: set[str] = field(default_factory=set)
    missing: set[str] = field(default_factory=set)
    extra: set[str] = field(default_factory=set)

    @property
    def matches_claim(self) -> bool:
        return not self.missing and not self.extra

    def rows_for(self, group_name: str) -> list[tuple[str, str, str]]:
        return [r for r in self.collapses if r[0] == group_name]


def survey_collapses(groups: list[CrystalGroup], *, slope_bound: int = SLOPE_BOUND, max_depth: int = 3):
    """All collapse labels of the groups, including iterated collapses."""
    rows: list[tuple[str, str, str]] = []
    queue: list[tuple[str, CrystalGroup, int]] = [
        (g.name or f"group{i}", g if g.normalized else g.normalize(), 0)
        for i, g in enumerate(groups)
    ]
    seen_groups = set()
    while queue:
        name, grp, depth = queue.pop(0)
        sig = (grp.n, holonomy_signature(grp)) if grp.n else (0,)
        for dname, basis in invariant_directions(grp, slope_bound=slope_bound):
            res = collapse(grp, basis)
            label = res.label.orbifold_name
            rows.append((name, dname, label))
            if depth < max_depth and res.quotient.n >= 1:
                qsig = (res.quotient.n, holonomy_signature(res.quotient))
                if qsig not in seen_groups:
                    seen_groups.add(qsig)
                    queue.append((f"{name}>{dname}", res.quotient, depth + 1))
    return rows


def verify_theorem_c(catalog_groups=None, *, slope_bound: int = SLOPE_BOUND) -> TheoremCReport:
    """Collapse survey over the ten closed flat 3-manifolds."""
    if catalog_groups is None:
        from .catalog import three_manifold_groups

        catalog_groups = three_manifold_groups()
    rows = survey_collapses(list(catalog_groups), slope_bound=slope_bound)
    labels = {label for _, _, label in rows}
    report = TheoremCReport(
        collapses=rows,
        label_set=labels,
        claimed_set=set(CLAIMED_3MFD_LIMIT_LABELS),
        missing=set(CLAIMED_3MFD_LIMIT_LABELS) - labels,
        extra=labels - set(CLAIMED_3MFD_LIMIT_LABELS),
    )
    return report
