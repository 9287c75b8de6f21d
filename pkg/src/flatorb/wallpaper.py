"""Classification of 2-dimensional crystallographic groups.

The classifier works on exact holonomy data only: the maximal rotation
order, which reflection classes contain genuine mirrors (decided by the
same projected-lattice membership test used for torsion), whether glide
axes coincide with mirror axes, and whether all rotation centers lie on
mirror lines.  These invariants are affine (basis independent), so the
result does not depend on the chosen lattice coordinates.

Orbifold data for each of the 17 classes comes from the standard table:
IUC name, Conway symbol, underlying topology, cone points and corner
reflectors, and the point-group order.

``render_svg`` draws the lattice cell with the singular locus.  Color map
(fixed): cell outline black, rotation centers red dots labeled with their
order, mirror lines solid blue, glide axes dashed green.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import rational as ra
from .groups import CrystalGroup, FlatOrbError, _freeze_int_mat


class InvalidWallpaperError(FlatOrbError):
    pass


@dataclass(frozen=True)
class OrbifoldLabel:
    iuc: str
    conway: str
    topology: str
    cone_points: tuple[int, ...]
    corner_reflectors: tuple[int, ...]
    holonomy_order: int

    @property
    def orbifold_name(self) -> str:
        if self.topology not in {"S2", "RP2", "D2", "T2", "K2", "S1xI", "M2"}:
            return self.iuc
        if self.topology in {"T2", "K2", "S1xI", "M2"}:
            return self.topology
        cones = ",".join(str(c) for c in self.cone_points)
        corners = ",".join(str(c) for c in self.corner_reflectors)
        return f"{self.topology}({cones};{corners})"

    def __str__(self) -> str:
        return self.orbifold_name


def _label(iuc, conway, topology, cones, corners, order) -> OrbifoldLabel:
    return OrbifoldLabel(iuc, conway, topology, tuple(cones), tuple(corners), order)


TABLE_2D: dict[str, OrbifoldLabel] = {
    "p1": _label("p1", "o", "T2", [], [], 1),
    "pg": _label("pg", "xx", "K2", [], [], 2),
    "pm": _label("pm", "**", "S1xI", [], [], 2),
    "cm": _label("cm", "*x", "M2", [], [], 2),
    "p2": _label("p2", "2222", "S2", [2, 2, 2, 2], [], 2),
    "pgg": _label("pgg", "22x", "RP2", [2, 2], [], 4),
    "pmg": _label("pmg", "22*", "D2", [2, 2], [], 4),
    "pmm": _label("pmm", "*2222", "D2", [], [2, 2, 2, 2], 4),
    "cmm": _label("cmm", "2*22", "D2", [2], [2, 2], 4),
    "p4": _label("p4", "442", "S2", [2, 4, 4], [], 4),
    "p4g": _label("p4g", "4*2", "D2", [4], [2], 8),
    "p4m": _label("p4m", "*442", "D2", [], [2, 4, 4], 8),
    "p3": _label("p3", "333", "S2", [3, 3, 3], [], 3),
    "p3m1": _label("p3m1", "*333", "D2", [], [3, 3, 3], 6),
    "p31m": _label("p31m", "3*3", "D2", [3], [3], 6),
    "p6": _label("p6", "632", "S2", [2, 3, 6], [], 6),
    "p6m": _label("p6m", "*632", "D2", [], [2, 3, 6], 12),
}

POINT_LABEL = _label("point", "", "point", [], [], 1)
CIRCLE_LABEL = _label("circle", "", "circle", [], [], 1)
INTERVAL_LABEL = _label("interval", "", "interval", [], [], 2)


# -- exact reflection-class invariants ------------------------------------


def _primitive(v: list[Fraction]) -> list[Fraction]:
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return [Fraction(x) for x in ints]


def _rat_gcd(values: list[Fraction]) -> Fraction:
    vals = [v for v in values if v != 0]
    if not vals:
        return Fraction(0)
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    g = 0
    for v in vals:
        g = math.gcd(g, abs(int(v * den)))
    return Fraction(g, den)


@dataclass(frozen=True)
class ReflectionClass:
    matrix: tuple
    v: tuple
    axis: tuple  # primitive direction of the fixed line
    has_mirror: bool
    glide_axes_on_mirrors: bool


def _reflection_class_data(A, v, gram) -> ReflectionClass:
    n = 2
    G = ra.mat(gram)
    M = ra.mat(A)
    I = ra.identity(n)
    axis_basis = ra.kernel([[M[i][j] - I[i][j] for j in range(n)] for i in range(n)])
    if len(axis_basis) != 1:
        raise InvalidWallpaperError("reflection class without a 1-dimensional axis")
    a = _primitive(axis_basis[0])
    perp_rows = [ra.mat_vec(G, a)]
    perp = _primitive(ra.kernel(perp_rows)[0])

    def coeff(direction, x):
        num = ra.vec_dot(x, ra.mat_vec(G, direction))
        den = ra.vec_dot(direction, ra.mat_vec(G, direction))
        return num / den

    ca = lambda x: coeff(a, list(x))
    cp = lambda x: coeff(perp, list(x))
    g_axis = _rat_gcd([ca([1, 0]), ca([0, 1])])
    g_perp = _rat_gcd([cp([1, 0]), cp([0, 1])])

    cav = ca(v)
    has_mirror = g_axis != 0 and (cav / g_axis).denominator == 1

    # integer step vectors adapted to the axis: mu realizes the minimal
    # axis-component g_axis, perp has none; translates enumerated in this
    # frame make the offset sets basis independent
    comb = ra.integer_combination([g_axis], [[ca([1, 0])], [ca([0, 1])]])
    assert comb is not None
    mu = [Fraction(comb[0]), Fraction(comb[1])]

    def offsets(pred):
        out = set()
        for i in range(-2, 3):
            for j in range(-2, 3):
                lam = ra.vec_add(ra.vec_scale(i, mu), ra.vec_scale(j, perp))
                w = ra.vec_add(list(v), lam)
                if pred(ca(w)):
                    o = cp(w) / 2
                    out.add(o - g_perp * math.floor(o / g_perp) if g_perp else o)
        return out

    mirror_offsets = offsets(lambda c: c == 0)
    glide_offsets = offsets(lambda c: c != 0)
    return ReflectionClass(
        matrix=A,
        v=tuple(v),
        axis=tuple(a),
        has_mirror=has_mirror,
        glide_axes_on_mirrors=glide_offsets <= mirror_offsets,
    )


def _rotation_centers(A, v) -> list[tuple[Fraction, Fraction]]:
    """Inequivalent fixed points of translates of (A, v), reduced mod Z^2."""
    M = ra.mat(A)
    I = ra.identity(2)
    ImA = [[I[i][j] - M[i][j] for j in range(2)] for i in range(2)]
    if ra.det(ImA) == 0:
        return []
    inv = ra.inverse(ImA)
    seen = set()
    for l1 in range(-2, 3):
        for l2 in range(-2, 3):
            x = ra.mat_vec(inv, [v[0] + l1, v[1] + l2])
            pt = tuple(c - math.floor(c) for c in x)
            seen.add(pt)
    return sorted(seen)


def _center_on_mirror(center, refl_classes) -> bool:
    # c lies on a mirror line iff (I - M) c = v_M + integer vector for some
    # reflection class; the witnessing element then fixes c's line
    for rc in refl_classes:
        M = ra.mat(rc.matrix)
        I = ra.identity(2)
        w = ra.vec_sub(
            ra.mat_vec([[I[i][j] - M[i][j] for j in range(2)] for i in range(2)], list(center)),
            list(rc.v),
        )
        if all(x.denominator == 1 for x in w):
            return True
    return False


def classify2(group: CrystalGroup) -> OrbifoldLabel:
    """Identify a 2-dimensional crystallographic group among the 17 classes."""
    grp = group if group.normalized else group.normalize()
    if grp.n != 2:
        raise ValueError("classify2 expects a 2-dimensional group")
    hol = grp.holonomy()
    rotations = []
    reflections = []
    for A in hol.elements:
        d = ra.det(ra.mat(A))
        if d == 1:
            order = ra.matrix_order(ra.mat(A), cap=12)
            if order is None:
                raise InvalidWallpaperError("rotation order exceeds the crystallographic bound")
            rotations.append((A, order))
        else:
            reflections.append(A)
    N = max(order for _, order in rotations)
    if N not in (1, 2, 3, 4, 6):
        raise InvalidWallpaperError(f"rotation order {N} violates the crystallographic restriction")

    refl_classes = [
        _reflection_class_data(A, hol.translations[A], grp.gram) for A in reflections
    ]
    mirror_classes = sum(1 for rc in refl_classes if rc.has_mirror)

    if N == 1:
        if not refl_classes:
            return TABLE_2D["p1"]
        if mirror_classes == 0:
            return TABLE_2D["pg"]
        rc = refl_classes[0]
        return TABLE_2D["pm" if rc.glide_axes_on_mirrors else "cm"]
    if N == 2:
        if not refl_classes:
            return TABLE_2D["p2"]
        if mirror_classes == 0:
            return TABLE_2D["pgg"]
        if mirror_classes == 1:
            return TABLE_2D["pmg"]
        all_on = all(rc.glide_axes_on_mirrors for rc in refl_classes if rc.has_mirror)
        return TABLE_2D["pmm" if all_on else "cmm"]
    if N == 3:
        if not refl_classes:
            return TABLE_2D["p3"]
        centers = []
        for A, order in rotations:
            if order == 3:
                centers.extend(_rotation_centers(A, hol.translations[A]))
        on = all(_center_on_mirror(c, refl_classes) for c in centers)
        return TABLE_2D["p3m1" if on else "p31m"]
    if N == 4:
        if not refl_classes:
            return TABLE_2D["p4"]
        if mirror_classes == len(refl_classes):
            return TABLE_2D["p4m"]
        if mirror_classes * 2 == len(refl_classes):
            return TABLE_2D["p4g"]
        raise InvalidWallpaperError("inconsistent mirror count for a tetragonal group")
    # N == 6
    return TABLE_2D["p6m" if refl_classes else "p6"]


def classify_low_dim(group: CrystalGroup) -> OrbifoldLabel:
    """Labels for quotients of dimension <= 2 (plus coarse names above)."""
    grp = group if group.normalized else group.normalize()
    if grp.n == 0:
        return POINT_LABEL
    if grp.n == 1:
        hol = grp.holonomy()
        if any(A[0][0] == -1 for A in hol.elements):
            return INTERVAL_LABEL
        return CIRCLE_LABEL
    if grp.n == 2:
        return classify2(grp)
    hol = grp.holonomy()
    if hol.order == 1:
        name = f"T{grp.n}"
    else:
        tf = grp.is_torsion_free().torsion_free
        ori = all(ra.det(ra.mat(A)) == 1 for A in hol.elements)
        name = f"flat{grp.n}:H{hol.order}" + ("" if ori else ",nonor") + ("" if tf else ",sing")
    return _label(name, "", name, [], [], hol.order)


# -- singular locus and rendering -----------------------------------------


@dataclass(frozen=True)
class SingularLocus:
    rotation_centers: tuple[tuple[tuple[Fraction, Fraction], int], ...]
    mirror_segments: tuple[tuple[tuple[float, float], tuple[float, float]], ...]
    glide_axes: tuple[tuple[tuple[float, float], tuple[float, float]], ...]


def _clip_line_to_cell(p0, d):
    """Clip the line p0 + t d to the unit cell [0,1]^2; None if disjoint."""
    t_lo, t_hi = -math.inf, math.inf
    for k in range(2):
        if abs(d[k]) < 1e-14:
            if not (-1e-12 <= p0[k] <= 1 + 1e-12):
                return None
        else:
            a = (0 - p0[k]) / d[k]
            b = (1 - p0[k]) / d[k]
            t_lo = max(t_lo, min(a, b))
            t_hi = min(t_hi, max(a, b))
    if t_lo >= t_hi - 1e-12:
        return None
    q0 = (p0[0] + t_lo * d[0], p0[1] + t_lo * d[1])
    q1 = (p0[0] + t_hi * d[0], p0[1] + t_hi * d[1])
    return (q0, q1)


def singular_locus(group: CrystalGroup) -> SingularLocus:
    """Rotation centers, mirror lines, and glide axes inside one cell."""
    grp = group if group.normalized else group.normalize()
    if grp.n != 2:
        raise ValueError("singular_locus expects a 2-dimensional group")
    hol = grp.holonomy()
    best_order: dict[tuple, int] = {}
    mirrors = []
    glides = []
    G = ra.mat(grp.gram)
    I = ra.identity(2)
    for A in hol.elements:
        M = ra.mat(A)
        if _freeze_int_mat(M) == _freeze_int_mat(I):
            continue
        v = hol.translations[A]
        if ra.det(M) == 1:
            order = ra.matrix_order(M, cap=12)
            for pt in _rotation_centers(A, v):
                if best_order.get(pt, 0) < order:
                    best_order[pt] = order
        else:
            rc = _reflection_class_data(A, v, grp.gram)
            a = [float(x) for x in rc.axis]
            ImA = [[I[i][j] - M[i][j] for j in range(2)] for i in range(2)]
            for l1 in range(-2, 3):
                for l2 in range(-2, 3):
                    w = [v[0] + l1, v[1] + l2]
                    sol = ra.solve(ImA, w)
                    if sol is not None:
                        seg = _clip_line_to_cell([float(x) for x in sol], a)
                        if seg:
                            mirrors.append(seg)
                    else:
                        # glide: invariant line through the half perp-offset
                        half = [w[0] / 2, w[1] / 2]
                        seg = _clip_line_to_cell([float(x) for x in half], a)
                        if seg:
                            glides.append(seg)

    def dedupe(segs):
        seen = []
        for s in segs:
            key = tuple(round(c, 9) for pt in s for c in pt)
            rkey = tuple(round(c, 9) for pt in reversed(s) for c in pt)
            if key not in seen and rkey not in seen:
                seen.append(key)
        return tuple(
            ((k[0], k[1]), (k[2], k[3])) for k in sorted(seen)
        )

    centers = tuple(sorted((pt, o) for pt, o in best_order.items()))
    return SingularLocus(centers, dedupe(mirrors), dedupe(glides))


def cone_point_classes(group: CrystalGroup) -> list[int]:
    """Orders of rotation centers, one per group orbit (not per cell)."""
    grp = group if group.normalized else group.normalize()
    locus = singular_locus(grp)
    hol = grp.holonomy()
    centers = {pt: order for pt, order in locus.rotation_centers}
    orders = []
    remaining = set(centers)
    while remaining:
        pt = min(remaining)
        orbit = {pt}
        frontier = [pt]
        while frontier:
            new = []
            for c in frontier:
                for A in hol.elements:
                    img = ra.vec_add(ra.mat_vec(ra.mat(A), list(c)), list(hol.translations[A]))
                    img = tuple(x - math.floor(x) for x in img)
                    if img in remaining and img not in orbit:
                        orbit.add(img)
                        new.append(img)
            frontier = new
        orders.append(centers[pt])
        remaining -= orbit
    return sorted(orders)


def fundamental_cell_check(group: CrystalGroup, rect, grid: int = 200, word_len: int = 4):
    """Sampled check that every orbit meets a rectangle (lattice coordinates).

    Works on the group *as presented* (generators plus the provisional
    lattice Z^2), so the rectangle lives in presentation coordinates.
    Returns (True, None) or (False, witness_point).  The orbit of each
    sample is explored with words of bounded length in the generators,
    with integer translations free; membership in the rectangle is tested
    modulo Z^2 componentwise.
    """
    (x0, x1), (y0, y1) = rect
    gens = list(group.generators)
    maps: dict[tuple, tuple] = {}
    ident = ((1, 0), (0, 1))
    maps[(ident, (0.0, 0.0))] = (np.eye(2), np.zeros(2))
    frontier = list(maps.values())
    base = []
    for g in gens + [h.inverse() for h in gens]:
        A = np.array([[float(x) for x in row] for row in g.linear])
        t = np.array([float(x) for x in g.translation])
        base.append((A, t))
    for _ in range(word_len):
        new = []
        for A1, t1 in frontier:
            for A2, t2 in base:
                A = A2 @ A1
                t = A2 @ t1 + t2
                key = (tuple(map(tuple, A.astype(int))), tuple(np.round(t % 1.0, 9)))
                if key not in maps:
                    maps[key] = (A, t)
                    new.append((A, t))
        frontier = new
        if not new:
            break

    xs = (np.arange(grid) + 0.5) / grid
    pts = np.stack(np.meshgrid(xs, xs, indexing="ij"), axis=-1).reshape(-1, 2)
    hit = np.zeros(len(pts), dtype=bool)
    wx = x1 - x0
    wy = y1 - y0
    for A, t in maps.values():
        img = pts @ A.T + t
        okx = (wx >= 1 - 1e-12) | (((img[:, 0] - x0) % 1.0) <= wx + 1e-12)
        oky = (wy >= 1 - 1e-12) | (((img[:, 1] - y0) % 1.0) <= wy + 1e-12)
        hit |= okx & oky
        if hit.all():
            return True, None
    idx = int(np.argmin(hit))
    return False, tuple(pts[idx])


SVG_COLORS = {
    "cell": "#000000",
    "center": "#cc0000",
    "mirror": "#0033cc",
    "glide": "#008833",
}


def render_svg(group: CrystalGroup, out: str | Path | None = None) -> str:
    """Deterministic 800x800 SVG of one lattice cell with its singular locus."""
    grp = group if group.normalized else group.normalize()
    locus = singular_locus(grp)
    G = np.array([[float(x) for x in row] for row in grp.gram])
    L = np.linalg.cholesky(G)
    emb = L.T  # lattice coords -> Cartesian

    corners = [np.array(c, dtype=float) for c in [(0, 0), (1, 0), (1, 1), (0, 1)]]
    pts = [emb @ c for c in corners]
    allx = [p[0] for p in pts]
    ally = [p[1] for p in pts]
    span = max(max(allx) - min(allx), max(ally) - min(ally))
    margin = 60.0
    scale = (800 - 2 * margin) / span

    def to_px(p):
        q = emb @ np.asarray(p, dtype=float)
        x = margin + (q[0] - min(allx)) * scale
        y = 800 - margin - (q[1] - min(ally)) * scale
        return x, y

    def fmt(x):
        return f"{x:.2f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="800" viewBox="0 0 800 800">',
        f'<title>{grp.name or "crystal group"}</title>',
    ]
    cell_pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in (to_px(c) for c in corners))
    lines.append(
        f'<polygon points="{cell_pts}" fill="none" stroke="{SVG_COLORS["cell"]}" stroke-width="2"/>'
    )
    for (p, q) in locus.mirror_segments:
        (x1, y1), (x2, y2) = to_px(p), to_px(q)
        lines.append(
            f'<line x1="{fmt(x1)}" y1="{fmt(y1)}" x2="{fmt(x2)}" y2="{fmt(y2)}" '
            f'stroke="{SVG_COLORS["mirror"]}" stroke-width="2.5"/>'
        )
    for (p, q) in locus.glide_axes:
        (x1, y1), (x2, y2) = to_px(p), to_px(q)
        lines.append(
            f'<line x1="{fmt(x1)}" y1="{fmt(y1)}" x2="{fmt(x2)}" y2="{fmt(y2)}" '
            f'stroke="{SVG_COLORS["glide"]}" stroke-width="1.5" stroke-dasharray="8,6"/>'
        )
    for (pt, order) in locus.rotation_centers:
        x, y = to_px([float(c) for c in pt])
        lines.append(
            f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="6" fill="{SVG_COLORS["center"]}"/>'
        )
        lines.append(
            f'<text x="{fmt(x + 9)}" y="{fmt(y - 9)}" font-size="18" '
            f'fill="{SVG_COLORS["center"]}">{order}</text>'
        )
    label = classify2(grp)
    lines.append(
        f'<text x="{fmt(margin)}" y="{fmt(30.0)}" font-size="20" fill="#000000">'
        f"{label.iuc} ({label.conway}) {label.orbifold_name}</text>"
    )
    lines.append("</svg>")
    doc = "\n".join(lines) + "\n"
    if out is not None:
        Path(out).write_text(doc, encoding="utf-8")
    return doc
