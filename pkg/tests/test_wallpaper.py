import random
from fractions import Fraction

import pytest

from flatorb import rational as ra
from flatorb.groups import CrystalGroup
from flatorb.wallpaper import (
    classify2,
    classify_low_dim,
    fundamental_cell_check,
    render_svg,
    singular_locus,
)

HEX = [[1, "-1/2"], ["-1/2", 1]]
ROT3 = [[0, -1], [1, -1]]
ROT4 = [[0, -1], [1, 0]]
ROT6 = [[1, -1], [1, 0]]
SWAP = [[0, 1], [1, 0]]
NEG = [[-1, 0], [0, -1]]
MIRX = [[1, 0], [0, -1]]
MIRY = [[-1, 0], [0, 1]]


def wallpaper_groups():
    mk = CrystalGroup.make
    return {
        "p1": mk(2, []),
        "p2": mk(2, [(NEG, [0, 0])]),
        "pm": mk(2, [(MIRX, [0, 0])]),
        "pg": mk(2, [(MIRX, ["1/2", 0])]),
        "cm": mk(2, [([[1, 1], [0, -1]], [0, 0])], gram=[[1, "1/2"], ["1/2", "1/2"]]),
        "pmm": mk(2, [(MIRX, [0, 0]), (MIRY, [0, 0])]),
        "pmg": mk(2, [(NEG, [0, 0]), (MIRX, ["1/2", 0])]),
        "pgg": mk(2, [(NEG, [0, 0]), (MIRX, ["1/2", "1/2"])]),
        "cmm": mk(2, [(NEG, [0, 0]), (SWAP, [0, 0])]),
        "p4": mk(2, [(ROT4, [0, 0])]),
        "p4m": mk(2, [(ROT4, [0, 0]), (SWAP, [0, 0])]),
        "p4g": mk(2, [(ROT4, [0, 0]), (MIRX, ["1/2", "1/2"])]),
        "p3": mk(2, [(ROT3, [0, 0])], gram=HEX),
        "p3m1": mk(2, [(ROT3, [0, 0]), ([[0, -1], [-1, 0]], [0, 0])], gram=HEX),
        "p31m": mk(2, [(ROT3, [0, 0]), (SWAP, [0, 0])], gram=HEX),
        "p6": mk(2, [(ROT6, [0, 0])], gram=HEX),
        "p6m": mk(2, [(ROT6, [0, 0]), (SWAP, [0, 0])], gram=HEX),
    }


EXPECTED_ORDER = {
    "p1": 1, "p2": 2, "pm": 2, "pg": 2, "cm": 2,
    "pmm": 4, "pmg": 4, "pgg": 4, "cmm": 4,
    "p4": 4, "p4m": 8, "p4g": 8,
    "p3": 3, "p3m1": 6, "p31m": 6, "p6": 6, "p6m": 12,
}


@pytest.mark.parametrize("name", sorted(wallpaper_groups()))
def test_classify_all_17(name):
    grp = wallpaper_groups()[name].normalize()
    label = classify2(grp)
    assert label.iuc == name
    assert label.holonomy_order == EXPECTED_ORDER[name]
    assert grp.holonomy().order == EXPECTED_ORDER[name]


def test_orbifold_names():
    groups = wallpaper_groups()
    assert classify2(groups["p2"].normalize()).orbifold_name == "S2(2,2,2,2;)"
    assert classify2(groups["pgg"].normalize()).orbifold_name == "RP2(2,2;)"
    assert classify2(groups["p4g"].normalize()).orbifold_name == "D2(4;2)"
    assert classify2(groups["p31m"].normalize()).orbifold_name == "D2(3;3)"
    assert classify2(groups["pg"].normalize()).orbifold_name == "K2"
    assert classify2(groups["pm"].normalize()).orbifold_name == "S1xI"
    assert classify2(groups["cm"].normalize()).orbifold_name == "M2"


def _random_unimodular(rng):
    M = ra.identity(2)
    for _ in range(5):
        i, j = rng.sample([0, 1], 2)
        c = rng.randint(-2, 2)
        for k in range(2):
            M[i][k] += c * M[j][k]
    return M


@pytest.mark.parametrize("name", sorted(wallpaper_groups()))
def test_classify_invariant_under_basis_change(name):
    rng = random.Random(hash(name) % 2**32)
    grp = wallpaper_groups()[name].normalize()
    for _ in range(3):
        U = _random_unimodular(rng)
        Uinv = ra.inverse(U)
        scale = ra.frac(rng.choice([1, 2, "1/3", 5]))
        gens = []
        for g in grp.generators:
            A = ra.mat_mul(Uinv, ra.mat_mul(ra.mat(g.linear), U))
            v = ra.mat_vec(Uinv, list(g.translation))
            gens.append((A, v))
        gram = ra.mat_mul(ra.transpose(U), ra.mat_mul(ra.mat(grp.gram), U))
        gram = [[x * scale for x in row] for row in gram]
        conj = CrystalGroup.make(2, gens, gram=gram).normalize()
        assert classify2(conj).iuc == name


def test_singular_locus_p2():
    grp = wallpaper_groups()["p2"].normalize()
    locus = singular_locus(grp)
    pts = {pt for pt, order in locus.rotation_centers}
    assert pts == {
        (Fraction(0), Fraction(0)),
        (Fraction(1, 2), Fraction(0)),
        (Fraction(0), Fraction(1, 2)),
        (Fraction(1, 2), Fraction(1, 2)),
    }
    assert all(order == 2 for _, order in locus.rotation_centers)
    assert locus.mirror_segments == ()


def test_singular_locus_pg_glides_only():
    locus = singular_locus(wallpaper_groups()["pg"].normalize())
    assert locus.rotation_centers == ()
    assert locus.mirror_segments == ()
    assert len(locus.glide_axes) >= 2


def test_singular_locus_p4m():
    locus = singular_locus(wallpaper_groups()["p4m"].normalize())
    orders = {order for _, order in locus.rotation_centers}
    assert orders == {2, 4}
    assert locus.mirror_segments
    # every center sits on some mirror segment line
    for (pt, order) in locus.rotation_centers:
        x, y = float(pt[0]), float(pt[1])
        on = False
        for (p, q) in locus.mirror_segments:
            dx, dy = q[0] - p[0], q[1] - p[1]
            if abs(dx * (y - p[1]) - dy * (x - p[0])) < 1e-9:
                on = True
        assert on


def test_centers_fixed_by_witness():
    for name in ("p2", "p4", "p3", "p6"):
        grp = wallpaper_groups()[name].normalize()
        hol = grp.holonomy()
        locus = singular_locus(grp)
        assert locus.rotation_centers
        for pt, order in locus.rotation_centers:
            fixed_by_some = False
            for A in hol.elements:
                M = ra.mat(A)
                if ra.det(M) != 1 or ra.matrix_order(M, cap=12) != order:
                    continue
                img = ra.vec_add(ra.mat_vec(M, list(pt)), list(hol.translations[A]))
                diff = ra.vec_sub(img, list(pt))
                if all(x.denominator == 1 for x in diff):
                    fixed_by_some = True
            assert fixed_by_some, (name, pt, order)


def test_fundamental_cell_g1():
    # orbits of the point-reflection/glide presentation meet [0,1/4]x[-1/2,1/2]
    grp = CrystalGroup.make(2, [(NEG, [0, 0]), (MIRX, ["1/2", "1/2"])])
    ok, witness = fundamental_cell_check(grp, ((0, 0.25), (-0.5, 0.5)), grid=60)
    assert ok, witness


def test_fundamental_cell_g3():
    # presentation with the hidden half translation: rectangle in the
    # presentation coordinates, not the refined lattice
    grp = CrystalGroup.make(2, [(MIRY, [0, 0]), (MIRY, [0, "1/2"])])
    ok, witness = fundamental_cell_check(grp, ((0, 0.5), (0, 0.5)), grid=60)
    assert ok, witness


def test_fundamental_cell_p1_half_fails():
    grp = wallpaper_groups()["p1"]
    ok, witness = fundamental_cell_check(grp, ((0, 0.5), (0, 1.0)), grid=40)
    assert not ok
    assert witness is not None


def test_classify_low_dim():
    circle = CrystalGroup.make(1, []).normalize()
    interval = CrystalGroup.make(1, [([[-1]], [0])]).normalize()
    assert classify_low_dim(circle).orbifold_name == "circle"
    assert classify_low_dim(interval).orbifold_name == "interval"
    t3 = CrystalGroup.make(3, []).normalize()
    assert classify_low_dim(t3).orbifold_name == "T3"


def test_render_svg(tmp_path):
    for name in ("p1", "p2", "p4m"):
        grp = wallpaper_groups()[name].normalize()
        out = tmp_path / f"{name}.svg"
        doc = render_svg(grp, out)
        assert out.exists()
        assert doc.startswith("<?xml")
        assert "<svg" in doc and "</svg>" in doc
        assert render_svg(grp) == doc  # deterministic


def test_svg_content_matches_locus():
    grp = wallpaper_groups()["p2"].normalize()
    doc = render_svg(grp)
    assert doc.count("<circle") == 4
    grp = wallpaper_groups()["p1"].normalize()
    doc = render_svg(grp)
    assert "<circle" not in doc


def test_cone_and_corner_classes_match_table():
    # recompute the singular data of each class from fixed points and
    # mirror incidence, one entry per group orbit, and compare with the
    # table carried by the classifier
    from flatorb.wallpaper import (
        TABLE_2D,
        _center_on_mirror,
        _reflection_class_data,
        cone_point_classes,
    )

    for name, grp in wallpaper_groups().items():
        grp = grp.normalize()
        label = TABLE_2D[name]
        classes = cone_point_classes(grp)
        want = sorted(list(label.cone_points) + list(label.corner_reflectors))
        assert classes == want, (name, classes, want)
        # split into interior cone points vs boundary corner reflectors
        hol = grp.holonomy()
        refl = [
            _reflection_class_data(A, hol.translations[A], grp.gram)
            for A in hol.elements
            if ra.det(ra.mat(A)) == -1
        ]
        from flatorb.wallpaper import singular_locus

        cones, corners = [], []
        seen = set()
        locus = singular_locus(grp)
        centers = {pt: order for pt, order in locus.rotation_centers}
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
                        img = tuple(x - __import__("math").floor(x) for x in img)
                        if img in remaining and img not in orbit:
                            orbit.add(img)
                            new.append(img)
                frontier = new
            (corners if _center_on_mirror(pt, refl) else cones).append(centers[pt])
            remaining -= orbit
        assert sorted(cones) == sorted(label.cone_points), (name, cones)
        assert sorted(corners) == sorted(label.corner_reflectors), (name, corners)
