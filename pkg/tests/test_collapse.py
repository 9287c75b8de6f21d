import math
import random
from fractions import Fraction

import pytest

from flatorb import rational as ra
from flatorb.catalog import catalog_get, generalized_klein_bottle, torus
from flatorb.collapse import (
    NoIsomorphismError,
    collapse,
    invariant_directions,
    product_resolution,
    rational_closure,
    rational_isotypic_components,
    verify_theorem_c,
)
from flatorb.groups import CrystalGroup, holonomy_signature


def kb():
    return CrystalGroup.make(2, [([[1, 0], [0, -1]], ["1/2", 0])], name="pg").normalize()


# -- rational closure -------------------------------------------------------


def test_closure_of_invariant_rational_line_is_itself():
    b2 = catalog_get("B2").group
    closed = rational_closure(b2, [[1, 0, 0]])
    assert len(closed) == 1


def test_closure_of_irrational_direction_fills_component():
    b2 = catalog_get("B2").group
    s = math.sqrt(2)
    closed = rational_closure(b2, [[1.0, s, 0.0]])
    # the trivial isotypic plane of B2 is spanned by the first two vectors
    assert len(closed) == 2


def test_closure_axis_direction_klein_bottle():
    closed = rational_closure(kb(), [[0, 1]])
    assert closed == [[Fraction(0), Fraction(1)]]


def test_closure_rotated_line_fills_plane():
    g3 = catalog_get("G3").group
    closed = rational_closure(g3, [[0, 1, 0]])
    assert len(closed) == 2  # the hexagonal plane


# -- collapse of the worked examples ----------------------------------------


def _component(key, idx):
    grp = catalog_get(key).group
    return grp, rational_isotypic_components(grp)[idx]


@pytest.mark.parametrize(
    "key,idx,label",
    [
        ("G2", 0, "S2(2,2,2,2;)"),
        ("G3", 0, "S2(3,3,3;)"),
        ("G3", 1, "circle"),
        ("G4", 0, "S2(2,4,4;)"),
        ("G5", 0, "S2(2,3,6;)"),
        ("G6", 0, "RP2(2,2;)"),
        ("G6", 1, "RP2(2,2;)"),
        ("G6", 2, "RP2(2,2;)"),
        ("B1", 0, "interval"),
        ("B1", 1, "T2"),
        ("B2", 0, "interval"),
        ("B2", 1, "T2"),
        ("B3", 0, "D2(2,2;)"),
        ("B3", 1, "S1xI"),
        ("B3", 2, "K2"),
        ("B4", 0, "RP2(2,2;)"),
        ("B4", 1, "M2"),
        ("B4", 2, "K2"),
    ],
)
def test_component_collapse_labels(key, idx, label):
    grp, piece = _component(key, idx)
    assert collapse(grp, piece).label.orbifold_name == label


def test_klein_bottle_axis_collapses():
    grp = kb()
    assert collapse(grp, [[1, 0]]).label.orbifold_name == "interval"
    assert collapse(grp, [[0, 1]]).label.orbifold_name == "circle"


def test_b2_line_collapses():
    b2 = catalog_get("B2").group
    assert collapse(b2, [[1, 0, 0]]).label.orbifold_name == "M2"
    # v2 line: contains a mirror after projection (the glide composed with
    # the projected third lattice vector), hence a Mobius band
    assert collapse(b2, [[0, 1, 0]]).label.orbifold_name == "M2"


def test_g2_lines_inside_sign_plane():
    g2 = catalog_get("G2").group
    assert collapse(g2, [[0, 1, 0]]).label.orbifold_name == "K2"
    assert collapse(g2, [[0, 1, 2]]).label.orbifold_name == "K2"
    # irrational slope closes up to the whole plane, leaving the circle
    assert collapse(g2, [[0.0, 1.0, math.sqrt(3)]]).label.orbifold_name == "circle"


def test_torus_rational_collapse_gives_torus():
    rng = random.Random(3)
    for n in (2, 3, 4):
        tn = torus(n)
        for _ in range(4):
            k = rng.randint(1, n)
            vecs = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)]
            from flatorb.collapse import _span_basis

            span = _span_basis([ra.vec(v) for v in vecs])
            if not span:
                continue
            res = collapse(tn, span)
            m = n - len(span)
            expect = {0: "point", 1: "circle", 2: "T2"}.get(m, f"T{m}")
            assert res.label.orbifold_name == expect


def test_collapse_dim_additivity():
    for key in ("G2", "G3", "G4", "G5", "G6", "B1", "B2", "B3", "B4"):
        grp = catalog_get(key).group
        for _, basis in invariant_directions(grp, slope_bound=1):
            res = collapse(grp, basis)
            assert res.quotient.n + res.collapsed_dim == grp.n


def test_iterated_collapse_commutes():
    for key in ("G6", "B3", "B4"):
        grp = catalog_get(key).group
        comps = rational_isotypic_components(grp)
        for i in range(len(comps)):
            for j in range(len(comps)):
                if i == j:
                    continue
                direct = collapse(grp, comps[i] + comps[j])
                step1 = collapse(grp, comps[i])
                pushed = step1.push_forward(comps[j])
                step2 = collapse(step1.quotient, pushed)
                assert direct.label.orbifold_name == step2.label.orbifold_name
                assert holonomy_signature(direct.quotient) == holonomy_signature(step2.quotient)


def test_collapse_rejects_noninvariant_without_closure():
    g3 = catalog_get("G3").group
    from flatorb.collapse import NotInvariantError

    with pytest.raises(NotInvariantError):
        collapse(g3, [[0, 1, 0]], closure=False)


def test_collapse_quotient_invariants():
    for key in ("G3", "G4", "B3", "B4"):
        grp = catalog_get(key).group
        for _, basis in invariant_directions(grp, slope_bound=1):
            res = collapse(grp, basis)
            q = res.quotient
            if q.n == 0:
                continue
            q.validate()
            assert q.holonomy().cocycle_defects() == []


# -- product resolution -------------------------------------------------------


def test_resolution_pillowcase_with_klein_bottle():
    p2 = catalog_get("p2").group
    prod = product_resolution(p2, kb())
    assert prod.n == 4
    assert prod.is_torsion_free().torsion_free


def test_resolution_interval_with_klein_bottle():
    interval = catalog_get("interval").group
    prod = product_resolution(interval, kb())
    assert prod.n == 3
    assert prod.is_torsion_free().torsion_free


def test_resolution_pmm_with_b3():
    pmm = catalog_get("pmm").group
    b3 = catalog_get("B3").group
    prod = product_resolution(pmm, b3)
    assert prod.n == 5
    assert prod.is_torsion_free().torsion_free


def test_resolution_order_mismatch():
    p4 = catalog_get("p4").group
    with pytest.raises(NoIsomorphismError):
        product_resolution(p4, kb())


def test_resolution_rejects_orbifold_partner():
    p2 = catalog_get("p2").group
    from flatorb.groups import FlatOrbError

    with pytest.raises(FlatOrbError):
        product_resolution(kb(), p2)  # partner has torsion


def test_resolution_scale_parameter():
    p2 = catalog_get("p2").group
    prod = product_resolution(p2, kb(), scale=Fraction(1, 4))
    G = ra.mat(prod.gram)
    assert G[2][2] == Fraction(1, 4)


# -- the survey ---------------------------------------------------------------


def test_verify_theorem_c_thirteen_labels():
    rep = verify_theorem_c()
    assert len(rep.label_set) == 13
    # ten of the thirteen classical labels are reproduced on the nose;
    # the two rotation-quotient spheres replace the claimed disk orbifolds
    assert rep.missing == {"D2(4;2)", "D2(3;3)"}
    assert rep.extra == {"S2(2,4,4;)", "S2(2,3,6;)"}


def test_survey_spot_rows():
    rep = verify_theorem_c()
    rows = {(g, d): l for g, d, l in rep.collapses}
    assert rows[("B3", "W2")] == "S1xI"
    assert rows[("B4", "W1")] == "RP2(2,2;)"
    assert rows[("G3", "W1")] == "S2(3,3,3;)"


def test_generalized_klein_bottle_collapse():
    k3 = generalized_klein_bottle(3)
    # the fixed axis is the diagonal; collapsing the complementary plane
    # leaves a circle
    dirs = dict(invariant_directions(k3))
    assert "W1" in dirs
    res = collapse(k3, dirs["W1"])
    assert res.label.orbifold_name in {"S2(3,3,3;)", "circle"}
