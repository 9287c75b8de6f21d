"""Crystallographic groups in lattice coordinates.

A group is stored as a set of affine generators over a provisional
translation lattice Z^n, together with a rational Gram form encoding the
flat metric.  ``normalize`` absorbs any hidden pure translations the
generators produce, refines the lattice so translations are exactly Z^n,
and rewrites everything in the new basis.  All group arithmetic is exact.

Conventions:
  * an element (A, v) acts by x -> A x + v, composition
    (A, v) * (B, w) = (A B, A w + v), inverse (A^-1, -A^-1 v);
  * linear parts are integer matrices in lattice coordinates; a matrix A
    is an isometry of the metric iff A^T G A = G;
  * coset representatives v_A are reduced into the half-open box [0,1)^n.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import rational as ra

POINT_GROUP_CAP = 10_000


class FlatOrbError(Exception):
    """Base class for domain errors raised by this package."""


class NotCrystallographicError(FlatOrbError):
    pass


class GroupNotNormalizedError(FlatOrbError):
    pass


IntMat = tuple[tuple[int, ...], ...]
FracVec = tuple[Fraction, ...]


def _freeze_int_mat(M) -> IntMat:
    out = []
    for row in M:
        frozen = []
        for x in row:
            f = ra.frac(x)
            if f.denominator != 1:
                raise ValueError("linear parts must be integer matrices")
            frozen.append(int(f))
        out.append(tuple(frozen))
    return tuple(out)


def _freeze_vec(v) -> FracVec:
    return tuple(ra.frac(x) for x in v)


@dataclass(frozen=True)
class AffineElement:
    """Affine isometry (A, v) in lattice coordinates."""

    linear: IntMat
    translation: FracVec

    @staticmethod
    def of(linear, translation) -> "AffineElement":
        return AffineElement(_freeze_int_mat(linear), _freeze_vec(translation))

    @staticmethod
    def identity(n: int) -> "AffineElement":
        return AffineElement.of(ra.identity(n), [0] * n)

    @property
    def dim(self) -> int:
        return len(self.translation)

    def is_identity(self) -> bool:
        return self == AffineElement.identity(self.dim)

    def is_translation(self) -> bool:
        return self.linear == _freeze_int_mat(ra.identity(self.dim))

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch in composition")
        A = ra.mat(self.linear)
        AB = ra.mat_mul(A, ra.mat(other.linear))
        v = ra.vec_add(ra.mat_vec(A, list(other.translation)), list(self.translation))
        return AffineElement(_freeze_int_mat(AB), tuple(v))

    def inverse(self) -> "AffineElement":
        Ainv = ra.inverse(ra.mat(self.linear))
        v = ra.vec_scale(-1, ra.mat_vec(Ainv, list(self.translation)))
        return AffineElement(_freeze_int_mat(Ainv), tuple(v))

    def apply(self, point) -> list[Fraction]:
        return ra.vec_add(ra.mat_vec(ra.mat(self.linear), ra.vec(point)), list(self.translation))


def _frac_part(v: FracVec) -> FracVec:
    return tuple(x - math.floor(x) for x in v)


@dataclass(frozen=True)
class HolonomyData:
    """The finite point group together with coset translations v_A mod Z^n."""

    n: int
    elements: tuple[IntMat, ...]
    translations: dict[IntMat, FracVec] = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def items(self):
        return [(A, self.translations[A]) for A in self.elements]

    def cocycle_defects(self) -> list[tuple[IntMat, IntMat]]:
        """Pairs violating v_{AB} = A v_B + v_A (mod Z^n); empty when valid."""
        bad = []
        for A in self.elements:
            for B in self.elements:
                AB = _freeze_int_mat(ra.mat_mul(ra.mat(A), ra.mat(B)))
                lhs = self.translations[AB]
                rhs = ra.vec_add(
                    ra.mat_vec(ra.mat(A), list(self.translations[B])),
                    list(self.translations[A]),
                )
                if _frac_part(tuple(lhs)) != _frac_part(tuple(rhs)):
                    bad.append((A, B))
        return bad


@dataclass(frozen=True)
class TorsionReport:
    torsion_free: bool
    witness: AffineElement | None = None
    fixed_point: FracVec | None = None


@dataclass
class CrystalGroup:
    """A crystallographic group: generators over Z^n plus a Gram form."""

    n: int
    generators: tuple[AffineElement, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    name: str | None = None
    normalized: bool = False
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        self.generators = tuple(
            g if isinstance(g, AffineElement) else AffineElement.of(*g) for g in self.generators
        )
        self.gram = tuple(tuple(ra.frac(x) for x in row) for row in self.gram)
        self._holonomy_cache: HolonomyData | None = None

    @staticmethod
    def make(n, generators=(), gram=None, name=None) -> "CrystalGroup":
        gens = tuple(
            g if isinstance(g, AffineElement) else AffineElement.of(g[0], g[1]) for g in generators
        )
        G = ra.mat(gram) if gram is not None else ra.identity(n)
        return CrystalGroup(n=n, generators=gens, gram=tuple(tuple(r) for r in G), name=name)

    # -- validation ----------------------------------------------------

    def validate(self) -> None:
        G = ra.mat(self.gram)
        if len(G) != self.n or any(len(r) != self.n for r in G):
            raise ValueError("gram form has the wrong shape")
        if not ra.is_symmetric(G):
            raise ValueError("gram form must be symmetric")
        if not ra.is_positive_definite(G):
            raise ValueError("gram form must be positive definite")
        for g in self.generators:
            if g.dim != self.n:
                raise ValueError("generator dimension mismatch")
            A = ra.mat(g.linear)
            if abs(ra.det(A)) != 1:
                raise ValueError("generator linear part is not unimodular")
            if not ra.mat_eq(ra.mat_mul(ra.transpose(A), ra.mat_mul(G, A)), G):
                raise ValueError("generator does not preserve the gram form")

    # -- normalization -------------------------------------------------

    def normalize(self) -> "CrystalGroup":
        """Absorb hidden pure translations and rescale the lattice to Z^n."""
        if self.normalized:
            return self
        self.validate()
        n = self.n
        basis = ra.identity(n)  # columns: current lattice basis in original coords

        def reduce_mod(v, basis_cols):
            coords = ra.solve(basis_cols, list(v))
            assert coords is not None
            fracs = [c - math.floor(c) for c in coords]
            return tuple(ra.mat_vec(basis_cols, fracs))

        while True:
            # close the generator cosets modulo the current lattice
            elems: dict[IntMat, FracVec] = {
                _freeze_int_mat(ra.identity(n)): tuple([Fraction(0)] * n)
            }
            frontier = list(self.generators) + [g.inverse() for g in self.generators]
            new_translation = None
            queue = [(g.linear, g.translation) for g in frontier]
            while queue:
                A, v = queue.pop()
                v = reduce_mod(v, basis)
                if A in elems:
                    if elems[A] != v:
                        # two cosets share a linear part: their difference is a
                        # pure translation missing from the lattice
                        new_translation = ra.vec_sub(list(v), list(elems[A]))
                        break
                    continue
                if _freeze_int_mat(A) == _freeze_int_mat(ra.identity(n)) and any(v):
                    new_translation = list(v)
                    break
                elems[_freeze_int_mat(A)] = v
                if len(elems) > POINT_GROUP_CAP:
                    raise NotCrystallographicError(
                        "point-group enumeration exceeded cap; not crystallographic as presented"
                    )
                for g in frontier:
                    w = AffineElement.of(A, v) * g
                    queue.append((w.linear, w.translation))
            if new_translation is None:
                break
            cols = ra.transpose(basis)  # rows = basis vectors
            refined = ra.lattice_basis(cols + [new_translation])
            if len(refined) != n:
                raise NotCrystallographicError("translations do not span a full lattice")
            basis = ra.transpose(refined)

        # rewrite generators and gram in the refined basis
        Binv = ra.inverse(basis)
        new_gens = []
        for g in self.generators:
            A = ra.mat_mul(Binv, ra.mat_mul(ra.mat(g.linear), basis))
            v = ra.mat_vec(Binv, list(g.translation))
            if any(x.denominator != 1 for row in A for x in row):
                raise NotCrystallographicError("refined lattice is not invariant under a generator")
            elem = AffineElement.of(A, _frac_part(tuple(v)))
            if not elem.is_identity() and not (elem.is_translation() and not any(elem.translation)):
                new_gens.append(elem)
        seen = set()
        uniq = []
        for g in new_gens:
            key = (g.linear, g.translation)
            if key not in seen:
                seen.add(key)
                uniq.append(g)
        G = ra.mat(self.gram)
        new_gram = ra.mat_mul(ra.transpose(basis), ra.mat_mul(G, basis))
        out = CrystalGroup(
            n=n,
            generators=tuple(uniq),
            gram=tuple(tuple(r) for r in new_gram),
            name=self.name,
            normalized=True,
            notes=dict(self.notes),
        )
        out.notes["basis_change"] = [[ra.fraction_str(x) for x in row] for row in basis]
        out.validate()
        return out

    # -- holonomy ------------------------------------------------------

    def holonomy(self) -> HolonomyData:
        if not self.normalized:
            raise GroupNotNormalizedError("call normalize() before holonomy()")
        if self._holonomy_cache is not None:
            return self._holonomy_cache
        n = self.n
        ident = _freeze_int_mat(ra.identity(n))
        elems: dict[IntMat, FracVec] = {ident: tuple([Fraction(0)] * n)}
        frontier = list(self.generators) + [g.inverse() for g in self.generators]
        queue = [(g.linear, _frac_part(g.translation)) for g in frontier]
        while queue:
            A, v = queue.pop()
            A = _freeze_int_mat(A)
            v = _frac_part(v)
            if A in elems:
                if elems[A] != v:
                    raise GroupNotNormalizedError(
                        "pure fractional translation found; group is not normalized"
                    )
                continue
            if A == ident and any(v):
                raise GroupNotNormalizedError(
                    "pure fractional translation found; group is not normalized"
                )
            elems[A] = v
            if len(elems) > POINT_GROUP_CAP:
                raise NotCrystallographicError("holonomy enumeration exceeded cap")
            for g in frontier:
                w = AffineElement.of(A, v) * g
                queue.append((w.linear, _frac_part(w.translation)))
        order = sorted(elems)
        data = HolonomyData(n=n, elements=tuple(order), translations=dict(elems))
        self._holonomy_cache = data
        return data

    # -- invariants ----------------------------------------------------

    def is_torsion_free(self) -> TorsionReport:
        """Exact fixed-point test per holonomy class.

        A class (A, v_A) contains an element with a fixed point iff the
        gram-orthogonal projection of v_A onto ker(A - I) lies in the
        projection of Z^n; the witness is reconstructed from the integer
        combination realizing that membership.
        """
        hol = self.holonomy()
        n = self.n
        I = ra.identity(n)
        G = ra.mat(self.gram)
        for A in hol.elements:
            if A == _freeze_int_mat(I):
                continue
            v = list(hol.translations[A])
            Am = ra.mat(A)
            AmI = [[Am[i][j] - I[i][j] for j in range(n)] for i in range(n)]
            fixed = ra.kernel(AmI)
            if not fixed:
                # A - I invertible: the representative itself has a fixed point
                x = ra.solve([[I[i][j] - Am[i][j] for j in range(n)] for i in range(n)], v)
                assert x is not None
                return TorsionReport(False, AffineElement.of(A, v), tuple(x))
            W = ra.transpose(fixed)
            P = ra.gram_orth_projector(G, W)
            pv = ra.mat_vec(P, v)
            gens = [ra.mat_vec(P, e) for e in ra.identity(n)]
            comb = ra.integer_combination(pv, gens)
            if comb is not None:
                lam = [Fraction(-c) for c in comb]
                w = ra.vec_add(v, lam)
                x = ra.solve([[I[i][j] - Am[i][j] for j in range(n)] for i in range(n)], w)
                assert x is not None
                return TorsionReport(False, AffineElement.of(A, w), tuple(x))
        return TorsionReport(True)

    def volume(self) -> float:
        hol = self.holonomy()
        return math.sqrt(float(ra.det(ra.mat(self.gram)))) / hol.order

    def betti(self, k: int) -> int:
        """Dimension of the holonomy-fixed subspace of the k-th exterior power."""
        if not 0 <= k <= self.n:
            raise ValueError("degree out of range")
        hol = self.holonomy()
        if k == 0:
            return 1
        dim = math.comb(self.n, k)
        rows: list[list[Fraction]] = []
        I = ra.identity(dim)
        for A in hol.elements:
            E = ra.exterior_power(ra.mat(A), k)
            rows.extend([[E[i][j] - I[i][j] for j in range(dim)] for i in range(dim)])
        return len(ra.kernel(rows)) if rows else dim


# -- JSON interchange ---------------------------------------------------


def group_to_dict(group: CrystalGroup) -> dict:
    d = {
        "dimension": group.n,
        "gram": [[ra.fraction_str(x) for x in row] for row in group.gram],
        "generators": [
            {
                "linear": [list(row) for row in g.linear],
                "translation": [ra.fraction_str(x) for x in g.translation],
            }
            for g in group.generators
        ],
    }
    if group.name:
        d["name"] = group.name
    return d


def group_from_dict(d: dict) -> CrystalGroup:
    n = int(d["dimension"])
    gram = d.get("gram")
    gens = [(g["linear"], g["translation"]) for g in d.get("generators", [])]
    return CrystalGroup.make(n, gens, gram=gram, name=d.get("name"))


def load_group(path: str | Path) -> CrystalGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return group_from_dict(json.load(fh))


def dump_group(group: CrystalGroup, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(group_to_dict(group), fh, indent=2, sort_keys=True)
        fh.write("\n")


def holonomy_signature(group: CrystalGroup) -> tuple:
    """Canonical (matrix, coset) signature used to compare normalized groups."""
    hol = group.holonomy()
    return tuple(sorted((A, _frac_part(hol.translations[A])) for A in hol.elements))
