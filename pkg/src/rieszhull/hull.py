"""Riesz hulls of finite MV-algebras, computed on the lattice-group side.

For an algebra ``A`` of rational functions on ``m`` points the pipeline is

1. ``G = <A u {1}>``, the lattice-ordered subgroup of ``Q^m`` generated by
   ``A`` and the unit.  It is found by saturating a Hermite-normal-form
   lattice under positive parts, one sign region of its span at a time.
2. ``G_d``, the divisible hull: the rational span of ``G``.  Its unit
   interval ``A_d`` consists of averages of ``n`` elements of ``A``.
3. ``R(A) = Gamma_R(R (x) G, 1)``.  The real span of ``G`` is already
   closed under positive parts (on each sign region the positive part is a
   linear projection, so closure of a basis transfers to every real
   combination), it contains ``A``, and ``A`` generates it as a Riesz
   MV-algebra.  A Riesz MV-algebra generated by ``A`` in which ``A`` sits
   is unique up to isomorphism, so no order completion has to be built.

The real object is handled through its rational skeleton ``span(G) n
[0,1]^m`` and an exact rational basis; no irrational arithmetic is done.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import exactla as la
from .errors import DomainError, InvariantError, NotHomError, NotInHullError
from .exactla import ONE, ZERO, IntegerLattice, QVector, fmt_vec
from .mvcore import (
    GridAlgebra,
    PointMapHom,
    PointSet,
    algebra_from_elements,
    compose,
    hom_check,
    identity_hom,
    nat_mul,
    point_classes,
    support,
)


# ---------------------------------------------------------------------------
# the generated lattice-ordered group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitalLGroup:
    ambient: PointSet
    lattice: IntegerLattice
    unit: QVector

    def __contains__(self, v) -> bool:
        return v in self.lattice


def positive_part_failures(L: IntegerLattice) -> list:
    """Pairs ``(region, b)`` with ``P_region(b)`` outside ``L``; empty iff closed."""
    basis = L.vectors()
    bad = []
    for region in la.sign_regions(basis, L.dim):
        for b in basis:
            if la.project_positive(region, b) not in L:
                bad.append((region, b))
    return bad


def lgroup_closure(L: IntegerLattice) -> IntegerLattice:
    """Smallest lattice-ordered subgroup of ``Q^m`` containing ``L``.

    Each pass adds every missing ``P_region(b)``; these lie in the
    generated group because ``P(b) = (b + N r)^+ - N r^+`` for a lattice
    point ``r`` interior to the region and ``N`` large.  Additions are
    sorted so the result does not depend on region order.  Ascending
    chains of subgroups of ``(1/den) Z^m`` stabilize, so this terminates.
    """
    while True:
        missing = sorted({la.project_positive(r, b) for r, b in positive_part_failures(L)})
        if not missing:
            return L
        L = la.lattice_extend(L, missing)


def lgroup_generate(A: GridAlgebra) -> UnitalLGroup:
    one = A.one()
    start = la.hnf_generate(list(A.elements) + [one], dim=A.m)
    return UnitalLGroup(ambient=A.points, lattice=lgroup_closure(start), unit=one)


def unit_interval_points(L: IntegerLattice) -> list:
    """All lattice vectors in ``[0,1]^m`` (bounded walk over HNF coordinates)."""
    den, rows, m = L.den, L.basis, L.dim
    piv = L.pivots()
    found = []

    def walk(i: int, w: list):
        if i == len(rows):
            if all(0 <= x <= den for x in w):
                found.append(tuple(Fraction(x, den) for x in w))
            return
        row, p = rows[i], piv[i]
        stop = piv[i + 1] if i + 1 < len(rows) else m
        lo = math.ceil(Fraction(-w[p], row[p]))
        hi = math.floor(Fraction(den - w[p], row[p]))
        for c in range(lo, hi + 1):
            nw = [a + c * b for a, b in zip(w, row)]
            if all(0 <= nw[j] <= den for j in range(p, stop)):
                walk(i + 1, nw)

    walk(0, [0] * m)
    return sorted(found)


def gamma_unit(G: UnitalLGroup) -> GridAlgebra:
    """The MV-algebra ``[0, u]`` of the group, as a grid algebra."""
    elems = unit_interval_points(G.lattice)
    return algebra_from_elements(G.ambient, G.lattice.den, elems, verify=False)


# ---------------------------------------------------------------------------
# divisible hull
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AverageCertificate:
    n: int
    parts: tuple

    def value(self) -> QVector:
        m = len(self.parts[0])
        return tuple(x / self.n for x in la.vcomb([ONE] * self.n, self.parts, m))


@dataclass(frozen=True)
class DivisibleHull:
    base: UnitalLGroup
    span_basis: tuple

    def member(self, v) -> bool:
        return la.span_solve(self.span_basis, v) is not None

    def least_multiplier(self, v) -> int:
        """Least ``n >= 1`` with ``n v`` in the base group."""
        coords = la.span_solve(self.base.lattice.vectors(), v)
        if coords is None:
            raise NotInHullError(f"{fmt_vec(v)} is not in the divisible hull")
        n = 1
        for c in coords:
            n = math.lcm(n, c.denominator)
        return n

    def decompose_average(self, v) -> AverageCertificate:
        """Write ``v`` as ``(a_1 + ... + a_n) / n`` with each ``a_i`` in ``[0, u]``.

        ``a_i = ((n v - (i-1)) v 0) ^ 1`` telescopes to ``n v``.
        """
        v = tuple(map(Fraction, v))
        la.check_unit_range(v)
        n = self.least_multiplier(v)
        nv = la.vscale(n, v)
        parts = tuple(
            tuple(min(ONE, max(ZERO, x - (i - 1))) for x in nv) for i in range(1, n + 1)
        )
        for a in parts:
            if a not in self.base.lattice:
                raise InvariantError(f"part {fmt_vec(a)} left the group")
        return AverageCertificate(n=n, parts=parts)

    def slice(self, k: int) -> GridAlgebra:
        """``Gamma((1/k) G, 1)``: a finite divisible-hull piece with denominator ``k den``."""
        scaled = UnitalLGroup(self.base.ambient, la.lattice_scale(self.base.lattice, k), self.base.unit)
        return gamma_unit(scaled)


def divisible_hull(G: UnitalLGroup) -> DivisibleHull:
    return DivisibleHull(base=G, span_basis=tuple(la.rref(G.lattice.vectors(), G.lattice.dim)))


# ---------------------------------------------------------------------------
# Riesz hull
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RieszHull:
    """``R(A)``, stored as its generated group and a canonical (RREF) span basis.

    The skeleton ``span_basis`` n ``[0,1]^m`` is closed under truncated sum,
    negation and rational scalars in ``[0,1]``; ``iota(a) = a`` embeds ``A``.
    """

    base_algebra: GridAlgebra
    lgroup: UnitalLGroup
    span_basis: tuple
    unit: QVector

    @property
    def points(self) -> PointSet:
        return self.base_algebra.points

    @property
    def m(self) -> int:
        return len(self.unit)

    @property
    def dim(self) -> int:
        return len(self.span_basis)

    def same_span(self, other: "RieszHull") -> bool:
        return self.points == other.points and self.span_basis == other.span_basis

    # skeleton membership and operations ---------------------------------

    @cached_property
    def _pivots(self) -> tuple:
        return tuple(next(i for i, x in enumerate(b) if x) for b in self.span_basis)

    def coordinates(self, v) -> Optional[tuple]:
        """Coordinates over ``span_basis``; RREF puts them at the pivot entries."""
        v = tuple(map(Fraction, v))
        coords = tuple(v[p] for p in self._pivots)
        if la.vcomb(coords, self.span_basis, self.m) != v:
            return None
        return coords

    def member(self, v) -> bool:
        v = tuple(map(Fraction, v))
        if len(v) != self.m:
            raise DomainError(f"expected length {self.m}, got {len(v)}")
        return all(0 <= x <= 1 for x in v) and self.coordinates(v) is not None

    contains = member

    def require(self, v) -> QVector:
        v = tuple(map(Fraction, v))
        if not self.member(v):
            raise NotInHullError(f"{fmt_vec(v)} is not in the skeleton of the hull")
        return v

    def iota(self, a) -> QVector:
        if a not in self.base_algebra:
            raise DomainError(f"{fmt_vec(a)} is not an element of the base algebra")
        return tuple(a)

    def oplus(self, a, b) -> QVector:
        a, b = self.require(a), self.require(b)
        return tuple(min(ONE, x + y) for x, y in zip(a, b))

    def neg(self, a) -> QVector:
        return tuple(1 - x for x in self.require(a))

    def odot(self, a, b) -> QVector:
        return self.neg(self.oplus(self.neg(a), self.neg(b)))

    def meet(self, a, b) -> QVector:
        a, b = self.require(a), self.require(b)
        return tuple(min(x, y) for x, y in zip(a, b))

    def join(self, a, b) -> QVector:
        a, b = self.require(a), self.require(b)
        return tuple(max(x, y) for x, y in zip(a, b))

    def scalar(self, q, v) -> QVector:
        q = Fraction(q)
        if not 0 <= q <= 1:
            raise DomainError(f"scalar {q} outside [0,1]")
        return tuple(q * x for x in self.require(v))

    # finite pieces -----------------------------------------------------

    def skeleton_slice(self, k: int = 1) -> GridAlgebra:
        """Finite MV-subalgebra ``Gamma((1/k) G, 1)`` of the skeleton."""
        return divisible_hull(self.lgroup).slice(k)

    def sample(self, rng: random.Random, max_parts: int = 3, max_weight: int = 5) -> QVector:
        """Random skeleton vector: a rational convex combination of elements of ``A``."""
        elems = self.base_algebra.elements
        k = rng.randint(1, max_parts)
        picks = [rng.choice(elems) for _ in range(k)]
        weights = [rng.randint(0, max_weight) for _ in range(k)]
        total = sum(weights) + rng.randint(0, max_weight)
        if total == 0:
            return tuple(self.unit) if rng.random() < 0.5 else la.zeros(self.m)
        return tuple(x / total for x in la.vcomb(weights, picks, self.m))

    @cached_property
    def _witness_order(self) -> list:
        cands = [a for a in self.base_algebra.elements if any(a)]
        cands.sort(key=lambda a: (len(support(a)), a))
        return [(support(a), a) for a in cands]


def riesz_hull(A: GridAlgebra) -> RieszHull:
    G = lgroup_generate(A)
    basis = tuple(la.rref(G.lattice.vectors(), A.m))
    return RieszHull(base_algebra=A, lgroup=G, span_basis=basis, unit=A.one())


def essential_witness(Rh: RieszHull, b) -> tuple:
    """Nonzero ``a`` in ``A`` and least ``n`` with ``a <= n.b`` (truncated).

    Candidates are scanned by support size, then lexicographically.
    """
    b = Rh.require(b)
    if not any(b):
        raise DomainError("essential_witness needs a nonzero vector")
    sb = support(b)
    for sa, a in Rh._witness_order:
        if sa <= sb:
            n = max(1, max(math.ceil(a[i] / b[i]) for i in sa))
            if not all(x <= y for x, y in zip(a, nat_mul(n, b))):
                raise InvariantError("witness bound failed")
            return a, n
    raise InvariantError(f"no essentiality witness below {fmt_vec(b)}")


# ---------------------------------------------------------------------------
# maps between hulls
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HullMap:
    """Skeleton map ``v -> v o map`` from ``source`` hull into ``target``.

    ``map[y]`` is the source point read at target point ``y``, normalized to
    its class representative.
    """

    source: RieszHull
    target: object
    map: tuple

    def __call__(self, v) -> QVector:
        return tuple(v[j] for j in self.map)

    def on_basis(self) -> list:
        return [self(s) for s in self.source.span_basis]

    def is_injective(self) -> bool:
        return la.rank(self.on_basis()) == self.source.dim

    def then(self, g: "HullMap") -> "HullMap":
        """``g o self``."""
        return HullMap(self.source, g.target, tuple(self.map[j] for j in g.map))

    def __eq__(self, other):
        if not isinstance(other, HullMap):
            return NotImplemented
        return (self.source.same_span(other.source)
                and self.target.points == other.target.points
                and self.on_basis() == other.on_basis())

    __hash__ = None


def _source_reps(A: GridAlgebra, mapping: Sequence[int]) -> tuple:
    rep = {}
    for c in point_classes(A):
        for i in c:
            rep[i] = c[0]
    return tuple(rep[j] for j in mapping)


def extend_hom(f: PointMapHom, RA: Optional[RieszHull] = None) -> HullMap:
    """The unique ``f_R: R(A) -> V`` with ``f_R o iota_A = f``.

    ``f.target`` must be a Riesz hull (or anything with ``contains`` and
    ``points``); the extension is precomposition with the same point map.
    """
    f = hom_check(f)
    A = f.source
    RA = RA or riesz_hull(A)
    fR = HullMap(RA, f.target, f.map)
    for a in A.elements:
        if fR(RA.iota(a)) != f(a):
            raise InvariantError("extension does not restrict to f")
    for s in _scalar_probe(RA):
        q, v = s
        if fR(RA.scalar(q, v)) != tuple(q * x for x in fR(v)):
            raise InvariantError("extension does not commute with scalars")
        if not f.target.contains(fR(v)):
            raise NotHomError(f"extension sends {fmt_vec(v)} outside the target")
    return fR


def _scalar_probe(RA: RieszHull):
    elems = RA.base_algebra.elements
    picks = [elems[0], elems[-1], elems[len(elems) // 2]]
    for q in (Fraction(0), Fraction(1, 3), Fraction(1)):
        for v in picks:
            yield q, v


def linear_extension(f: PointMapHom, RA: RieszHull) -> list:
    """Images of ``RA.span_basis`` forced by ``f`` and linearity alone.

    Each basis vector is solved against an independent family of elements
    of ``A``; the image is the same combination of their images under
    ``f``.  Any skeleton map agreeing with ``f`` on ``A`` and commuting with
    the Riesz operations must take these values.
    """
    fam = la.independent_subset(RA.base_algebra.elements)
    if len(fam) != RA.dim:
        raise InvariantError("elements of A do not span the hull")
    m_out = len(f.target.points)
    out = []
    for s in RA.span_basis:
        coords = la.span_solve(fam, s)
        if coords is None:
            raise InvariantError("span basis vector outside span of A")
        out.append(la.vcomb(coords, [f(a) for a in fam], m_out))
    return out


def extension_is_unique(fR: HullMap, f: PointMapHom) -> bool:
    return fR.on_basis() == linear_extension(f, fR.source)


def hull_functor(h: PointMapHom, RA: Optional[RieszHull] = None,
                 RB: Optional[RieszHull] = None) -> HullMap:
    """``R(h)``: the extension of ``iota_B o h`` to ``R(A) -> R(B)``."""
    h = hom_check(h)
    A, B = h.source, h.target
    if not isinstance(B, GridAlgebra):
        raise NotHomError("hull_functor needs a homomorphism between grid algebras")
    RA = RA or riesz_hull(A)
    RB = RB or riesz_hull(B)
    Rh = extend_hom(PointMapHom(A, RB, h.map), RA)
    for a in A.elements:
        if Rh(RA.iota(a)) != RB.iota(h(a)):
            raise InvariantError("hull functor square does not commute")
    if h.is_embedding and not Rh.is_injective():
        raise InvariantError("R(h) of an embedding is not injective")
    return Rh


def identity_map(RA: RieszHull) -> HullMap:
    return HullMap(RA, RA, _source_reps(RA.base_algebra, range(RA.m)))


# ---------------------------------------------------------------------------
# adjunction
# ---------------------------------------------------------------------------

@dataclass
class AdjunctionReport:
    checks: list = field(default_factory=list)

    def record(self, name: str, ok: bool):
        self.checks.append((name, bool(ok)))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def lines(self) -> list:
        return [f"{name}={'pass' if ok else 'FAIL'}" for name, ok in self.checks]


def counit(V: RieszHull):
    """``(R(U(V)), eps_V)`` with ``U(V)`` presented by the slice ``Gamma(G, 1)``."""
    UV = V.skeleton_slice(1)
    RUV = riesz_hull(UV)
    return RUV, HullMap(RUV, V, tuple(range(V.m)))


def adjunction_check(A: GridAlgebra, V: RieszHull, rng: Optional[random.Random] = None,
                     samples: int = 50) -> AdjunctionReport:
    """Unit, counit, both triangle identities and the hom-set bijection."""
    rng = rng or random.Random(0)
    rep = AdjunctionReport()
    RA = riesz_hull(A)

    rep.record("unit_lands_in_skeleton", all(RA.member(a) for a in A.elements))

    RUV, eps_V = counit(V)
    rep.record("counit_same_span", RUV.same_span(V))
    rep.record("counit_iso", eps_V.is_injective() and RUV.dim == V.dim)

    # eps_{R(A)} o R(eta_A) = id_{R(A)}
    URA = RA.skeleton_slice(1)
    eta_A = hom_check(PointMapHom(A, URA, tuple(range(A.m))))
    R_eta = hull_functor(eta_A, RA)
    RURA, eps_RA = counit(RA)
    tri1 = R_eta.then(eps_RA)
    ok = tri1.on_basis() == list(RA.span_basis)
    for _ in range(samples):
        v = RA.sample(rng)
        ok = ok and tri1(v) == v
    rep.record("triangle_R", ok)

    # U(eps_V) o eta_{U(V)} = id_{U(V)}
    UV = V.skeleton_slice(1)
    eta_UV = hom_check(PointMapHom(UV, RUV, tuple(range(V.m))))
    ok = True
    for a in UV.elements:
        ok = ok and eps_V(eta_UV(a)) == a
    for _ in range(samples):
        v = V.sample(rng)
        ok = ok and eps_V(v) == v
    rep.record("triangle_U", ok)

    # Hom(A, U(V)) <-> Hom(R(A), V): f -> f_R -> U(f_R) o eta_A recovers f
    homs = _homs_into_hull(A, V)
    ok = True
    for f in homs:
        g = extend_hom(f, RA)
        back = PointMapHom(A, V, g.map)
        ok = ok and back.map == f.map and all(g(a) == f(a) for a in A.elements)
        ok = ok and extension_is_unique(g, f)
    rep.record(f"hom_bijection[{len(homs)}]", ok)
    return rep


def _homs_into_hull(A: GridAlgebra, V: RieszHull, limit: int = 64) -> list:
    reps = [c[0] for c in point_classes(A)]
    out = []
    for choice in itertools.product(reps, repeat=V.m):
        f = PointMapHom(A, V, choice)
        if all(V.member(f(a)) for a in A.generators):
            out.append(f)
            if len(out) >= limit:
                break
    return out


__all__ = [
    "AdjunctionReport",
    "AverageCertificate",
    "DivisibleHull",
    "HullMap",
    "RieszHull",
    "UnitalLGroup",
    "adjunction_check",
    "compose",
    "counit",
    "divisible_hull",
    "essential_witness",
    "extend_hom",
    "extension_is_unique",
    "gamma_unit",
    "hull_functor",
    "identity_hom",
    "identity_map",
    "lgroup_closure",
    "lgroup_generate",
    "linear_extension",
    "positive_part_failures",
    "riesz_hull",
    "unit_interval_points",
]
