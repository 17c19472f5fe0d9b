import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import expected_group
from rieszhull.errors import DomainError, NotInHullError
from rieszhull.exactla import hnf_generate, lattice_member, rref, span_solve, vcomb
from rieszhull.hull import (
    HullMap,
    adjunction_check,
    divisible_hull,
    essential_witness,
    extend_hom,
    extension_is_unique,
    gamma_unit,
    hull_functor,
    identity_map,
    lgroup_closure,
    lgroup_generate,
    linear_extension,
    positive_part_failures,
    riesz_hull,
)
from rieszhull.mvcore import (
    chain_decomposition,
    point_classes,
    PointMapHom,
    PointSet,
    compose,
    enumerate_homs,
    generate_grid,
    identity_hom,
    nat_mul,
)
from rieszhull.sampling import GridConfig, hom_family, random_grid_algebra, small_algebras

half = F(1, 2)


# -- l-group ---------------------------------------------------------------------

def test_lgroup_examples(diag, consts, six):
    G = lgroup_generate(diag)
    assert (G.lattice.den, G.lattice.basis) == (2, ((1, 1),))
    assert not positive_part_failures(G.lattice)
    assert lgroup_generate(consts).lattice == hnf_generate([(1, 1)])
    assert lgroup_generate(six).lattice.basis == ((1, 0), (0, 2))


def test_closure_substep():
    H = lgroup_closure(hnf_generate([(F(1), F(-1))]))
    assert H == hnf_generate([(1, 0), (0, 1)])


def test_gamma_examples(diag, six):
    assert gamma_unit(lgroup_generate(diag)) == diag
    assert gamma_unit(lgroup_generate(six)) == six
    G = lgroup_generate(generate_grid(PointSet.default(3), 1, []))
    assert gamma_unit(G).elements == ((0, 0, 0), (1, 1, 1))


@pytest.mark.parametrize("seed", range(20))
def test_roundtrip_and_oracle(seed):
    A = random_grid_algebra(random.Random(seed), GridConfig(max_points=4, max_den=6, max_gens=2))
    G = lgroup_generate(A)
    assert G.lattice == expected_group(A)
    # no smaller group holds A: the plain group generated by A is already all of G
    assert G.lattice == hnf_generate(list(A.elements), dim=A.m)
    # closing from the generators alone reaches the same group
    assert lgroup_closure(hnf_generate(list(A.generators) + [A.one()], dim=A.m)) == G.lattice
    assert gamma_unit(G) == A


@pytest.mark.parametrize("seed", range(10))
def test_lattice_ops_closed(seed):
    rng = random.Random(seed)
    A = random_grid_algebra(rng, GridConfig(max_points=4, max_den=6))
    L = lgroup_generate(A).lattice
    basis = L.vectors()
    for _ in range(30):
        x = vcomb([rng.randint(-3, 3) for _ in basis], basis, A.m)
        y = vcomb([rng.randint(-3, 3) for _ in basis], basis, A.m)
        assert tuple(map(max, x, y)) in L
        assert tuple(map(min, x, y)) in L


# -- divisible hull ----------------------------------------------------------------

def test_divisible_examples(diag):
    D = divisible_hull(lgroup_generate(diag))
    cert = D.decompose_average((F(1, 3), F(1, 3)))
    assert cert.n == 3 and cert.parts == ((1, 1), (0, 0), (0, 0))
    assert D.decompose_average((half, half)).parts == ((half, half),)
    with pytest.raises(NotInHullError):
        D.decompose_average((F(1, 3), half))


@pytest.mark.parametrize("seed", range(10))
def test_certificates(seed):
    rng = random.Random(seed)
    A = random_grid_algebra(rng)
    R = riesz_hull(A)
    D = divisible_hull(R.lgroup)
    for _ in range(20):
        v = R.sample(rng)
        cert = D.decompose_average(v)
        assert cert.value() == v
        assert all(a in A for a in cert.parts)
        for k in range(1, cert.n):
            assert lattice_member(R.lgroup.lattice, tuple(k * x for x in v)) is None


# -- Riesz hull --------------------------------------------------------------------

def test_hull_examples(diag, six):
    R = riesz_hull(diag)
    assert R.span_basis == ((1, 1),)
    assert R.member((F(2, 7), F(2, 7))) and not R.member((F(1, 3), half))
    assert R.scalar(F(1, 3), (half, half)) == (F(1, 6), F(1, 6))
    v = (F(3, 7), F(3, 7))
    assert R.scalar(1, v) == v and R.scalar(0, v) == (0, 0)
    assert riesz_hull(six).dim == 2
    with pytest.raises(NotInHullError):
        R.oplus((F(1, 3), half), (0, 0))
    with pytest.raises(DomainError):
        R.scalar(F(3, 2), v)


@pytest.mark.parametrize("n", range(1, 7))
def test_chain_hull_is_unit_interval(n):
    R = riesz_hull(generate_grid(PointSet.default(1), n, [(F(1, n),)]))
    assert R.dim == 1
    assert all(R.member((F(p, q),)) for q in range(1, 15) for p in range(q + 1))
    assert not R.member((F(5, 4),)) and not R.member((F(-1, 3),))


def test_essential_examples(six, diag, consts):
    assert essential_witness(riesz_hull(six), (F(1, 3), 0)) == ((half, 0), 2)
    assert essential_witness(riesz_hull(diag), (F(1, 5), F(1, 5))) == ((half, half), 3)
    assert essential_witness(riesz_hull(consts), (1, 1)) == ((1, 1), 1)
    with pytest.raises(DomainError):
        essential_witness(riesz_hull(six), (0, 0))


@pytest.mark.parametrize("seed", range(8))
def test_essential_random(seed):
    rng = random.Random(seed)
    A = random_grid_algebra(rng)
    R = riesz_hull(A)
    for _ in range(100):
        b = R.sample(rng)
        if not any(b):
            continue
        a, n = essential_witness(R, b)
        assert a in A and any(a)
        assert all(x <= y for x, y in zip(a, nat_mul(n, b)))
        if n > 1:
            assert not all(x <= y for x, y in zip(a, nat_mul(n - 1, b)))


unit_rats = st.fractions(min_value=0, max_value=1, max_denominator=9)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 7), st.integers(0, 10 ** 6), unit_rats, unit_rats)
def test_rmv_axioms(idx, seed, r, q):
    R = riesz_hull(small_algebras()[idx])
    rng = random.Random(seed)
    x, y = R.sample(rng), R.sample(rng)
    # scalar distributes over a truncated sum of orthogonal elements
    if all(a + b <= 1 for a, b in zip(x, y)):
        assert R.scalar(r, R.oplus(x, y)) == R.oplus(R.scalar(r, x), R.scalar(r, y))
    if r + q <= 1:
        assert R.scalar(r + q, x) == R.oplus(R.scalar(r, x), R.scalar(q, x))
    assert R.scalar(r * q, x) == R.scalar(r, R.scalar(q, x))
    assert R.scalar(1, x) == x
    assert R.member(R.scalar(r, x)) and R.member(R.oplus(x, y)) and R.member(R.neg(x))


# -- extension, functor, adjunction -------------------------------------------------

def test_extension_examples(luk2):
    D = riesz_hull(generate_grid(PointSet(("y1", "y2")), 2, [(half, half)]))
    fR = extend_hom(PointMapHom(luk2, D, (0, 0)))
    for q in (F(0), F(2, 9), F(1, 2), F(1)):
        assert fR((q,)) == (q, q)
    R = riesz_hull(luk2)
    iota = extend_hom(PointMapHom(luk2, R, (0,)), R)
    assert iota == identity_map(R)


@pytest.mark.parametrize("k", range(0, 40, 3))
def test_extension_uniqueness(k):
    homs = hom_family()
    h = homs[k % len(homs)]
    RA, RB = riesz_hull(h.source), riesz_hull(h.target)
    f = PointMapHom(h.source, RB, h.map)
    fR = extend_hom(f, RA)
    assert fR.on_basis() == linear_extension(f, RA)
    assert extension_is_unique(fR, f)


def test_functor_laws():
    algs = small_algebras()
    hulls = {id(A): riesz_hull(A) for A in algs}
    for A in algs:
        RA = hulls[id(A)]
        assert hull_functor(identity_hom(A), RA, RA) == identity_map(RA)
    for A, B, C in itertools.product(algs[:6], repeat=3):
        RA, RB, RC = hulls[id(A)], hulls[id(B)], hulls[id(C)]
        for h in enumerate_homs(A, B):
            Rh = hull_functor(h, RA, RB)
            if h.is_embedding:
                assert Rh.is_injective()
            for g in enumerate_homs(B, C):
                assert hull_functor(compose(g, h), RA, RC) == Rh.then(hull_functor(g, RB, RC))


@pytest.mark.parametrize("A", small_algebras(), ids=str)
def test_adjunction(A):
    rep = adjunction_check(A, riesz_hull(A), random.Random(1), samples=20)
    assert rep.passed, rep.lines()


def test_full_grid_hull_is_cube():
    A = generate_grid(PointSet.default(2), 3, [(F(1, 3), 0), (0, F(2, 3))])
    R = riesz_hull(A)
    assert R.dim == 2 and R.member((F(1, 7), F(5, 11)))


@pytest.mark.parametrize("seed", range(10))
def test_hull_characterizations(seed):
    A = random_grid_algebra(random.Random(seed), GridConfig(max_points=3, max_den=4))
    R = riesz_hull(A)
    D = divisible_hull(R.lgroup)
    for k in (2, 3):
        assert riesz_hull(D.slice(k)).same_span(R)
    assert riesz_hull(gamma_unit(R.lgroup)).same_span(R)
    assert D.span_basis == R.span_basis
    # comG: hull skeleton = unit cube part of the rational span
    rng = random.Random(seed)
    for _ in range(50):
        v = R.sample(rng) if rng.random() < 0.5 else tuple(F(rng.randint(0, 6), 6) for _ in range(A.m))
        in_span = all(0 <= x <= 1 for x in v) and rref(list(R.span_basis) + [v], A.m) == list(R.span_basis)
        assert R.member(v) == in_span


def test_hullmap_equality_ignores_representation(six):
    R = riesz_hull(six)
    assert HullMap(R, R, (0, 1)) == identity_map(R)
    assert HullMap(R, R, (1, 0)) != identity_map(R)


@pytest.mark.parametrize("seed", range(5))
def test_pivot_coordinates_match_solver(seed):
    rng = random.Random(seed)
    R = riesz_hull(random_grid_algebra(rng, GridConfig(max_points=4, max_den=6)))
    for _ in range(40):
        v = R.sample(rng) if rng.random() < 0.5 else tuple(F(rng.randint(0, 5), 5) for _ in range(R.m))
        assert R.coordinates(v) == span_solve(R.span_basis, v)


@pytest.mark.parametrize("seed", range(8))
def test_slices_keep_point_classes(seed):
    A = random_grid_algebra(random.Random(seed), GridConfig(max_points=3, max_den=4))
    D = divisible_hull(lgroup_generate(A))
    for k in (1, 2, 3):
        S = D.slice(k)
        assert point_classes(S) == point_classes(A)
        assert chain_decomposition(S) == [k * n for n in chain_decomposition(A)]
