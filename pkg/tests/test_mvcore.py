import itertools
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rieszhull.errors import DomainError, NotHomError
from rieszhull.mvcore import (
    IdealDescriptor,
    PointMapHom,
    PointSet,
    all_ideals,
    chain_decomposition,
    compose,
    enumerate_homs,
    generate_grid,
    hom_check,
    identity_hom,
    leq,
    max_spectrum,
    meet,
    nat_mul,
    neg,
    odot,
    oplus,
    join,
    point_classes,
    quotient,
    radical,
)
from oracles import naive_closure
from rieszhull.sampling import GridConfig, random_grid_algebra, small_algebras

half, third = F(1, 2), F(1, 3)


def unit_vec(m, den=6):
    return st.tuples(*[st.integers(0, den).map(lambda k: F(k, den))] * m)


# -- operations ----------------------------------------------------------------

def test_op_examples():
    assert oplus((half,), (F(3, 4),)) == (1,)
    assert neg((third,)) == (F(2, 3),)
    assert nat_mul(3, (third, F(0))) == (1, 0)
    assert odot((half,), (F(3, 4),)) == (F(1, 4),)
    assert meet((half, 1), (1, 0)) == (half, 0)
    assert join((half, 1), (1, 0)) == (1, 1)


def test_op_domain():
    with pytest.raises(DomainError):
        oplus((F(3, 2),), (F(0),))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3).flatmap(lambda m: st.tuples(unit_vec(m), unit_vec(m), unit_vec(m))))
def test_mv_axioms(abc):
    a, b, c = abc
    z = (F(0),) * len(a)
    assert oplus(oplus(a, b), c) == oplus(a, oplus(b, c))
    assert oplus(a, b) == oplus(b, a)
    assert oplus(a, z) == a
    assert neg(neg(a)) == a
    assert oplus(a, neg(z)) == neg(z)
    assert oplus(neg(oplus(neg(a), b)), b) == oplus(neg(oplus(neg(b), a)), a)
    assert leq(a, b) == (odot(a, neg(b)) == z)


# -- closure -------------------------------------------------------------------

def test_generate_examples(diag, six, consts):
    assert diag.elements == ((0, 0), (half, half), (1, 1))
    assert len(six) == 6 and (half, 1) in six
    assert consts.elements == ((0, 0), (1, 1))


def test_generate_off_grid():
    with pytest.raises(DomainError):
        generate_grid(PointSet.default(1), 2, [(third,)])


@pytest.mark.parametrize("seed", range(15))
def test_generate_matches_naive(seed):
    A = random_grid_algebra(random.Random(seed), GridConfig(max_points=3, max_den=4))
    assert set(A.elements) == naive_closure(A.m, A.generators)
    ns = chain_decomposition(A)
    assert len(A) == math.prod(n + 1 for n in ns)


# -- spectrum, ideals, quotients ----------------------------------------------

def test_spectrum_examples(diag, six, consts):
    classes, ideals = max_spectrum(diag)
    assert classes == [(0, 1)] and [I.members(diag) for I in ideals] == [[(0, 0)]]
    assert len(max_spectrum(six)[0]) == 2
    assert chain_decomposition(diag) == [2]
    assert chain_decomposition(six) == [2, 1]
    assert chain_decomposition(consts) == [1]


def test_quotient_examples(six, diag):
    q = quotient(six, IdealDescriptor(frozenset({1})))
    assert q.points.labels == ("x1",) and q.elements == ((0,), (half,), (1,))
    assert quotient(six, IdealDescriptor(frozenset())) == six
    _, (M,) = max_spectrum(diag)
    assert quotient(diag, M) == diag
    with pytest.raises(DomainError):
        quotient(six, IdealDescriptor(frozenset({0, 1})))


def _brute_ideals(A):
    elems = A.elements
    z = A.zero()
    out = set()
    others = [a for a in elems if a != z]
    for r in range(len(others) + 1):
        for sub in itertools.combinations(others, r):
            S = {z, *sub}
            if any(oplus(a, b) not in S for a in S for b in S):
                continue
            if any(leq(b, a) and b not in S for a in S for b in elems):
                continue
            out.add(frozenset(S))
    return out


@pytest.mark.parametrize("A", [a for a in small_algebras() if len(a) <= 12], ids=str)
def test_ideals_match_bruteforce(A):
    from_descriptors = {frozenset(I.members(A)) for I in all_ideals(A)}
    assert from_descriptors == _brute_ideals(A)
    descs = all_ideals(A)
    for I, J in itertools.product(descs, repeat=2):
        U = IdealDescriptor(I.zero_classes | J.zero_classes)
        N = IdealDescriptor(I.zero_classes & J.zero_classes)
        assert set(N.members(A)) == set(I.members(A)) & set(J.members(A))
        sums = {oplus(a, b) for a in I.members(A) for b in J.members(A)}
        assert set(U.members(A)) == sums


@pytest.mark.parametrize("seed", range(10))
def test_semisimple(seed):
    A = random_grid_algebra(random.Random(seed))
    assert radical(A) == [A.zero()]


# -- homomorphisms ---------------------------------------------------------------

def test_hom_examples(luk2, diag, six):
    h = hom_check(PointMapHom(luk2, diag, (0, 0)))
    assert h.is_embedding and h.is_essential
    q = quotient(six, IdealDescriptor(frozenset({1})))
    p = hom_check(PointMapHom(six, q, (0,)))
    assert p.is_embedding is False
    i = hom_check(identity_hom(six))
    assert i.is_embedding and i.is_essential
    bool2 = generate_grid(PointSet.default(1), 1, [])
    with pytest.raises(NotHomError):
        hom_check(PointMapHom(luk2, bool2, (0,)))


def test_compose_matches_pointwise():
    algs = small_algebras()
    for A, B, C in itertools.product(algs[:6], repeat=3):
        for h in enumerate_homs(A, B):
            for g in enumerate_homs(B, C):
                gh = compose(g, h)
                assert all(gh(a) == g(h(a)) for a in A.elements)


def _brute_homs_to_chain(A, d):
    """All maps A -> {0,1/d,...,1} preserving 0, (+) and ~, by backtracking."""
    elems = list(A.elements)
    vals = [F(k, d) for k in range(d + 1)]
    found = []

    def ok(phi):
        for a, b in itertools.product(phi, repeat=2):
            s = oplus(a, b)
            if s in phi and phi[s] != min(F(1), phi[a] + phi[b]):
                return False
        for a in phi:
            n = neg(a)
            if n in phi and phi[n] != 1 - phi[a]:
                return False
        return phi.get(A.zero(), F(0)) == 0

    def go(i, phi):
        if i == len(elems):
            found.append(tuple(phi[a] for a in elems))
            return
        for v in vals:
            phi[elems[i]] = v
            if ok(phi):
                go(i + 1, phi)
            del phi[elems[i]]

    go(0, {})
    return set(found)


@pytest.mark.parametrize("A", [a for a in small_algebras() if len(a) <= 8], ids=str)
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_homs_are_point_evaluations(A, d):
    chain = generate_grid(PointSet(("y",)), d, [(F(1, d),)])
    by_points = {tuple(h(a)[0] for a in A.elements) for h in enumerate_homs(A, chain)}
    assert by_points == _brute_homs_to_chain(A, d)


def test_essential_then_embedding_forces_embedding():
    algs = small_algebras()
    checked = 0
    for A, B, C in itertools.product(algs, repeat=3):
        for i in enumerate_homs(A, B):
            if not i.is_essential:
                continue
            for fA in enumerate_homs(A, C):
                if not fA.is_embedding:
                    continue
                for fB in enumerate_homs(B, C):
                    if all(fB(i(a)) == fA(a) for a in A.elements):
                        assert fB.is_embedding
                        checked += 1
    assert checked > 20


def test_point_classes_first_seen(six, diag):
    assert point_classes(six) == [(0,), (1,)]
    assert point_classes(diag) == [(0, 1)]
