"""Random and enumerated instances for property runs, scripts and the CLI."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .freepwl import PWL
from .mvcore import GridAlgebra, PointSet, enumerate_homs, generate_grid
from .terms import Bin, Const, Neg, Scalar, Var


@dataclass(frozen=True)
class GridConfig:
    max_points: int = 3
    max_den: int = 4
    max_gens: int = 2
    min_points: int = 1


@dataclass(frozen=True)
class PwlConfig:
    max_nodes: int = 8
    max_den: int = 12


@dataclass(frozen=True)
class TermConfig:
    depth: int = 6
    variables: tuple = ("x",)
    scalars: bool = False
    max_den: int = 6


def random_grid_vector(rng: random.Random, m: int, den: int) -> tuple:
    return tuple(Fraction(rng.randint(0, den), den) for _ in range(m))


def random_grid_algebra(rng: random.Random, cfg: GridConfig = GridConfig()) -> GridAlgebra:
    """Random generated subalgebra; about one in ten draws is constants-only."""
    m = rng.randint(cfg.min_points, cfg.max_points)
    den = rng.randint(1, cfg.max_den)
    # with one point and den 1 every grid vector is a constant
    if cfg.max_gens == 0 or (m == 1 and den == 1) or rng.random() < 0.1:
        return generate_grid(PointSet.default(m), den, [])
    constants = {(Fraction(0),) * m, (Fraction(1),) * m}
    gens = []
    for _ in range(rng.randint(1, cfg.max_gens)):
        g = random_grid_vector(rng, m, den)
        while g in constants:
            g = random_grid_vector(rng, m, den)
        gens.append(g)
    return generate_grid(PointSet.default(m), den, gens)


def random_unit_rational(rng: random.Random, max_den: int) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(0, q), q)


def random_pwl(rng: random.Random, cfg: PwlConfig = PwlConfig()) -> PWL:
    interior = set()
    for _ in range(rng.randint(0, cfg.max_nodes - 2)):
        q = rng.randint(2, cfg.max_den)
        interior.add(Fraction(rng.randint(1, q - 1), q))
    nodes = [Fraction(0)] + sorted(interior) + [Fraction(1)]
    values = [random_unit_rational(rng, cfg.max_den) for _ in nodes]
    return PWL(tuple(nodes), tuple(values))


def random_term(rng: random.Random, cfg: TermConfig = TermConfig(), depth=None):
    depth = cfg.depth if depth is None else depth
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.15:
            return Const(rng.randint(0, 1))
        return Var(rng.choice(cfg.variables))
    roll = rng.random()
    if roll < 0.2:
        return Neg(random_term(rng, cfg, depth - 1))
    if cfg.scalars and roll < 0.3:
        return Scalar(random_unit_rational(rng, cfg.max_den), random_term(rng, cfg, depth - 1))
    op = rng.choice(["oplus", "odot", "join", "meet"])
    return Bin(op, random_term(rng, cfg, depth - 1), random_term(rng, cfg, depth - 1))


def small_algebras() -> list:
    """A fixed family of small algebras on one to three points."""
    P1, P2, P3 = (PointSet.default(m) for m in (1, 2, 3))
    half = Fraction(1, 2)
    third = Fraction(1, 3)
    return [
        generate_grid(P1, 1, []),
        generate_grid(P1, 2, [(half,)]),
        generate_grid(P1, 3, [(third,)]),
        generate_grid(P2, 2, [(half, half)]),
        generate_grid(P2, 2, [(half, 0)]),
        generate_grid(P2, 1, [(1, 0)]),
        generate_grid(P3, 2, [(half, half, 0)]),
        generate_grid(P3, 1, [(1, 0, 0)]),
    ]


def hom_family(algebras=None) -> list:
    """Every homomorphism between members of ``algebras``."""
    algebras = small_algebras() if algebras is None else algebras
    homs = []
    for A, B in itertools.product(algebras, repeat=2):
        homs.extend(enumerate_homs(A, B))
    return homs
