"""One-variable piecewise-linear functions on [0,1] with rational nodes.

Elements of the free MV-algebra on one generator are the McNaughton
functions (integer slopes and intercepts); the rational skeleton of its
Riesz hull is the set of rational-coefficient PWL functions.  The Schauder
decomposition over a unimodular (Farey) subdivision writes any rational
PWL function as a truncated sum of rational multiples of McNaughton hats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import DomainError, InvariantError, ParseError
from .exactla import ONE, ZERO, fmt_rat, parse_rat


@dataclass(frozen=True)
class PWL:
    """Continuous PWL function given by ``(node, value)`` pairs, linear between.

    Construction canonicalizes: collinear interior nodes are dropped, so
    equality of PWL objects is equality of functions.
    """

    nodes: tuple
    values: tuple

    def __post_init__(self):
        nodes = tuple(Fraction(x) for x in self.nodes)
        values = tuple(Fraction(y) for y in self.values)
        if len(nodes) != len(values) or len(nodes) < 2:
            raise DomainError("PWL needs matching node/value lists of length >= 2")
        if nodes[0] != 0 or nodes[-1] != 1:
            raise DomainError("PWL nodes must run from 0 to 1")
        if any(a >= b for a, b in zip(nodes, nodes[1:])):
            raise DomainError("PWL nodes must be strictly increasing")
        if any(y < 0 or y > 1 for y in values):
            raise DomainError("PWL values must lie in [0,1]")
        nodes, values = _merge_collinear(nodes, values)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise DomainError(f"{x} outside [0,1]")
        k = _locate(self.nodes, x)
        x0, x1 = self.nodes[k], self.nodes[k + 1]
        y0, y1 = self.values[k], self.values[k + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def pieces(self) -> list:
        """``(slope, intercept)`` of each linear piece, left to right."""
        out = []
        for (x0, y0), (x1, y1) in zip(zip(self.nodes, self.values), zip(self.nodes[1:], self.values[1:])):
            s = (y1 - y0) / (x1 - x0)
            out.append((s, y0 - s * x0))
        return out

    def serialize(self) -> str:
        return " ".join(f"{fmt_rat(x)}:{fmt_rat(y)}" for x, y in zip(self.nodes, self.values))

    @classmethod
    def parse(cls, text: str) -> "PWL":
        pairs = []
        for tok in text.replace(",", " ").split():
            if ":" not in tok:
                raise ParseError(f"expected node:value, got {tok!r}")
            x, y = tok.split(":", 1)
            pairs.append((parse_rat(x), parse_rat(y)))
        if not pairs:
            raise ParseError("empty PWL description")
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @classmethod
    def const(cls, c) -> "PWL":
        return cls((ZERO, ONE), (Fraction(c), Fraction(c)))

    @classmethod
    def identity(cls) -> "PWL":
        return cls((ZERO, ONE), (ZERO, ONE))


def _locate(nodes, x) -> int:
    lo, hi = 0, len(nodes) - 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if nodes[mid] <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _merge_collinear(nodes, values):
    xs, ys = [nodes[0]], [values[0]]
    for i in range(1, len(nodes)):
        xs.append(nodes[i])
        ys.append(values[i])
        while len(xs) >= 3:
            (x0, y0), (x1, y1), (x2, y2) = zip(xs[-3:], ys[-3:])
            if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
                break
            del xs[-2], ys[-2]
    return tuple(xs), tuple(ys)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _combine(f: PWL, g: PWL, op: Callable, levels: Callable) -> PWL:
    """Pointwise ``op(f, g)``; ``levels(a, b)`` lists the linear quantities
    in the pair ``(f, g)`` whose zero crossings may create new kinks."""
    xs = sorted(set(f.nodes) | set(g.nodes))
    extra = []
    for x0, x1 in zip(xs, xs[1:]):
        a0, a1, b0, b1 = f(x0), f(x1), g(x0), g(x1)
        for q0, q1 in zip(levels(a0, b0), levels(a1, b1)):
            if (q0 < 0 < q1) or (q1 < 0 < q0):
                extra.append(x0 + (x1 - x0) * q0 / (q0 - q1))
    xs = sorted(set(xs) | set(extra))
    return PWL(tuple(xs), tuple(op(f(x), g(x)) for x in xs))


def oplus(f: PWL, g: PWL) -> PWL:
    return _combine(f, g, lambda a, b: min(ONE, a + b), lambda a, b: (a + b - 1,))


def odot(f: PWL, g: PWL) -> PWL:
    return _combine(f, g, lambda a, b: max(ZERO, a + b - 1), lambda a, b: (a + b - 1,))


def meet(f: PWL, g: PWL) -> PWL:
    return _combine(f, g, min, lambda a, b: (a - b,))


def join(f: PWL, g: PWL) -> PWL:
    return _combine(f, g, max, lambda a, b: (a - b,))


def neg(f: PWL) -> PWL:
    return PWL(f.nodes, tuple(1 - y for y in f.values))


def scalar(q, f: PWL) -> PWL:
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise DomainError(f"scalar {q} outside [0,1]")
    return PWL(f.nodes, tuple(q * y for y in f.values))


def nat_mul(n: int, f: PWL) -> PWL:
    out = PWL.const(0)
    for _ in range(n):
        out = oplus(out, f)
    return out


def leq(f: PWL, g: PWL) -> bool:
    """Pointwise order; both sides are linear between the merged nodes."""
    xs = set(f.nodes) | set(g.nodes)
    return all(f(x) <= g(x) for x in xs)


def is_mcnaughton(f: PWL) -> bool:
    return all(s.denominator == 1 and b.denominator == 1 for s, b in f.pieces())


def term_to_pwl(term) -> PWL:
    """Interpret a one-variable term in the standard Riesz MV-algebra."""
    from .terms import fold, variables

    names = variables(term)
    if len(names) > 1:
        raise DomainError(f"term uses {len(names)} variables; only one is supported")
    env = {name: PWL.identity() for name in names}
    return fold(term, env, PWL_OPS)


class _PwlOps:
    const = staticmethod(PWL.const)
    oplus = staticmethod(oplus)
    odot = staticmethod(odot)
    neg = staticmethod(neg)
    meet = staticmethod(meet)
    join = staticmethod(join)
    scalar = staticmethod(scalar)


PWL_OPS = _PwlOps()


# ---------------------------------------------------------------------------
# Farey refinement and Schauder hats
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FareySubdivision:
    nodes: tuple

    def __post_init__(self):
        nodes = tuple(Fraction(x) for x in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if nodes[0] != 0 or nodes[-1] != 1:
            raise InvariantError("subdivision must span [0,1]")
        for a, b in zip(nodes, nodes[1:]):
            if abs(a.numerator * b.denominator - b.numerator * a.denominator) != 1:
                raise InvariantError(f"{a}, {b} are not unimodular neighbours")

    def hat(self, i: int) -> PWL:
        """Full-height tent: 1 at node ``i``, 0 at every other node."""
        vals = [ZERO] * len(self.nodes)
        vals[i] = ONE
        return PWL(self.nodes, tuple(vals))


def stern_brocot_path(target: Fraction) -> list:
    """Mediants visited while descending the Stern-Brocot tree to ``target``."""
    target = Fraction(target)
    if not 0 <= target <= 1:
        raise DomainError(f"{target} outside [0,1]")
    if target in (0, 1):
        return []
    lo, hi = (0, 1), (1, 1)
    path = []
    while True:
        med = Fraction(lo[0] + hi[0], lo[1] + hi[1])
        path.append(med)
        if med == target:
            return path
        if target < med:
            hi = (med.numerator, med.denominator)
        else:
            lo = (med.numerator, med.denominator)


def regular_refine(breakpoints: Iterable) -> FareySubdivision:
    nodes = {ZERO, ONE}
    for b in breakpoints:
        nodes.update(stern_brocot_path(parse_rat(b)))
    return FareySubdivision(tuple(sorted(nodes)))


@dataclass(frozen=True)
class Decomposition:
    subdivision: FareySubdivision
    coefficients: tuple

    def hats(self) -> list:
        return [self.subdivision.hat(i) for i in range(len(self.subdivision.nodes))]

    def reconstruct(self, truncated: bool = True) -> PWL:
        """Sum of ``c_i * hat_i``, with truncated ``(+)`` or plain addition."""
        if truncated:
            out = PWL.const(0)
            for c, h in zip(self.coefficients, self.hats()):
                out = oplus(out, scalar(c, h))
            return out
        return PWL(self.subdivision.nodes, self.coefficients)


def schauder_decompose(f: PWL) -> Decomposition:
    sub = regular_refine(f.nodes)
    return Decomposition(sub, tuple(f(x) for x in sub.nodes))


def free_essential_witness(f: PWL) -> Optional[tuple]:
    """McNaughton ``g != 0`` and ``n`` with ``g <= n.f``, or ``None`` for ``f = 0``.

    ``g`` is the hat at the node where ``f`` is largest; ``f`` dominates
    ``f(p) * hat_p`` on the hat's support, so ``n = ceil(1/f(p))`` works.
    """
    dec = schauder_decompose(f)
    best = max(range(len(dec.coefficients)), key=lambda i: (dec.coefficients[i], -i))
    c = dec.coefficients[best]
    if c == 0:
        return None
    return dec.subdivision.hat(best), math.ceil(1 / c)
