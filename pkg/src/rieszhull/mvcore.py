"""Finite MV-algebras of rational functions on a finite point set.

An algebra is a set of vectors in ``{0, 1/d, ..., 1}^m`` containing the
constants and closed under truncated addition and negation.  Points that
no element tells apart are collapsed into point classes; each class is a
maximal ideal, and homomorphisms are precompositions with point maps.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionError, DomainError, InvariantError, NotHomError
from .exactla import ONE, ZERO, QVector, check_unit_range, fmt_vec, ones, zeros


# ---------------------------------------------------------------------------
# pointwise operations
# ---------------------------------------------------------------------------

def _pair(a, b):
    if len(a) != len(b):
        raise DimensionError(f"length mismatch {len(a)} != {len(b)}")
    check_unit_range(a)
    check_unit_range(b)
    return zip(a, b)


def oplus(a: QVector, b: QVector) -> QVector:
    return tuple(min(ONE, x + y) for x, y in _pair(a, b))


def odot(a: QVector, b: QVector) -> QVector:
    return tuple(max(ZERO, x + y - 1) for x, y in _pair(a, b))


def neg(a: QVector) -> QVector:
    check_unit_range(a)
    return tuple(1 - x for x in a)


def meet(a: QVector, b: QVector) -> QVector:
    return tuple(min(x, y) for x, y in _pair(a, b))


def join(a: QVector, b: QVector) -> QVector:
    return tuple(max(x, y) for x, y in _pair(a, b))


def nat_mul(n: int, a: QVector) -> QVector:
    """``n``-fold truncated sum ``a (+) ... (+) a``; ``0a`` is zero."""
    if n < 0:
        raise DomainError("nat_mul needs n >= 0")
    check_unit_range(a)
    return tuple(min(ONE, n * x) for x in a)


def leq(a: QVector, b: QVector) -> bool:
    return all(x <= y for x, y in zip(a, b))


def support(a: Sequence) -> frozenset:
    return frozenset(i for i, x in enumerate(a) if x)


MV_OPS = {
    "oplus": oplus,
    "odot": odot,
    "neg": neg,
    "meet": meet,
    "join": join,
}


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointSet:
    labels: tuple

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise DomainError("a point set needs at least one point")
        if len(set(labels)) != len(labels):
            raise DomainError("point labels must be distinct")

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"unknown point {label!r}") from None

    @classmethod
    def default(cls, m: int) -> "PointSet":
        return cls(tuple(f"x{i + 1}" for i in range(m)))


@dataclass(frozen=True, eq=False)
class GridAlgebra:
    """A finite MV-subalgebra of ``[0,1]^points`` on the grid ``(1/den) Z``.

    ``elements`` is sorted lexicographically; equality of algebras means
    equal point sets and equal element sets.
    """

    points: PointSet
    den: int
    generators: tuple
    elements: tuple
    _index: frozenset = field(repr=False, default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "_index", frozenset(self.elements))

    def __eq__(self, other):
        if not isinstance(other, GridAlgebra):
            return NotImplemented
        return self.points == other.points and self._index == other._index

    def __hash__(self):
        return hash((self.points, self._index))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return tuple(v) in self._index

    contains = __contains__

    @property
    def m(self) -> int:
        return len(self.points)

    def zero(self) -> QVector:
        return zeros(self.m)

    def one(self) -> QVector:
        return ones(self.m)

    def point_classes(self) -> list:
        return point_classes(self)

    def class_of(self) -> list:
        """Map point index -> index of its class."""
        out = [0] * self.m
        for k, cls in enumerate(self.point_classes()):
            for i in cls:
                out[i] = k
        return out


def _on_grid(v, den: int) -> tuple:
    out = []
    for x in v:
        y = Fraction(x) * den
        if y.denominator != 1 or not 0 <= y <= den:
            raise DomainError(f"entry {x} is not on the grid (1/{den})Z in [0,1]")
        out.append(y.numerator)
    return tuple(out)


def _closure_int(seeds, den: int, m: int) -> set:
    """BFS closure under truncated sum and negation, on integer numerators."""
    seen = {(0,) * m, (den,) * m}
    queue = deque(seen)
    for s in seeds:
        if s not in seen:
            seen.add(s)
            queue.append(s)
    while queue:
        a = queue.popleft()
        fresh = [tuple(den - x for x in a)]
        for b in list(seen):
            fresh.append(tuple(min(den, x + y) for x, y in zip(a, b)))
        for c in fresh:
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return seen


def generate_grid(points: PointSet, den: int, gens: Sequence[QVector]) -> GridAlgebra:
    """The MV-subalgebra of the grid generated by ``gens`` (and 0, 1)."""
    if den < 1:
        raise DomainError("den must be a positive integer")
    m = len(points)
    gens = [tuple(Fraction(x) for x in g) for g in gens]
    for g in gens:
        if len(g) != m:
            raise DimensionError(f"generator {fmt_vec(g)} has length {len(g)}, expected {m}")
    seeds = [_on_grid(g, den) for g in gens]
    closed = _closure_int(seeds, den, m)
    elements = sorted(tuple(Fraction(x, den) for x in e) for e in closed)
    return GridAlgebra(points=points, den=den, generators=tuple(gens), elements=tuple(elements))


def algebra_from_elements(points: PointSet, den: int, elements, generators=None,
                          verify: bool = True) -> GridAlgebra:
    """Wrap a closed element set; ``verify`` re-checks closure (quadratic)."""
    m = len(points)
    elems = sorted({tuple(Fraction(x) for x in e) for e in elements})
    ints = {_on_grid(e, den) for e in elems}
    if (0,) * m not in ints or (den,) * m not in ints:
        raise DomainError("element set must contain the constants 0 and 1")
    for a in (ints if verify else ()):
        if tuple(den - x for x in a) not in ints:
            raise DomainError("element set not closed under negation")
        for b in ints:
            if tuple(min(den, x + y) for x, y in zip(a, b)) not in ints:
                raise DomainError("element set not closed under truncated sum")
    if generators is None:
        generators = _atoms(elems, m)
    return GridAlgebra(points=points, den=den, generators=tuple(generators), elements=tuple(elems))


def _atoms(elems, m: int) -> list:
    """Least nonzero element on each point class; together they generate a
    finite product of chains.  Falls back to every non-constant element if
    some class has no element supported exactly on it."""
    cols = {}
    for i in range(m):
        cols.setdefault(tuple(e[i] for e in elems), []).append(i)
    out = []
    for cls in cols.values():
        own = [e for e in elems if support(e) == frozenset(cls)]
        if not own:
            return [e for e in elems if len(set(e)) > 1]
        out.append(min(own, key=lambda e: e[cls[0]]))
    return sorted(out)


# ---------------------------------------------------------------------------
# spectrum, ideals, quotients
# ---------------------------------------------------------------------------

def point_classes(A: GridAlgebra) -> list:
    """Partition point indices by "every element agrees", in first-seen order."""
    seen = {}
    for i in range(A.m):
        col = tuple(e[i] for e in A.elements)
        seen.setdefault(col, []).append(i)
    return [tuple(c) for c in seen.values()]


@dataclass(frozen=True)
class IdealDescriptor:
    """The ideal of elements vanishing outside ``zero_classes``.

    ``zero_classes`` indexes the algebra's point classes; they are the
    classes collapsed to zero by the quotient.
    """

    zero_classes: frozenset

    def members(self, A: GridAlgebra) -> list:
        classes = point_classes(A)
        outside = [i for k, c in enumerate(classes) if k not in self.zero_classes for i in c]
        return [a for a in A.elements if all(a[i] == 0 for i in outside)]


def max_spectrum(A: GridAlgebra):
    """Return ``(classes, maximal_ideals)``; one ideal per point class."""
    classes = point_classes(A)
    k = len(classes)
    ideals = [IdealDescriptor(frozenset(set(range(k)) - {j})) for j in range(k)]
    return classes, ideals


def radical(A: GridAlgebra) -> list:
    """Intersection of all maximal ideals; ``[0]`` for every grid algebra."""
    _, ideals = max_spectrum(A)
    common = set(A.elements)
    for I in ideals:
        common &= set(I.members(A))
    return sorted(common)


def all_ideals(A: GridAlgebra) -> list:
    k = len(point_classes(A))
    return [IdealDescriptor(frozenset(s))
            for r in range(k + 1) for s in itertools.combinations(range(k), r)]


def chain_decomposition(A: GridAlgebra) -> list:
    """Chain lengths ``n_i`` with ``A = prod Ł_{n_i}``, one per point class."""
    ns = []
    for cls in point_classes(A):
        values = sorted({a[cls[0]] for a in A.elements})
        n = len(values) - 1
        if n < 1 or values != [Fraction(j, n) for j in range(n + 1)]:
            raise InvariantError(f"class {cls} does not carry a full subchain")
        if A.den % n:
            raise InvariantError(f"chain length {n} does not divide den {A.den}")
        ns.append(n)
    size = 1
    for n in ns:
        size *= n + 1
    if size != len(A):
        raise InvariantError(f"|A| = {len(A)} but product of chains is {size}")
    return ns


def quotient(A: GridAlgebra, I: IdealDescriptor) -> GridAlgebra:
    classes = point_classes(A)
    if any(k >= len(classes) for k in I.zero_classes):
        raise DomainError("ideal descriptor names a nonexistent class")
    keep = [i for k, c in enumerate(classes) if k not in I.zero_classes for i in c]
    if not keep:
        raise DomainError("quotient by the improper ideal A is not allowed")
    points = PointSet(tuple(A.points.labels[i] for i in keep))
    elems = {tuple(a[i] for i in keep) for a in A.elements}
    gens = [tuple(g[i] for i in keep) for g in A.generators]
    return GridAlgebra(points=points, den=A.den, generators=tuple(gens),
                       elements=tuple(sorted(elems)))


# ---------------------------------------------------------------------------
# homomorphisms as point maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointMapHom:
    """``h(a) = a o map``: target point ``y`` reads source point ``map[y]``.

    ``target`` is anything with ``points`` and ``contains`` (a GridAlgebra
    or a Riesz hull, whose skeleton is then the codomain).  Source points
    are normalized to the first point of their class.
    """

    source: GridAlgebra
    target: object
    map: tuple
    is_embedding: Optional[bool] = None
    is_essential: Optional[bool] = None

    def __post_init__(self):
        if len(self.map) != len(self.target.points):
            raise DimensionError("point map must cover every target point")
        classes = point_classes(self.source)
        rep = {}
        for c in classes:
            for i in c:
                rep[i] = c[0]
        try:
            norm = tuple(rep[int(j)] for j in self.map)
        except KeyError:
            raise DomainError("point map names a nonexistent source point") from None
        object.__setattr__(self, "map", norm)

    def __call__(self, a: Sequence) -> QVector:
        return tuple(a[j] for j in self.map)

    @classmethod
    def from_labels(cls, source: GridAlgebra, target, pairs: dict) -> "PointMapHom":
        idx = []
        for y in target.points.labels:
            if y not in pairs:
                raise DomainError(f"point map misses target point {y!r}")
            idx.append(source.points.index(pairs[y]))
        return cls(source, target, tuple(idx))

    def labels(self) -> dict:
        return {y: self.source.points.labels[j]
                for y, j in zip(self.target.points.labels, self.map)}


def identity_hom(A: GridAlgebra) -> PointMapHom:
    return PointMapHom(A, A, tuple(range(A.m)))


def compose(g: PointMapHom, h: PointMapHom) -> PointMapHom:
    """``g o h`` for ``h: A -> B`` and ``g: B -> C``."""
    if g.source != h.target:
        raise NotHomError("homomorphisms are not composable")
    return PointMapHom(h.source, g.target, tuple(h.map[j] for j in g.map))


def hom_check(h: PointMapHom) -> PointMapHom:
    """Validate ``h`` and fill in the embedding / essentiality flags.

    Essentiality is decided exhaustively and only for finite targets; for
    hull targets it is left as ``None``.
    """
    for a in h.source.generators:
        if not h.target.contains(h(a)):
            raise NotHomError(f"generator {fmt_vec(a)} maps to {fmt_vec(h(a))}, outside the target")
    reps = {c[0] for c in point_classes(h.source)}
    embedding = set(h.map) == reps
    essential = None
    if isinstance(h.target, GridAlgebra):
        supports = {support(h(a)) for a in h.source.elements if any(a)}
        essential = all(
            any(s <= support(b) for s in supports)
            for b in h.target.elements if any(b)
        )
    return PointMapHom(h.source, h.target, h.map, embedding, essential)


def enumerate_homs(A: GridAlgebra, B) -> list:
    """All homomorphisms ``A -> B`` as validated point maps."""
    reps = [c[0] for c in point_classes(A)]
    out = []
    for choice in itertools.product(reps, repeat=len(B.points)):
        h = PointMapHom(A, B, choice)
        if all(B.contains(h(a)) for a in A.generators):
            out.append(hom_check(h))
    return out

