"""Exact rational linear algebra.

Everything here works over ``fractions.Fraction`` and Python integers; no
floating point is involved anywhere.  Vectors are plain tuples of
fractions (``QVector``), indexed by the points of a finite point set.

The three kernels are:

* Hermite normal form lattices inside ``(1/den) Z^m`` with integer
  membership certificates,
* rational span membership via reduced row echelon form,
* enumeration of the full-dimensional sign regions that the coordinate
  hyperplanes cut out of a rational subspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, DomainError, InvariantError, ParseError

Rat = Fraction
QVector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# rationals and vectors
# ---------------------------------------------------------------------------

def parse_rat(text) -> Fraction:
    """Parse ``"p/q"`` or an integer literal.  Decimals are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    s = str(text).strip()
    if not s or any(ch in s for ch in ".eE"):
        raise ParseError(f"not a rational literal: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational literal: {text!r}") from None


def fmt_rat(q: Fraction) -> str:
    return str(Fraction(q))


def qvec(*entries) -> QVector:
    """Build a QVector; ``qvec("1/2", 0)`` or ``qvec(["1/2", 0])``."""
    if len(entries) == 1 and isinstance(entries[0], (list, tuple)):
        entries = entries[0]
    return tuple(parse_rat(e) for e in entries)


def parse_vec(text: str) -> QVector:
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s.strip():
        return ()
    return tuple(parse_rat(part) for part in s.split(","))


def fmt_vec(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(fmt_rat(x) for x in v) + ")"


def zeros(m: int) -> QVector:
    return (ZERO,) * m


def ones(m: int) -> QVector:
    return (ONE,) * m


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(q, v):
    return tuple(q * a for a in v)


def vcomb(coeffs: Sequence, vectors: Sequence, m: int) -> QVector:
    """Linear combination ``sum(c_i * v_i)`` in dimension ``m``."""
    out = [ZERO] * m
    for c, v in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(v):
                out[i] += c * x
    return tuple(out)


def _check_dims(vectors, m=None) -> int:
    for v in vectors:
        if m is None:
            m = len(v)
        elif len(v) != m:
            raise DimensionError(f"expected length {m}, got {len(v)}")
    return 0 if m is None else m


# ---------------------------------------------------------------------------
# Hermite normal form lattices
# ---------------------------------------------------------------------------

def _xgcd(a: int, b: int):
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf_rows(rows: Iterable[Sequence[int]], m: int) -> tuple:
    """Row-style Hermite normal form of an integer matrix.

    Pivots are positive and strictly move right; entries above a pivot are
    reduced into ``[0, pivot)``.  Zero rows are dropped.
    """
    work = [list(r) for r in rows if any(r)]
    out = []
    for c in range(m):
        live = [r for r in work if r[c]]
        if not live:
            continue
        rest = [r for r in work if not r[c]]
        piv = live[0]
        for r in live[1:]:
            g, s, t = _xgcd(piv[c], r[c])
            a, b = piv[c] // g, r[c] // g
            new_piv = [s * x + t * y for x, y in zip(piv, r)]
            r[:] = [a * y - b * x for x, y in zip(piv, r)]
            piv = new_piv
            if any(r):
                rest.append(r)
        if piv[c] < 0:
            piv = [-x for x in piv]
        for row in out:
            q = row[c] // piv[c]
            if q:
                row[:] = [x - q * y for x, y in zip(row, piv)]
        out.append(piv)
        work = rest
    if work and any(any(r) for r in work):
        raise InvariantError("HNF left nonzero residue rows")
    return tuple(tuple(r) for r in out)


def _pivot(row) -> int:
    for i, x in enumerate(row):
        if x:
            return i
    return -1


@dataclass(frozen=True)
class IntegerLattice:
    """The subgroup ``{sum(c_i * basis_i) / den : c_i in Z}`` of ``Q^dim``.

    ``basis`` is in Hermite normal form and ``den`` is the least scale with
    the lattice inside ``(1/den) Z^dim``, so equal lattices compare equal.
    """

    den: int
    basis: tuple
    dim: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vectors(self) -> list:
        """HNF basis as rational vectors."""
        return [tuple(Fraction(x, self.den) for x in row) for row in self.basis]

    def pivots(self) -> list:
        return [_pivot(row) for row in self.basis]

    def __contains__(self, v) -> bool:
        return lattice_member(self, v) is not None


def _lattice_from_int_rows(rows, den: int, m: int) -> IntegerLattice:
    basis = hnf_rows(rows, m)
    g = den
    for row in basis:
        for x in row:
            g = math.gcd(g, x)
    if g > 1:
        basis = tuple(tuple(x // g for x in row) for row in basis)
        den //= g
    if not basis:
        den = 1
    return IntegerLattice(den=den, basis=basis, dim=m)


def common_den(vectors) -> int:
    d = 1
    for v in vectors:
        for x in v:
            d = math.lcm(d, Fraction(x).denominator)
    return d


def hnf_generate(vectors: Sequence[QVector], dim: Optional[int] = None) -> IntegerLattice:
    """Subgroup of ``Q^m`` generated by ``vectors``, HNF-reduced."""
    vectors = list(vectors)
    m = _check_dims(vectors, dim)
    d = common_den(vectors)
    rows = [[int(x * d) for x in v] for v in vectors]
    return _lattice_from_int_rows(rows, d, m)


def lattice_extend(L: IntegerLattice, vectors: Sequence[QVector]) -> IntegerLattice:
    vectors = list(vectors)
    _check_dims(vectors, L.dim)
    return hnf_generate(L.vectors() + vectors, dim=L.dim)


def lattice_scale(L: IntegerLattice, k: int) -> IntegerLattice:
    """The lattice ``(1/k) L``."""
    if k < 1:
        raise DomainError("scale must be a positive integer")
    return _lattice_from_int_rows(L.basis, L.den * k, L.dim)


def lattice_member(L: IntegerLattice, v: Sequence) -> Optional[tuple]:
    """Integer coordinates of ``v`` over the HNF basis, or ``None``."""
    if len(v) != L.dim:
        raise DimensionError(f"expected length {L.dim}, got {len(v)}")
    w = []
    for x in v:
        y = Fraction(x) * L.den
        if y.denominator != 1:
            return None
        w.append(y.numerator)
    coords = []
    for row in L.basis:
        p = _pivot(row)
        if any(w[:p]):
            return None
        c, r = divmod(w[p], row[p])
        if r:
            return None
        coords.append(c)
        if c:
            w = [a - c * b for a, b in zip(w, row)]
    if any(w):
        return None
    return tuple(coords)


# ---------------------------------------------------------------------------
# rational spans
# ---------------------------------------------------------------------------

def rref(vectors: Sequence[QVector], dim: Optional[int] = None) -> list:
    """Reduced row echelon basis of the rational span (canonical)."""
    rows = [list(map(Fraction, v)) for v in vectors]
    m = _check_dims(rows, dim)
    out = []
    for c in range(m):
        k = next((i for i, r in enumerate(rows) if r[c]), None)
        if k is None:
            continue
        piv = rows.pop(k)
        inv = 1 / piv[c]
        piv = [x * inv for x in piv]
        for r in rows:
            if r[c]:
                f = r[c]
                r[:] = [a - f * b for a, b in zip(r, piv)]
        for r in out:
            if r[c]:
                f = r[c]
                r[:] = [a - f * b for a, b in zip(r, piv)]
        out.append(piv)
        rows = [r for r in rows if any(r)]
    return [tuple(r) for r in out]


def rank(vectors: Sequence[QVector]) -> int:
    return len(rref(vectors))


def independent_subset(vectors: Sequence[QVector]) -> list:
    """Greedy maximal independent subfamily, in the given order."""
    chosen = []
    echelon = []
    for v in vectors:
        trial = rref(echelon + [v], len(v))
        if len(trial) > len(echelon):
            chosen.append(tuple(v))
            echelon = trial
    return chosen


def span_solve(basis: Sequence[QVector], v: Sequence) -> Optional[tuple]:
    """Rational coordinates of ``v`` over an independent ``basis``, or ``None``."""
    basis = [tuple(map(Fraction, b)) for b in basis]
    v = tuple(map(Fraction, v))
    k = len(basis)
    if k == 0:
        return () if not any(v) else None
    m = _check_dims(basis + [v])
    # augmented system: columns are basis vectors, rows are coordinates
    aug = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if aug[i][c]), None)
        if p is None:
            raise InvariantError("span_solve called with a dependent basis")
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][k] for i in range(r, m)):
        return None
    return tuple(aug[i][k] for i in range(k))


def in_span(basis: Sequence[QVector], v: Sequence) -> bool:
    return span_solve(basis, v) is not None


# ---------------------------------------------------------------------------
# sign regions of a subspace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignRegion:
    """Open region of a subspace on which every coordinate has a fixed sign.

    ``signs`` holds ``+1``, ``-1`` or ``0``; zero marks coordinates that
    vanish identically on the subspace.
    """

    signs: tuple
    witness: QVector

    def symbol(self) -> str:
        return "".join({1: "+", -1: "-", 0: "0"}[s] for s in self.signs)


def _primitive(coeffs, rhs):
    """Scale an inequality ``coeffs . t >= rhs`` to a canonical form."""
    nums = [Fraction(x) for x in list(coeffs) + [rhs]]
    d = common_den([nums])
    ints = [int(x * d) for x in nums]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


def fm_feasible_point(ineqs: Sequence[tuple], k: int) -> Optional[tuple]:
    """Find ``t in Q^k`` with ``a . t >= c`` for every ``(a, c)`` in ``ineqs``.

    Fourier-Motzkin elimination followed by back substitution.  Returns
    ``None`` when the system is infeasible.
    """
    stages = []
    system = {_primitive(a, c) for a, c in ineqs}
    for j in range(k - 1, -1, -1):
        stages.append(system)
        pos = [q for q in system if q[0][j] > 0]
        neg = [q for q in system if q[0][j] < 0]
        nxt = {q for q in system if q[0][j] == 0}
        for ap, cp in pos:
            for an, cn in neg:
                lp, ln = ap[j], -an[j]
                a = tuple(ln * x + lp * y for x, y in zip(ap, an))
                nxt.add(_primitive(a, ln * cp + lp * cn))
        system = nxt
    if any(c > 0 for _, c in system):
        return None
    t = []
    for j, system in zip(range(k), reversed(stages)):
        lo = hi = None
        for a, c in system:
            if not a[j]:
                continue
            rest = c - sum(a[i] * t[i] for i in range(j))
            bound = Fraction(rest, a[j])
            if a[j] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None and hi is None:
            val = ZERO
        elif hi is None:
            val = Fraction(math.ceil(lo))
        elif lo is None:
            val = Fraction(math.floor(hi))
        else:
            val = Fraction(math.ceil(lo))
            if val > hi:
                val = lo
        t.append(val)
    return tuple(t)


def sign_regions(basis: Sequence[QVector], dim: Optional[int] = None) -> list:
    """Full-dimensional regions of ``span(basis)`` cut by coordinate hyperplanes.

    Sign vectors are enumerated by recursive splitting, trying ``+`` before
    ``-``; each region carries an exact interior witness.  The zero
    subspace has no full-dimensional regions and yields ``[]``.
    """
    m = _check_dims(basis, dim)
    B = rref(basis, m)
    k = len(B)
    if k == 0:
        return []
    forms = [tuple(B[j][i] for j in range(k)) for i in range(m)]
    live = [i for i in range(m) if any(forms[i])]
    regions = []

    def descend(pos: int, ineqs: list, signs: dict):
        if pos == len(live):
            t = fm_feasible_point(ineqs, k)
            w = vcomb(t, B, m)
            sv = tuple(signs.get(i, 0) for i in range(m))
            for i in live:
                if (w[i] > 0) != (sv[i] > 0) or not w[i]:
                    raise InvariantError("sign region witness is not interior")
            regions.append(SignRegion(signs=sv, witness=w))
            return
        i = live[pos]
        for s in (1, -1):
            trial = ineqs + [(tuple(s * x for x in forms[i]), ONE)]
            if fm_feasible_point(trial, k) is not None:
                signs[i] = s
                descend(pos + 1, trial, signs)
                del signs[i]

    descend(0, [], {})
    return regions


def project_positive(region: SignRegion, v: Sequence) -> QVector:
    """Zero the coordinates of ``v`` that are not positive on ``region``."""
    return tuple(x if s > 0 else ZERO for x, s in zip(v, region.signs))


def check_unit_range(v: Sequence, what: str = "vector") -> None:
    for x in v:
        if x < 0 or x > 1:
            raise DomainError(f"{what} entry {fmt_rat(x)} outside [0,1]")
