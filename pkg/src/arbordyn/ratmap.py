"""Rational maps on the projective line as coprime integer polynomial pairs.

A map phi = p/q is stored canonically: integer coefficients, joint content 1,
positive leading coefficient on the higher-degree member.  Iterates are
computed through the homogeneous substitution recursion and memoized in an
append-only ladder, since level n has degree d**n and is expensive to rebuild.

Points of P^1(Q) are normalized integer pairs (num, den) with den >= 0 and
gcd 1; infinity is (1, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    DegenerateMapError,
    DegreeTooSmallError,
    GrowthCapError,
    NotDefinedOverQError,
)
from .fieldpoly import conjugate_pair
from .intpoly import IntPoly, resultant
from .quadext import QuadExtElem

DEFAULT_GROWTH_CAP_BITS = 2 ** 24
DEFAULT_MAX_STEPS = 64
DEFAULT_HEIGHT_CAP_BITS = 4096


class Infinity:
    """The point at infinity, as a bare field-level value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INF = Infinity()

FieldValue = Union[Fraction, QuadExtElem, Infinity]


@dataclass(frozen=True)
class P1Point:
    """Normalized point of P^1(Q): gcd(num, den) = 1, den >= 0, inf = (1, 0)."""

    num: int
    den: int

    @classmethod
    def of(cls, num: int, den: int = 1) -> "P1Point":
        if num == 0 and den == 0:
            raise ValueError("(0, 0) is not a projective point")
        if den == 0:
            return cls(1, 0)
        g = math.gcd(num, den)
        num, den = num // g, den // g
        if den < 0:
            num, den = -num, -den
        return cls(num, den)

    @classmethod
    def infinity(cls) -> "P1Point":
        return cls(1, 0)

    @classmethod
    def from_fraction(cls, x) -> "P1Point":
        x = Fraction(x)
        return cls.of(x.numerator, x.denominator)

    @property
    def is_infinity(self) -> bool:
        return self.den == 0

    def to_fraction(self) -> Fraction:
        if self.den == 0:
            raise ValueError("infinity has no rational value")
        return Fraction(self.num, self.den)

    def height_bits(self) -> int:
        return max(abs(self.num).bit_length(), self.den.bit_length())

    def __str__(self) -> str:
        if self.den == 0:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"


def _field_entries(entries):
    out = []
    for e in entries:
        if isinstance(e, QuadExtElem):
            out.append(e)
        else:
            out.append(Fraction(e))
    return tuple(out)


@dataclass(frozen=True)
class MobiusTransform:
    """z -> (a*z + b)/(c*z + e) with exact entries and nonzero determinant."""

    a: object
    b: object
    c: object
    e: object

    @classmethod
    def make(cls, a, b, c, e) -> "MobiusTransform":
        a, b, c, e = _field_entries((a, b, c, e))
        mu = cls(a, b, c, e)
        if mu.det() == 0:
            raise ValueError("Moebius transform must be invertible")
        return mu

    @classmethod
    def identity(cls) -> "MobiusTransform":
        return cls.make(1, 0, 0, 1)

    @classmethod
    def scaling(cls, c) -> "MobiusTransform":
        return cls.make(c, 0, 0, 1)

    @classmethod
    def inversion(cls, c=1) -> "MobiusTransform":
        """z -> c/z"""
        return cls.make(0, c, 1, 0)

    def det(self):
        return self.a * self.e - self.b * self.c

    def inverse(self) -> "MobiusTransform":
        return MobiusTransform(self.e, -self.b, -self.c, self.a)

    def compose(self, other: "MobiusTransform") -> "MobiusTransform":
        """self after other (matrix product self * other)."""
        return MobiusTransform(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.e,
            self.c * other.a + self.e * other.c,
            self.c * other.b + self.e * other.e,
        )

    @property
    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.e

    def entries(self):
        return (self.a, self.b, self.c, self.e)

    def apply(self, x: FieldValue) -> FieldValue:
        if isinstance(x, Infinity):
            if self.c == 0:
                return INF
            return self.a / self.c
        den = self.c * x + self.e
        if den == 0:
            return INF
        return (self.a * x + self.b) / den

    def is_rational(self) -> bool:
        return all(
            not isinstance(t, QuadExtElem) or t.is_rational for t in self.entries()
        )

    def __repr__(self) -> str:
        return f"MobiusTransform({self.a}, {self.b}, {self.c}, {self.e})"

    def to_dict(self) -> dict:
        def enc(t):
            return t.to_dict() if isinstance(t, QuadExtElem) else str(t)

        return {"a": enc(self.a), "b": enc(self.b), "c": enc(self.c), "e": enc(self.e)}


@dataclass
class IterateLadder:
    """Memoized iterate numerators/denominators; levels[n-1] = (p_n, q_n).

    Extension is append-only and single-writer; completed levels are immutable
    pairs safe to share.
    """

    base: "RationalMap"
    levels: list[tuple[IntPoly, IntPoly]] = field(default_factory=list)

    def extend(self, n: int, growth_cap_bits: int = DEFAULT_GROWTH_CAP_BITS) -> None:
        if not self.levels:
            self.levels.append((self.base.p, self.base.q))
        d = self.base.d
        pc, qc = self.base.p.coeffs, self.base.q.coeffs
        while len(self.levels) < n:
            pn, qn = self.levels[-1]
            projected = 2 * max(pn.max_coeff_bits(), qn.max_coeff_bits()) + d + 4
            if projected > growth_cap_bits:
                raise GrowthCapError(
                    f"growth cap exceeded at level {len(self.levels) + 1}: "
                    f"~{projected} bits > {growth_cap_bits}"
                )
            self.levels.append(_compose_level(pc, qc, d, pn, qn))

    def level(self, n: int) -> tuple[IntPoly, IntPoly]:
        """(p_n, q_n), 1-indexed; the ladder must already reach level n."""
        if n < 1:
            raise ValueError("ladder levels are 1-indexed")
        return self.levels[n - 1]


def _compose_level(pc: Sequence[int], qc: Sequence[int], d: int,
                   pn: IntPoly, qn: IntPoly) -> tuple[IntPoly, IntPoly]:
    """One step of the iterate recursion: substitute (p_n, q_n) into the map.

    Both sums run over the degree-d homogenization, which is exactly the
    published recursion in either of its degree branches.
    """
    ppow = [IntPoly.one()]
    qpow = [IntPoly.one()]
    for _ in range(d):
        ppow.append(ppow[-1] * pn)
        qpow.append(qpow[-1] * qn)
    new_p = IntPoly.zero()
    new_q = IntPoly.zero()
    for i in range(d + 1):
        basis = None
        if i < len(pc) and pc[i]:
            basis = ppow[i] * qpow[d - i]
            new_p = new_p + pc[i] * basis
        if i < len(qc) and qc[i]:
            if basis is None:
                basis = ppow[i] * qpow[d - i]
            new_q = new_q + qc[i] * basis
    return new_p, new_q


class RationalMap:
    """Degree-d rational self-map of P^1 over Q, d >= 2, as a canonical pair."""

    __slots__ = ("p", "q", "d", "_ladder")

    def __init__(self, p: IntPoly, q: IntPoly):
        if p.is_zero or q.is_zero:
            raise DegenerateMapError("degenerate map: zero numerator or denominator")
        c = math.gcd(p.content(), q.content())
        if c > 1:
            p = p.scalar_exact_div(c)
            q = q.scalar_exact_div(c)
        lead = p if p.degree >= q.degree else q
        if lead.lc < 0:
            p, q = -p, -q
        d = max(p.degree, q.degree)
        if d < 2:
            raise DegreeTooSmallError("degree too small: need max(deg p, deg q) >= 2")
        if resultant(p, q) == 0:
            raise DegenerateMapError("degenerate map: p and q share a root")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_ladder", None)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMap is immutable")

    @classmethod
    def from_coeffs(cls, p_coeffs, q_coeffs) -> "RationalMap":
        return cls(IntPoly(p_coeffs), IntPoly(q_coeffs))

    @classmethod
    def from_fractions(cls, p_coeffs, q_coeffs) -> "RationalMap":
        """Build from rational coefficient lists by clearing denominators."""
        pf = [Fraction(c) for c in p_coeffs]
        qf = [Fraction(c) for c in q_coeffs]
        lcm = 1
        for c in pf + qf:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        return cls(
            IntPoly([int(c * lcm) for c in pf]),
            IntPoly([int(c * lcm) for c in qf]),
        )

    # -- bookkeeping ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMap)
            and self.p == other.p
            and self.q == other.q
        )

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __repr__(self) -> str:
        from .intpoly import format_poly

        return f"RationalMap(({format_poly(self.p)}) / ({format_poly(self.q)}))"

    def homogeneous_coeffs(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Coefficient vectors padded to length d+1 (index i is Z^i W^(d-i))."""
        pc = tuple(self.p.coeff(i) for i in range(self.d + 1))
        qc = tuple(self.q.coeff(i) for i in range(self.d + 1))
        return pc, qc

    # -- evaluation ----------------------------------------------------------

    def __call__(self, pt: P1Point) -> P1Point:
        pc, qc = self.homogeneous_coeffs()
        num, den = pt.num, pt.den
        x = _homog_eval(pc, num, den)
        y = _homog_eval(qc, num, den)
        return P1Point.of(x, y)

    def eval_value(self, x: FieldValue) -> FieldValue:
        """Evaluate at an exact field value (Fraction or QuadExtElem) or INF."""
        if isinstance(x, Infinity):
            pc = self.p.coeff(self.d)
            qc = self.q.coeff(self.d)
            if qc == 0:
                return INF
            return Fraction(pc, qc)
        if isinstance(x, QuadExtElem):
            pv, qv = _eval_ext(self.p, x), _eval_ext(self.q, x)
        else:
            x = Fraction(x)
            pv, qv = self.p(x), self.q(x)
        if qv == 0:
            return INF
        return pv / qv

    def ladder(self, n: int, growth_cap_bits: int = DEFAULT_GROWTH_CAP_BITS) -> IterateLadder:
        """The memoized iterate ladder, extended to hold levels 1..n."""
        lad = self._ladder
        if lad is None:
            lad = IterateLadder(self)
            object.__setattr__(self, "_ladder", lad)
        lad.extend(n, growth_cap_bits)
        return lad

    def iterate_polys(self, n: int,
                      growth_cap_bits: int = DEFAULT_GROWTH_CAP_BITS) -> tuple[IntPoly, IntPoly]:
        """(p_n, q_n) for a single level n >= 1."""
        return self.ladder(n, growth_cap_bits).level(n)

    def ladder_values(self, x, n: int) -> list[tuple]:
        """[(p_k(x), q_k(x)) for k = 1..n] by the value-level recursion.

        Exact Fractions (integers stay integers); avoids building the
        polynomial ladder when only evaluations are needed.
        """
        pc, qc = self.homogeneous_coeffs()
        if isinstance(x, int):
            u: Union[int, Fraction] = self.p(x)
            v: Union[int, Fraction] = self.q(x)
        else:
            x = Fraction(x)
            u, v = self.p(x), self.q(x)
        out = [(u, v)]
        for _ in range(n - 1):
            u, v = (
                sum(pc[i] * u ** i * v ** (self.d - i) for i in range(self.d + 1) if pc[i]),
                sum(qc[i] * u ** i * v ** (self.d - i) for i in range(self.d + 1) if qc[i]),
            )
            out.append((u, v))
        return out

    def origin_values(self, n: int) -> list[tuple[int, int]]:
        """[(p_k(0), q_k(0))] for k = 1..n, exact integers."""
        return self.ladder_values(0, n)

    def origin_values_capped(self, n: int,
                             growth_cap_bits: int) -> tuple[list[tuple[int, int]], bool]:
        """Origin values up to n or the growth cap, whichever comes first.

        Returns (values, capped); values may be a strict prefix.
        """
        pc, qc = self.homogeneous_coeffs()
        u, v = self.p(0), self.q(0)
        out: list[tuple[int, int]] = []
        for _ in range(n):
            if max(abs(u).bit_length(), abs(v).bit_length()) > growth_cap_bits:
                return out, True
            out.append((u, v))
            u, v = (
                sum(pc[i] * u ** i * v ** (self.d - i) for i in range(self.d + 1) if pc[i]),
                sum(qc[i] * u ** i * v ** (self.d - i) for i in range(self.d + 1) if qc[i]),
            )
        return out, False

    # -- orbits ----------------------------------------------------------------

    def orbit(self, start: P1Point, max_steps: int = DEFAULT_MAX_STEPS,
              height_cap_bits: int = DEFAULT_HEIGHT_CAP_BITS) -> "OrbitRecord":
        """Iterate until a revisit, the step budget, or the height cap.

        A point is never declared non-preperiodic: absent a revisit the status
        only reports which budget ended the search.
        """
        points = [start]
        seen = {start: 0}
        pt = start
        for step in range(1, max_steps + 1):
            pt = self(pt)
            if pt in seen:
                t = seen[pt]
                points.append(pt)
                return OrbitRecord(points, "preperiodic", t, step - t)
            points.append(pt)
            if pt.height_bits() > height_cap_bits:
                return OrbitRecord(points, "escaped", None, None)
            seen[pt] = step
        return OrbitRecord(points, "budget_exhausted", None, None)

    # -- conjugation -------------------------------------------------------------

    def conjugate(self, mu: MobiusTransform) -> "RationalMap":
        """mu . phi . mu^-1 as a canonical pair over Q.

        Raises NotDefinedOverQError if mu has quadratic entries and the
        conjugated coefficients fail to be rational.
        """
        new_p, new_q = conjugate_pair(
            list(self.p.coeffs), list(self.q.coeffs), self.d, mu.entries()
        )
        return map_from_field_pair(new_p, new_q)


@dataclass
class OrbitRecord:
    points: list[P1Point]
    status: str  # preperiodic | escaped | budget_exhausted
    preperiod: int | None
    period: int | None

    def to_dict(self) -> dict:
        return {
            "points": [str(p) for p in self.points],
            "status": self.status,
            "preperiod": self.preperiod,
            "period": self.period,
        }


def _homog_eval(coeffs: Sequence[int], num: int, den: int) -> int:
    """Evaluate sum coeffs[i] * num^i * den^(d-i) exactly."""
    d = len(coeffs) - 1
    npow = [1]
    dpow = [1]
    for _ in range(d):
        npow.append(npow[-1] * num)
        dpow.append(dpow[-1] * den)
    return sum(c * npow[i] * dpow[d - i] for i, c in enumerate(coeffs) if c)


def _eval_ext(f: IntPoly, x: QuadExtElem) -> QuadExtElem:
    acc = QuadExtElem(0, 0, x.s)
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def map_from_field_pair(p_coeffs: list, q_coeffs: list) -> RationalMap:
    """Validate a field-coefficient pair as a map over Q and canonicalize it.

    The pair is only defined projectively, so a common irrational scalar is
    harmless: everything is divided by a pivot coefficient first.  If some
    ratio still has a nonzero irrational part the map is genuinely not
    rational and NotDefinedOverQError is raised.
    """
    pivot = None
    for c in reversed(p_coeffs):
        if c != 0:
            pivot = c
            break
    if pivot is None:
        for c in reversed(q_coeffs):
            if c != 0:
                pivot = c
                break
    if pivot is None:
        raise NotDefinedOverQError("zero pair")
    rats = []
    for cs in (p_coeffs, q_coeffs):
        row = []
        for c in cs:
            ratio = c / pivot
            if isinstance(ratio, QuadExtElem):
                if not ratio.is_rational:
                    raise NotDefinedOverQError("result not defined over Q")
                ratio = ratio.as_fraction()
            row.append(Fraction(ratio))
        rats.append(row)
    return RationalMap.from_fractions(rats[0], rats[1])


def new_rational_map(p: IntPoly, q: IntPoly) -> RationalMap:
    """Construct a canonical rational map, validating coprimality and degree."""
    return RationalMap(p, q)


def iterate_ladder(map_: RationalMap, n: int,
                   growth_cap_bits: int = DEFAULT_GROWTH_CAP_BITS) -> IterateLadder:
    return map_.ladder(n, growth_cap_bits)


def evaluate(map_: RationalMap, pt: P1Point) -> P1Point:
    return map_(pt)


def orbit(map_: RationalMap, start: P1Point, max_steps: int = DEFAULT_MAX_STEPS,
          height_cap_bits: int = DEFAULT_HEIGHT_CAP_BITS) -> OrbitRecord:
    return map_.orbit(start, max_steps, height_cap_bits)


def conjugate(map_: RationalMap, mu: MobiusTransform) -> RationalMap:
    return map_.conjugate(mu)


def field_value_str(x: FieldValue) -> str:
    if isinstance(x, Infinity):
        return "inf"
    return str(x)
