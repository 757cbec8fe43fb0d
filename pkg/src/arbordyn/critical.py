"""Critical points, ramification, normal forms, and critical orbit relations.

The finite critical points of phi = p/q are the roots of the Wronskian
p'q - q'p, with ramification index one more than the root multiplicity; the
point at infinity is critical exactly when the Wronskian falls short of
degree 2d-2, by the same amount.  Root resolution is purely algebraic:
rational root extraction plus the quadratic formula on what remains, so every
critical point lives in Q or a single explicit quadratic extension, or the
map is rejected as inaccessible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import CriticalFieldError, HypothesisError, NotBicriticalError
from .factorint import divisors
from .fieldpoly import conjugate_pair, root_order, trim
from .intpoly import IntPoly, squarefree_part
from .quadext import QuadExtElem, squarefree_kernel
from .ratmap import (
    DEFAULT_HEIGHT_CAP_BITS,
    INF,
    FieldValue,
    Infinity,
    MobiusTransform,
    P1Point,
    RationalMap,
    map_from_field_pair,
)

Location = Union[P1Point, QuadExtElem]


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str  # "rational" | "quadratic"
    s: Optional[int] = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "s": self.s}


RATIONAL_FIELD = FieldDescriptor("rational")


@dataclass(frozen=True)
class CriticalPoint:
    location: Location
    index: int  # ramification index e >= 2

    def location_str(self) -> str:
        return str(self.location)


@dataclass(frozen=True)
class CriticalData:
    points: tuple[CriticalPoint, ...]
    field: FieldDescriptor
    degree: int

    def ramification_defect(self) -> int:
        """sum (e - 1); equals 2d - 2 when all critical points are listed."""
        return sum(pt.index - 1 for pt in self.points)

    def to_dict(self) -> dict:
        pts = []
        for pt in self.points:
            loc = pt.location
            enc = loc.to_dict() if isinstance(loc, QuadExtElem) else str(loc)
            pts.append({"location": enc, "index": pt.index})
        return {"points": pts, "field": self.field.to_dict()}


def wronskian(map_: RationalMap) -> IntPoly:
    """p'q - q'p; its roots with multiplicity carry the finite ramification."""
    return map_.p.derivative() * map_.q - map_.q.derivative() * map_.p


def ramification_index(map_: RationalMap, pt: Union[P1Point, QuadExtElem]) -> int:
    """Order of vanishing of p(z)q(a) - q(z)p(a) at a (via 1/phi(1/z) at inf)."""
    if isinstance(pt, P1Point) and pt.is_infinity:
        d = map_.d
        pr = map_.p.reverse(d)
        qr = map_.q.reverse(d)
        t = pr.coeff(0) * qr - qr.coeff(0) * pr
        for i, c in enumerate(t.coeffs):
            if c:
                return i
        raise AssertionError("vanishing ramification polynomial")  # unreachable
    if isinstance(pt, P1Point):
        alpha: Union[Fraction, QuadExtElem] = pt.to_fraction()
        pa, qa = map_.p(alpha), map_.q(alpha)
        g = [Fraction(pc) * qa - Fraction(qc) * pa
             for pc, qc in _padded_pair(map_)]
    else:
        alpha = pt
        zero = QuadExtElem(0, 0, pt.s)
        pa = _ext_eval(map_.p, pt)
        qa = _ext_eval(map_.q, pt)
        g = [pc * qa - qc * pa + zero for pc, qc in _padded_pair(map_)]
    return root_order(trim(g), alpha)


def _padded_pair(map_: RationalMap):
    pc, qc = map_.homogeneous_coeffs()
    return list(zip(pc, qc))


def _ext_eval(f: IntPoly, x: QuadExtElem) -> QuadExtElem:
    acc = QuadExtElem(0, 0, x.s)
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def _rational_roots(r: IntPoly) -> list[Fraction]:
    """All rational roots of a primitive squarefree polynomial."""
    roots = []
    work = r
    if work.coeff(0) == 0:
        roots.append(Fraction(0))
        work = work.exact_div(IntPoly.variable())
    if work.degree < 1:
        return roots
    const, lead = abs(work.coeff(0)), abs(work.lc)
    for u in divisors(const):
        for v in divisors(lead):
            for sign in (1, -1):
                cand = Fraction(sign * u, v)
                if work(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def critical_points(map_: RationalMap) -> CriticalData:
    """All critical points with ramification indices, over Q or one Q(sqrt s).

    Raises CriticalFieldError when the squarefree Wronskian part keeps a
    factor of degree >= 3 after rational roots are removed: the critical
    points then live outside any single quadratic extension we handle.
    """
    d = map_.d
    w = wronskian(map_)
    if w.is_zero:
        raise CriticalFieldError("identically zero Wronskian")
    r = squarefree_part(w)
    rational = _rational_roots(r)
    rest = r
    for root in rational:
        lin = IntPoly([-root.numerator, root.denominator])
        rest = rest.exact_div(lin)
    quad_points: list[QuadExtElem] = []
    s = None
    if rest.degree == 2:
        aa, bb = rest.lc, rest.coeff(1)
        disc = bb * bb - 4 * aa * rest.coeff(0)
        s, m = squarefree_kernel(disc)
        c0 = Fraction(-bb, 2 * aa)
        c1 = Fraction(m, 2 * aa)
        if c1 < 0:
            c1 = -c1
        quad_points = [QuadExtElem(c0, c1, s), QuadExtElem(c0, -c1, s)]
    elif rest.degree >= 3 or rest.degree == 1:
        raise CriticalFieldError(
            f"critical points outside quadratic extensions "
            f"(unresolved factor of degree {rest.degree})"
        )

    w_frac = [Fraction(c) for c in w.coeffs]
    points: list[CriticalPoint] = []
    resolved_orders = 0
    for root in rational:
        e = root_order(list(w_frac), root) + 1
        resolved_orders += e - 1
        if e >= 2:
            points.append(CriticalPoint(P1Point.from_fraction(root), e))
    if quad_points:
        w_ext = [QuadExtElem(c, 0, s) for c in w.coeffs]
        e = root_order(list(w_ext), quad_points[0]) + 1
        resolved_orders += 2 * (e - 1)
        if e >= 2:
            points.extend(CriticalPoint(g, e) for g in quad_points)
    if resolved_orders != w.degree:
        raise AssertionError("unaccounted Wronskian roots")  # unreachable
    inf_defect = 2 * d - 2 - w.degree
    if inf_defect > 0:
        points.append(CriticalPoint(P1Point.infinity(), inf_defect + 1))
    field = FieldDescriptor("quadratic", s) if quad_points else RATIONAL_FIELD
    return CriticalData(tuple(points), field, d)


def is_bicritical(map_: RationalMap) -> tuple[bool, CriticalData]:
    """Whether the map has exactly two critical points (then both have e = d)."""
    data = critical_points(map_)
    return len(data.points) == 2, data


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

POWER = "power"
INVERSE_POWER = "inverse_power"
BICRITICAL = "bicritical"


@dataclass(frozen=True)
class NormalForm:
    """Result of the normal-form pipeline together with its conjugator.

    kind "power":          z -> c * z^d
    kind "inverse_power":  z -> c / z^d
    kind "bicritical":     z -> (z^d + a)/(z^d + b), a != b
    Conjugating the input by ``mu`` yields exactly the named form.
    """

    kind: str
    degree: int
    mu: MobiusTransform
    field: FieldDescriptor
    c: Optional[object] = None
    a: Optional[object] = None
    b: Optional[object] = None

    def form_pair(self):
        """Field coefficient lists (numerator, denominator) of the named form."""
        d = self.degree
        if self.kind == POWER:
            return [0] * d + [self.c], [1]
        if self.kind == INVERSE_POWER:
            return [self.c], [0] * d + [1]
        num = [self.a] + [0] * (d - 1) + [1]
        den = [self.b] + [0] * (d - 1) + [1]
        return num, den

    def to_dict(self) -> dict:
        def enc(t):
            if t is None:
                return None
            return t.to_dict() if isinstance(t, QuadExtElem) else str(t)

        return {
            "kind": self.kind,
            "degree": self.degree,
            "c": enc(self.c),
            "a": enc(self.a),
            "b": enc(self.b),
            "mu": self.mu.to_dict(),
            "field": self.field.to_dict(),
        }


def _as_field_value(loc: Location, s: Optional[int]) -> FieldValue:
    """Critical point location as a bare field value (INF for infinity)."""
    if isinstance(loc, QuadExtElem):
        return loc
    if loc.is_infinity:
        return INF
    x = loc.to_fraction()
    return QuadExtElem(x, 0, s) if s is not None else x

def _lift(x, s: Optional[int]):
    if s is None or isinstance(x, (QuadExtElem, Infinity)):
        return x
    return QuadExtElem(Fraction(x), 0, s)


def _same_point(x: FieldValue, y: FieldValue) -> bool:
    xi, yi = isinstance(x, Infinity), isinstance(y, Infinity)
    if xi or yi:
        return xi and yi
    return x == y


def _eval_field(map_: RationalMap, x: FieldValue, s: Optional[int]) -> FieldValue:
    return _lift(map_.eval_value(x), s)


def _mu_to_zero_inf(g1: FieldValue, g2: FieldValue, s: Optional[int]) -> MobiusTransform:
    """A Moebius transform with g1 -> 0 and g2 -> infinity."""
    one = _lift(Fraction(1), s) if s is not None else Fraction(1)
    zero = one - one
    if isinstance(g1, Infinity):
        return MobiusTransform.make(zero, one, one, -g2)
    if isinstance(g2, Infinity):
        return MobiusTransform.make(one, -g1, zero, one)
    return MobiusTransform.make(one, -g1, one, -g2)


def _pair_shape(pair, d) -> tuple:
    """Coefficients (c1, a, c2, b) of ((c1 z^d + a), (c2 z^d + b)).

    Raises if any middle coefficient is nonzero; for a bicritical map with
    critical points 0 and infinity the shape is forced.
    """
    ps, qs = pair
    for cs in (ps, qs):
        for i, c in enumerate(cs):
            if 0 < i < d and c != 0:
                raise AssertionError("conjugated pair not in two-term form")
    def at(cs, i):
        return cs[i] if i < len(cs) else 0
    return at(ps, d), at(ps, 0), at(qs, d), at(qs, 0)


def to_normal_form(map_: RationalMap) -> NormalForm:
    """Conjugate a bicritical map to c z^d, c/z^d, or (z^d + a)/(z^d + b).

    The conjugator is returned; its entries (and a, b) lie in the critical
    field.  The two-sided uniqueness partner of the bicritical output can be
    tested with normal_forms_conjugate.
    """
    ok, data = is_bicritical(map_)
    if not ok:
        raise NotBicriticalError(
            f"map has {len(data.points)} critical points, need exactly 2"
        )
    d = map_.d
    s = data.field.s
    g1 = _as_field_value(data.points[0].location, s)
    g2 = _as_field_value(data.points[1].location, s)
    v1 = _eval_field(map_, g1, s)
    v2 = _eval_field(map_, g2, s)

    mu = _mu_to_zero_inf(g1, g2, s)
    pair = conjugate_pair(list(map_.p.coeffs), list(map_.q.coeffs), d, mu.entries())
    c1, a, c2, b = _pair_shape(pair, d)

    if _same_point(v1, g1) and _same_point(v2, g2):
        c = c1 / b
        return NormalForm(POWER, d, mu, data.field, c=_rationalize(c))
    if _same_point(v1, g2) and _same_point(v2, g1):
        c = a / c2
        return NormalForm(INVERSE_POWER, d, mu, data.field, c=_rationalize(c))

    if c1 == 0 or c2 == 0:
        # image of infinity is 0 or infinity; invert so it is neither
        mu = MobiusTransform.make(0, 1, 1, 0).compose(mu)
        c1, a, c2, b = b, c2, a, c1
    c3 = c1 / c2
    a1 = (a / c2) / c3 ** (d + 1)
    b1 = (b / c2) / c3 ** d
    scale = MobiusTransform.make(Fraction(1), 0, 0, c3)  # z -> z / c3
    if s is not None:
        scale = MobiusTransform.make(QuadExtElem(1, 0, s), 0, 0, c3)
    mu = scale.compose(mu)
    if a1 == b1:
        raise AssertionError("normal form degenerated to a = b")  # unreachable
    return NormalForm(
        BICRITICAL, d, mu, data.field, a=_rationalize(a1), b=_rationalize(b1)
    )


def _rationalize(x):
    """Strip the quadratic wrapper when the irrational part vanishes."""
    if isinstance(x, QuadExtElem) and x.is_rational:
        return x.as_fraction()
    return x


def verify_normal_form(map_: RationalMap, nf: NormalForm) -> bool:
    """Conjugating the named form by mu^-1 must reproduce the input exactly."""
    s = nf.field.s
    num, den = nf.form_pair()
    num = [_lift(Fraction(c) if not isinstance(c, QuadExtElem) else c, s) for c in num]
    den = [_lift(Fraction(c) if not isinstance(c, QuadExtElem) else c, s) for c in den]
    back = conjugate_pair(num, den, nf.degree, nf.mu.inverse().entries())
    return map_from_field_pair(*back) == map_


# ---------------------------------------------------------------------------
# K-rational quadratic form for quadratic critical fields (degree 2)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticForm:
    """(z^2 + a z + r)/(z^2 + b z + r) with Q(sqrt r) the critical field."""

    a: Fraction
    b: Fraction
    r: Fraction
    mu: MobiusTransform

    def map(self) -> RationalMap:
        return RationalMap.from_fractions(
            [self.r, self.a, Fraction(1)], [self.r, self.b, Fraction(1)]
        )

    def to_dict(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "r": str(self.r),
            "mu": self.mu.to_dict(),
        }


def quadratic_conjugate_form(map_: RationalMap, c2_limit: int = 16) -> QuadraticForm:
    """Conjugate over Q a quadratic map with quadratic critical field to
    (z^2 + az + r)/(z^2 + bz + r), with critical points +-sqrt(r).

    The candidate scan for the auxiliary parameter is guaranteed to succeed
    within seven values; c2_limit is a hard safety stop.
    """
    if map_.d != 2:
        raise HypothesisError("quadratic_conjugate_form requires degree 2")
    data = critical_points(map_)
    if data.field.kind != "quadratic":
        raise HypothesisError("rational critical points: use to_normal_form")
    s = data.field.s
    gamma = next(p.location for p in data.points if isinstance(p.location, QuadExtElem))
    c0, c1 = gamma.x, abs(gamma.y)

    mu1 = MobiusTransform.make(Fraction(1), -c0, 0, c1)  # z -> (z - c0)/c1
    pair = conjugate_pair(list(map_.p.coeffs), list(map_.q.coeffs), 2, mu1.entries())
    mu = mu1

    def inf_image(pr):
        ps, qs = pr
        top_p = ps[2] if len(ps) > 2 else Fraction(0)
        top_q = qs[2] if len(qs) > 2 else Fraction(0)
        if top_q == 0:
            return INF
        return top_p / top_q

    v = inf_image(pair)
    if isinstance(v, Infinity) or v == 0:
        for c2 in range(c2_limit):
            mu2 = MobiusTransform.make(Fraction(c2), Fraction(-s), Fraction(1), Fraction(-c2))
            cand = conjugate_pair(pair[0], pair[1], 2, mu2.entries())
            v = inf_image(cand)
            if not isinstance(v, Infinity) and v != 0:
                pair = cand
                mu = mu2.compose(mu)
                break
        else:
            raise AssertionError("no admissible auxiliary parameter found")
    c3 = 1 / v
    mu3 = MobiusTransform.make(c3, 0, 0, Fraction(1))  # z -> c3 * z
    pair = conjugate_pair(pair[0], pair[1], 2, mu3.entries())
    mu = mu3.compose(mu)

    ps, qs = pair
    if len(ps) < 3 or len(qs) < 3 or ps[2] == 0 or qs[2] == 0:
        raise AssertionError("scaled pair lost degree")  # unreachable
    a = ps[1] / ps[2]
    rp = ps[0] / ps[2]
    b = qs[1] / qs[2]
    rq = qs[0] / qs[2]
    r = c3 * c3 * s
    if rp != r or rq != r:
        raise AssertionError("constant terms disagree with r")  # unreachable
    return QuadraticForm(a, b, r, mu)


def normal_forms_conjugate(d: int, a, b, a1, b1) -> bool:
    """Whether (z^d+a)/(z^d+b) and (z^d+a1)/(z^d+b1) are conjugate.

    True exactly for the identity pair or the inversion partner
    (a^d / b^(d+1), a^(d-1) / b^d).
    """
    a, b, a1, b1 = Fraction(a), Fraction(b), Fraction(a1), Fraction(b1)
    if a == b or a1 == b1:
        raise ValueError("normal forms require a != b")
    if (a1, b1) == (a, b):
        return True
    if a == 0 or b == 0:
        return False
    return a1 == a ** d / b ** (d + 1) and b1 == a ** (d - 1) / b ** d


# ---------------------------------------------------------------------------
# Critical orbit relations
# ---------------------------------------------------------------------------


@dataclass
class OrbitRelation:
    """First critical orbit relation under the documented search order.

    Search order: trailing relations phi^n(g_i) = phi^m(g_j) with n > m >= 0
    and i != j, scanned by (n+m) ascending then n ascending then i; next
    collisions phi^n(g_1) = phi^n(g_2) for n >= 2 ascending; next single-orbit
    pre-periodicity; otherwise none_found.
    """

    kind: str  # trailing | collision | single_orbit_preperiodic | none_found
    search_bound: int
    n: Optional[int] = None
    m: Optional[int] = None
    lead: Optional[int] = None        # trailing: phi^n(gamma_lead) = phi^m(other)
    preperiod: Optional[int] = None
    period: Optional[int] = None
    value: Optional[object] = None    # collision: the common (rational) value
    height_capped: bool = False
    galois_consistent: Optional[bool] = None

    def to_dict(self) -> dict:
        val = self.value
        if isinstance(val, QuadExtElem):
            val = val.to_dict()
        elif val is not None and not isinstance(val, str):
            val = str(val)
        return {
            "kind": self.kind,
            "n": self.n,
            "m": self.m,
            "lead": self.lead,
            "preperiod": self.preperiod,
            "period": self.period,
            "value": val,
            "search_bound": self.search_bound,
            "height_capped": self.height_capped,
            "galois_consistent": self.galois_consistent,
        }


def _height(x: FieldValue) -> int:
    if isinstance(x, Infinity):
        return 0
    if isinstance(x, QuadExtElem):
        return x.height_bits()
    return max(x.numerator.bit_length(), x.denominator.bit_length())


def _forward_orbit(map_: RationalMap, start: FieldValue, bound: int,
                   height_cap_bits: int, s: Optional[int]) -> list[FieldValue]:
    out = [start]
    x = start
    for _ in range(bound):
        x = _eval_field(map_, x, s)
        if _height(x) > height_cap_bits:
            break
        out.append(x)
    return out


def _galois_swap(x: FieldValue) -> FieldValue:
    if isinstance(x, QuadExtElem):
        return x.conjugate()
    return x


def critical_orbit_relation(
    map_: RationalMap,
    bound: int = 12,
    height_cap_bits: int = DEFAULT_HEIGHT_CAP_BITS,
) -> OrbitRelation:
    """Classify the first relation between the two critical orbits.

    Exact forward orbits to the given depth (heights capped); for quadratic
    critical fields the Galois-swapped relation is checked as well.
    """
    ok, data = is_bicritical(map_)
    if not ok:
        raise NotBicriticalError("critical orbit relations need a bicritical map")
    s = data.field.s
    g1 = _as_field_value(data.points[0].location, s)
    g2 = _as_field_value(data.points[1].location, s)
    o1 = _forward_orbit(map_, g1, bound, height_cap_bits, s)
    o2 = _forward_orbit(map_, g2, bound, height_cap_bits, s)
    n1, n2 = len(o1) - 1, len(o2) - 1
    capped = n1 < bound or n2 < bound
    quad = data.field.kind == "quadratic"

    # trailing: phi^n(g_i) = phi^m(g_j), n > m >= 0, i != j
    for total in range(1, n1 + n2 + 1):
        for n in range(total // 2 + 1, total + 1):
            m = total - n
            if n <= n1 and m <= n2 and _same_point(o1[n], o2[m]):
                rel = OrbitRelation("trailing", bound, n=n, m=m, lead=1,
                                    height_capped=capped)
                if quad:
                    rel.galois_consistent = (
                        n <= n2 and m <= n1 and _same_point(o2[n], o1[m])
                    )
                return rel
            if n <= n2 and m <= n1 and _same_point(o2[n], o1[m]):
                rel = OrbitRelation("trailing", bound, n=n, m=m, lead=2,
                                    height_capped=capped)
                if quad:
                    rel.galois_consistent = (
                        n <= n1 and m <= n2 and _same_point(o1[n], o2[m])
                    )
                return rel

    # collision: phi^n(g_1) = phi^n(g_2), n >= 2
    for n in range(2, min(n1, n2) + 1):
        if _same_point(o1[n], o2[n]):
            rel = OrbitRelation("collision", bound, n=n, value=o1[n],
                                height_capped=capped)
            if quad:
                rel.galois_consistent = _same_point(_galois_swap(o1[n]), o2[n])
            return rel

    # single-orbit pre-periodicity
    for which, orb in ((1, o1), (2, o2)):
        seen: dict = {}
        found = None
        for i, x in enumerate(orb):
            if isinstance(x, Infinity):
                key: object = INF
            else:
                key = x
            if key in seen:
                found = (seen[key], i - seen[key])
                break
            seen[key] = i
        if found:
            t, per = found
            rel = OrbitRelation("single_orbit_preperiodic", bound, lead=which,
                                preperiod=t, period=per, height_capped=capped)
            if quad:
                other = o2 if which == 1 else o1
                rel.galois_consistent = (
                    t + per <= len(other) - 1
                    and _same_point(other[t + per], other[t])
                )
            return rel

    return OrbitRelation("none_found", bound, height_capped=capped)
