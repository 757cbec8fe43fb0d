"""Reduction of rational maps modulo primes and mod-p orbit analysis.

Over Z a pair is normalized at every prime exactly when its joint content is
1, so canonical maps reduce coefficient-wise.  Good reduction at p means the
reduced pair keeps degree d and acquires no common projective root; we decide
it by degree preservation plus a gcd over F_p, with no algebraic closure
machinery.  Points of P^1(F_p) are encoded as integers 0..p, with p standing
for infinity, so orbits can use a flat visited array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadReductionError, CompositeModulusError, InvariantViolationError
from .factorint import FactorBudget, factor_integer, is_probable_prime, valuation
from .ffpoly import PrimeFieldPoly
from .intpoly import IntPoly, resultant
from .ratmap import RationalMap


def normalize_pair(p: IntPoly, q: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Divide out the joint content, normalizing the pair at every prime."""
    if p.is_zero and q.is_zero:
        raise ValueError("cannot normalize the zero pair")
    c = math.gcd(p.content(), q.content())
    if c <= 1:
        return p, q
    return p.scalar_exact_div(c), q.scalar_exact_div(c)


@dataclass(frozen=True)
class ReducedMap:
    """Coefficient-wise reduction of a canonical pair modulo a prime."""

    modulus: int
    p_red: PrimeFieldPoly
    q_red: PrimeFieldPoly
    degree: int        # degree d of the map upstairs
    degree_drop: int   # d - max(deg p_red, deg q_red)

    @property
    def good(self) -> bool:
        if self.degree_drop != 0:
            return False
        if self.p_red.is_zero or self.q_red.is_zero:
            return False
        return self.p_red.gcd(self.q_red).degree == 0

    def eval_point(self, t: int) -> int:
        """Image of a point of P^1(F_p) in the 0..p encoding (p = infinity)."""
        p = self.modulus
        if t == p:
            x = self.p_red.coeff(self.degree)
            y = self.q_red.coeff(self.degree)
        else:
            x = self.p_red(t)
            y = self.q_red(t)
        if y == 0:
            if x == 0:
                raise BadReductionError(
                    f"common root at {t} mod {p}; map has bad reduction"
                )
            return p
        return x * pow(y, -1, p) % p


def reduce_mod_p(map_: RationalMap, prime: int) -> ReducedMap:
    """Coefficient-wise reduction; records any degree drop, good or not."""
    if not is_probable_prime(prime):
        raise CompositeModulusError(f"{prime} is not prime")
    p_red = PrimeFieldPoly.from_intpoly(map_.p, prime)
    q_red = PrimeFieldPoly.from_intpoly(map_.q, prime)
    drop = map_.d - max(p_red.degree, q_red.degree)
    return ReducedMap(prime, p_red, q_red, map_.d, drop)


def has_good_reduction(map_: RationalMap, prime: int) -> bool:
    """Degree is preserved and the reduced pair has no common projective root."""
    return reduce_mod_p(map_, prime).good


def projective_resultant(map_: RationalMap) -> int:
    """|Res| of the degree-d homogenizations; its prime divisors are exactly
    the bad-reduction primes of a canonical pair."""
    p, q = map_.p, map_.q
    d = map_.d
    if p.degree == d:
        r = resultant(p, q) * p.lc ** (d - q.degree)
    else:
        r = resultant(p, q) * q.lc ** (d - p.degree)
    return abs(r)


_bad_primes_cache: dict[RationalMap, tuple[int, ...]] = {}


def bad_reduction_primes(map_: RationalMap, budget: FactorBudget | None = None) -> tuple[int, ...]:
    """All primes of bad reduction, by factoring the projective resultant.

    Raises RuntimeError if the resultant cannot be fully factored within the
    budget (the list would be incomplete).
    """
    if map_ in _bad_primes_cache:
        return _bad_primes_cache[map_]
    r = projective_resultant(map_)
    fac = factor_integer(r, budget)
    if fac.cofactor_status == "composite_unfactored":
        raise RuntimeError(
            "projective resultant not fully factored; raise the effort budget"
        )
    primes = [p for p, _ in fac.factors]
    if fac.cofactor != 1:
        primes.append(fac.cofactor)
    out = tuple(p for p in sorted(primes) if not has_good_reduction(map_, p))
    _bad_primes_cache[map_] = out
    return out


@dataclass
class ModOrbit:
    """Tail/cycle decomposition of a forward orbit in P^1(F_p)."""

    modulus: int
    tail_length: int
    cycle_length: int
    visited: list[int]  # visited[tail_length + cycle_length] == visited[tail_length]

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "tail_length": self.tail_length,
            "cycle_length": self.cycle_length,
            "visited": list(self.visited),
        }


def orbit_mod_p(rmap: ReducedMap, start: int) -> ModOrbit:
    """Exhaustive forward orbit from ``start`` (0..p encoding, p = infinity).

    Requires good reduction; terminates within p+1 steps since P^1(F_p) is
    finite.
    """
    p = rmap.modulus
    if not rmap.good:
        raise BadReductionError("orbit_mod_p requires good reduction")
    if not 0 <= start <= p:
        raise ValueError(f"start must lie in 0..{p}")
    step_at = [-1] * (p + 1)
    visited = [start]
    step_at[start] = 0
    t = start
    for step in range(1, p + 2):
        t = rmap.eval_point(t)
        visited.append(t)
        if step_at[t] >= 0:
            tail = step_at[t]
            return ModOrbit(p, tail, step - tail, visited)
        step_at[t] = step
    raise AssertionError("orbit failed to close in p+1 steps")  # unreachable


def point_mod_p(num: int, den: int, prime: int) -> int:
    """Reduce a coprime projective point (num : den) to the 0..p encoding."""
    if math.gcd(num, den) > 1:
        raise ValueError("point_mod_p expects coprime coordinates")
    n, d = num % prime, den % prime
    if d == 0:
        return prime
    return n * pow(d, -1, prime) % prime


def good_reduction_origin_valuations(
    map_: RationalMap, prime: int, n: int
) -> list[tuple[float, float]]:
    """[(v_p(p_k(0)), v_p(q_k(0)))] for k <= n at a good-reduction prime.

    Verifies that each pair has minimum valuation 0 (the normalized-iterates
    property); a violation raises InvariantViolationError.  A zero value
    reports math.inf.
    """
    if not has_good_reduction(map_, prime):
        raise BadReductionError(f"bad reduction at {prime}")
    out = []
    for u, v in map_.origin_values(n):
        vu = math.inf if u == 0 else valuation(u, prime)
        vv = math.inf if v == 0 else valuation(v, prime)
        if min(vu, vv) != 0:
            raise InvariantViolationError(
                f"iterate pair not normalized at {prime}: valuations ({vu}, {vv})"
            )
        out.append((vu, vv))
    return out
