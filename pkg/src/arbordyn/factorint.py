"""Integer primality, perfect squares, and factorization.

Factoring runs trial division up to a configurable bound, then Brent's cycle
variant of Pollard's rho under an iteration budget.  Primality is Miller-Rabin:
deterministic with the fixed witness set below the proven bound
3317044064679887385961981 (~3.3e24), and 64 seeded random rounds above it, in
which case a passing number is only ever labeled a *probable* prime.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

# Smallest composite not caught by the first twelve prime witnesses.
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_sieve_cache: dict[int, list[int]] = {}


def primes_below(bound: int) -> list[int]:
    """All primes < bound by a cached sieve of Eratosthenes."""
    if bound in _sieve_cache:
        return _sieve_cache[bound]
    if bound <= 2:
        return []
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, bound, p)))
    out = [i for i in range(bound) if sieve[i]]
    _sieve_cache[bound] = out
    return out


def _mr_round(n: int, a: int, d: int, r: int) -> bool:
    """One Miller-Rabin round; True means 'n may be prime'."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int, seed: int = 0, rounds: int = 64) -> bool:
    """Miller-Rabin primality test.

    Deterministic (a genuine primality proof) for n below ~3.3e24; above that
    bound the answer True only means "probable prime" after ``rounds`` seeded
    random witnesses.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _MR_DETERMINISTIC_BOUND:
        return all(_mr_round(n, a, d, r) for a in _MR_WITNESSES)
    rng = random.Random(seed)
    return all(
        _mr_round(n, rng.randrange(2, n - 1), d, r) for _ in range(rounds)
    )


def is_prime_certified(n: int) -> bool:
    """True only when primality is proven (below the deterministic bound)."""
    return n < _MR_DETERMINISTIC_BOUND and is_probable_prime(n)


def is_perfect_square(n: int) -> tuple[bool, int | None]:
    """Whether n = k*k for an integer k >= 0; returns (flag, k or None)."""
    if n < 0:
        return False, None
    k = math.isqrt(n)
    if k * k == n:
        return True, k
    return False, None


def square_bracket(n: int) -> tuple[int, bool]:
    """(isqrt(|n|), n is a perfect square) for witness records."""
    k = math.isqrt(abs(n))
    return k, k * k == abs(n)


@dataclass(frozen=True)
class FactorBudget:
    """Effort knobs for factor_integer.

    trial_bound: trial-divide by all primes below this bound.
    rho_iterations: total Brent-rho iteration budget across all splits.
    seed: seeds rho parameters and any Miller-Rabin rounds beyond the
          deterministic range, for reproducibility.
    """

    trial_bound: int = 10 ** 6
    rho_iterations: int = 10 ** 8
    seed: int = 0


#: cofactor classification in a Factorization
UNIT = "unit"
PROBABLE_PRIME = "probable_prime"
COMPOSITE_UNFACTORED = "composite_unfactored"


@dataclass
class Factorization:
    """sign * prod(p**e) * cofactor reconstructs the input exactly.

    ``factors`` holds only certified primes (strictly increasing).  Anything
    that could not be certified stays in ``cofactor``: a single large probable
    prime (status "probable_prime") or an unsplit/unclassified remainder
    (status "composite_unfactored").
    """

    sign: int
    factors: list[tuple[int, int]] = field(default_factory=list)
    cofactor: int = 1
    cofactor_status: str = UNIT

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p ** e
        return out * self.cofactor

    def prime_list(self) -> list[int]:
        return [p for p, _ in self.factors]

    def to_dict(self) -> dict:
        return {
            "sign": self.sign,
            "factors": [[p, e] for p, e in self.factors],
            "cofactor": self.cofactor,
            "cofactor_status": self.cofactor_status,
        }

    def format(self) -> str:
        parts = []
        if self.sign < 0:
            parts.append("-1")
        parts += [f"{p}^{e}" if e > 1 else f"{p}" for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor}:{self.cofactor_status}]")
        return " * ".join(parts) if parts else "1"


def _brent_rho(n: int, rng: random.Random, budget: int) -> tuple[int | None, int]:
    """One Brent-rho attempt on odd composite n.

    Returns (factor or None, iterations consumed).  The factor may be n itself
    on an unlucky parameter choice; the caller retries.
    """
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g, r, q = 1, 1, 1
    used = 0
    x = y
    ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            used += min(m, r - k)
            g = math.gcd(q, n)
            k += m
        r *= 2
        if g == 1 and used > budget:
            return None, used
    if g == n:
        # backtrack one step at a time
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            used += 1
            if used > budget:
                return None, used
    return (g if g != n else None), used


def factor_integer(n: int, budget: FactorBudget | None = None) -> Factorization:
    """Factor ``n`` within an effort budget.

    Trial division below ``budget.trial_bound``, then recursive Brent-rho
    splitting within ``budget.rho_iterations``.  Certified primes go to the
    factor list; on budget exhaustion (or a cofactor too large to certify) the
    remainder is reported in ``cofactor`` with an honest status label.
    Raises ValueError for n = 0.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    if budget is None:
        budget = FactorBudget()
    sign = 1 if n > 0 else -1
    n = abs(n)
    counts: dict[int, int] = {}
    for p in primes_below(budget.trial_bound):
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    rng = random.Random(budget.seed)
    remaining = budget.rho_iterations
    leftovers: list[int] = []  # pieces we could not fully certify
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m, seed=budget.seed):
            if m < _MR_DETERMINISTIC_BOUND:
                counts[m] = counts.get(m, 0) + 1
            else:
                leftovers.append(m)
            continue
        split = None
        while split is None and remaining > 0:
            split, used = _brent_rho(m, rng, remaining)
            remaining -= used
        if split is None or split in (1, m):
            leftovers.append(m)  # budget exhausted on a known composite
            continue
        stack.append(split)
        stack.append(m // split)

    factors = sorted(counts.items())
    if not leftovers:
        cofactor, status = 1, UNIT
    elif len(leftovers) == 1 and is_probable_prime(leftovers[0], seed=budget.seed):
        cofactor, status = leftovers[0], PROBABLE_PRIME
    else:
        cofactor = math.prod(leftovers)
        status = COMPOSITE_UNFACTORED
    return Factorization(sign=sign, factors=factors, cofactor=cofactor, cofactor_status=status)


def valuation(n: int, p: int) -> int:
    """v_p(n) for n != 0."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def small_factor_counts(n: int) -> dict[int, int]:
    """Prime factorization of |n| > 0 by simple trial division.

    For the modest integers used in divisor lattices and Moebius values;
    no budget handling.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    counts: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            counts[d] = counts.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        counts[n] = counts.get(n, 0) + 1
    return counts


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    if n < 1:
        raise ValueError("divisors defined for n >= 1")
    out = [1]
    for p, e in small_factor_counts(n).items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


def mobius(n: int) -> int:
    """Moebius function: 0 on non-squarefree n, else (-1)^(number of primes)."""
    if n < 1:
        raise ValueError("mobius defined for n >= 1")
    counts = small_factor_counts(n)
    if any(e > 1 for e in counts.values()):
        return 0
    return -1 if len(counts) % 2 else 1


def radical(n: int) -> int:
    """Product of the distinct primes dividing n >= 1."""
    if n < 1:
        raise ValueError("radical defined for n >= 1")
    out = 1
    for p in small_factor_counts(n):
        out *= p
    return out
