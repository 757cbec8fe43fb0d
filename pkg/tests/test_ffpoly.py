import itertools
import random

import pytest

from arbordyn.errors import CompositeModulusError
from arbordyn.ffpoly import PrimeFieldPoly, ffpoly_is_irreducible, pow_mod
from arbordyn.intpoly import IntPoly


def brute_force_irreducible(f: PrimeFieldPoly) -> bool:
    """Oracle: search for a monic divisor of degree 1..deg(f)//2."""
    p = f.modulus
    for deg in range(1, f.degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            g = PrimeFieldPoly(p, tuple(tail) + (1,))
            if f.mod(g).is_zero:
                return False
    return True


class TestIrreducibility:
    def test_quadratic_examples(self):
        assert ffpoly_is_irreducible(PrimeFieldPoly.make(3, [1, 0, 1]))
        assert ffpoly_is_irreducible(PrimeFieldPoly.make(3, [-98, 0, 1]))
        assert not ffpoly_is_irreducible(PrimeFieldPoly.make(5, [-1, 0, 1]))

    def test_linear_always_irreducible(self):
        assert ffpoly_is_irreducible(PrimeFieldPoly.make(7, [3, 2]))

    def test_composite_modulus_rejected(self):
        with pytest.raises(CompositeModulusError):
            PrimeFieldPoly.make(6, [1, 0, 1])

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_exhaustive_agreement_small_fields(self, p):
        for deg in range(1, 5):
            for tail in itertools.product(range(p), repeat=deg):
                f = PrimeFieldPoly(p, tuple(tail) + (1,))
                assert ffpoly_is_irreducible(f) == brute_force_irreducible(f)

    def test_scaling_invariance(self):
        rng = random.Random(1)
        for _ in range(40):
            p = rng.choice([3, 5, 7, 11])
            deg = rng.randint(1, 4)
            coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
            f = PrimeFieldPoly(p, tuple(coeffs))
            c = rng.randrange(2, p) if p > 2 else 1
            assert ffpoly_is_irreducible(f) == ffpoly_is_irreducible(f.scale(c))


class TestFieldArithmetic:
    def test_divmod_identity(self):
        rng = random.Random(2)
        for _ in range(60):
            p = rng.choice([3, 5, 13])
            f = PrimeFieldPoly.make(p, [rng.randrange(p) for _ in range(6)] + [1])
            g = PrimeFieldPoly.make(p, [rng.randrange(p) for _ in range(2)] + [1])
            q, r = f.divmod(g)
            assert q.mul(g).add(r).coeffs == f.coeffs
            assert r.is_zero or r.degree < g.degree

    def test_pow_mod(self):
        p = 5
        f = PrimeFieldPoly.make(p, [1, 0, 1])
        z = PrimeFieldPoly.make(p, [0, 1])
        # z^(p^2) = z mod any irreducible quadratic
        frob2 = pow_mod(pow_mod(z, p, f), p, f)
        assert frob2.coeffs == z.coeffs

    def test_reduction_from_intpoly(self):
        f = PrimeFieldPoly.from_intpoly(IntPoly([-98, 0, 1]), 3)
        assert f.coeffs == (1, 0, 1)

    def test_gcd(self):
        p = 7
        a = PrimeFieldPoly.make(p, [6, 1]).mul(PrimeFieldPoly.make(p, [1, 1]))
        b = PrimeFieldPoly.make(p, [6, 1]).mul(PrimeFieldPoly.make(p, [2, 1]))
        assert a.gcd(b).coeffs == (6, 1)
