"""Dense univariate polynomials with arbitrary-precision integer coefficients.

Coefficients are stored low to high: ``coeffs[i]`` is the coefficient of
``z**i``.  The zero polynomial is the empty tuple; otherwise the leading
coefficient is nonzero.  Degrees in this package stay modest (at most a few
thousand) while coefficients grow to thousands of bits, so a dense
representation with Python integers is the right trade-off.

Resultants use the subresultant polynomial remainder sequence, which stays in
integer arithmetic throughout and avoids the coefficient blow-up of the
naive Euclidean scheme.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import ZeroPolynomialError

Scalar = Union[int, Fraction]


class IntPoly:
    """Immutable dense polynomial over the integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient expected, got {c!r}")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, k: int) -> "IntPoly":
        """c * z**k"""
        if c == 0:
            return cls(())
        return cls((0,) * k + (c,))

    @classmethod
    def variable(cls) -> "IntPoly":
        return cls((0, 1))

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        """Coefficient of z**k (0 beyond the degree)."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def content(self) -> int:
        """gcd of the coefficients, nonnegative; 0 for the zero polynomial."""
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def max_coeff_bits(self) -> int:
        return max((abs(c).bit_length() for c in self.coeffs), default=0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            if other == 0:
                return IntPoly(())
            return IntPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        if len(a) > len(b):
            a, b = b, a
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    def __rmul__(self, other: int) -> "IntPoly":
        return self.__mul__(other)

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPoly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __call__(self, x: Scalar) -> Scalar:
        """Evaluate by Horner's rule; exact for int and Fraction arguments."""
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def primitive(self) -> "IntPoly":
        """Divide out the content.  Sign of the leading coefficient is kept."""
        c = self.content()
        if c in (0, 1):
            return self
        return IntPoly(tuple(x // c for x in self.coeffs))

    def monic_normalize(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        p = self.primitive()
        return -p if p.lc < 0 else p

    def scalar_exact_div(self, c: int) -> "IntPoly":
        """Divide every coefficient by c, which must divide exactly."""
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero")
        out = []
        for x in self.coeffs:
            q, r = divmod(x, c)
            if r:
                raise ValueError("inexact scalar division")
            out.append(q)
        return IntPoly(out)

    def exact_div(self, g: "IntPoly") -> "IntPoly":
        """Exact quotient self / g in Z[z]; raises if it does not divide."""
        if g.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return IntPoly(())
        q, r = fraction_divmod(self, g)
        if any(c != 0 for c in r):
            raise ValueError("polynomial division is not exact")
        out = []
        for c in q:
            if c.denominator != 1:
                raise ValueError("quotient is not integral")
            out.append(c.numerator)
        return IntPoly(out)

    def reverse(self, n: int | None = None) -> "IntPoly":
        """z**n * f(1/z) for n >= degree (defaults to the degree)."""
        if n is None:
            n = max(self.degree, 0)
        if n < self.degree:
            raise ValueError("reversal order below degree")
        padded = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return IntPoly(tuple(reversed(padded)))

    def __repr__(self) -> str:
        return f"IntPoly({format_poly(self)})"


def format_poly(f: IntPoly, var: str = "z") -> str:
    """Render a polynomial like '-97*z^4 - 196*z^2 + 9604'."""
    if f.is_zero:
        return "0"
    parts = []
    for i in reversed(range(len(f.coeffs))):
        c = f.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            term = f"{mag}"
        elif i == 1:
            term = f"{var}" if mag == 1 else f"{mag}*{var}"
        else:
            term = f"{var}^{i}" if mag == 1 else f"{mag}*{var}^{i}"
        parts.append((sign, term))
    sign0, term0 = parts[0]
    text = ("-" if sign0 == "-" else "") + term0
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


def fraction_divmod(f: IntPoly, g: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder of f by g over Q, as Fraction coefficient lists."""
    if g.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    rem = [Fraction(c) for c in f.coeffs]
    dg = g.degree
    glc = Fraction(g.lc)
    if len(rem) - 1 < dg:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - dg)
    for k in reversed(range(len(quot))):
        c = rem[k + dg] / glc
        quot[k] = c
        if c:
            for i, gc in enumerate(g.coeffs):
                rem[k + i] -= c * gc
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def pseudo_divmod(f: IntPoly, g: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Pseudo-division: lc(g)**(deg f - deg g + 1) * f = q*g + r, deg r < deg g.

    Pure integer arithmetic; requires deg f >= deg g >= 0.
    """
    if g.is_zero:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    df, dg = f.degree, g.degree
    if df < dg:
        raise ValueError("pseudo-division needs deg f >= deg g")
    c = g.lc
    q = IntPoly(())
    r = f
    e = df - dg + 1
    while not r.is_zero and r.degree >= dg:
        t = IntPoly.monomial(r.lc, r.degree - dg)
        q = c * q + t
        r = c * r - t * g
        e -= 1
    scale = c ** e
    return scale * q, scale * r


def pseudo_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    return pseudo_divmod(f, g)[1]


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """gcd in Z[z], normalized primitive with positive leading coefficient."""
    if f.is_zero:
        return g.monic_normalize()
    if g.is_zero:
        return f.monic_normalize()
    cont = math.gcd(f.content(), g.content())
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = pseudo_rem(a, b)
        a, b = b, r.primitive()
    return (cont * a).monic_normalize()


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g), exact, via the subresultant remainder sequence.

    Raises ZeroPolynomialError on zero input.
    """
    if f.is_zero or g.is_zero:
        raise ZeroPolynomialError("resultant of zero polynomial")
    m, n = f.degree, g.degree
    if m == 0 and n == 0:
        return 1
    if m == 0:
        return f.lc ** n
    if n == 0:
        return g.lc ** m
    sign = 1
    a, b = f, g
    if a.degree < b.degree:
        a, b = b, a
        if (m & 1) and (n & 1):
            sign = -sign
    gg, hh = 1, 1
    while True:
        da, db = a.degree, b.degree
        delta = da - db
        if (da & 1) and (db & 1):
            sign = -sign
        r = pseudo_rem(a, b)
        if r.is_zero:
            return 0
        a = b
        b = r.scalar_exact_div(gg * hh ** delta)
        gg = a.lc
        if delta:
            num = gg ** delta
            den = hh ** (delta - 1)
            hh = num // den
        if b.degree <= 0:
            break
    # b is a nonzero constant, a has degree >= 1
    da = a.degree
    return sign * (b.lc ** da // hh ** (da - 1))


def discriminant(f: IntPoly) -> Fraction:
    """Disc(f) = (-1)^(n(n-1)/2) * Res(f, f') / lc(f) as an exact rational."""
    n = f.degree
    if n < 1:
        raise ZeroPolynomialError("discriminant of a constant polynomial")
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return Fraction(sign * res, f.lc)


def squarefree_part(f: IntPoly) -> IntPoly:
    """f / gcd(f, f'), made primitive with positive leading coefficient."""
    if f.is_zero:
        raise ZeroPolynomialError("squarefree part of zero polynomial")
    if f.degree == 0:
        return IntPoly.one()
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return f.monic_normalize()
    return f.exact_div(g).monic_normalize()
