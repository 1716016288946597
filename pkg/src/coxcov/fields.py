"""Exact coefficient fields: the rationals and small real extensions Q(theta).

Rational scalars are plain ``fractions.Fraction``; extension scalars are
``AlgNum`` instances holding coordinates in the power basis 1, theta, ...,
theta^(deg-1).  All arithmetic is exact.  Irreducibility of the catalogued
minimal polynomials is asserted, not computed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union


def _poly_divmod(num, den):
    """Divide rational coefficient lists (low-to-high), exact Euclid step."""
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    dl = len(den) - 1
    dlead = den[-1]
    for i in range(len(num) - 1, dl - 1, -1):
        c = num[i] / dlead
        q[i - dl] = c
        if c:
            for j in range(dl + 1):
                num[i - dl + j] -= c * den[j]
    while num and not num[-1]:
        num.pop()
    return q, num


class Field:
    """Q (``degree == 1``) or Q(theta) with a monic integer minimal polynomial.

    ``min_poly`` is given low-to-high including the leading 1.
    ``embedding`` is a float locating which real root theta denotes; it is
    used only for documentation/positivity reporting, never for arithmetic.
    """

    def __init__(self, name: str, min_poly: Sequence[int] = (0, 1),
                 embedding: float = 0.0):
        self.name = name
        self.min_poly = tuple(Fraction(c) for c in min_poly)
        assert self.min_poly[-1] == 1, "minimal polynomial must be monic"
        self.degree = len(self.min_poly) - 1
        self.embedding = embedding
        if self.degree > 1:
            # theta^k for k = degree .. 2*degree-2 in the power basis
            self._pow_table = []
            cur = [-c for c in self.min_poly[:-1]]
            self._pow_table.append(tuple(cur))
            for _ in range(self.degree - 2):
                cur = [Fraction(0)] + list(cur)
                top = cur[self.degree] if len(cur) > self.degree else Fraction(0)
                cur = cur[:self.degree]
                if top:
                    red = self._pow_table[0]
                    cur = [cur[i] + top * red[i] for i in range(self.degree)]
                self._pow_table.append(tuple(cur))
        self._zero = None
        self._one = None

    @property
    def zero(self) -> "Scalar":
        if self._zero is None:
            self._zero = self.scalar(0)
        return self._zero

    @property
    def one(self) -> "Scalar":
        if self._one is None:
            self._one = self.scalar(1)
        return self._one

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def scalar(self, *coords) -> "Scalar":
        """Build a scalar from rational coordinates (padded with zeros)."""
        if self.degree == 1:
            assert len(coords) == 1
            return Fraction(coords[0])
        cs = [Fraction(c) for c in coords]
        cs += [Fraction(0)] * (self.degree - len(cs))
        return AlgNum(self, tuple(cs))

    def coerce(self, x) -> "Scalar":
        if isinstance(x, AlgNum):
            assert x.field == self
            return x
        if self.degree == 1:
            return Fraction(x)
        return self.scalar(Fraction(x))

    def coords(self, x) -> tuple:
        """Coordinates of a scalar in the power basis, length = degree."""
        if isinstance(x, AlgNum):
            return x.coords
        if self.degree == 1:
            return (Fraction(x),)
        return (Fraction(x),) + (Fraction(0),) * (self.degree - 1)

    def theta(self) -> "Scalar":
        assert self.degree > 1
        return self.scalar(0, 1)

    def approx(self, x) -> float:
        """Float value in the designated real embedding (documentation only)."""
        cs = self.coords(x)
        return float(sum(float(c) * self.embedding ** i for i, c in enumerate(cs)))

    def _reduce(self, coeffs):
        """Reduce a coordinate list of length <= 2*degree-1 modulo min_poly."""
        d = self.degree
        out = list(coeffs[:d]) + [Fraction(0)] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = self._pow_table[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)


QQ = Field("QQ")

# sqrt(5) > 0; houses H3, H4, I2(5) via 2cos(pi/5) = (1+theta)/2
QSQRT5 = Field("Q(sqrt5)", (-5, 0, 1), embedding=2.2360679774997896)

# theta = 2cos(pi/8), minimal polynomial t^4 - 4t^2 + 2
QCOSPI8 = Field("Q(2cos(pi/8))", (2, 0, -4, 0, 1), embedding=1.8477590650225735)

# theta = 2cos(pi/7), minimal polynomial t^3 - t^2 - 2t + 1
QCOSPI7 = Field("Q(2cos(pi/7))", (1, -2, -1, 1), embedding=1.8019377358048383)


class AlgNum:
    """Element of a simple extension, coordinates in the power basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords: tuple):
        self.field = field
        self.coords = coords

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, AlgNum):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + "+".join(f"{c}*t^{i}" if i else f"{c}"
                              for i, c in enumerate(self.coords) if c) + ")" \
            if any(self.coords) else "(0)"

    def __neg__(self):
        return AlgNum(self.field, tuple(-c for c in self.coords))

    def __add__(self, other):
        if isinstance(other, AlgNum):
            return AlgNum(self.field, tuple(a + b for a, b in
                                            zip(self.coords, other.coords)))
        if isinstance(other, (int, Fraction)):
            cs = list(self.coords)
            cs[0] += other
            return AlgNum(self.field, tuple(cs))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgNum):
            a, b = self.coords, other.coords
            d = self.field.degree
            prod = [Fraction(0)] * (2 * d - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        if bj:
                            prod[i + j] += ai * bj
            return AlgNum(self.field, self.field._reduce(prod))
        if isinstance(other, (int, Fraction)):
            return AlgNum(self.field, tuple(c * other for c in self.coords))
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "AlgNum":
        if not self:
            raise ZeroDivisionError("zero divisor")
        # extended Euclid of the coordinate polynomial with min_poly over Q[t]
        r0 = list(self.field.min_poly)
        r1 = list(self.coords)
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            s = list(s0)
            s += [Fraction(0)] * (len(q) + len(s1) - 1 - len(s))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        s[i + j] -= qi * sj
            r0, r1 = r1, r
            s0, s1 = s1, s
        assert r1, "minimal polynomial not coprime with element"
        inv = [c / r1[0] for c in s1]
        return AlgNum(self.field, self.field._reduce(inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("zero divisor")
            return AlgNum(self.field, tuple(c / other for c in self.coords))
        if isinstance(other, AlgNum):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other


Scalar = Union[Fraction, AlgNum]


def field_arithmetic(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact binary field operation, op in '+', '-', '*', '/'."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if not b:
            raise ZeroDivisionError("zero divisor")
        if isinstance(b, Fraction) and not isinstance(a, AlgNum):
            return Fraction(a) / b
        return a / b
    raise ValueError(f"unknown op {op!r}")


def scalar_inverse(a: Scalar) -> Scalar:
    if not a:
        raise ZeroDivisionError("zero divisor")
    if isinstance(a, AlgNum):
        return a.inverse()
    return 1 / Fraction(a)
