"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value is stored as its canonical representative in the power basis
1, x, ..., x^(phi(m)-1) of Q[x]/(Phi_m(x)), where x stands for the primitive
m-th root of unity exp(2*pi*i/m) and Phi_m is the m-th cyclotomic polynomial.
Coefficients are `fractions.Fraction`, so equality (in particular equality to
zero) is decidable and exact.  Values with different conductors are combined
by lifting both to the least common multiple conductor; the lift
zeta_m -> zeta_M^(M/m) is a field embedding, so canonical representatives of
equal values agree after lifting.

Phi_m is computed by iterated exact division of x^m - 1 by Phi_d over the
proper divisors d of m.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

_PHI_CACHE: dict[int, list[int]] = {}
# m -> list of integer coefficient rows; row k is x^(phi(m)+k) reduced mod Phi_m
_ROW_CACHE: dict[int, list[list[int]]] = {}


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Divide integer polynomials exactly (coefficients ascending)."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == 0:
            continue
        assert c % lead == 0
        f = c // lead
        quot[k - dd] = f
        for i, d in enumerate(den):
            num[k - dd + i] -= f * d
    assert all(c == 0 for c in num), "inexact cyclotomic division"
    return quot


def cyclotomic_polynomial(m: int) -> list[int]:
    """Integer coefficients of Phi_m, ascending; Phi_1 = x - 1."""
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = _PHI_CACHE.get(m)
    if poly is None:
        poly = [-1] + [0] * (m - 1) + [1]
        for d in range(1, m):
            if m % d == 0:
                poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
        _PHI_CACHE[m] = poly
    return poly


def _reduction_rows(m: int) -> list[list[int]]:
    rows = _ROW_CACHE.get(m)
    if rows is None:
        phi_poly = cyclotomic_polynomial(m)
        deg = len(phi_poly) - 1
        top = max(m - 1, 2 * deg - 2)
        rows = []
        if deg >= 1 and top >= deg:
            cur = [-c for c in phi_poly[:deg]]  # x^deg mod Phi_m
            rows.append(cur)
            for _ in range(deg + 1, top + 1):
                nxt = [0] + cur[:-1]
                head = cur[-1]
                if head:
                    xrow = rows[0]
                    for i in range(deg):
                        nxt[i] += head * xrow[i]
                cur = nxt
                rows.append(cur)
        _ROW_CACHE[m] = rows
    return rows


def _reduce_int_poly(vec: list[int], m: int, deg: int) -> list[int]:
    """Reduce an integer polynomial (ascending, any length) mod Phi_m."""
    head = vec[:deg] + [0] * (deg - len(vec))
    if len(vec) > deg:
        rows = _reduction_rows(m)
        for k in range(deg, len(vec)):
            c = vec[k]
            if c:
                row = rows[k - deg]
                for i in range(deg):
                    head[i] += c * row[i]
    return head


def _int_vector(coeffs: tuple[Fraction, ...]) -> tuple[list[int], int]:
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


class CycNum:
    """An element of Q(zeta_m), reduced mod Phi_m."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: tuple[Fraction, ...]):
        self.m = m
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, value) -> "CycNum":
        return cls(1, (Fraction(value),))

    @classmethod
    def zero(cls) -> "CycNum":
        return cls(1, (Fraction(0),))

    @classmethod
    def root_of_unity(cls, m: int, j: int) -> "CycNum":
        """zeta_m^j as a canonical element of Q(zeta_m)."""
        j %= m
        deg = len(cyclotomic_polynomial(m)) - 1
        vec = [0] * (j + 1)
        vec[j] = 1
        head = _reduce_int_poly(vec, m, deg)
        return cls(m, tuple(Fraction(c) for c in head))

    @classmethod
    def from_zeta_powers(cls, m: int, powers: list[int], scale: Fraction = Fraction(1)) -> "CycNum":
        """sum_j powers[j] * zeta_m^j, times a rational scale."""
        deg = len(cyclotomic_polynomial(m)) - 1
        head = _reduce_int_poly(list(powers), m, deg)
        return cls(m, tuple(Fraction(c) * scale for c in head))

    # -- structure ---------------------------------------------------------

    def lift(self, target: int) -> "CycNum":
        """Re-express the value in Q(zeta_target); target must be a multiple of m."""
        if target == self.m:
            return self
        if target % self.m:
            raise ValueError("conductor lift requires a multiple")
        step = target // self.m
        deg = len(cyclotomic_polynomial(target)) - 1
        nums, den = _int_vector(self.coeffs)
        vec = [0] * ((len(nums) - 1) * step + 1) if nums else [0]
        for j, c in enumerate(nums):
            if c:
                vec[j * step] += c
        head = _reduce_int_poly(vec, target, deg)
        return CycNum(target, tuple(Fraction(c, den) for c in head))

    def _pair(self, other: "CycNum") -> tuple["CycNum", "CycNum"]:
        if self.m == other.m:
            return self, other
        m = math.lcm(self.m, other.m)
        return self.lift(m), other.lift(m)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.coeffs[0]

    def conjugate(self) -> "CycNum":
        """Complex conjugation, zeta_m -> zeta_m^(m-1)."""
        nums, den = _int_vector(self.coeffs)
        vec = [0] * self.m
        for j, c in enumerate(nums):
            if c:
                vec[(self.m - j) % self.m] += c
        deg = len(cyclotomic_polynomial(self.m)) - 1
        head = _reduce_int_poly(vec, self.m, deg)
        return CycNum(self.m, tuple(Fraction(c, den) for c in head))

    def is_real(self) -> bool:
        return self.conjugate() == self

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.m)
        total = 0j
        power = 1 + 0j
        for c in self.coeffs:
            if c:
                total += float(c) * power
            power *= z
        return total

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return CycNum(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.m, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return CycNum(a.m, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CycNum.zero()
            f = Fraction(other)
            return CycNum(self.m, tuple(c * f for c in self.coeffs))
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._pair(other)
        if a.is_zero() or b.is_zero():
            return CycNum.zero()
        na, da = _int_vector(a.coeffs)
        nb, db = _int_vector(b.coeffs)
        conv = [0] * (len(na) + len(nb) - 1)
        for i, x in enumerate(na):
            if x:
                for j, y in enumerate(nb):
                    if y:
                        conv[i + j] += x * y
        head = _reduce_int_poly(conv, a.m, len(a.coeffs))
        den = da * db
        return CycNum(a.m, tuple(Fraction(c, den) for c in head))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # cross-conductor equality makes hashing unreliable

    # -- rendering ---------------------------------------------------------

    def coeff_string(self) -> str:
        """Exact rendering "c0,c1,.../m" of the reduced coefficient vector."""
        return ",".join(str(c) for c in self.coeffs) + "/" + str(self.m)

    def approx_string(self, digits: int = 12) -> str:
        z = complex(self)
        re = format(z.real, f".{digits}g")
        im = format(z.imag, f".{digits}g")
        return f"{re}{'+' if z.imag >= 0 else ''}{im}j"

    def __repr__(self):
        if self.is_rational():
            return f"CycNum({self.coeffs[0]})"
        return f"CycNum(m={self.m}, {list(self.coeffs)})"


def _coerce(value):
    if isinstance(value, CycNum):
        return value
    if isinstance(value, (int, Fraction)):
        return CycNum.rational(value)
    return NotImplemented
