"""Character sums over GF(q) and GF(q^2), and finite-field hypergeometric
functions.

Everything here is a plain sum over field elements, evaluated exactly in a
cyclotomic field.  The two central families are the Legendre sums

    P_gamma(a) = (1/q) * sum over x != 0 of gamma(x) * phi(x^2 - 2ax + 1)

and the Soto-Andrade sums

    R_beta(a) = (1/(q(q-1))) * sum over r in F_(q^2)* of
                beta(r) * phi((r + r^q)^2 - 2(a+1) r^(1+q)),

with phi the quadratic character.  Together with the shifted trivial sum
they form an orthogonal basis of the space of functions on F_q under the
weighted Hermitian form whose weight is q+1 at the two points +-1 and 1
elsewhere.  Greene's hypergeometric sums are implemented directly from
their defining sum and inductive product formula, and the Katz-normalized
hypergeometric sum from its Gauss-sum expression.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import CycNum
from .errors import (
    ArityMismatchError,
    DomainMismatchError,
    NotIntegralParametersError,
    TrivialCharacterError,
)
from .fields import FieldCtx, MultCharB, MultCharFq

MAX_HYPERGEOMETRIC_DEPTH = 4  # up to 4F3; nothing deeper is needed


class CharacterSums:
    """Evaluator with per-field caches for the sum families."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.q = ctx.q
        self._legendre_cache: dict[tuple[int, int], CycNum] = {}
        self._soto_cache: dict[tuple[int, int], CycNum] = {}

    # -- the measure and the inner product ------------------------------------

    def measure(self, x: int) -> int:
        """Weight q+1 at +-1 and 1 elsewhere; total mass 3q."""
        ctx = self.ctx
        return self.q + 1 if x == 1 or x == ctx.neg(1) else 1

    def l2_inner(self, f1: list[CycNum], f2: list[CycNum]) -> CycNum:
        if len(f1) != self.q or len(f2) != self.q:
            raise DomainMismatchError("functions must be indexed by the q field elements")
        acc = CycNum.zero()
        for x in range(self.q):
            acc = acc + f1[x] * f2[x].conjugate() * self.measure(x)
        return acc

    # -- Legendre and Soto-Andrade sums ----------------------------------------

    def legendre_sum(self, gamma: MultCharFq, a: int) -> CycNum:
        key = (gamma.exponent, a)
        val = self._legendre_cache.get(key)
        if val is None:
            ctx = self.ctx
            q = self.q
            two_a = ctx.add(a, a)
            vec = [0] * (q - 1)
            for x in range(1, q):
                arg = ctx.add(ctx.sub(ctx.mul(x, x), ctx.mul(two_a, x)), 1)
                s = ctx.phi_int(arg)
                if s:
                    vec[(gamma.exponent * ctx.log[x]) % (q - 1)] += s
            val = CycNum.from_zeta_powers(q - 1, vec, Fraction(1, q))
            self._legendre_cache[key] = val
        return val

    def legendre_phi(self, a: int) -> Fraction:
        """P_phi(a) as an exact rational (the quadratic-character Legendre sum)."""
        return self.legendre_sum(self.ctx.quadratic_char(), a).as_fraction()

    def soto_andrade_sum(self, beta: MultCharB, a: int) -> CycNum:
        key = (beta.exponent, a)
        val = self._soto_cache.get(key)
        if val is None:
            ctx = self.ctx
            q = self.q
            factor = ctx.mul(ctx.embed_int(2), ctx.add(a, 1))
            vec = [0] * (q + 1)
            for r in ctx.q2_units():
                tr = ctx.q2_trace(r)
                nm = ctx.q2_norm(r)
                arg = ctx.sub(ctx.mul(tr, tr), ctx.mul(factor, nm))
                s = ctx.phi_int(arg)
                if s:
                    vec[(beta.exponent * ctx.log2[r]) % (q + 1)] += s
            val = CycNum.from_zeta_powers(q + 1, vec, Fraction(1, q * (q - 1)))
            self._soto_cache[key] = val
        return val

    # -- the orthogonal basis ----------------------------------------------------

    def orthogonal_basis(self) -> list[tuple[str, list[CycNum], Fraction]]:
        """(name, values over F_q, expected squared norm) for each basis element:
        the shifted trivial sum, P_phi, the P_gamma and the R_beta."""
        ctx = self.ctx
        q = self.q
        eps = ctx.trivial_char()
        shift = Fraction(q - 1, q)
        out = [
            (
                "P_eps_shifted",
                [self.legendre_sum(eps, a) - shift for a in range(q)],
                Fraction(q * q - 1, q),
            ),
            (
                "P_phi",
                [self.legendre_sum(ctx.quadratic_char(), a) for a in range(q)],
                Fraction(q * q - 1, q * q),
            ),
        ]
        for gamma in ctx.gamma_set():
            out.append(
                (
                    f"P_gamma[{gamma.exponent}]",
                    [self.legendre_sum(gamma, a) for a in range(q)],
                    Fraction(q - 1, q),
                )
            )
        for beta in ctx.beta_set():
            out.append(
                (
                    f"R_beta[{beta.exponent}]",
                    [self.soto_andrade_sum(beta, a) for a in range(q)],
                    Fraction(q + 1, q),
                )
            )
        return out

    # -- hypergeometric sums -------------------------------------------------------

    def greene_2f1(self, g0: MultCharFq, g1: MultCharFq, g2: MultCharFq, x: int) -> CycNum:
        """eps(x) * (g1 g2)(-1)/q * sum over y of g1(y) (g2/g1)(1-y) g0^(-1)(1-xy)."""
        if x == 0:
            return CycNum.zero()
        ctx = self.ctx
        q = self.q
        k0, k1, k2 = g0.exponent, g1.exponent, g2.exponent
        vec = [0] * (q - 1)
        for y in range(q):
            one_minus_y = ctx.sub(1, y)
            one_minus_xy = ctx.sub(1, ctx.mul(x, y))
            if y == 0 or one_minus_y == 0 or one_minus_xy == 0:
                continue
            e = (k1 * ctx.log[y] + (k2 - k1) * ctx.log[one_minus_y] - k0 * ctx.log[one_minus_xy]) % (q - 1)
            vec[e] += 1
        sign = -1 if (k1 + k2) * ((q - 1) // 2) % (q - 1) else 1
        return CycNum.from_zeta_powers(q - 1, vec, Fraction(sign, q))

    def greene_nfn(self, upper: list[MultCharFq], lower: list[MultCharFq], x: int) -> CycNum:
        """Greene's (n+1)Fn at x, defined inductively from the 2F1 base case."""
        if len(upper) != len(lower) + 1 or len(upper) < 2:
            raise ArityMismatchError("need n+1 upper and n lower parameters, n >= 1")
        if len(upper) > MAX_HYPERGEOMETRIC_DEPTH:
            raise ArityMismatchError(f"depth limited to {MAX_HYPERGEOMETRIC_DEPTH}F{MAX_HYPERGEOMETRIC_DEPTH - 1}")
        ctx = self.ctx
        q = self.q
        table = [self.greene_2f1(upper[0], upper[1], lower[0], t) for t in range(q)]
        for level in range(2, len(upper)):
            a_char, b_char = upper[level], lower[level - 1]
            ka, kb = a_char.exponent, b_char.exponent
            sign = -1 if (ka + kb) * ((q - 1) // 2) % (q - 1) else 1
            scale = Fraction(sign, q)
            new = []
            for t in range(q):
                acc = CycNum.zero()
                for y in range(1, q):
                    one_minus_y = ctx.sub(1, y)
                    if one_minus_y == 0:
                        continue  # every character vanishes at 0
                    inner = table[ctx.mul(t, y)]
                    if inner.is_zero():
                        continue
                    e = (ka * ctx.log[y] + (kb - ka) * ctx.log[one_minus_y]) % (q - 1)
                    acc = acc + inner * CycNum.root_of_unity(q - 1, e)
                new.append(acc * scale)
            table = new
        return table[x]

    def katz_h(
        self,
        alpha: list[Fraction],
        beta: list[Fraction],
        lam: int = 1,
        omega_exponent: int = 1,
    ) -> CycNum:
        """Gauss-sum normalized hypergeometric sum H_q(alpha, beta; lambda).

        Both parameter lists must have the same length m, and every
        (q-1)*alpha_i and (q-1)*beta_j must be an integer, so the characters
        omega^((q-1)alpha) are defined.  omega is the character of exponent
        omega_exponent (coprime to q-1) with respect to the field generator;
        the value does not depend on this choice.  The twist argument is
        (-1)^m * lambda.
        """
        ctx = self.ctx
        q = self.q
        if len(alpha) != len(beta):
            raise ArityMismatchError("alpha and beta must have equal length")
        if math.gcd(omega_exponent, q - 1) != 1:
            raise ValueError("omega_exponent must be coprime to q - 1")
        a_exps = []
        b_exps = []
        for val in alpha:
            scaled = Fraction(val) * (q - 1)
            if scaled.denominator != 1:
                raise NotIntegralParametersError(f"(q-1)*{val} is not an integer")
            a_exps.append(int(scaled) % (q - 1))
        for val in beta:
            scaled = Fraction(val) * (q - 1)
            if scaled.denominator != 1:
                raise NotIntegralParametersError(f"(q-1)*{val} is not an integer")
            b_exps.append(int(scaled) % (q - 1))

        gauss: dict[int, CycNum] = {}
        gauss_inv: dict[int, CycNum] = {}

        def g_of(j: int) -> CycNum:
            j %= q - 1
            if j not in gauss:
                gauss[j] = ctx.gauss_sum(ctx.fq_char(j * omega_exponent))
            return gauss[j]

        def g_inv_of(j: int) -> CycNum:
            j %= q - 1
            if j not in gauss_inv:
                g = g_of(j)
                if j == 0:
                    inv = CycNum.rational(-1)  # g(trivial) = -1
                else:
                    inv = g.conjugate() * Fraction(1, q)  # |g|^2 = q for nontrivial
                assert (g * inv) == 1
                gauss_inv[j] = inv
            return gauss_inv[j]

        m_count = len(alpha)
        twist = lam if m_count % 2 == 0 else ctx.neg(lam)
        if twist == 0:
            return CycNum.zero()  # omega^k(0) = 0 under the zero convention
        total = CycNum.zero()
        for k in range(q - 1):
            term = CycNum.rational(1)
            for ae in a_exps:
                term = term * g_of(k + ae) * g_inv_of(ae)
            for be in b_exps:
                term = term * g_of(-k - be) * g_inv_of(-be)
            e = (omega_exponent * k * ctx.log[twist]) % (q - 1)
            total = total + term * CycNum.root_of_unity(q - 1, e)
        return total * Fraction(1, 1 - q)

    def f43_deviation_bound(self, n: int) -> tuple[Fraction, int, bool]:
        """For an order-n character gamma (n in {2,3,4,6}, q = 1 mod n), the
        squared deviation |q^3 * 4F3(gamma, 1/gamma, phi, phi; eps, eps, eps; 1)
        + phi(-1)gamma(-1) q|^2 as an exact rational, the bound 4q^3, and
        whether the bound holds."""
        ctx = self.ctx
        q = self.q
        if (q - 1) % n:
            raise ValueError(f"no order-{n} character exists for q = {q}")
        gamma = ctx.fq_char((q - 1) // n)
        phi = ctx.quadratic_char()
        eps = ctx.trivial_char()
        f43 = self.greene_nfn([gamma, gamma.conj(), phi, phi], [eps, eps, eps], 1)
        sign = ctx.phi_int(ctx.neg(1)) * (-1 if gamma.exponent % 2 else 1)
        z = f43 * (q**3) + sign * q
        w = (z * z.conjugate()).as_fraction()
        return w, 4 * q**3, w <= 4 * q**3

    # -- the function f and its expansion ----------------------------------------

    def f_vector(self) -> list[CycNum]:
        """f(x) = phi(1-x) * P_phi(x), a rational-valued function on F_q."""
        ctx = self.ctx
        phi = ctx.quadratic_char()
        return [
            self.legendre_sum(phi, x) * ctx.phi_int(ctx.sub(1, x)) for x in range(self.q)
        ]

    def f_norm_squared(self) -> Fraction:
        f = self.f_vector()
        return self.l2_inner(f, f).as_fraction()

    def orthonormal_coefficient_squares(self) -> list[tuple[str, CycNum]]:
        """Squares of the coefficients of f in the orthonormalized basis,
        i.e. <f, b>^2 / ||b||^2 per basis element.  Each coefficient is real;
        the squares sum to ||f||^2."""
        f = self.f_vector()
        out = []
        for name, vec, norm_sq in self.orthogonal_basis():
            c = self.l2_inner(f, vec)
            assert c.is_real()
            out.append((name, c * c * (Fraction(1) / norm_sq)))
        return out

    def f_coefficient_identity(self, gamma: MultCharFq) -> tuple[CycNum, CycNum]:
        """Both sides of phi(2) q^2 <f, P_gamma> =
        q^3 * 4F3(gamma, 1/gamma, phi, phi; eps, eps, eps; 1) + phi(-1)gamma(-1) q."""
        if gamma.is_trivial():
            raise TrivialCharacterError("gamma must be nontrivial")
        ctx = self.ctx
        q = self.q
        phi = ctx.quadratic_char()
        eps = ctx.trivial_char()
        f = self.f_vector()
        p_gamma = [self.legendre_sum(gamma, a) for a in range(q)]
        lhs = self.l2_inner(f, p_gamma) * (ctx.phi_int(ctx.embed_int(2)) * q * q)
        sign = ctx.phi_int(ctx.neg(1)) * (-1 if gamma.exponent % 2 else 1)
        rhs = self.greene_nfn([gamma, gamma.conj(), phi, phi], [eps, eps, eps], 1) * q**3 + sign * q
        return lhs, rhs
