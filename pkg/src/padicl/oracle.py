"""Exact rational reference computations.

Nothing here touches modular arithmetic: values are Fractions or exact
elements of Q[x]/Phi(x), and only get reduced mod p^M at comparison time.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .cyclotomic_algebra import aux_poly, cyclotomic_poly
from .errors import ConfigError, PrecisionError
from .padic_core import vp


# --- exact cyclotomic arithmetic -------------------------------------------------

def _qpoly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _qpoly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _qpoly_trim(b)
    out = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    a = _qpoly_trim(a)
    while len(a) >= len(b) and a:
        coef = a[-1] / b[-1]
        shift = len(a) - len(b)
        out[shift] = coef
        for j, y in enumerate(b):
            a[shift + j] -= coef * y
        a = _qpoly_trim(a)
    return out, a


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    return _qpoly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


class ExactCyc:
    """Element of Q[x]/Phi(x) with Fraction coefficients."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus, coeffs):
        self.modulus = tuple(modulus)
        deg = len(self.modulus) - 1
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > deg:
            _, coeffs = _qpoly_divmod(coeffs, self.modulus)
        self.coeffs = tuple(coeffs) + (Fraction(0),) * (deg - len(coeffs))

    @classmethod
    def aux(cls, c, coeffs=(1,)):
        return cls(aux_poly(c), coeffs)

    @classmethod
    def cyclotomic(cls, n, coeffs=(1,)):
        return cls(cyclotomic_poly(n), coeffs)

    @property
    def deg(self):
        return len(self.modulus) - 1

    def x_pow(self, a):
        return ExactCyc(self.modulus, [0] * a + [1])

    def _lift(self, other):
        if isinstance(other, ExactCyc):
            if other.modulus != self.modulus:
                raise ValueError("modulus mismatch")
            return other
        return ExactCyc(self.modulus, [other])

    def __add__(self, other):
        o = self._lift(other)
        return ExactCyc(self.modulus, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return ExactCyc(self.modulus, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return ExactCyc(self.modulus, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactCyc(self.modulus, [a * other for a in self.coeffs])
        o = self._lift(other)
        return ExactCyc(self.modulus, _qpoly_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactCyc(self.modulus, [a / other for a in self.coeffs])
        return self * self._lift(other).inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactCyc(self.modulus, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._lift(other)
        if not isinstance(other, ExactCyc):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.modulus, self.coeffs))

    def __repr__(self):
        return f"ExactCyc({[str(c) for c in self.coeffs]})"

    def inverse(self):
        """Extended Euclid in Q[x]; the modulus is squarefree so gcd is 1."""
        r0, r1 = _qpoly_trim(self.modulus), _qpoly_trim(self.coeffs)
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("element is not invertible")
        return ExactCyc(self.modulus, [c / r0[0] for c in s0])

    def trace(self):
        """Trace over Q: sum of coefficient times power sums of the roots."""
        return sum((c * t for c, t in zip(self.coeffs, _power_traces(self.modulus))), Fraction(0))

    def is_rational(self):
        return not any(self.coeffs[1:])

    def denominator(self):
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // gcd(d, c.denominator)
        return d

    def reduce(self, p, M):
        """Coefficients mod p^M (requires p-integral coefficients)."""
        pm = p**M
        out = []
        for c in self.coeffs:
            if c.denominator % p == 0:
                raise PrecisionError(f"{c} is not {p}-integral")
            out.append(c.numerator * pow(c.denominator, -1, pm) % pm)
        return out


@lru_cache(maxsize=None)
def _power_traces(modulus):
    """Tr(x^j) for j < deg via the trace of the companion matrix powers."""
    deg = len(modulus) - 1
    out = []
    for j in range(deg):
        t = Fraction(0)
        for i in range(deg):
            e = ExactCyc(modulus, [0] * (i + j) + [1])
            t += e.coeffs[i]
        out.append(t)
    return tuple(out)


# --- Bernoulli machinery ----------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli_number(k):
    """B_k with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    B = [Fraction(1)]
    for m in range(1, k + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[k]


@lru_cache(maxsize=None)
def bernoulli_polynomial(k):
    """Coefficients (low to high) of B_k(x) = sum C(k, j) B_j x^(k-j)."""
    if k > 200:
        raise ConfigError("Bernoulli degree cap exceeded")
    out = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        out[k - j] = comb(k, j) * bernoulli_number(j)
    return tuple(out)


def eval_poly(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def hurwitz_partial_zeta(b, f, k):
    """Value at s = -k of sum_{n = b mod f, n > 0} n^{-s}."""
    if not 0 < b <= f:
        raise ValueError("need 0 < b <= f")
    return Fraction(f) ** k * (-eval_poly(bernoulli_polynomial(k + 1), Fraction(b, f)) / (k + 1))


def _char_value(chi, a):
    v = chi(a)
    return v


def classical_L_value(chi, k, f):
    """L_f(chi; 1 - k) = sum_{(a, f) = 1} chi(a) Z(a mod f; 1 - k).

    ``chi`` maps an integer coprime to f to a Fraction or ExactCyc.  Euler
    factors at primes dividing f are absent by construction.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    total = Fraction(0)
    for a in range(1, f + 1):
        if gcd(a, f) == 1:
            total = _char_value(chi, a) * hurwitz_partial_zeta(a, f, k - 1) + total
    return total


def generalized_bernoulli(chi, k, F):
    """B_{k,chi} = F^(k-1) sum_{a=1}^F chi(a) B_k(a/F) for chi of modulus F."""
    Bk = bernoulli_polynomial(k)
    total = Fraction(0)
    for a in range(1, F + 1):
        if gcd(a, F) == 1:
            total = _char_value(chi, a) * eval_poly(Bk, Fraction(a, F)) + total
    return total * Fraction(F) ** (k - 1)


def primes_dividing(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def L_value_with_euler(chi, k, F, f):
    """-B_{k,chi}/k times prod_{l | f, l not dividing F} (1 - chi(l) l^(k-1))."""
    val = generalized_bernoulli(chi, k, F) * Fraction(-1, k)
    for ell in primes_dividing(f):
        if F % ell:
            val = val * (1 - _char_value(chi, ell) * ell ** (k - 1))
    return val


# --- cone series -------------------------------------------------------------------

def exact_B(k, K, x):
    """B_{k,K}(x) = (-1)^k sum_{n=k}^K C(n, k) (x/(x-1))^n, by the defining sum."""
    r = x * (x - 1).inverse()
    acc = x * 0
    rn = r**k
    for n in range(k, K + 1):
        acc = acc + rn * comb(n, k)
        rn = rn * r
    return acc * (-1) ** k


def exact_B_recurrence(K, x):
    r = x * (x - 1).inverse()
    rK = r**K
    B = [x * rK - x + 1]
    for k in range(K):
        B.append(x * (rK * ((-1) ** (k + 1) * comb(K + 1, k + 1)) + B[-1]))
    return B


def _xi_exponent(alpha, c, t):
    x, y = alpha.int_coords()
    return (x + y * t) % c


def _norm_int(alpha):
    n = alpha.norm()
    assert n.denominator == 1
    return int(n)


def exact_cone_series(cone, c, t, N, K=None):
    """Exact F_N(C, c; T) coefficients (Fractions) for n < N."""
    d = cone.base.field.degree
    if K is None:
        K = (N - 1) * d
    eta = ExactCyc.aux(c, [0, 1]) if c > 2 else ExactCyc.aux(c, [-1])
    one = ExactCyc.aux(c)

    def xi(alpha):
        a = _xi_exponent(alpha, c, t)
        return eta**a if a else one

    A = xi(cone.base)
    tables = []
    for lam in cone.gens:
        z = xi(lam)
        if z == one:
            raise ValueError("generator in the auxiliary prime")
        A = A * (1 - z).inverse()
        tables.append([exact_B(k, K, z) for k in range(K + 1)])
    series = [one * 0 for _ in range(N)]

    def walk(idx, alpha, prod):
        if idx == len(cone.gens):
            n_alpha = _norm_int(alpha)
            for n in range(N):
                b = comb(n_alpha, n) if n_alpha >= 0 else _gen_binom(n_alpha, n)
                if b:
                    series[n] = series[n] + prod * b
            return
        lam = cone.gens[idx]
        for k in range(K + 1):
            walk(idx + 1, alpha + lam * k, prod * tables[idx][k])

    walk(0, cone.base, one)
    return [(A * s).trace() for s in series]


def _gen_binom(a, n):
    out = Fraction(1)
    for j in range(n):
        out = out * (a - j) / (j + 1)
    return out


def delta_coeffs(F):
    return [(n + 1) * F[n + 1] + n * F[n] for n in range(len(F) - 1)]


def exact_cone_series_value(cone, c, t, k, K=None):
    """Delta^k F(C, c; T) at T = 0, i.e. Z(C, c; -k)."""
    if k > 8:
        raise ConfigError("oracle degree cap is 8")
    F = exact_cone_series(cone, c, t, k + 1, K)
    for _ in range(k):
        F = delta_coeffs(F)
    return F[0]


def exact_twisted_partial_zeta_Q(a, f, c, k):
    """c^(1+k) Z((ac)^{-1}; -k) - Z(a^{-1}; -k) over Q, via Hurwitz values."""
    ainv = pow(a, -1, f) if f > 1 else 0
    acinv = pow(a * c, -1, f) if f > 1 else 0
    b1 = acinv % f or f
    b0 = ainv % f or f
    return Fraction(c) ** (1 + k) * hurwitz_partial_zeta(b1, f, k) - hurwitz_partial_zeta(b0, f, k)


# --- the Omega operator ------------------------------------------------------------

class MultiPoly:
    """Polynomial in T_1, ..., T_d as {exponent tuple: coefficient}."""

    def __init__(self, terms, d=2):
        self.d = d
        self.terms = {tuple(e): c for e, c in terms.items() if c}

    def degree(self):
        return max((max(e) for e in self.terms), default=0)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out, self.d)

    def __eq__(self, other):
        return self.terms == other.terms

    @classmethod
    def from_binomial_powers(cls, b, d=2):
        """prod_i (1 + T_i)^(b_i) expanded."""
        terms = {(): Fraction(1)}
        for bi in b:
            new = {}
            for e, c in terms.items():
                for j in range(bi + 1):
                    new[e + (j,)] = new.get(e + (j,), 0) + c * comb(bi, j)
            terms = new
        return cls(terms, d)


def _poly_in_T_of_power(a):
    """(1 + T)^a as a coefficient list."""
    return [Fraction(comb(a, j)) for j in range(a + 1)]


def _add_into(acc, poly, scale):
    if len(acc) < len(poly):
        acc.extend([Fraction(0)] * (len(poly) - len(acc)))
    for i, c in enumerate(poly):
        acc[i] += scale * c


def omega_monomial(a):
    """Omega(T_1^a_1 ... T_d^a_d) as a coefficient list in T."""
    out = []
    sign = (-1) ** sum(a)

    def rec(i, prod, coef):
        if i == len(a):
            _add_into(out, _poly_in_T_of_power(prod), sign * coef)
            return
        for n in range(a[i] + 1):
            rec(i + 1, prod * n, coef * (-1) ** n * comb(a[i], n))

    rec(0, 1, 1)
    return _trim_list(out)


def omega(A):
    out = []
    for e, c in A.terms.items():
        _add_into(out, omega_monomial(e), c)
    return _trim_list(out)


def _trim_list(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def delta_multi(A):
    """prod_i (1 + T_i) d/dT_i applied to a polynomial."""
    terms = dict(A.terms)
    for i in range(A.d):
        new = {}
        for e, c in terms.items():
            ei = e[i]
            if ei == 0:
                continue
            # (1 + T) d/dT T^n = n T^(n-1) + n T^n
            for shift in (ei - 1, ei):
                f = e[:i] + (shift,) + e[i + 1:]
                new[f] = new.get(f, 0) + c * ei
        terms = new
    return MultiPoly(terms, A.d)


def delta_poly(F):
    """Delta on a full polynomial (no truncation)."""
    F = list(F) + [Fraction(0)]
    return _trim_list([(n + 1) * F[n + 1] + n * F[n] for n in range(len(F) - 1)])


def omega_commutation_check(A):
    return omega(delta_multi(A)) == delta_poly(omega(A))


def omega_divisibility_check(a):
    """Omega(T^a) is divisible by T^max(a)."""
    poly = omega_monomial(a)
    m = max(a) if a else 0
    return all(c == 0 for c in poly[:m])


def fraction_to_json(x):
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def valuation(x, p):
    return vp(Fraction(x), p)


def exact_character(chi):
    """a -> chi((a)) as an exact cyclotomic number, for a character over Q."""
    from .number_field import Ideal

    field = chi.group.field

    def value(a):
        e = chi.exponent(Ideal.from_int(field, a))
        return ExactCyc.cyclotomic(chi.n).x_pow(e)

    return value
