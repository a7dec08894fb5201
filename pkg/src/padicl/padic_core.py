"""Fixed precision p-adic integers and the structural maps used everywhere else.

A :class:`PAdicInt` is a residue modulo ``p**M``.  Arithmetic between two
values requires the same ``(p, M)``; lowering the precision is always an
explicit call to :meth:`PAdicInt.reduce`.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import PrecisionError, SupportError, UnitRequired


def q_of(p):
    return 4 if p == 2 else p


def phi_q(p):
    return 2 if p == 2 else p - 1


def vp(n, p):
    """p-adic valuation of a nonzero integer (or Fraction); None for zero."""
    if isinstance(n, Fraction):
        if n == 0:
            return None
        return vp(n.numerator, p) - vp(n.denominator, p)
    if n == 0:
        return None
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def unit_part(n, p):
    v = vp(n, p)
    return n // p**v, v


def vp_factorial(n, p):
    """v_p(n!) by Legendre's formula."""
    v, k = 0, p
    while k <= n:
        v += n // k
        k *= p
    return v


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PAdicInt:
    """Residue modulo p^M with its prime and precision attached."""

    __slots__ = ("p", "M", "residue", "modulus")

    def __init__(self, value, p, M):
        if M < 1:
            raise PrecisionError("precision must be at least 1")
        pm = p**M
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise PrecisionError(f"{value} is not a {p}-adic integer")
            value = value.numerator * pow(value.denominator, -1, pm)
        self.p = p
        self.M = M
        self.modulus = pm
        self.residue = int(value) % pm

    # construction helpers
    @classmethod
    def from_digits(cls, digits, p, M):
        """Base-p digits, least significant first."""
        r = 0
        for i, d in enumerate(digits[:M]):
            if not 0 <= d < p:
                raise ValueError(f"digit {d} out of range for p={p}")
            r += d * p**i
        return cls(r, p, M)

    def digits(self):
        r, out = self.residue, []
        for _ in range(self.M):
            r, d = divmod(r, self.p)
            out.append(d)
        return out

    def _coerce(self, other):
        if isinstance(other, PAdicInt):
            if other.p != self.p or other.M != self.M:
                raise PrecisionError(
                    f"mixed operands: ({self.p},{self.M}) vs ({other.p},{other.M})"
                )
            return other.residue
        if isinstance(other, (int, Fraction)):
            return PAdicInt(other, self.p, self.M).residue
        return NotImplemented

    def _new(self, r):
        return PAdicInt(r, self.p, self.M)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.residue - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o - self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return self._new(pow(self.residue, k, self.modulus))

    def __eq__(self, other):
        if isinstance(other, PAdicInt):
            return (self.p, self.M, self.residue) == (other.p, other.M, other.residue)
        if isinstance(other, (int, Fraction)):
            try:
                return self.residue == self._coerce(other)
            except PrecisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.M, self.residue))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PAdicInt({self.residue}, p={self.p}, M={self.M})"

    def signed(self):
        """Representative in (-p^M/2, p^M/2]."""
        r = self.residue
        return r - self.modulus if r > self.modulus // 2 else r

    def valuation(self):
        """v_p of the residue, M for zero (known only up to precision)."""
        if self.residue == 0:
            return self.M
        return vp(self.residue, self.p)

    def is_unit(self):
        return self.residue % self.p != 0

    def inverse(self):
        if not self.is_unit():
            raise UnitRequired(f"{self.residue} is not a unit mod {self.p}")
        return self._new(pow(self.residue, -1, self.modulus))

    def reduce(self, M):
        if M > self.M:
            raise PrecisionError("precision can only be lowered")
        return PAdicInt(self.residue, self.p, M)


class ValuedPAdic:
    """p^valuation * unit, used to compare exact rationals with residues."""

    def __init__(self, valuation, unit, zero=False):
        self.valuation = valuation
        self.unit = unit
        self.zero = zero

    @classmethod
    def from_rational(cls, x, p, M):
        x = Fraction(x)
        if x == 0:
            return cls(None, PAdicInt(0, p, M), zero=True)
        v = vp(x, p)
        u = x / Fraction(p) ** v
        return cls(v, PAdicInt(u, p, M))

    def to_padic(self):
        if self.zero:
            return self.unit
        if self.valuation < 0:
            raise PrecisionError("negative valuation has no residue")
        return self.unit * self.unit.p**self.valuation

    def __repr__(self):
        if self.zero:
            return "ValuedPAdic(0)"
        return f"ValuedPAdic({self.unit.p}^{self.valuation} * {self.unit.residue})"


def _as_padic(x, p, M):
    if isinstance(x, PAdicInt):
        return x
    return PAdicInt(x, p, M)


def teichmuller(x):
    """omega(x): the root of unity congruent to x mod q."""
    p, M = x.p, x.M
    if not x.is_unit():
        raise UnitRequired("teichmuller needs a unit")
    if p == 2:
        return x._new(1 if x.residue % 4 == 1 else -1)
    y = x.residue
    pm = x.modulus
    while True:
        z = pow(y, p, pm)
        if z == y:
            return x._new(y)
        y = z


def angle(x):
    """<x> = x / omega(x), which lies in 1 + qZ_p."""
    return x * teichmuller(x).inverse()


def _log_terms_needed(w, p, M):
    """Smallest n0 such that every term n >= n0 of log(1+y), v(y) >= w, is 0 mod p^M."""
    n = 1
    while True:
        if n * w - _floor_log(n, p) >= M:
            return n
        n += 1


def _floor_log(n, p):
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def _plog_int(y, p, M, w):
    """log(1+y) mod p^M for an integer y with v_p(y) >= w >= 1."""
    pm = p**M
    nmax = _log_terms_needed(w, p, M)
    extra = _floor_log(max(nmax, 1), p)
    big = p ** (M + extra)
    acc = 0
    ypow = 1
    for n in range(1, nmax):
        ypow = ypow * y % big
        nu, v = unit_part(n, p)
        term = (ypow // p**v) * pow(nu, -1, pm)
        acc += term if n % 2 else -term
    return acc % pm


def plog(x):
    """Iwasawa logarithm on 1 + qZ_p by the alternating series."""
    p, M = x.p, x.M
    q = q_of(p)
    if x.residue % q != 1 % q:
        raise SupportError(f"plog needs x = 1 mod {q}")
    y = x.residue - 1
    w = vp(y, p) if y else M
    w = max(w, vp(q, p))
    return x._new(_plog_int(y, p, M, w))


def binomial_row(s, N, p, M):
    """C(s, n) mod p^M for n < N, following the unit/valuation split.

    ``s`` is an integer taken modulo p^(M+V) where p^V <= N-1 < p^(V+1).
    Returns a list of ints.
    """
    pm = p**M
    V = _floor_log(N - 1, p) if N > 1 else 0
    st = s % p ** (M + V)
    out = [1 % pm]
    A, B = 1, 0
    for n in range(1, N):
        x = st - n + 1
        if x == 0:
            out.extend([0] * (N - n))
            break
        a, b = unit_part(x, p)
        nu, vn = unit_part(n, p)
        A = A * a * pow(nu, -1, pm) % pm
        B += b - vn
        out.append(A * p**B % pm if B < M else 0)
    return out


def binomial_row_padic(s, N, p, M):
    return [PAdicInt(c, p, M) for c in binomial_row(s, N, p, M)]


def _pow1q_terms(p, M):
    return M if p != 2 else -(-M // 2) + 1


def _exponent_int(s, p, M):
    if isinstance(s, PAdicInt):
        if s.p != p or s.M < M:
            raise PrecisionError("exponent must be known to precision >= M")
        return s.residue
    if isinstance(s, Fraction):
        return PAdicInt(s, p, M).residue
    return int(s) % p**M


def pow1q(x, s):
    """x^s for x in 1 + qZ_p via the binomial series in (x - 1)."""
    p, M = x.p, x.M
    q = q_of(p)
    if x.residue % q != 1 % q:
        raise SupportError(f"pow1q needs x = 1 mod {q}")
    st = _exponent_int(s, p, M)
    N = _pow1q_terms(p, M)
    row = binomial_row(st, N, p, M)
    pm = x.modulus
    y = x.residue - 1
    acc, ypow = 0, 1
    for c in row:
        acc += ypow * c
        ypow = ypow * y % pm
    return x._new(acc)


def default_u(p, e):
    return 1 + p**e


def Lu(x, u=None, e=1):
    """L_u(x) = log<x> / log u.

    ``x`` must carry precision P >= e + 1; the result has precision P - e,
    because dividing by log u (valuation e) eats e digits.
    """
    p, P = x.p, x.M
    if P <= e:
        raise PrecisionError("Lu needs input precision above e")
    a = angle(x)
    if (a.residue - 1) % p**e:
        raise SupportError(f"<x> not in 1 + {p}^{e} Z_{p}")
    uu = default_u(p, e) if u is None else (u.residue if isinstance(u, PAdicInt) else u)
    if isinstance(u, PAdicInt) and u.M < P:
        raise PrecisionError("u must be known to the working precision")
    lx = plog(a).residue
    lu = plog(PAdicInt(uu, p, P)).residue
    if lu == 0:
        raise SupportError("u is not a topological generator at this precision")
    wu = vp(lu, p)
    if wu != e:
        raise SupportError(f"u does not generate 1 + {p}^{e} Z_{p}")
    out = P - e
    if lx % p**e:
        raise SupportError("log<x> has valuation below e")
    return PAdicInt((lx // p**e) * pow(lu // p**e, -1, p**out), p, out)


@lru_cache(maxsize=None)
def inverse_factorial_unit(n, p, M):
    """(n!/p^{v_p(n!)})^{-1} mod p^M."""
    f = factorial(n)
    v = vp_factorial(n, p)
    return pow(f // p**v, -1, p**M)
