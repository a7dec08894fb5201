"""Quotient rings (Z/p^M)[x] / Phi(x).

Two kinds of modulus are used: the auxiliary polynomial 1 + x + ... + x^(c-1)
for a prime c (the etale algebra R, with eta the class of x), and the n-th
cyclotomic polynomial for character values.
"""

from functools import lru_cache

import numpy as np

from .errors import ConfigError, PrecisionError, SingularElement
from .padic_core import PAdicInt, is_prime, vp


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (low-to-high), den monic."""
    num = list(num)
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        coef = num[i]
        quot[i - dq] = coef
        if coef:
            for j in range(dq + 1):
                num[i - dq + j] -= coef * den[j]
    return quot, num[:dq]


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients of Phi_n, low to high."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_poly(d))
            assert not any(rem)
    return tuple(poly)


def aux_poly(c):
    return tuple([1] * c)


def _reduction_table(modulus, nmax):
    """Row k holds the coefficients of x^k mod Phi (integers), k < nmax."""
    deg = len(modulus) - 1
    rows = []
    cur = [0] * deg
    if deg == 0:
        return [[] for _ in range(nmax)]
    cur[0] = 1
    for _ in range(nmax):
        rows.append(list(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * modulus[j]
    return rows


# --- F_p polynomial helpers for inversion ---------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = [x % p for x in a]
    _trim(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        coef = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j in range(len(b)):
            a[shift + j] = (a[shift + j] - coef * b[j]) % p
        _trim(a)
    return a


def _pdivmod(a, b, p):
    a = [x % p for x in a]
    _trim(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    while a and len(a) - 1 >= db:
        coef = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = coef
        for j in range(len(b)):
            a[shift + j] = (a[shift + j] - coef * b[j]) % p
        _trim(a)
    return _trim(q), a


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _inverse_mod_p(z, modulus, p):
    """Inverse of z in F_p[x]/(modulus) by the extended Euclidean algorithm."""
    r0, r1 = _trim([x % p for x in modulus]), _pmod(z, modulus, p)
    s0, s1 = [], [1]
    while r1:
        quo, rem = _pdivmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(s0, _pmul(quo, s1, p), p)
    if len(r0) != 1:
        return None
    inv = pow(r0[0], -1, p)
    return [x * inv % p for x in s0]


class CycRing:
    """(Z/p^M)[x]/Phi with a kind tag ('aux' for prime c, 'char' for order n)."""

    def __init__(self, p, M, modulus, kind, param):
        self.p = p
        self.M = M
        self.pm = p**M
        self.modulus = tuple(modulus)
        self.deg = len(modulus) - 1
        self.kind = kind
        self.param = param
        self._red = [
            [x % self.pm for x in row]
            for row in _reduction_table(self.modulus, max(2 * self.deg - 1, 1))
        ]

    @classmethod
    def aux(cls, c, p, M):
        if not is_prime(c) or c == p:
            raise ConfigError(f"aux ring needs a prime c != p, got c={c}")
        return _aux_ring(c, p, M)

    @classmethod
    def character(cls, n, p, M):
        if n < 1 or n % p == 0:
            raise ConfigError(f"character order {n} must be coprime to p={p}")
        return _char_ring(n, p, M)

    def __repr__(self):
        return f"CycRing({self.kind}={self.param}, p={self.p}, M={self.M})"

    def __eq__(self, other):
        return isinstance(other, CycRing) and (self.p, self.M, self.modulus) == (
            other.p,
            other.M,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.M, self.modulus))

    # element constructors
    def elem(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.deg:
            coeffs = self._reduce_poly(coeffs)
        coeffs = coeffs + [0] * (self.deg - len(coeffs))
        return CycElem(self, tuple(int(x) % self.pm for x in coeffs))

    def scalar(self, a):
        if isinstance(a, PAdicInt):
            if a.p != self.p or a.M != self.M:
                raise PrecisionError("scalar precision mismatch")
            a = a.residue
        return self.elem([a])

    def one(self):
        return self.scalar(1)

    def zero(self):
        return self.scalar(0)

    def x_pow(self, a):
        if self.kind == "aux":
            a %= self.param
        elif self.kind == "char":
            a %= self.param
        if a < len(self._red):
            return CycElem(self, tuple(self._red[a]))
        return self.elem([0] * a + [1])

    def eta_pow(self, a):
        if self.kind != "aux":
            raise ConfigError("eta_pow only makes sense in the aux ring")
        return self.x_pow(a)

    def _reduce_poly(self, coeffs):
        out = [0] * self.deg
        d = self.deg
        mod = self.modulus
        coeffs = list(coeffs)
        for i in range(len(coeffs) - 1, d - 1, -1):
            top = coeffs[i]
            if top:
                for j in range(d + 1):
                    coeffs[i - d + j] -= top * mod[j]
        for i in range(min(d, len(coeffs))):
            out[i] = coeffs[i]
        return out

    def mul_table(self):
        """(2deg-1, deg) array of x^k mod Phi for the numpy kernels."""
        return np.array(self._red, dtype=object)

    def trace_vector(self):
        """T_R(x^k) for k < 2deg - 1 (aux ring only)."""
        if self.kind != "aux":
            raise ConfigError("trace is defined on the aux ring")
        c = self.param
        return [(c - 1) if k % c == 0 else -1 for k in range(2 * self.deg - 1)]


@lru_cache(maxsize=None)
def _aux_ring(c, p, M):
    return CycRing(p, M, aux_poly(c), "aux", c)


@lru_cache(maxsize=None)
def _char_ring(n, p, M):
    return CycRing(p, M, cyclotomic_poly(n), "char", n)


class CycElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def _check(self, other):
        if isinstance(other, CycElem):
            if other.ring != self.ring:
                raise PrecisionError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, PAdicInt)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        pm = self.ring.pm
        return CycElem(self.ring, tuple((a + b) % pm for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        pm = self.ring.pm
        return CycElem(self.ring, tuple((a - b) % pm for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        pm = self.ring.pm
        return CycElem(self.ring, tuple(-a % pm for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, PAdicInt)):
            k = other.residue if isinstance(other, PAdicInt) else other
            pm = self.ring.pm
            return CycElem(self.ring, tuple(a * k % pm for a in self.coeffs))
        o = self._check(other)
        if o is NotImplemented:
            return o
        ring = self.ring
        d = ring.deg
        conv = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    conv[i + j] += a * b
        out = [0] * d
        for k, v in enumerate(conv):
            if v:
                row = ring._red[k]
                for j in range(d):
                    out[j] += v * row[j]
        pm = ring.pm
        return CycElem(ring, tuple(x % pm for x in out))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.invert() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycElem):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, PAdicInt)):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"CycElem({list(self.coeffs)}, {self.ring})"

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        """Minimum coefficient valuation; M when the element is 0 mod p^M."""
        vals = [vp(a, self.ring.p) for a in self.coeffs if a]
        return min(vals) if vals else self.ring.M

    def scalar_value(self):
        """The PAdicInt when the element lies in Z/p^M."""
        if any(self.coeffs[1:]):
            raise ValueError("element is not a scalar")
        return PAdicInt(self.coeffs[0], self.ring.p, self.ring.M)

    def trace(self):
        ring = self.ring
        if ring.kind != "aux":
            raise ConfigError("trace is defined on the aux ring")
        c = ring.param
        z = self.coeffs
        return PAdicInt(c * z[0] - sum(z), ring.p, ring.M)

    def invert(self):
        ring = self.ring
        p = ring.p
        w = _inverse_mod_p(list(self.coeffs), list(ring.modulus), p)
        if w is None:
            raise SingularElement(f"{self} is not invertible mod {p}")
        w = ring.elem(w)
        # Newton iteration w <- w (2 - z w) doubles the correct digits.
        prec = 1
        two = ring.scalar(2)
        while prec < ring.M:
            w = w * (two - self * w)
            prec *= 2
        if self * w != ring.one():
            raise SingularElement("Hensel lifting failed")
        return w

    def frobenius(self):
        """Substitute x -> x^p (an automorphism of the ring)."""
        ring = self.ring
        out = ring.zero()
        for a, z in enumerate(self.coeffs):
            if z:
                out = out + ring.x_pow(a * ring.p) * z
        return out
