"""Mahler expansions of continuous functions and Z_p-valued measures.

A :class:`MahlerFn` stores the first ``N`` Mahler coefficients modulo p^M
together with the length that a decay bound certifies.  A :class:`Measure`
stores the first coefficients of its power series F(T), where the n-th
coefficient is the integral of C(x, n).
"""

from dataclasses import dataclass

import numpy as np

from .errors import PrecisionError
from .padic_core import (
    PAdicInt,
    Lu,
    angle,
    binomial_row,
    default_u,
    pow1q,
    vp,
    vp_factorial,
)


@dataclass(frozen=True)
class MahlerFn:
    p: int
    M: int
    values: tuple
    declared_N: int

    @property
    def N(self):
        return len(self.values)

    @property
    def coeffs(self):
        return [PAdicInt(v, self.p, self.M) for v in self.values]

    def __call__(self, x):
        """f(x) = sum f_n C(x, n) mod p^M."""
        x = x.residue if isinstance(x, PAdicInt) else int(x)
        row = binomial_row(x, self.N, self.p, self.M)
        return PAdicInt(sum(a * b for a, b in zip(self.values, row)), self.p, self.M)

    def norm_valuation(self):
        """min_n v_p(f_n), i.e. -log_p of the sup norm (M if all vanish)."""
        vals = [vp(v, self.p) for v in self.values if v]
        return min(vals) if vals else self.M


@dataclass(frozen=True)
class Measure:
    p: int
    M: int
    values: tuple

    @property
    def N(self):
        return len(self.values)

    @property
    def coeffs(self):
        return [PAdicInt(v, self.p, self.M) for v in self.values]

    def __add__(self, other):
        if (self.p, self.M) != (other.p, other.M):
            raise PrecisionError("measures at different precisions")
        n = min(self.N, other.N)
        pm = self.p**self.M
        return Measure(self.p, self.M, tuple((a + b) % pm for a, b in zip(self.values[:n], other.values[:n])))

    def scale(self, k):
        pm = self.p**self.M
        k = k.residue if isinstance(k, PAdicInt) else int(k)
        return Measure(self.p, self.M, tuple(v * k % pm for v in self.values))


def mahler_coeffs(evaluate, N, p, M, declared_N=None):
    """Finite-difference triangle: returns f_n = (nabla^n f)(0) mod p^M, n < N."""
    pm = p**M
    f = np.empty(N, dtype=object)
    for n in range(N):
        v = evaluate(n)
        f[n] = (v.residue if isinstance(v, PAdicInt) else int(v)) % pm
    for j in range(1, N):
        f[j:] = (f[j:] - f[j - 1:N - 1]) % pm
    return MahlerFn(p, M, tuple(int(v) for v in f), N if declared_N is None else declared_N)


def phi_bound(p, M):
    """Certified Mahler length of phi_s at precision p^M."""
    return 2 * M + 2 if p == 2 else p * M


def phi_value(n, s, p, M):
    """phi_s(n): 0 on pZ_p, <n>^s on units."""
    if n % p == 0:
        return 0
    return pow1q(angle(PAdicInt(n, p, M)), s).residue


def phi_s_fn(s, p, M, N=None):
    """Mahler vector of phi_s; the default length carries two guard terms for p odd."""
    bound = phi_bound(p, M)
    if N is None:
        N = bound + (2 if p != 2 else 0)
    if N < bound:
        raise PrecisionError(f"phi_s needs at least {bound} coefficients")
    s = _exponent(s, p, M)
    return mahler_coeffs(lambda n: phi_value(n, s, p, M), N, p, M, declared_N=bound)


def psi_bound(ell, p, M, e):
    return p**e * (p * M + ell)


def psi_value(n, ell, p, M, e, u=None):
    """psi_ell(n) = n^{-1} C(L_u(n), ell) when <n> lies in 1 + p^e Z_p, else 0."""
    if n % p == 0:
        return 0
    x = PAdicInt(n, p, M)
    if (angle(x).residue - 1) % p**e:
        return 0
    extra = vp_factorial(ell, p)
    P = M + extra
    L = Lu(PAdicInt(n, p, P + e), u, e).residue
    big = p**P
    num = 1
    for j in range(ell):
        num = num * (L - j) % big
    fl = 1
    for j in range(1, ell + 1):
        fl *= j
    unit = fl // p**extra
    val = (num // p**extra) * pow(unit, -1, p**M)
    return val * pow(n, -1, p**M) % p**M


def psi_ell_fn(ell, p, M, e=1, u=None):
    N = psi_bound(ell, p, M, e)
    return mahler_coeffs(lambda n: psi_value(n, ell, p, M, e, u), N, p, M)


def indicator_bound(p, M, e):
    """Smallest N with v_p(floor(n/p^e)!) >= M for all n >= N."""
    m = 0
    while vp_factorial(m, p) < M:
        m += 1
    return p**e * m


def indicator_value(n, p, e):
    """Characteristic function of 1 + p^e Z_p."""
    return 1 if (n - 1) % p**e == 0 else 0


def indicator_fn(p, M, e):
    N = indicator_bound(p, M, e)
    return mahler_coeffs(lambda n: indicator_value(n, p, e), N, p, M)


def integrate(f, mu):
    """sum_{n < N} f_n F_n mod p^M, with N the certified length of f."""
    if (f.p, f.M) != (mu.p, mu.M):
        raise PrecisionError("function and measure at different precisions")
    N = f.declared_N
    if mu.N < N:
        raise PrecisionError(f"measure has {mu.N} coefficients, integration needs {N}")
    pm = f.p**f.M
    return PAdicInt(sum(a * b for a, b in zip(f.values[:N], mu.values[:N])) % pm, f.p, f.M)


def delta(mu):
    """(1 + T) d/dT on the truncated series; the result is one term shorter."""
    v = mu.values
    pm = mu.p**mu.M
    out = tuple(((n + 1) * v[n + 1] + n * v[n]) % pm for n in range(len(v) - 1))
    return Measure(mu.p, mu.M, out)


def moment(mu, k):
    """Integral of x^k, read off as Delta^k F at T = 0 (uses k + 1 coefficients)."""
    if mu.N <= k:
        raise PrecisionError(f"moment {k} needs more than {mu.N} coefficients")
    for _ in range(k):
        mu = delta(mu)
    return PAdicInt(mu.values[0], mu.p, mu.M)


def dirac(a, N, p=None, M=None):
    if isinstance(a, PAdicInt):
        p, M, a = a.p, a.M, a.residue
    return Measure(p, M, tuple(binomial_row(a, N, p, M)))


def pointwise_product(f, g, evaluate_f, evaluate_g, N=None):
    """Mahler vector of f*g from function values, length max of both."""
    if N is None:
        N = max(f.declared_N, g.declared_N)
    pm = f.p**f.M
    return mahler_coeffs(lambda n: evaluate_f(n) * evaluate_g(n) % pm, N, f.p, f.M)


def _exponent(s, p, M):
    if isinstance(s, PAdicInt):
        return s.reduce(M) if s.M > M else s
    return PAdicInt(s, p, M)


__all__ = [
    "MahlerFn",
    "Measure",
    "mahler_coeffs",
    "phi_s_fn",
    "phi_bound",
    "phi_value",
    "psi_ell_fn",
    "psi_bound",
    "psi_value",
    "indicator_fn",
    "indicator_value",
    "indicator_bound",
    "integrate",
    "delta",
    "moment",
    "dirac",
    "pointwise_product",
    "default_u",
]
