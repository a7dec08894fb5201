"""Per-cone measures, values and Iwasawa polynomials.

All three computations share one shape: a sum over k in {0..K}^g of a
scalar weight W(N_k) times the ring element A * prod_i B_{k_i,K}(Xi(lambda_i)),
followed by the trace of the etale algebra.  The trace is linear, so it is
taken first: tau[k] = Tr(A * prod B) is a (K+1)^g table of scalars and the
whole sum becomes one modular matrix-vector product with the weights.
"""

from functools import lru_cache

import numpy as np

from . import _kernels as kn
from .cyclotomic_algebra import CycRing
from .errors import AdmissibilityError, PrecisionError, SupportError
from .mahler_measures import Measure, phi_bound
from .padic_core import (
    PAdicInt,
    _exponent_int,
    _floor_log,
    _pow1q_terms,
    binomial_row,
    default_u,
    q_of,
    vp,
)


class AuxContext:
    """The etale algebra for the auxiliary prime and the reduction map mod c."""

    def __init__(self, field, aux, p, M):
        self.field = field
        self.aux = aux
        self.c = aux.c
        self.t = aux.t
        self.p = p
        self.M = M
        self.ring = CycRing.aux(self.c, p, M)

    def __repr__(self):
        return f"AuxContext(c={self.c}, t={self.t}, p={self.p}, M={self.M})"

    def at(self, M):
        if M == self.M:
            return self
        return AuxContext(self.field, self.aux, self.p, M)

    def key(self):
        return (self.field.D, self.c, self.t, self.p, self.M)


def additive_char(alpha, ctx):
    """Exponent a mod c with Xi(alpha) = eta^a."""
    x, y = alpha.int_coords()
    return (x + y * ctx.t) % ctx.c


@lru_cache(maxsize=256)
def _b_table(a, K, c, p, M):
    ring = CycRing.aux(c, p, M)
    if a % c == 0:
        raise AdmissibilityError("cone generator lies in the auxiliary prime")
    x = ring.eta_pow(a)
    r = x * (x - 1).invert()
    rK = r**K
    binom = binomial_row(K + 1, K + 2, p, M)
    rows = []
    B = x * rK - x + 1
    rows.append(B.coeffs)
    for k in range(K):
        sign = -1 if (k + 1) % 2 else 1
        B = x * (rK * (sign * binom[k + 1]) + B)
        rows.append(B.coeffs)
    return np.array(rows, dtype=object)


def b_values(a, K, ring):
    """B_{0,K}(eta^a), ..., B_{K,K}(eta^a) by the recurrence, as ring elements."""
    tab = _b_table(a % ring.param, K, ring.param, ring.p, ring.M)
    return [ring.elem(list(row)) for row in tab]


def _cone_weight_data(cone, ctx):
    """A(C, Xi) and the generator exponents."""
    ring = ctx.ring
    a_beta = additive_char(cone.base, ctx)
    exps = [additive_char(l, ctx) for l in cone.gens]
    if any(a == 0 for a in exps):
        raise AdmissibilityError("cone generator lies in the auxiliary prime")
    A = ring.eta_pow(a_beta)
    for a in exps:
        A = A * (1 - ring.eta_pow(a)).invert()
    return A, exps


def _mult_matrix(z):
    """Matrix of multiplication by z in the power basis."""
    ring = z.ring
    cols = [(z * ring.x_pow(j)).coeffs for j in range(ring.deg)]
    return np.array(cols, dtype=object).T


@lru_cache(maxsize=16)
def _gram(c, p, M):
    deg = c - 1
    m = p**M
    G = [[(c - 1) % m if (i + j) % c == 0 else (-1) % m for j in range(deg)] for i in range(deg)]
    return kn.asres(np.array(G, dtype=object), m)


def trace_table(cone, ctx, K):
    """tau[k] = Tr(A * prod_i B_{k_i,K}(Xi(lambda_i))) mod p^M, flattened row-major."""
    m = ctx.p**ctx.M
    A, exps = _cone_weight_data(cone, ctx)
    MA = kn.asres(_mult_matrix(A), m)
    tabs = [kn.asres(_b_table(a % ctx.c, K, ctx.c, ctx.p, ctx.M), m) for a in exps]
    if len(tabs) == 1:
        trv = kn.asres(np.array(ctx.ring.trace_vector()[: ctx.ring.deg], dtype=object), m)
        w = kn.modmatmul(MA.T, trv.reshape(-1, 1), m)
        return kn.modmatmul(tabs[0], w, m).reshape(-1)
    if len(tabs) == 2:
        P1 = kn.modmatmul(tabs[0], MA.T, m)
        G = _gram(ctx.c, ctx.p, ctx.M)
        tau = kn.modmatmul(kn.modmatmul(P1, G, m), tabs[1].T, m)
        return tau.reshape(-1)
    raise NotImplementedError("cones with more than two generators")


def cone_norms(cone, K, modulus):
    """N(beta + k.lambda) mod modulus for all k in {0..K}^g, row-major."""
    field = cone.base.field
    m = modulus
    bx, by = cone.base.int_coords()
    ks = kn.asres(np.arange(K + 1, dtype=object), m)
    if len(cone.gens) == 1:
        lx, ly = cone.gens[0].int_coords()
        X = (bx + kn.mulmod(ks, lx % m, m)) % m
        Y = (by + kn.mulmod(ks, ly % m, m)) % m
    else:
        (l1x, l1y), (l2x, l2y) = (g.int_coords() for g in cone.gens)
        k1 = np.repeat(ks, K + 1)
        k2 = np.tile(ks, K + 1)
        X = (bx + kn.mulmod(k1, l1x % m, m) + kn.mulmod(k2, l2x % m, m)) % m
        Y = (by + kn.mulmod(k1, l1y % m, m) + kn.mulmod(k2, l2y % m, m)) % m
    if field.degree == 1:
        return X
    # N(x + y theta) = x^2 + tr(theta) x y + n(theta) y^2
    if field.D % 4 == 1:
        tr, nt = 1, (1 - field.D) // 4
    else:
        tr, nt = 0, -field.D
    XX = kn.mulmod(X, X, m)
    XY = kn.mulmod(X, Y, m)
    YY = kn.mulmod(Y, Y, m)
    return (XX + kn.mulmod(XY, tr % m, m) + kn.mulmod(YY, nt % m, m)) % m


def _check_norms(N, p):
    q = q_of(p)
    if np.any(N % q != 1 % q):
        raise SupportError("cone element norm is not 1 mod q (omega(N) != 1)")


def _contract(tau, W, m):
    """sum_k tau[k] * W[k, :] mod m."""
    return kn.modmatmul(tau.reshape(1, -1), W, m).reshape(-1)


def _degree(cone):
    return cone.base.field.degree


def cone_measure(cone, ctx, N):
    """F_N(C, c; T) mod (p^M, T^N) with K = (N - 1) d."""
    p, M = ctx.p, ctx.M
    d = _degree(cone)
    K = (N - 1) * d
    V = _floor_log(N - 1, p) if N > 1 else 0
    big = p ** max(M + V, 2)
    norms = cone_norms(cone, K, big)
    _check_norms(norms, p)
    W = kn.binomial_rows(norms, N, p, M)
    tau = trace_table(cone, ctx, K)
    coeffs = _contract(tau, kn.asres(W, p**M), p**M)
    return Measure(p, M, tuple(int(v) for v in coeffs))


def value_K(p, M, d):
    return (p * M + 1) * d if p != 2 else (2 * M + 3) * d


def cone_value(cone, ctx, s):
    """Z_p(C, c; s) = integral of phi_{-s}, by the direct Dirac-sum formula."""
    p, M = ctx.p, ctx.M
    d = _degree(cone)
    K = value_K(p, M, d)
    m = p**M
    norms = cone_norms(cone, K, p ** max(M, 2))
    _check_norms(norms, p)
    minus_s = (-_exponent_int(s, p, M)) % m
    row = binomial_row(minus_s, _pow1q_terms(p, M), p, M)
    W = kn.pow_series(norms, row, p, M)
    tau = trace_table(cone, ctx, K)
    return PAdicInt(int(_contract(tau, W.reshape(-1, 1), m)[0]), p, M)


def iwasawa_K(p, M, d, e, L):
    return (p**e * (p * M + L) - 1) * d


def cone_iwasawa(cone, ctx, L, e=1, u=None):
    """Coefficients of the cone Iwasawa polynomial mod (p^M, X^L)."""
    p, M = ctx.p, ctx.M
    d = _degree(cone)
    K = iwasawa_K(p, M, d, e, L)
    m = p**M
    VL = _floor_log(L - 1, p) if L > 1 else 0
    P = M + VL
    norms = cone_norms(cone, K, p ** (P + e + 1))
    _check_norms(norms, p)
    Lus = kn.lu_array(norms, p, e, P, u)
    rows = kn.binomial_rows(Lus, L, p, M)
    inv = kn.inverse_units(norms % m, p, M)
    W = kn.mulmod(kn.asres(rows, m), inv.reshape(-1, 1), m)
    tau = trace_table(cone, ctx, K)
    return [int(v) for v in _contract(tau, W, m)]


def eval_poly(coeffs, t, m):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * t + c) % m
    return acc


def iwasawa_argument(s, p, M, e=1, u=None):
    """t = u^{1-s} - 1 mod p^M."""
    uu = default_u(p, e) if u is None else u
    from .padic_core import pow1q

    return (pow1q(PAdicInt(uu, p, M), PAdicInt(1 - _exponent_int(s, p, M), p, M)) - 1).residue


def measure_value(cone, ctx, s):
    """Z_p(C, c; s) through the measure and the Mahler vector of phi_{-s}."""
    from .mahler_measures import integrate, phi_s_fn

    p, M = ctx.p, ctx.M
    f = phi_s_fn(PAdicInt(-_exponent_int(s, p, M), p, M), p, M)
    mu = cone_measure(cone, ctx, f.N)
    return integrate(f, mu)
