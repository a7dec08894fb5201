"""p-adic L-values and Iwasawa series of ray class characters.

Every result is a certificate: a pair (beta, gamma) of elements of the
character ring with gamma * L = beta, or a pair of truncated polynomials
(B, C) with C(X) * I(X) = B(X).  Quotients are offered only when gamma is a
unit.
"""

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import cone_zeta as cz
from .errors import ConfigError, PoleError, PrecisionError, SingularElement
from .number_field import Field, Ideal
from .padic_core import (
    PAdicInt,
    Lu,
    _exponent_int,
    _floor_log,
    angle,
    binomial_row,
    default_u,
    pow1q,
    teichmuller,
)
from .rayclass import (
    Modulus,
    RayClassGroup,
    choose_aux_prime,
    compute_e,
    kappa_twist,
    trivial_character,
)
from .shintani import decompose


# --- setup and caches ---------------------------------------------------------

class _Cache:
    """Process-wide memo for groups, decompositions and per-cone results."""

    def __init__(self):
        self.groups = {}
        self.decomps = {}
        self.cones = {}
        self.hits = 0
        self.misses = 0

    def clear(self):
        self.__init__()

    def get(self, table, key, build):
        store = getattr(self, table)
        if key in store:
            self.hits += 1
            return store[key]
        self.misses += 1
        val = store[key] = build()
        return val


CACHE = _Cache()


def as_field(E):
    if isinstance(E, Field):
        return E
    return Field(None if E in (None, 1) else int(E))


def as_modulus_ideal(field, f):
    if isinstance(f, Ideal):
        return f
    if isinstance(f, int):
        return Ideal.from_int(field, f)
    return Ideal.from_generators(field, [field.elem(*g) if isinstance(g, tuple) else field.elem(g) for g in f])


def ray_class_group(E, f):
    field = as_field(E)
    fi = as_modulus_ideal(field, f)
    return CACHE.get("groups", (field.D, fi.key()), lambda: RayClassGroup(field, fi))


@dataclass
class Setup:
    field: Field
    group: RayClassGroup
    chi: object
    p: int
    e: int
    aux: object
    reps: list
    decomps: list

    @property
    def f(self):
        return self.group.f

    def cones(self):
        return [c for d in self.decomps for c in d.cones]


def prepare(E, f, chi, p, m=1, aux=None, exclude=()):
    """Validate hypotheses, pick the auxiliary prime and decompose every class."""
    field = as_field(E)
    fi = as_modulus_ideal(field, f)
    Modulus(field, fi).check_h1(p)
    group = ray_class_group(field, fi)
    if chi is None:
        chi = trivial_character(group)
    chi.check_p(p)
    twisted = kappa_twist(chi, m)
    e, _ = compute_e(field, p)
    if aux is None:
        aux = choose_aux_prime(field, group, twisted, p, exclude=exclude)
    reps = group.representatives(avoid=aux.ideal)
    decomps = [
        CACHE.get("decomps", (field.D, I.key(), fi.key(), aux.ideal.key()), lambda I=I: decompose(I, fi, aux.ideal))
        for I in reps
    ]
    return Setup(field, group, twisted, p, e, aux, reps, decomps)


def _cone_key(cone, aux):
    return (cone.base, cone.gens, aux.c, aux.t)


def _cached_cone(kind, cone, ctx, arg, fn):
    return CACHE.get("cones", (kind,) + _cone_key(cone, ctx.aux) + (ctx.p, ctx.M, arg), fn)


def _norm_factor(ideal, s, p, M):
    """omega(N a) <N a>^s."""
    N = PAdicInt(ideal.norm(), p, M)
    return teichmuller(N) * pow1q(angle(N), s)


def _is_one(s, p, M):
    return (_exponent_int(s, p, M) - 1) % p**M == 0


# --- measures and values --------------------------------------------------------

def partial_zeta_measure(setup, i, M, N):
    """Sum of the cone measures over the decomposition of the i-th representative."""
    ctx = cz.AuxContext(setup.field, setup.aux, setup.p, M)
    total = None
    for cone in setup.decomps[i].cones:
        mu = _cached_cone("measure", cone, ctx, N, lambda cone=cone: cz.cone_measure(cone, ctx, N))
        total = mu if total is None else total + mu
    return total


def twisted_partial_zeta_value(setup, i, s, M):
    """omega(N a) <N a>^s * sum over cones of the integral of phi_{-s}."""
    ctx = cz.AuxContext(setup.field, setup.aux, setup.p, M)
    sk = _exponent_int(s, setup.p, M)
    total = PAdicInt(0, setup.p, M)
    for cone in setup.decomps[i].cones:
        total = total + _cached_cone("value", cone, ctx, sk, lambda cone=cone: cz.cone_value(cone, ctx, sk))
    return _norm_factor(setup.reps[i], sk, setup.p, M) * total


@dataclass
class LValueCertificate:
    beta: object
    gamma: object
    p: int
    M: int
    s: object
    context: dict = dc_field(default_factory=dict)
    timing_ms: float = None

    def quotient(self):
        """beta / gamma when gamma is a unit."""
        if self.gamma.valuation() != 0:
            raise SingularElement("gamma is not a unit")
        if isinstance(self.gamma, PAdicInt):
            return self.beta * self.gamma.inverse()
        return self.beta * self.gamma.invert()

    def matches(self, exact):
        """gamma * exact == beta mod p^M, for an exact Fraction or ExactCyc value."""
        return certificate_matches(self.beta, self.gamma, exact, self.p, self.M)

    def to_json(self, timing=False):
        out = dict(self.context)
        out.update({"p": self.p, "M": self.M, "beta": coeff_vector(self.beta), "gamma": coeff_vector(self.gamma)})
        if timing and self.timing_ms is not None:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out


def coeff_vector(x):
    if isinstance(x, PAdicInt):
        return [str(x.residue)]
    return [str(c) for c in x.coeffs]


def _scalarize(x):
    """Collapse an element of the trivial character ring to a PAdicInt."""
    if hasattr(x, "ring") and x.ring.deg == 1:
        return x.scalar_value()
    return x


def certificate_matches(beta, gamma, exact, p, M):
    from .oracle import ExactCyc

    if isinstance(exact, ExactCyc) and exact.deg == 1:
        exact = exact.coeffs[0]
    if isinstance(exact, ExactCyc):
        den = exact.denominator()
        num = exact * den
        ring = beta.ring
        A = ring.elem(num.reduce(p, M))
        return beta * den == gamma * A
    exact = Fraction(exact)
    return beta * exact.denominator == gamma * exact.numerator


def _context(setup, **extra):
    field = setup.field
    ctx = {
        "field": "Q" if field.degree == 1 else f"Q(sqrt({field.D}))",
        "modulus": setup.f.describe() if hasattr(setup.f, "describe") else str(setup.f),
        "character": setup.chi.describe(),
        "aux_prime": {"c": setup.aux.c, "t": setup.aux.t},
    }
    ctx.update(extra)
    return ctx


def _s_json(s, p, M):
    return str(_exponent_int(s, p, M))


def measure_zeta_value(setup, i, s, M):
    """Same value as twisted_partial_zeta_value, by integrating phi_{-s} against the measure."""
    from .mahler_measures import integrate, phi_s_fn

    p = setup.p
    sk = _exponent_int(s, p, M)
    f = phi_s_fn(PAdicInt(-sk, p, M), p, M)
    mu = partial_zeta_measure(setup, i, M, f.N)
    return _norm_factor(setup.reps[i], sk, p, M) * integrate(f, mu)


def l_value(E, f, chi, p, s, M, m=1, aux=None, setup=None, exclude=(), path="value"):
    """Certificate (beta, gamma) for L_{p,f}(chi; s) at precision p^M.

    ``path`` selects the per-class evaluation: "value" sums cone values
    directly, "measure" integrates against the partial zeta measures.
    """
    if path not in ("value", "measure"):
        raise ConfigError(f"unknown evaluation path {path!r}")
    zeta = twisted_partial_zeta_value if path == "value" else measure_zeta_value
    t0 = time.perf_counter()
    if setup is None:
        setup = prepare(E, f, chi, p, m, aux, exclude)
    chi = setup.chi
    ring = chi.ring(p, M)
    if chi.is_trivial(p, M) and _is_one(s, p, M):
        raise PoleError("the L-function of the trivial character has a pole at s = 1")
    sk = _exponent_int(s, p, M)
    beta = ring.zero()
    for i, I in enumerate(setup.reps):
        beta = beta + chi.inv_value(I, p, M) * zeta(setup, i, sk, M)
    c = PAdicInt(setup.aux.c, p, M)
    gamma = chi.value(setup.aux.ideal, p, M) * pow1q(angle(c), 1 - sk) - 1
    stats = {"count": len(setup.cones()), "max_K": cz.value_K(p, M, setup.field.degree)}
    cert = LValueCertificate(
        _scalarize(beta), _scalarize(gamma), p, M, sk,
        _context(setup, s=_s_json(sk, p, M), cone_stats=stats),
        (time.perf_counter() - t0) * 1000,
    )
    return cert


# --- Iwasawa series -------------------------------------------------------------

@dataclass
class IwasawaSeriesCert:
    B: list
    C: list
    p: int
    M: int
    L: int
    e: int
    u: int
    context: dict = dc_field(default_factory=dict)
    timing_ms: float = None
    trivial: bool = False

    def to_json(self, timing=False):
        out = dict(self.context)
        out.update({
            "p": self.p, "M": self.M, "L": self.L, "e": self.e, "u": self.u,
            "B": [coeff_vector(b) for b in self.B],
            "C": [coeff_vector(c) for c in self.C],
        })
        if timing and self.timing_ms is not None:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out


def _lu_residue(n, p, e, P, u):
    return Lu(PAdicInt(n, p, P + e), u, e).residue


def _binomial_series(a, L, p, M):
    """(1 + X)^a mod (p^M, X^L) for a p-adic exponent given mod p^(M + V)."""
    return binomial_row(a, L, p, M)


def iwasawa_series(E, f, chi, p, M, L, m=1, aux=None, u=None, setup=None, exclude=()):
    """Polynomials B, C with C(u^s - 1) L_p(chi; 1 - s) = B(u^s - 1) mod (p^M, deg L)."""
    t0 = time.perf_counter()
    if setup is None:
        setup = prepare(E, f, chi, p, m, aux, exclude)
    chi = setup.chi
    e = setup.e
    uu = default_u(p, e) if u is None else int(u)
    ring = chi.ring(p, M)
    pm = p**M
    V = _floor_log(L - 1, p) if L > 1 else 0
    P = M + V
    ctx = cz.AuxContext(setup.field, setup.aux, p, M)
    B = [ring.zero() for _ in range(L)]
    for i, I in enumerate(setup.reps):
        A = [0] * L
        for cone in setup.decomps[i].cones:
            coeffs = _cached_cone(
                "iwasawa", cone, ctx, (L, e, uu),
                lambda cone=cone: cz.cone_iwasawa(cone, ctx, L, e, uu),
            )
            A = [(a + b) % pm for a, b in zip(A, coeffs)]
        NI = I.norm()
        row = _binomial_series(-_lu_residue(NI, p, e, P, uu), L, p, M)
        prod = [sum(row[j] * A[n - j] for j in range(n + 1)) * NI % pm for n in range(L)]
        w = chi.inv_value(I, p, M)
        B = [b + w * c for b, c in zip(B, prod)]
    crow = _binomial_series(_lu_residue(setup.aux.c, p, e, P, uu), L, p, M)
    chic = chi.value(setup.aux.ideal, p, M)
    C = [chic * r for r in crow]
    C[0] = C[0] - 1
    stats = {"count": len(setup.cones()), "max_K": cz.iwasawa_K(p, M, setup.field.degree, e, L)}
    return IwasawaSeriesCert(
        [_scalarize(b) for b in B], [_scalarize(c) for c in C], p, M, L, e, uu,
        _context(setup, cone_stats=stats),
        (time.perf_counter() - t0) * 1000,
        trivial=chi.is_trivial(p, M),
    )


def _eval(coeffs, t):
    acc = None
    for c in reversed(coeffs):
        acc = c if acc is None else acc * t + c
    return acc


def evaluate_iwasawa(cert, s):
    """(beta, gamma) at s from the series, via t = u^(1-s) - 1."""
    p, M = cert.p, cert.M
    sk = _exponent_int(s, p, M)
    if cert.trivial and _is_one(sk, p, M):
        raise PoleError("the L-function of the trivial character has a pole at s = 1")
    t = cz.iwasawa_argument(sk, p, M, cert.e, cert.u)
    beta = _eval(cert.B, PAdicInt(t, p, M))
    gamma = _eval(cert.C, PAdicInt(t, p, M))
    ctx = dict(cert.context)
    ctx["s"] = _s_json(sk, p, M)
    return LValueCertificate(beta, gamma, p, M, sk, ctx)


# --- invariants -----------------------------------------------------------------

@dataclass
class Invariants:
    lam: int = None
    mu: int = None
    status: str = "indeterminate"

    def to_json(self):
        return {"lambda": self.lam, "mu": self.mu, "status": self.status}


def _valuation(x):
    return x.valuation() if not isinstance(x, PAdicInt) else (x.valuation() if x.residue else x.M)


def series_quotient(B, C):
    """B * C^{-1} mod X^L, with C(0) a unit."""
    c0 = C[0]
    if _valuation(c0) != 0:
        raise SingularElement("C(0) is not a unit; the series quotient is undefined")
    inv = c0.inverse() if isinstance(c0, PAdicInt) else c0.invert()
    out = []
    for n in range(len(B)):
        acc = B[n]
        for j in range(1, n + 1):
            acc = acc - C[j] * out[n - j]
        out.append(acc * inv)
    return out


def lambda_mu_invariants(cert):
    """lambda and mu of I = B / C.

    A positive minimum valuation among the truncated coefficients is only an
    upper bound for mu, so it is reported with status "uncertified".
    """
    I = series_quotient(cert.B, cert.C)
    vals = [_valuation(c) for c in I]
    mu = min(vals)
    if mu >= cert.M:
        return Invariants(None, None, "indeterminate")
    lam = vals.index(mu)
    return Invariants(lam, mu, "certified" if mu == 0 else "uncertified")
