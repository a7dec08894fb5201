"""Discrete cones and c-admissible cone decompositions for d = 1 and d = 2."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import floor, gcd, log

from .errors import AdmissibilityError, ConfigError
from .number_field import (
    FieldElem,
    Ideal,
    embedding1_ratio_ceil,
    lattice_hnf,
    surd_ceil,
    surd_compare,
    surd_floor,
)
from .rayclass import eps_m as _eps_m
from .rayclass import unit_index


@dataclass(frozen=True)
class Cone:
    """C(beta; lambda_1, ..., lambda_g) = {beta + sum n_i lambda_i : n_i >= 0}."""

    base: FieldElem
    gens: tuple

    @property
    def g(self):
        return len(self.gens)

    def contains(self, alpha):
        return cone_coefficients(self, alpha) is not None

    def to_json(self):
        def enc(x):
            return [str(x.a), str(x.b)] if x.field.degree == 2 else [str(x.a)]

        return {"base": enc(self.base), "generators": [enc(l) for l in self.gens]}


@dataclass
class ConeDecomposition:
    ideal: Ideal
    f: Ideal
    aux: Ideal
    cones: list
    eps_m: FieldElem = None
    stats: dict = dc_field(default_factory=dict)

    def __len__(self):
        return len(self.cones)


def cone_coefficients(cone, alpha):
    """Integers n_i >= 0 with alpha = beta + sum n_i lambda_i, or None."""
    delta = alpha - cone.base
    if cone.g == 1:
        lam = cone.gens[0]
        if delta.field.degree == 1:
            q = delta.a / lam.a
        else:
            if lam.a != 0:
                q = delta.a / lam.a
            else:
                q = delta.b / lam.b
            if delta != lam * q:
                return None
        if q.denominator != 1 or q < 0:
            return None
        return (int(q),)
    l1, l2 = cone.gens
    det = l1.a * l2.b - l1.b * l2.a
    n1 = (delta.a * l2.b - delta.b * l2.a) / det
    n2 = (l1.a * delta.b - l1.b * delta.a) / det
    if n1.denominator != 1 or n2.denominator != 1 or n1 < 0 or n2 < 0:
        return None
    return (int(n1), int(n2))


def _congruent_one(alpha, f):
    return f.contains(alpha - 1)


# --- d = 1 ----------------------------------------------------------------------

def decompose_rational(a, f, aux):
    """The single cone C(b; a f) with b = a (a^{-1} mod f)."""
    field = a.field if isinstance(a, Ideal) else None
    an = a.a if isinstance(a, Ideal) else int(a)
    fn = f.a if isinstance(f, Ideal) else int(f)
    cn = aux.norm() if isinstance(aux, Ideal) else int(aux)
    if gcd(an, fn * cn) != 1:
        raise ConfigError(f"a={an} must be coprime to f*c={fn * cn}")
    from .number_field import Field

    if field is None:
        field = Field()
    b = an * (pow(an, -1, fn) if fn > 1 else 1)
    cone = Cone(field.elem(b), (field.elem(an * fn),))
    return ConeDecomposition(
        Ideal(field, an), Ideal(field, fn), Ideal(field, cn), [cone], field.one()
    )


# --- d = 2 ----------------------------------------------------------------------

def _R(g0, g1):
    """R(g0, g1) = -g0 + ceil(g0^(1)/g1^(1)) g1."""
    return -g0 + g1 * embedding1_ratio_ceil(g0, g1)


def _coords_det(u, v):
    return u.a * v.b - u.b * v.a


def _check_walk(af_index, g0, g1):
    det = _coords_det(g0, g1)
    assert abs(det) == af_index, "walk lost the basis property of af"
    # g0^(1) > g1^(1)
    x0, y0 = g0.surd()
    x1, y1 = g1.surd()
    D = g0.field.D
    assert surd_compare((x0, -y0), (x1, -y1), D) > 0, "embedding-1 order violated"


def pc_points(b0, b1, a_ideal, f):
    """Normal-form lattice points of a in the half-open parallelogram of (b0, b1)
    that are congruent to 1 mod f."""
    field = b0.field
    w0, w1 = a_ideal.basis()
    # coordinates of b0, b1 in the basis (w0, w1) of a
    M = [[w0.a, w1.a], [w0.b, w1.b]]
    detw = M[0][0] * M[1][1] - M[0][1] * M[1][0]

    def in_a_basis(x):
        u = (x.a * M[1][1] - M[0][1] * x.b) / detw
        v = (M[0][0] * x.b - M[1][0] * x.a) / detw
        assert u.denominator == 1 and v.denominator == 1
        return int(u), int(v)

    u0 = in_a_basis(b0)
    u1 = in_a_basis(b1)
    if u0[0] * u1[1] - u0[1] * u1[0] == 0:
        raise ConfigError("pc_points: dependent generators")
    A, B, C = lattice_hnf([u0, u1])
    det = _coords_det(b0, b1)
    out = []
    for j in range(C):
        for i in range(A):
            alpha = w0 * i + w1 * j
            if not _congruent_one(alpha, f):
                continue
            s = (alpha.a * b1.b - alpha.b * b1.a) / det
            t = (b0.a * alpha.b - b0.b * alpha.a) / det
            s2 = s - (-((-s.numerator) // s.denominator)) + 1
            t2 = t - (t.numerator // t.denominator)
            out.append((s2, t2, b0 * s2 + b1 * t2))
    out.sort(key=lambda z: (z[0], z[1]))
    return [z[2] for z in out]


def decompose_quadratic(a_ideal, f, aux, eps=None):
    """Algorithm of the convexity-polygon walk (d = 2)."""
    field = a_ideal.field
    if not a_ideal.is_coprime(f) or not a_ideal.is_coprime(aux):
        raise ConfigError("ideal must be coprime to f and to the auxiliary prime")
    if eps is None:
        eps = _eps_m(field, f)
    af = a_ideal * f
    index = af.norm()
    # Step 1: af = Zg + Zh with g in N
    g = field.elem(af.a)
    h = field.elem(af.b, af.c)
    # Step 2: orientation
    if surd_compare(_emb(h, 2), _emb(h, 1), field.D) < 0:
        h = -h
    x1, y1 = _emb(h, 1)
    h = h + g * surd_ceil(-x1 / g.a, -y1 / g.a, field.D)
    g0, g1 = g, h
    # Step 3
    steps = 0
    while surd_compare(_emb(g1, 2), _emb(g0, 2), field.D) < 0:
        g0, g1 = g1, _R(g0, g1)
        steps += 1
    # Step 4
    if aux.contains(g0):
        g0, g1 = g1, _R(g0, g1)
    _check_walk(index, g0, g1)
    g_last = g0 * eps
    cones = []
    last_ratio = g0.ratio_surd()
    guard = 0
    while g0 != g_last:
        guard += 1
        if guard > 100000:
            raise AssertionError("walk did not reach g_last")
        if not aux.contains(g1):
            b0, b1 = g0, g1
            g0, g1 = g1, _R(g0, g1)
        else:
            g2 = _R(g0, g1)
            b0, b1 = g0, g2
            g0, g1 = g2, _R(g1, g2)
        _check_walk(index, g0, g1)
        r = g0.ratio_surd()
        assert surd_compare(r, last_ratio, field.D) > 0, "ratio must increase"
        last_ratio = r
        if aux.contains(b0) or aux.contains(b1):
            raise AdmissibilityError("generator in the auxiliary prime")
        for beta in pc_points(b0, b1, a_ideal, f):
            cones.append(Cone(beta, (b0, b1)))
    dec = ConeDecomposition(a_ideal, f, aux, cones, eps)
    dec.stats = {"count": len(cones), "walk_start": g_last * eps.inverse()}
    return dec


def _emb(x, i):
    a, b = x.surd()
    return (a, b) if i == 2 else (a, -b)


def decompose(a_ideal, f, aux):
    if a_ideal.field.degree == 1:
        return decompose_rational(a_ideal, f, aux)
    return decompose_quadratic(a_ideal, f, aux)


# --- brute-force coverage check -------------------------------------------------

@dataclass
class CoverageReport:
    checked: int
    covered_once: int
    duplicates: list
    misses: list

    @property
    def ok(self):
        return not self.duplicates and not self.misses


def verify_decomposition(dec, height_bound):
    """Count cone memberships of every alpha in a cap E_m up to the height bound,
    modulo the totally positive units congruent to 1 mod f."""
    field = dec.ideal.field
    if field.degree == 1:
        return _verify_rational(dec, height_bound)
    return _verify_quadratic(dec, height_bound)


def _verify_rational(dec, B):
    a, f = dec.ideal.a, dec.f.a
    dup, miss, once, n = [], [], 0, 0
    for x in range(a, B + 1, a):
        if (x - 1) % f:
            continue
        n += 1
        alpha = dec.ideal.field.elem(x)
        hits = sum(1 for C in dec.cones if C.contains(alpha))
        if hits == 0:
            miss.append(alpha)
        elif hits > 1:
            dup.append(alpha)
        else:
            once += 1
    return CoverageReport(n, once, dup, miss)


def _verify_quadratic(dec, B):
    import numpy as np

    field = dec.ideal.field
    D = field.D
    w0, w1 = dec.ideal.basis()
    e01, e02 = w0.embedding(1), w0.embedding(2)
    e11, e12 = w1.embedding(1), w1.embedding(2)
    det = e01 * e12 - e02 * e11
    # coefficient bounds for points with 0 < alpha^(i) <= B
    corners = [(x, y) for x in (0, B) for y in (0, B)]
    us = [(x * e12 - y * e11) / det for x, y in corners]
    vs = [(e01 * y - e02 * x) / det for x, y in corners]
    u = np.arange(floor(min(us)) - 1, floor(max(us)) + 2)
    v = np.arange(floor(min(vs)) - 1, floor(max(vs)) + 2)
    U, V = np.meshgrid(u, v, indexing="ij")
    U, V = U.ravel(), V.ravel()
    E1 = U * e01 + V * e11
    E2 = U * e02 + V * e12
    mask = (E1 > 0) & (E2 > 0) & (E1 <= B + 1e-6) & (E2 <= B + 1e-6)
    U, V = U[mask], V[mask]
    # congruence alpha = 1 mod f, with integer coordinates
    X = U * int(w0.a) + V * int(w1.a)
    Y = U * int(w0.b) + V * int(w1.b)
    f = dec.f
    ok = (Y % f.c == 0) & (((X - 1) - (Y // f.c) * f.b) % f.a == 0)
    X, Y = X[ok], Y[ok]
    eps = dec.eps_m
    rho = eps.ratio_surd()
    log_rho = log(float(rho[0]) + float(rho[1]) * D**0.5)
    ref = dec.cones[0].base
    lo = min(_ratio_float(C.base) for C in dec.cones)
    cones = [
        (
            int(C.base.a), int(C.base.b),
            [(int(l.a), int(l.b)) for l in C.gens],
        )
        for C in dec.cones
    ]
    eps_pows = {}

    def eps_pow(j):
        if j not in eps_pows:
            eps_pows[j] = eps**j
        return eps_pows[j]

    dup, miss, once = [], [], 0
    for x, y in zip(X.tolist(), Y.tolist()):
        alpha = field.elem(x, y)
        if not (alpha.sign(1) > 0 and alpha.sign(2) > 0):
            continue
        if surd_compare(_emb(alpha, 1), (B, 0), D) > 0 or surd_compare(_emb(alpha, 2), (B, 0), D) > 0:
            continue
        r = _ratio_float(alpha)
        j0 = int(round((log(lo) - log(r)) / log_rho))
        hits = 0
        for j in range(j0 - 2, j0 + 3):
            beta = alpha * eps_pow(j)
            bx, by = int(beta.a), int(beta.b)
            for cx, cy, gens in cones:
                dx, dy = bx - cx, by - cy
                (l1x, l1y), (l2x, l2y) = gens
                dt = l1x * l2y - l1y * l2x
                n1 = dx * l2y - dy * l2x
                n2 = l1x * dy - l1y * dx
                if dt < 0:
                    dt, n1, n2 = -dt, -n1, -n2
                if n1 >= 0 and n2 >= 0 and n1 % dt == 0 and n2 % dt == 0:
                    hits += 1
        if hits == 0:
            miss.append(alpha)
        elif hits > 1:
            dup.append(alpha)
        else:
            once += 1
    return CoverageReport(len(miss) + len(dup) + once, once, dup, miss)


def _ratio_float(x):
    return x.embedding(2) / x.embedding(1)
