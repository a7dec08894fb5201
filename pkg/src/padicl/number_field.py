"""Exact arithmetic in Q and real quadratic fields Q(sqrt D).

Elements are pairs of rationals over the integral basis (1, theta) with
theta = (1 + sqrt D)/2 when D = 1 mod 4 and theta = sqrt D otherwise.

Embedding convention: alpha^(2) uses the positive square root of D and
alpha^(1) the negative one.  With this choice the totally positive
fundamental unit eps_+ satisfies eps_+^(2) > 1 > eps_+^(1).

Every comparison between real embeddings is decided by integer arithmetic
on quadratic surds; floats are only used to size search boxes.
"""

from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt, sqrt

from .errors import ConfigError, ResourceError


def _squarefree(n):
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


# --- exact quadratic surds x + y*sqrt(D) ------------------------------------

def surd_sign(x, y, D):
    """Sign of x + y sqrt(D) for rationals x, y (D > 1 not a square)."""
    if y == 0:
        return (x > 0) - (x < 0)
    if x == 0:
        return (y > 0) - (y < 0)
    if x > 0 and y > 0:
        return 1
    if x < 0 and y < 0:
        return -1
    t = x * x - y * y * D
    s = (t > 0) - (t < 0)
    return s if x > 0 else -s


def surd_floor(x, y, D):
    """floor(x + y sqrt(D)) exactly."""
    x, y = Fraction(x), Fraction(y)
    if y == 0:
        return x.numerator // x.denominator
    r = y * y * D
    s = isqrt(r.numerator // r.denominator)
    n = (x.numerator // x.denominator) + (s if y > 0 else -s - 1)
    while surd_sign(x - n, y, D) < 0:
        n -= 1
    while surd_sign(x - (n + 1), y, D) >= 0:
        n += 1
    return n


def surd_ceil(x, y, D):
    return -surd_floor(-Fraction(x), -Fraction(y), D)


def surd_compare(a, b, D):
    """Compare surds a=(x, y), b=(x', y')."""
    return surd_sign(a[0] - b[0], a[1] - b[1], D)


# --- fields and elements ------------------------------------------------------

class Field:
    """Q (D=None) or a real quadratic field Q(sqrt D), D squarefree > 1."""

    def __init__(self, D=None):
        if D is None or D == 1:
            self.D = None
            self.degree = 1
            self.disc = 1
        else:
            if D <= 1 or not _squarefree(D):
                raise ConfigError(f"D={D} must be a squarefree integer > 1")
            self.D = D
            self.degree = 2
            self.disc = D if D % 4 == 1 else 4 * D
        # theta^2 = t0 + t1 * theta
        if self.degree == 2:
            if D % 4 == 1:
                self.theta_sq = (Fraction(D - 1, 4), Fraction(1))
            else:
                self.theta_sq = (Fraction(D), Fraction(0))

    def __repr__(self):
        return "Q" if self.degree == 1 else f"Q(sqrt {self.D})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.D == other.D

    def __hash__(self):
        return hash(self.D)

    @property
    def is_rational(self):
        return self.degree == 1

    def elem(self, a, b=0):
        return FieldElem(self, a, b)

    def one(self):
        return FieldElem(self, 1, 0)

    def theta(self):
        return FieldElem(self, 0, 1)

    def minpoly_theta(self):
        """(c0, c1) with theta^2 - c1 theta - c0 = 0 (integers)."""
        t0, t1 = self.theta_sq
        return int(t0), int(t1)

    def minkowski_bound(self):
        return sqrt(self.disc) / 2 if self.degree == 2 else 1.0

    @cached_property
    def fundamental_unit(self):
        if self.degree == 1:
            return self.elem(-1)
        return _fundamental_unit(self)

    @cached_property
    def eps_plus(self):
        """Fundamental totally positive unit, oriented so eps^(2) > 1."""
        if self.degree == 1:
            return self.one()
        eps = self.fundamental_unit
        if eps.norm() == -1:
            eps = eps * eps
        assert eps.is_totally_positive()
        return eps


class FieldElem:
    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b=0):
        self.field = field
        self.a = Fraction(a)
        self.b = Fraction(b)
        if field.degree == 1 and self.b != 0:
            raise ValueError("rational field element with theta part")

    # surd form x + y sqrt(D) (embedding 2); embedding 1 flips y
    def surd(self):
        if self.field.degree == 1:
            return self.a, Fraction(0)
        if self.field.D % 4 == 1:
            return self.a + self.b / 2, self.b / 2
        return self.a, self.b

    def sign(self, i):
        """Exact sign of the i-th real embedding (i = 1 or 2)."""
        x, y = self.surd()
        if self.field.degree == 1:
            return (x > 0) - (x < 0)
        return surd_sign(x, y if i == 2 else -y, self.field.D)

    def signs(self):
        if self.field.degree == 1:
            return (self.sign(1),)
        return (self.sign(1), self.sign(2))

    def is_totally_positive(self):
        return all(s > 0 for s in self.signs())

    def embedding(self, i):
        """Floating value of the i-th embedding (display and box sizing only)."""
        x, y = self.surd()
        if self.field.degree == 1:
            return float(x)
        r = sqrt(self.field.D)
        return float(x) + (float(y) * r if i == 2 else -float(y) * r)

    def is_integral(self):
        return self.a.denominator == 1 and self.b.denominator == 1

    def coords(self):
        return (self.a, self.b)

    def int_coords(self):
        if not self.is_integral():
            raise ValueError(f"{self} is not integral")
        return (int(self.a), int(self.b))

    def _lift(self, other):
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.field, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElem(self.field, -self.a, -self.b)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.field.degree == 1:
            return FieldElem(self.field, self.a * o.a, 0)
        t0, t1 = self.field.theta_sq
        bb = self.b * o.b
        return FieldElem(
            self.field,
            self.a * o.a + bb * t0,
            self.a * o.b + self.b * o.a + bb * t1,
        )

    __rmul__ = __mul__

    def conj(self):
        if self.field.degree == 1:
            return self
        if self.field.D % 4 == 1:
            return FieldElem(self.field, self.a + self.b, -self.b)
        return FieldElem(self.field, self.a, -self.b)

    def norm(self):
        if self.field.degree == 1:
            return self.a
        return (self * self.conj()).a

    def trace(self):
        if self.field.degree == 1:
            return self.a
        return (self + self.conj()).a

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return FieldElem(self.field, c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._lift(other)
        return self * o.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        if self.field.degree == 1:
            return str(self.a)
        return f"({self.a} + {self.b}*theta)"

    def ratio_surd(self):
        """alpha^(2) / alpha^(1) as a surd (x, y) meaning x + y sqrt(D)."""
        x, y = self.surd()
        D = self.field.D
        # (x + y r) / (x - y r) = (x + y r)^2 / (x^2 - y^2 D)
        den = x * x - y * y * D
        return ((x * x + y * y * D) / den, 2 * x * y / den)


def embedding1_ratio_ceil(g0, g1):
    """ceil(g0^(1) / g1^(1)) exactly."""
    D = g0.field.D
    x0, y0 = g0.surd()
    x1, y1 = g1.surd()
    y0, y1 = -y0, -y1
    den = x1 * x1 - y1 * y1 * D
    P = (x0 * x1 - y0 * y1 * D) / den
    Q = (y0 * x1 - x0 * y1) / den
    return surd_ceil(P, Q, D)


def embedding_ratio_ceil(num, den, i):
    """ceil(num^(i) / den^(i)) exactly."""
    field = num.field
    if field.degree == 1:
        q = num.a / den.a
        return -((-q.numerator) // q.denominator)
    if i == 1:
        return embedding1_ratio_ceil(num, den)
    return embedding1_ratio_ceil(num.conj(), den.conj())


def _fundamental_unit(field, max_steps=10000):
    """Fundamental unit from the continued fraction of theta, oriented eps^(2) > 1."""
    D = field.D
    # theta = (P + sqrt D) / Q
    if D % 4 == 1:
        P, Q = 1, 2
    else:
        P, Q = 0, 1
    h_prev, h = 1, None
    k_prev, k = 0, None
    hm2, hm1 = 0, 1
    km2, km1 = 1, 0
    for _ in range(max_steps):
        a = surd_floor(Fraction(P, Q), Fraction(1, Q), D)
        h = a * hm1 + hm2
        k = a * km1 + km2
        cand = FieldElem(field, h, 0) - FieldElem(field, 0, k)
        if abs(cand.norm()) == 1:
            break
        hm2, hm1 = hm1, h
        km2, km1 = km1, k
        P = a * Q - P
        Q = (D - P * P) // Q
    else:
        raise ResourceError("continued fraction did not produce a unit")
    best = None
    for u in (cand, -cand, cand.inverse(), -cand.inverse()):
        if surd_compare(u.surd(), (Fraction(1), Fraction(0)), D) > 0:
            best = u
            break
    assert best is not None
    return best


# --- ideals ---------------------------------------------------------------

def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def lattice_hnf(vectors):
    """HNF (a, b, c) of the full-rank lattice spanned by integer pairs.

    The lattice equals Z(a, 0) + Z(b, c) with a, c > 0 and 0 <= b < a.
    """
    c = 0
    v0 = 0
    xs = []
    for x, y in vectors:
        if y == 0:
            xs.append(x)
            continue
        if c == 0:
            v0, c = x, y
            continue
        g, s, t = _xgcd(c, y)
        xs.append((y // g) * v0 - (c // g) * x)
        v0, c = s * v0 + t * x, g
    a = 0
    for x in xs:
        a = gcd(a, x)
    if a == 0 or c == 0:
        raise ValueError("lattice is not of full rank")
    if c < 0:
        c, v0 = -c, -v0
    return abs(a), v0 % abs(a), c


class Ideal:
    """Integral ideal in HNF: Z*a + Z*(b + c*theta); for Q just aZ."""

    __slots__ = ("field", "a", "b", "c")

    def __init__(self, field, a, b=0, c=1):
        self.field = field
        self.a, self.b, self.c = a, b, c

    @classmethod
    def from_generators(cls, field, gens):
        gens = [g if isinstance(g, FieldElem) else field.elem(g) for g in gens]
        if field.degree == 1:
            a = 0
            for g in gens:
                if not g.is_integral():
                    raise ValueError("non-integral generator")
                a = gcd(a, int(g.a))
            if a == 0:
                raise ValueError("zero ideal")
            return cls(field, abs(a))
        theta = field.theta()
        vecs = []
        for g in gens:
            for h in (g, g * theta):
                vecs.append(h.int_coords())
        a, b, c = lattice_hnf(vecs)
        return cls(field, a, b, c)

    @classmethod
    def principal(cls, alpha):
        return cls.from_generators(alpha.field, [alpha])

    @classmethod
    def from_int(cls, field, n):
        return cls.from_generators(field, [field.elem(n)])

    @classmethod
    def unit(cls, field):
        return cls(field, 1, 0, 1)

    def key(self):
        return (self.a, self.b, self.c)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.field.degree == 1:
            return f"({self.a})"
        return f"Ideal[{self.a}, {self.b}+{self.c}*theta]"

    def norm(self):
        return self.a * self.c

    def basis(self):
        if self.field.degree == 1:
            return (self.field.elem(self.a),)
        return (self.field.elem(self.a), self.field.elem(self.b, self.c))

    def contains(self, alpha):
        if not isinstance(alpha, FieldElem):
            alpha = self.field.elem(alpha)
        if not alpha.is_integral():
            return False
        x, y = alpha.int_coords()
        if self.field.degree == 1:
            return x % self.a == 0
        if y % self.c:
            return False
        return (x - (y // self.c) * self.b) % self.a == 0

    __contains__ = contains

    def contains_coords(self, x, y):
        if y % self.c:
            return False
        return (x - (y // self.c) * self.b) % self.a == 0

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return Ideal.from_generators(self.field, [g * other for g in self.basis()])
        gens = [g * h for g in self.basis() for h in other.basis()]
        return Ideal.from_generators(self.field, gens)

    def __add__(self, other):
        return Ideal.from_generators(self.field, list(self.basis()) + list(other.basis()))

    def conj(self):
        return Ideal.from_generators(self.field, [g.conj() for g in self.basis()])

    def is_coprime(self, other):
        return (self + other).norm() == 1

    def divides(self, other):
        """self | other, i.e. other is contained in self."""
        return all(self.contains(g) for g in other.basis())

    def reduce(self, alpha):
        """Canonical residue of an integral alpha modulo this ideal, as int pair."""
        x, y = alpha.int_coords() if isinstance(alpha, FieldElem) else alpha
        if self.field.degree == 1:
            return (x % self.a, 0)
        qt, r = divmod(y, self.c)
        x -= qt * self.b
        return (x % self.a, r)

    def residue_elem(self, res):
        return self.field.elem(res[0], res[1])

    def residues(self):
        """All canonical residues modulo the ideal."""
        if self.field.degree == 1:
            return [(x, 0) for x in range(self.a)]
        return [(x, y) for y in range(self.c) for x in range(self.a)]

    def mul_mod(self, r1, r2):
        e = self.field.elem(*r1) * self.field.elem(*r2)
        return self.reduce(e)


def is_ideal_hnf(field, a, b, c):
    """Whether Z a + Z (b + c theta) is closed under multiplication by theta."""
    I = Ideal(field, a, b, c)
    th = field.theta()
    return all(I.contains(g * th) for g in I.basis())


def ideals_of_norm(field, n):
    if field.degree == 1:
        return [Ideal(field, n)]
    out = []
    for c in range(1, n + 1):
        if n % c:
            continue
        a = n // c
        if a % c:
            continue
        for b in range(0, a, c):
            if is_ideal_hnf(field, a, b, c):
                out.append(Ideal(field, a, b, c))
    return out


def theta_roots_mod(field, ell):
    """Roots t of the minimal polynomial of theta modulo the prime ell."""
    if field.degree == 1:
        return [0]
    c0, c1 = field.minpoly_theta()
    return [t for t in range(ell) if (t * t - c1 * t - c0) % ell == 0]


def degree_one_primes(field, ell):
    """Prime ideals of residue degree 1 above ell, with their theta residue."""
    if field.degree == 1:
        return [(Ideal(field, ell), 0)]
    out = []
    for t in theta_roots_mod(field, ell):
        P = Ideal.from_generators(field, [field.elem(ell), field.elem(-t, 1)])
        if P.norm() == ell:
            out.append((P, t))
    return out


# --- principal ideal search --------------------------------------------------

def principal_generator(ideal):
    """Return alpha with (alpha) = ideal, or None when the ideal is not principal.

    Some generator times a power of the fundamental unit eps satisfies
    |alpha^(1)| <= sqrt(N) and |alpha^(2)| <= eps sqrt(N); that box is searched.
    """
    field = ideal.field
    if field.degree == 1:
        return field.elem(ideal.a)
    n = ideal.norm()
    eps = field.fundamental_unit.embedding(2)
    X1 = sqrt(n) * (1 + 1e-9) + 1e-9
    X2 = sqrt(n) * eps * (1 + 1e-9) + 1e-9
    return _search_norm(field, ideal, n, X1, X2)


def _search_norm(field, ideal, n, X1, X2):
    b0, b1 = ideal.basis()
    basis = [b0, b1]
    vec = [(b.embedding(1), b.embedding(2)) for b in basis]
    for _ in range(200):
        n0 = vec[0][0] ** 2 + vec[0][1] ** 2
        n1 = vec[1][0] ** 2 + vec[1][1] ** 2
        if n1 < n0:
            basis.reverse()
            vec.reverse()
            n0, n1 = n1, n0
        mu = round((vec[0][0] * vec[1][0] + vec[0][1] * vec[1][1]) / n0)
        if mu == 0:
            break
        basis[1] = basis[1] - basis[0] * mu
        vec[1] = (vec[1][0] - mu * vec[0][0], vec[1][1] - mu * vec[0][1])
    (p1, p2), (q1, q2) = vec
    det = p1 * q2 - p2 * q1
    # coefficients (u, v): u*p + v*q = (e1, e2)
    U = (abs(q2) * X1 + abs(q1) * X2) / abs(det) + 2
    V = (abs(p2) * X1 + abs(p1) * X2) / abs(det) + 2
    U, V = int(U), int(V)
    if (2 * U + 1) * (2 * V + 1) > 5_000_000:
        raise ResourceError(f"principal search box too large for norm {n}")
    for u in range(-U, U + 1):
        for v in range(0, V + 1):
            if v == 0 and u <= 0:
                continue
            alpha = basis[0] * u + basis[1] * v
            if abs(alpha.norm()) == n:
                return alpha
    return None


def principal_generator_checked(ideal):
    alpha = principal_generator(ideal)
    if alpha is not None:
        assert Ideal.principal(alpha) == ideal
    return alpha
