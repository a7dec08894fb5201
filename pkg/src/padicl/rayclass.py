"""Moduli, ray class groups, characters and the auxiliary prime.

Everything here is brute force at desk scale.  A ray class is encoded by a
hashable key (ordinary class index, canonical element of
(Z_E/f)^x x {+-1}^d modulo the image of the global units); products of keys
are computed with a small table of relations between the chosen ordinary
class representatives.
"""

from functools import cached_property
from math import gcd

from .cyclotomic_algebra import CycRing
from .errors import ConfigError, NoAdmissiblePrime, ResourceError, UnsupportedCharacter
from .number_field import (
    Field,
    Ideal,
    degree_one_primes,
    ideals_of_norm,
    principal_generator,
)
from .padic_core import PAdicInt, angle, is_prime, q_of, teichmuller, vp


# --- Smith normal form ------------------------------------------------------

def smith_normal_form(rows, ncols):
    """Return (diag, Q, Qinv) with rows * Q diagonal (up to row operations).

    ``rows`` is a list of integer relation vectors of length ``ncols``.
    """
    A = [list(r) for r in rows]
    m, n = len(A), ncols
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    Qi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]
        Qi[i], Qi[j] = Qi[j], Qi[i]

    def add_col(dst, src, k):
        # col_dst += k * col_src
        for row in A:
            row[dst] += k * row[src]
        for row in Q:
            row[dst] += k * row[src]
        Qi[src] = [a - k * b for a, b in zip(Qi[src], Qi[dst])]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            swap_cols(t, j)
        while True:
            piv = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    k = A[i][t] // piv
                    A[i] = [a - k * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    k = A[t][j] // piv
                    add_col(j, t, -k)
                    if A[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            bad = None
            for i in range(t + 1, m):
                if any(A[i][j] % piv for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
        diag.append(A[t][t])
        t += 1
    diag += [0] * (n - len(diag))
    return diag, Q, Qi


class FiniteAbelianGroup:
    """Structure of an explicitly enumerated finite abelian group."""

    def __init__(self, elements, mul, identity):
        self.mul = mul
        self.identity = identity
        elements = sorted(set(elements))
        self.order = len(elements)
        # greedy generating set
        gens = []
        span = {identity}
        for x in sorted(elements, key=lambda z: (-self._elem_order(z), z)):
            if len(span) == self.order:
                break
            if x in span:
                continue
            gens.append(x)
            span = self._close(span, x)
        # exponent vectors and relations
        r = len(gens)
        vec = {identity: (0,) * r}
        frontier = [identity]
        rels = []
        while frontier:
            nxt = []
            for z in frontier:
                for i, g in enumerate(gens):
                    w = mul(z, g)
                    v = list(vec[z])
                    v[i] += 1
                    if w in vec:
                        rel = [a - b for a, b in zip(v, vec[w])]
                        if any(rel):
                            rels.append(rel)
                    else:
                        vec[w] = tuple(v)
                        nxt.append(w)
            frontier = nxt
        if len(vec) != self.order:
            raise AssertionError("generating set does not span the group")
        if r == 0:
            self.invariants = []
            self._dlog = {identity: ()}
            self.generators = []
            return
        diag, Q, Qi = smith_normal_form(rels, r)
        keep = [i for i, d in enumerate(diag) if d != 1]
        self.invariants = [diag[i] for i in keep]
        self._dlog = {}
        for z, x in vec.items():
            y = [sum(x[a] * Q[a][i] for a in range(r)) for i in range(r)]
            self._dlog[z] = tuple(y[i] % diag[i] for i in keep)
        self.generators = []
        for i in keep:
            z = identity
            for a in range(r):
                z = self._pow(z, gens[a], Qi[i][a] % self._elem_order(gens[a]))
            self.generators.append(z)
        self.gens_original = gens

    def _pow(self, z, g, k):
        for _ in range(k):
            z = self.mul(z, g)
        return z

    def _elem_order(self, x):
        k, z = 1, x
        while z != self.identity:
            z = self.mul(z, x)
            k += 1
        return k

    def _close(self, span, x):
        out = set(span)
        layer = set(span)
        while True:
            layer = {self.mul(z, x) for z in layer} - out
            if not layer:
                return out
            out |= layer

    def dlog(self, z):
        return self._dlog[z]

    def exponent(self):
        e = 1
        for d in self.invariants:
            e = e * d // gcd(e, d)
        return e


# --- moduli and ray class groups -----------------------------------------------

class Modulus:
    """f times all real places (the infinite part is forced)."""

    def __init__(self, field, f):
        if isinstance(f, int):
            f = Ideal.from_int(field, f)
        self.field = field
        self.f = f

    def __repr__(self):
        return f"Modulus({self.f} * oo)"

    def check_h1(self, p):
        q = q_of(p)
        if not Ideal.from_int(self.field, q).divides(self.f):
            raise ConfigError(f"(H1) fails: q={q} does not divide f={self.f}")


class RayClassGroup:
    """Cl_m(E) for m = f * (all real places)."""

    def __init__(self, field, f, norm_bound=20000):
        if isinstance(f, int):
            f = Ideal.from_int(field, f)
        self.field = field
        self.f = f
        self.norm_bound = norm_bound
        nf = f.norm()
        if nf > 50000:
            raise ResourceError(f"N(f)={nf} exceeds the desk-scale bound")
        self.ndim = field.degree
        self._units_mod_f = [
            r for r in f.residues() if self._is_unit_mod_f(r)
        ]
        self._H = self._unit_image()
        self._build_class_group()
        g_elems = [
            (r, s) for r in self._units_mod_f for s in self._sign_vectors()
        ]
        elems = {(c, self._canon(g)) for c in range(len(self.class_reps)) for g in g_elems}
        self.identity = (0, self._canon((f.reduce(field.one()), (1,) * self.ndim)))
        self.group = FiniteAbelianGroup(elems, self.mul, self.identity)
        self.h = self.group.order
        self._reps = {}

    # G_m helpers
    def _sign_vectors(self):
        if self.ndim == 1:
            return [(1,), (-1,)]
        return [(a, b) for a in (1, -1) for b in (1, -1)]

    def _is_unit_mod_f(self, r):
        if self.field.degree == 1:
            return gcd(r[0], self.f.a) == 1
        I = Ideal.from_generators(self.field, [self.field.elem(*r)] + list(self.f.basis()))
        return I.norm() == 1

    def _gmul(self, g, h):
        return (self.f.mul_mod(g[0], h[0]), tuple(a * b for a, b in zip(g[1], h[1])))

    def _elem_to_g(self, alpha):
        return (self.f.reduce(alpha), alpha.signs())

    def _unit_image(self):
        field = self.field
        gens = [self._elem_to_g(field.elem(-1))]
        if field.degree == 2:
            gens.append(self._elem_to_g(field.fundamental_unit))
        one = (self.f.reduce(field.one()), (1,) * self.ndim)
        H = {one}
        frontier = [one]
        while frontier:
            nxt = []
            for z in frontier:
                for g in gens:
                    w = self._gmul(z, g)
                    if w not in H:
                        H.add(w)
                        nxt.append(w)
            frontier = nxt
        return sorted(H)

    def _canon(self, g):
        return min(self._gmul(g, h) for h in self._H)

    # ordinary class group
    def _build_class_group(self):
        field = self.field
        one = Ideal.unit(field)
        if field.degree == 1:
            self.class_reps = [one]
            self._cls_table = {(0, 0): (0, self._elem_to_g(field.one()))}
            return
        nf = self.f.norm()
        reps = [one]
        for n in range(2, int(field.minkowski_bound()) + 1):
            for I in ideals_of_norm(field, n):
                if all(principal_generator(I * J.conj()) is None for J in reps):
                    reps.append(I)
        # replace representatives by equivalent ideals of norm prime to N(f)
        good = []
        for J in reps:
            if gcd(J.norm(), nf) == 1:
                good.append(J)
                continue
            found = None
            for n in range(2, self.norm_bound):
                if gcd(n, nf) != 1:
                    continue
                for I in ideals_of_norm(field, n):
                    if principal_generator(I * J.conj()) is not None:
                        found = I
                        break
                if found:
                    break
            if found is None:
                raise ResourceError("no class representative of norm prime to N(f)")
            good.append(found)
        self.class_reps = good
        h = len(good)
        self._cls_table = {}
        for i in range(h):
            for j in range(h):
                prod = good[i] * good[j]
                for k in range(h):
                    alpha = principal_generator(prod * good[k].conj())
                    if alpha is not None:
                        self._cls_table[(i, j)] = (k, self._scaled_g(alpha, good[k].norm()))
                        break
                else:
                    raise AssertionError("class group table incomplete")

    def _scaled_g(self, alpha, n):
        """G_m image of alpha / n for an integer n prime to f."""
        inv = pow(n, -1, self.f.a) if self.f.a > 1 else 0
        r = self.f.reduce(alpha * inv) if self.f.a > 1 else self.f.reduce(alpha)
        return (r, alpha.signs())

    def class_index(self, ideal):
        field = self.field
        if field.degree == 1:
            return 0, field.elem(ideal.a)
        for c, J in enumerate(self.class_reps):
            alpha = principal_generator(ideal * J.conj())
            if alpha is not None:
                return c, alpha
        raise AssertionError("ideal class not found")

    # public API
    def key(self, ideal):
        if not ideal.is_coprime(self.f):
            raise ConfigError(f"{ideal} is not coprime to f={self.f}")
        c, alpha = self.class_index(ideal)
        g = self._scaled_g(alpha, self.class_reps[c].norm())
        return (c, self._canon(g))

    def key_of_element(self, alpha):
        """Ray class of the principal ideal (alpha)."""
        return self.key(Ideal.principal(alpha))

    def mul(self, k1, k2):
        c, delta = self._cls_table[(k1[0], k2[0])]
        return (c, self._canon(self._gmul(self._gmul(k1[1], k2[1]), delta)))

    def inverse(self, k):
        z = k
        prev = self.identity
        while True:
            w = self.mul(z, k)
            if w == self.identity:
                return z
            prev, z = z, w

    def dlog(self, ideal):
        return self.group.dlog(self.key(ideal))

    @property
    def invariants(self):
        return list(self.group.invariants)

    def representatives(self, avoid=None):
        """One integral ideal per ray class, coprime to f (and to ``avoid``).

        Ideals are scanned by increasing norm, so the choice is deterministic.
        """
        tag = avoid.key() if avoid is not None else None
        if tag in self._reps:
            return self._reps[tag]
        found = {}
        n = 1
        while len(found) < self.h:
            if n > self.norm_bound:
                raise ResourceError(f"class representatives need norm > {self.norm_bound}")
            for I in ideals_of_norm(self.field, n):
                if not I.is_coprime(self.f):
                    continue
                if avoid is not None and not I.is_coprime(avoid):
                    continue
                k = self.key(I)
                if k not in found:
                    found[k] = I
            n += 1
        reps = sorted(found.items(), key=lambda kv: (kv[1].norm(), kv[1].key()))
        out = [I for _, I in reps]
        self._reps[tag] = out
        return out

    def generator_ideals(self):
        """Representative ideals of the cyclic generators."""
        reps = {self.key(I): I for I in self.representatives()}
        return [reps[g] for g in self.group.generators]

    def characters(self):
        """All characters, each in reduced form."""
        inv = self.invariants
        e = self.group.exponent()
        out = []

        def rec(i, acc):
            if i == len(inv):
                out.append(Character(self, e, acc).reduced())
                return
            step = e // inv[i]
            for t in range(inv[i]):
                rec(i + 1, acc + [t * step])

        rec(0, [])
        return out

    @cached_property
    def unit_index(self):
        return unit_index(self.field, self.f)


def unit_index(field, f):
    """Least i >= 1 with eps_+^i = 1 mod f."""
    if field.degree == 1:
        return 1
    if isinstance(f, int):
        f = Ideal.from_int(field, f)
    one = f.reduce(field.one())
    eps = f.reduce(field.eps_plus)
    cur = eps
    i = 1
    while cur != one:
        cur = f.mul_mod(cur, eps)
        i += 1
        if i > f.norm() + 1:
            raise AssertionError("unit order search overran")
    return i


def eps_m(field, f):
    return field.eps_plus ** unit_index(field, f)


# --- characters ---------------------------------------------------------------

class Character:
    """chi(h_j) = zeta_n^(exps[j]) on the cyclic generators h_j."""

    def __init__(self, group, n, exps):
        inv = group.invariants
        if len(exps) != len(inv):
            raise ConfigError(f"character needs {len(inv)} exponents, got {len(exps)}")
        for d, a in zip(inv, exps):
            if (a * d) % n:
                raise ConfigError(f"exponent {a} is not compatible with a cyclic factor of order {d}")
        self.group = group
        self.n = n
        self.exps = [a % n for a in exps]

    def __repr__(self):
        return f"Character(n={self.n}, exps={self.exps})"

    @property
    def order(self):
        g = self.n
        for a in self.exps:
            g = gcd(g, a)
        return self.n // g

    def reduced(self):
        o = self.order
        k = self.n // o
        return Character(self.group, o, [a // k for a in self.exps])

    def is_trivial(self, p=None, M=None):
        return all(a == 0 for a in self.exps)

    def exponent_of_key(self, key):
        y = self.group.group.dlog(key)
        return sum(a * b for a, b in zip(self.exps, y)) % self.n

    def exponent(self, ideal):
        return self.exponent_of_key(self.group.key(ideal))

    def ring(self, p, M):
        return CycRing.character(self.n, p, M)

    def value(self, ideal, p, M):
        return self.ring(p, M).x_pow(self.exponent(ideal))

    def inv_value(self, ideal, p, M):
        return self.ring(p, M).x_pow(-self.exponent(ideal))

    def check_p(self, p):
        if self.n % p == 0:
            raise UnsupportedCharacter(f"character order {self.n} divisible by p={p}")

    def describe(self):
        return {"order": self.n, "exponents": list(self.exps)}


def trivial_character(group):
    return Character(group, 1, [0] * len(group.invariants))


class TwistedCharacter:
    """a -> chi(a) * omega(N a)^(1-m), the route to L^(m) through the m = 1 engine."""

    def __init__(self, chi, m):
        self.chi = chi
        self.m = m
        self.group = chi.group
        self.n = chi.n

    def __repr__(self):
        return f"TwistedCharacter({self.chi}, m={self.m})"

    def ring(self, p, M):
        return self.chi.ring(p, M)

    def _omega(self, ideal, p, M, sign):
        N = ideal.norm()
        w = teichmuller(PAdicInt(N, p, M))
        return w ** ((1 - self.m) * sign)

    def value(self, ideal, p, M):
        return self.chi.value(ideal, p, M) * self._omega(ideal, p, M, 1)

    def inv_value(self, ideal, p, M):
        return self.chi.inv_value(ideal, p, M) * self._omega(ideal, p, M, -1)

    def is_trivial(self, p, M):
        ring = self.ring(p, M)
        return all(self.value(I, p, M) == ring.one() for I in self.group.generator_ideals())

    def check_p(self, p):
        self.chi.check_p(p)

    def describe(self):
        d = self.chi.describe()
        d["m"] = self.m
        return d


def kappa_twist(chi, m):
    if m == 1:
        return chi
    return TwistedCharacter(chi, m)


def is_trivial_at(chi, p, M=2):
    return chi.is_trivial(p, M)


# --- e and the auxiliary prime --------------------------------------------------

def compute_e(field, p):
    m0 = 1 if (p == 2 and field.D == 2) else 0
    return m0 + vp(q_of(p), p), m0


class AuxPrime:
    def __init__(self, ideal, c, t):
        self.ideal = ideal
        self.c = c
        self.t = t

    def __repr__(self):
        return f"AuxPrime(c={self.c}, t={self.t}, {self.ideal})"


def _primes_from(start):
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


def admissible_aux(field, group, chi, p, aux):
    """Check (H3)/(H4) for a given auxiliary prime."""
    e, _ = compute_e(field, p)
    c = aux.c
    if c == p or (group.f.norm() * field.disc) % c == 0:
        return False
    if chi.is_trivial(p, e + 2):
        a = angle(PAdicInt(c, p, e + 2))
        return a.residue % p ** (e + 1) != 1
    M = 2
    return chi.value(aux.ideal, p, M) != chi.ring(p, M).one()


def choose_aux_prime(field, group, chi, p, exclude=(), max_c=100000):
    """Smallest admissible degree-1 prime for (H3), (H4)."""
    excluded = {a.ideal.key() if isinstance(a, AuxPrime) else a.key() for a in exclude}
    for c in _primes_from(2):
        if c > max_c:
            raise NoAdmissiblePrime(f"no admissible auxiliary prime below {max_c}")
        if c == p or (group.f.norm() * field.disc * p) % c == 0:
            continue
        for P, t in degree_one_primes(field, c):
            if P.key() in excluded:
                continue
            aux = AuxPrime(P, c, t)
            if admissible_aux(field, group, chi, p, aux):
                return aux
    raise NoAdmissiblePrime("search exhausted")


def make_aux(field, c, t=None):
    """Auxiliary prime from a user override (c and optional theta residue)."""
    if not is_prime(c):
        raise ConfigError(f"aux prime {c} is not prime")
    primes = degree_one_primes(field, c)
    if not primes:
        raise ConfigError(f"{c} has no degree-1 prime in {field}")
    for P, tt in primes:
        if t is None or tt == t % c:
            return AuxPrime(P, c, tt)
    raise ConfigError(f"no degree-1 prime above {c} with theta = {t}")
