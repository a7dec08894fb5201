"""Vectorised modular arithmetic on numpy arrays.

Residues live in int64 arrays whenever the modulus has at most 61 bits;
products are then formed limb by limb so that nothing overflows.  Larger
moduli fall back to object arrays holding Python ints.
"""

import numpy as np

from .padic_core import unit_part, vp

_INT_BITS = 61


def small(m):
    return int(m).bit_length() <= _INT_BITS


def asres(x, m):
    """Reduce an array-like of ints modulo m, in the dtype suited to m."""
    if small(m):
        if isinstance(x, np.ndarray) and x.dtype != object:
            return np.mod(x.astype(np.int64), m)
        arr = np.array([int(v) % m for v in np.ravel(x)], dtype=np.int64)
        return arr.reshape(np.shape(x))
    arr = np.empty(np.shape(x), dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(np.ravel(x)):
        flat[i] = int(v) % m
    return arr


def mulmod(a, b, m):
    """Elementwise a*b mod m for reduced residues."""
    m = int(m)
    if not small(m):
        return np.mod(np.asarray(a, dtype=object) * np.asarray(b, dtype=object), m)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    bits = m.bit_length()
    if bits <= 31:
        return (a * b) % m
    k = 62 - bits
    mask = (1 << k) - 1
    nlimbs = -(-bits // k)
    r = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for i in reversed(range(nlimbs)):
        limb = (b >> (k * i)) & mask
        r = (r << k) % m
        r = (r + (a * limb) % m) % m
    return r


def powmod(a, e, m):
    """Elementwise a^e mod m for a non-negative integer exponent e."""
    result = np.ones_like(a) % m if small(m) else asres(np.ones(np.shape(a), dtype=object), m)
    base = a
    while e:
        if e & 1:
            result = mulmod(result, base, m)
        base = mulmod(base, base, m)
        e >>= 1
    return result


def modmatmul(A, B, m):
    """(A @ B) mod m for reduced residue matrices."""
    m = int(m)
    if not small(m):
        return np.mod(np.asarray(A, dtype=object) @ np.asarray(B, dtype=object), m)
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    inner = A.shape[-1]
    bits = m.bit_length()
    # chunk the inner dimension so that a limb keeps at least kmin bits;
    # a sum of `inner` products of bits + k bits must stay below 2^62
    kmin = max(1, min(8, 62 - bits))
    chunk = 1 << (62 - 2 * bits if bits <= 27 else 62 - bits - kmin)
    if inner > chunk:
        out = None
        for i in range(0, inner, chunk):
            part = modmatmul(A[..., i:i + chunk], B[i:i + chunk], m)
            out = part if out is None else (out + part) % m
        return out
    k = 62 - bits - (max(1, inner) - 1).bit_length()
    if k >= bits:
        return (A @ B) % m
    mask = (1 << k) - 1
    nlimbs = -(-bits // k)
    r = None
    for i in reversed(range(nlimbs)):
        limb = (B >> (k * i)) & mask
        prod = (A @ limb) % m
        r = prod if r is None else ((r << k) % m + prod) % m
    return r


def split_p(x, p, cap):
    """Unit part and valuation of each nonzero entry (valuation capped at ``cap``)."""
    x = np.array(x, copy=True)
    v = np.zeros(x.shape, dtype=np.int64)
    nz = x != 0
    for _ in range(cap):
        d = nz & (x % p == 0)
        if not d.any():
            break
        x[d] //= p
        v[d] += 1
    return x, v


def binomial_rows(s, N, p, M):
    """Rows C(s_i, n) mod p^M, n < N, for an array of residues s_i mod p^(M+V).

    Vectorised form of the unit/valuation recursion with zero fill.
    """
    pm = p**M
    V = 0
    while N > 1 and p ** (V + 1) <= N - 1:
        V += 1
    big = p ** (M + V)
    s = asres(s, big)
    count = s.shape[0]
    out = np.zeros((count, N), dtype=s.dtype)
    out[:, 0] = 1 % pm
    A = np.ones(count, dtype=s.dtype) % pm
    B = np.zeros(count, dtype=np.int64)
    dead = np.zeros(count, dtype=bool)
    table = asres([p**j % pm for j in range(M)] + [0], pm)
    for n in range(1, N):
        x = s - (n - 1)
        dead |= x == 0
        xs = np.where(dead, 1, x)
        a, b = split_p(xs, p, M + V)
        nu, vn = unit_part(n, p)
        A = mulmod(mulmod(A, a % pm, pm), pow(nu, -1, pm), pm)
        B = B + b - vn
        ok = (~dead) & (B < M)
        scale = table[np.clip(B, 0, M)]
        col = mulmod(A, scale, pm)
        out[:, n] = np.where(ok, col, 0)
    return out


def log_terms(w, p, P):
    n = 1
    while True:
        if n * w - _floor_log(n, p) >= P:
            return n
        n += 1


def _floor_log(n, p):
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def log1p(y, p, P, w):
    """log(1 + y) mod p^P for residues y with v_p(y) >= w (array version)."""
    nmax = log_terms(w, p, P)
    extra = _floor_log(max(nmax, 1), p)
    big = p ** (P + extra)
    pm = p**P
    y = asres(y, big)
    acc = np.zeros_like(y) % pm
    ypow = np.ones_like(y) % big
    for n in range(1, nmax):
        ypow = mulmod(ypow, y, big)
        nu, v = unit_part(n, p)
        term = mulmod((ypow // p**v) % pm, pow(nu, -1, pm), pm)
        acc = (acc + term) % pm if n % 2 else (acc - term) % pm
    return acc


def lu_array(x, p, e, P, u=None):
    """L_u(x) mod p^P for residues x = 1 mod p^e with omega(x) = 1.

    ``x`` must be given modulo p^(P + e) at least.
    """
    from .padic_core import PAdicInt, default_u, plog

    W = P + e
    lx = log1p(asres(x, p**W) - 1, p, W, e)
    if np.any(lx % p**e != 0):
        raise ValueError("log of an element outside 1 + p^e")
    uu = default_u(p, e) if u is None else int(u)
    lu = plog(PAdicInt(uu, p, W)).residue
    if vp(lu, p) != e:
        raise ValueError("u does not generate 1 + p^e Z_p")
    inv = pow(lu // p**e, -1, p**P)
    return mulmod((lx // p**e) % p**P, inv, p**P)


def pow_series(x, s_row, p, M):
    """x^s mod p^M for residues x = 1 mod q via a shared binomial row of s."""
    pm = p**M
    y = (asres(x, pm) - 1) % pm
    acc = np.zeros_like(y)
    ypow = np.ones_like(y) % pm
    for c in s_row:
        acc = (acc + mulmod(ypow, c % pm, pm)) % pm
        ypow = mulmod(ypow, y, pm)
    return acc


def inverse_units(x, p, M):
    """x^{-1} mod p^M elementwise (entries must be units)."""
    pm = p**M
    phi = pm - pm // p
    return powmod(asres(x, pm), phi - 1, pm)
