"""Dense polynomial arithmetic over Z/N, low-degree coefficient first.

Shared by the finite-field and Galois-ring quotient rings. Quotient-ring
elements are length-n tuples reduced modulo a monic degree-n polynomial.
"""


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, mod):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % mod for i in range(n)]


def mul(a, b, mod):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % mod for c in out]


def reduce_monic(a, g, mod):
    """Remainder of a modulo monic g, as a list of length deg(g)."""
    n = len(g) - 1
    a = [c % mod for c in a]
    for k in range(len(a) - 1, n - 1, -1):
        c = a[k]
        if c:
            s = k - n
            for i in range(n):
                a[s + i] = (a[s + i] - c * g[i]) % mod
            a[k] = 0
    a = a[:n]
    return a + [0] * (n - len(a))


def mulmod(a, b, g, mod):
    return tuple(reduce_monic(mul(a, b, mod), g, mod))


def powmod(a, e, g, mod):
    n = len(g) - 1
    result = tuple([1 % mod] + [0] * (n - 1))
    base = tuple(a)
    while e:
        if e & 1:
            result = mulmod(result, base, g, mod)
        e >>= 1
        if e:
            base = mulmod(base, base, g, mod)
    return result


def evaluate(poly, x, one, addf, mulf):
    """Horner evaluation of a polynomial with integer coefficients at x in some ring."""
    acc = None
    for c in reversed(poly):
        acc = c * one if acc is None else addf(mulf(acc, x), c * one)
    return acc


def divmod_poly(a, b, p):
    """Quotient and remainder over the field Z/p (b nonzero)."""
    a = trim(a)
    b = trim(b)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] = (a[s + i] - c * y) % p
        a = trim(a)
    return q, a


def gcd_poly(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_poly(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a
