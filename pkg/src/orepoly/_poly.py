"""Dense univariate polynomials over an abstract finite field.

A polynomial is a Python list of field elements, constant term first, with
no trailing zeros; the zero polynomial is ``[]``.  The field object supplies
``zero``, ``one``, ``add``, ``sub``, ``neg``, ``mul``, ``inv``, ``pow``,
``from_int``, ``order``, ``char`` and ``random(rng)``.

These routines back the centre k^sigma[Y], the residue fields
E = k^sigma[Y]/(N) and the norm algebra used by the determinant method.
"""

from __future__ import annotations


def trim(f, zero):
    while f and f[-1] == zero:
        f.pop()
    return f


def degree(f):
    return len(f) - 1


def add(F, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out, F.zero)


def sub(F, f, g):
    n = max(len(f), len(g))
    zero = F.zero
    out = [F.sub(f[i] if i < len(f) else zero, g[i] if i < len(g) else zero)
           for i in range(n)]
    return trim(out, zero)


def neg(F, f):
    return [F.neg(c) for c in f]


def scale(F, c, f):
    if c == F.zero:
        return []
    return trim([F.mul(c, a) for a in f], F.zero)


def shift(F, f, k):
    return [F.zero] * k + list(f) if f else []


def mul(F, f, g):
    if not f or not g:
        return []
    zero = F.zero
    fadd, fmul = F.add, F.mul
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = fadd(out[i + j], fmul(a, b))
    return trim(out, zero)


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    zero = F.zero
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    inv_lc = F.inv(g[-1])
    q = [zero] * (len(r) - dg)
    fsub, fmul = F.sub, F.mul
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg]
        if c == zero:
            continue
        c = fmul(c, inv_lc)
        q[k] = c
        for j in range(dg + 1):
            r[k + j] = fsub(r[k + j], fmul(c, g[j]))
    return trim(q, zero), trim(r[:dg], zero)


def mod(F, f, g):
    return divmod_(F, f, g)[1]


def monic(F, f):
    if not f:
        return []
    return scale(F, F.inv(f[-1]), f)


def gcd(F, f, g):
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def xgcd(F, f, g):
    """Return (d, u, v) with u*f + v*g = d and d monic (or zero)."""
    r0, r1 = list(f), list(g)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, c, r0), scale(F, c, s0), scale(F, c, t0)


def powmod(F, f, e, m):
    result = [F.one]
    base = mod(F, f, m)
    while e > 0:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return mod(F, result, m)


def compose_mod(F, g, h, m):
    """g(h) mod m, by Horner's rule."""
    out = []
    for c in reversed(g):
        out = mod(F, mul(F, out, h), m)
        out = add(F, out, [c])
    return out


def evaluate(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def deriv(F, f):
    return trim([F.mul(F.from_int(i), f[i]) for i in range(1, len(f))], F.zero)


def frobenius_twist(F, f, e):
    """Raise every coefficient of f to the power e."""
    return [F.pow(c, e) for c in f]


def x_power_frobenius(F, m, q, j):
    """T^(q^j) mod m, where every element of the subfield of order q is fixed.

    T^q is obtained by square-and-multiply; higher iterates are assembled by
    modular composition with coefficient twisting:
    T^(q^(a+b)) = (T^(q^a))^(q^b)-twisted evaluated at T^(q^b).
    """
    if j == 0:
        return mod(F, [F.zero, F.one], m)
    xq = powmod(F, [F.zero, F.one], q, m)
    result = None   # T^(q^acc)
    acc = 0
    power, pexp = xq, 1   # T^(q^pexp)
    while j:
        if j & 1:
            if result is None:
                result, acc = power, pexp
            else:
                twisted = frobenius_twist(F, result, q ** pexp)
                result = compose_mod(F, twisted, power, m)
                acc += pexp
        j >>= 1
        if j:
            twisted = frobenius_twist(F, power, q ** pexp)
            power = compose_mod(F, twisted, power, m)
            pexp *= 2
    return result


def pth_root(F, f):
    """Polynomial g with g^p = f, assuming f has only exponents divisible by p."""
    p = F.char
    e = F.order // p
    return trim([F.pow(f[i], e) for i in range(0, len(f), p)], F.zero)


def squarefree(F, f):
    """Square-free decomposition of a monic f: list of (g, multiplicity)."""
    out = []
    _squarefree(F, monic(F, f), 1, out)
    merged = {}
    for g, k in out:
        key = tuple(g)
        merged[key] = merged.get(key, 0) + k
    return [(list(g), k) for g, k in merged.items()]


def _squarefree(F, f, mult, out):
    if len(f) <= 1:
        return
    p = F.char
    df = deriv(F, f)
    if not df:
        _squarefree(F, pth_root(F, f), mult * p, out)
        return
    c = gcd(F, f, df)
    w = divmod_(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if len(z) > 1:
            out.append((monic(F, z), i * mult))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if len(c) > 1:
        _squarefree(F, pth_root(F, c), mult * p, out)


def ddf(F, f):
    """Distinct-degree factorization of a monic square-free f."""
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, F.order, f)
        g = gcd(F, f, sub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = mod(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _split_element(F, f, d, rng):
    """Return a random polynomial whose gcd with f is likely a proper factor."""
    n = len(f) - 1
    a = trim([F.random(rng) for _ in range(n)], F.zero)
    if len(a) <= 1:
        return None
    if F.char == 2:
        # absolute trace from GF(2^(m d)) down to GF(2)
        m = (F.order.bit_length() - 1) * d
        t = list(a)
        acc = list(a)
        for _ in range(m - 1):
            t = mod(F, mul(F, t, t), f)
            acc = add(F, acc, t)
        return acc
    e = (F.order ** d - 1) // 2
    return sub(F, powmod(F, a, e, f), [F.one])


def edf(F, f, d, rng):
    """Equal-degree splitting of a monic square-free f whose factors have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        b = _split_element(F, f, d, rng)
        if b is None:
            continue
        g = gcd(F, f, b)
        if 1 < len(g) < len(f):
            break
    h = divmod_(F, f, g)[0]
    return edf(F, g, d, rng) + edf(F, monic(F, h), d, rng)


def sort_key(f):
    return (len(f), tuple(reversed(f)))


def factor(F, f, rng):
    """Return (leading coefficient, sorted list of (monic irreducible, multiplicity))."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lc = f[-1]
    pieces = []
    for g, k in squarefree(F, f):
        for h, d in ddf(F, g):
            for irr in edf(F, h, d, rng):
                pieces.append((irr, k))
    merged = {}
    for g, k in pieces:
        merged[tuple(g)] = merged.get(tuple(g), 0) + k
    items = [(list(g), k) for g, k in merged.items()]
    items.sort(key=lambda gk: sort_key(gk[0]))
    return lc, items


def is_irreducible(F, f):
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    f = monic(F, f)
    x = [F.zero, F.one]
    h = x
    for _ in range(n // 2):
        h = powmod(F, h, F.order, f)
        if len(gcd(F, f, sub(F, h, x))) > 1:
            return False
    return True


def roots(F, f, rng):
    """Distinct roots of f in F."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    x = [F.zero, F.one]
    h = sub(F, powmod(F, x, F.order, f), x)
    g = gcd(F, f, h)
    if len(g) <= 1:
        return []
    return [F.neg(lin[0]) for lin in edf(F, g, 1, rng)]


class PrimeField:
    """GF(p) with elements as ints in [0, p)."""

    def __init__(self, p):
        self.p = p
        self.order = p
        self.char = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    def from_int(self, c):
        return c % self.p

    def random(self, rng):
        return int(rng.integers(self.p))


class ExtensionField:
    """base[Y]/(modulus) with elements stored as tuples of base elements.

    The quotient is a field only when modulus is irreducible; ``inv`` raises
    ZeroDivisionError on non-units either way.
    """

    def __init__(self, base, modulus):
        self.base = base
        self.modulus = monic(base, list(modulus))
        self.deg = len(self.modulus) - 1
        if self.deg < 1:
            raise ValueError("modulus must have positive degree")
        self.order = base.order ** self.deg
        self.char = base.char
        self.zero = (base.zero,) * self.deg
        self.one = (base.one,) + (base.zero,) * (self.deg - 1)

    def element(self, f):
        f = mod(self.base, trim(list(f), self.base.zero), self.modulus)
        return tuple(f) + (self.base.zero,) * (self.deg - len(f))

    def to_poly(self, x):
        return trim(list(x), self.base.zero)

    def add(self, a, b):
        badd = self.base.add
        return tuple(badd(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        bsub = self.base.sub
        return tuple(bsub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        return self.element(mul(self.base, self.to_poly(a), self.to_poly(b)))

    def inv(self, a):
        d, u, _ = xgcd(self.base, self.to_poly(a), self.modulus)
        if len(d) != 1:
            raise ZeroDivisionError("element is not invertible")
        return self.element(u)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        return self.element(powmod(self.base, self.to_poly(a), e, self.modulus))

    def from_int(self, c):
        return (self.base.from_int(c),) + (self.base.zero,) * (self.deg - 1)

    def embed(self, c):
        return (c,) + (self.base.zero,) * (self.deg - 1)

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.deg))
