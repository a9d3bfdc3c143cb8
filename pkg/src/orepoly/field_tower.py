"""Finite fields, the Frobenius twist sigma and the fixed field k^sigma.

Elements of k = GF(p^n) are plain Python ints: the base-p digits of an
integer, least significant first, are the coordinates in the power basis
1, w, ..., w^(n-1), where w is the class of x modulo the defining modulus.
Multiplication goes through log/exp tables, so every element operation is a
table lookup.  The same tables are kept as numpy arrays for vectorised work
on coefficient arrays.
"""

from __future__ import annotations

import math
import re
from functools import cached_property

import numpy as np

from . import _poly
from .errors import ContextMismatch, ParseError

MAX_FIELD_ORDER = 1 << 16


def is_prime(p):
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


def _digits_of(code, p, n):
    out = []
    for _ in range(n):
        code, d = divmod(code, p)
        out.append(d)
    return out


def lowest_irreducible(p, n):
    """Monic irreducible of degree n over GF(p), smallest when read as a base-p
    number with the constant term as least significant digit."""
    Fp = _poly.PrimeField(p)
    for code in range(p ** n):
        low = _digits_of(code, p, n)
        if n > 1 and low[0] == 0:
            continue
        f = low + [1]
        if _poly.is_irreducible(Fp, f):
            return tuple(f)
    raise ValueError(f"no irreducible polynomial of degree {n} over GF({p})")


class FiniteField:
    """GF(p^n) with log/exp tables.  Elements are ints in [0, p^n)."""

    def __init__(self, p, n, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be positive")
        Q = p ** n
        if Q > MAX_FIELD_ORDER:
            raise ValueError(f"field of order {Q} exceeds the table limit {MAX_FIELD_ORDER}")
        Fp = _poly.PrimeField(p)
        if modulus is None:
            modulus = lowest_irreducible(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not _poly.is_irreducible(Fp, list(modulus)):
            raise ValueError("modulus is not irreducible")
        self.p, self.n, self.order, self.char = p, n, Q, p
        self.modulus = modulus
        self.zero, self.one = 0, 1
        self.pw = p ** np.arange(n, dtype=np.int64)
        self.digits = (np.arange(Q, dtype=np.int64)[:, None] // self.pw) % p
        self._build_tables(Fp)
        self._frob_cache = {}

    # table construction

    def _mul_matrix(self, Fp, g):
        """Matrix of multiplication by g on digit column vectors."""
        gpoly = _poly.trim(_digits_of(g, self.p, self.n), 0)
        cols = []
        for j in range(self.n):
            prod = _poly.mod(Fp, _poly.mul(Fp, gpoly, [0] * j + [1]), list(self.modulus))
            cols.append(prod + [0] * (self.n - len(prod)))
        return np.array(cols, dtype=np.int64).T

    def _powers(self, M):
        p, Q = self.p, self.order
        powers = np.zeros((1, self.n), dtype=np.int64)
        powers[0, 0] = 1
        Mk = M
        while len(powers) < Q - 1:
            powers = np.concatenate([powers, (powers @ Mk.T) % p])
            Mk = (Mk @ Mk) % p
        return powers[:Q - 1] @ self.pw

    def _build_tables(self, Fp):
        p, n, Q = self.p, self.n, self.order
        candidates = list(range(1, Q))
        if n > 1:
            candidates.remove(p)
            candidates.insert(0, p)
        for g in candidates:
            codes = self._powers(self._mul_matrix(Fp, g))
            if np.unique(codes).size == Q - 1:
                break
        self.generator = g
        order = Q - 1
        sentinel = 2 * order
        log = np.empty(Q, dtype=np.int64)
        log[codes] = np.arange(order, dtype=np.int64)
        log[0] = sentinel
        expx = np.zeros(4 * order + 1, dtype=np.int64)
        expx[:2 * order] = np.concatenate([codes, codes])
        self.log, self.expx, self._mult_order = log, expx, order
        self._log_l = log.tolist()
        self._exp_l = expx.tolist()
        if p == 2:
            self.negtab = np.arange(Q, dtype=np.int64)
        else:
            self.negtab = ((p - self.digits) % p) @ self.pw
            one_plus = ((self.digits[codes] + self.digits[1]) % p) @ self.pw
            zech = log[one_plus]
            zech[one_plus == 0] = -1
            self._zech_l = zech.tolist()
            if Q <= 1024:
                D = self.digits
                self.addtab = ((D[:, None, :] + D[None, :, :]) % p) @ self.pw
            else:
                self.addtab = None
        self._neg_l = self.negtab.tolist()

    # scalar arithmetic

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log_l[a]
        d = self._log_l[b] - la
        if d < 0:
            d += self._mult_order
        z = self._zech_l[d]
        return 0 if z < 0 else self._exp_l[la + z]

    def neg(self, a):
        return self._neg_l[a]

    def sub(self, a, b):
        return self.add(a, self._neg_l[b])

    def mul(self, a, b):
        return self._exp_l[self._log_l[a] + self._log_l[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp_l[(-self._log_l[a]) % self._mult_order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroDivisionError("negative power of zero")
        return self._exp_l[(self._log_l[a] * e) % self._mult_order]

    def from_int(self, c):
        return c % self.p

    def random(self, rng):
        return int(rng.integers(self.order))

    def frobenius(self, a, e):
        """a^(p^e)."""
        return self.pow(a, pow(self.p, e % self.n))

    # vectorised arithmetic on int64 arrays

    def vmul(self, a, b):
        return self.expx[self.log[a] + self.log[b]]

    def vscale(self, c, b):
        """c * b for a scalar c."""
        if c == 0:
            return np.zeros_like(b)
        return self.expx[self._log_l[c] + self.log[b]]

    def vadd(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.addtab is not None:
            return self.addtab[a, b]
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.pw

    def vneg(self, a):
        if self.p == 2:
            return a
        return self.negtab[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vsum(self, a, axis=0):
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if axis < 0:
            axis += a.ndim
        if self.addtab is not None and a.shape[axis] <= 16:
            parts = np.moveaxis(a, axis, 0)
            acc = parts[0]
            for part in parts[1:]:
                acc = self.addtab[acc, part]
            return acc
        return (self.digits[a].sum(axis=axis) % self.p) @ self.pw

    def vinv(self, a):
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.expx[(-self.log[a]) % self._mult_order]

    @cached_property
    def red(self):
        """(2n-1, n) matrix taking digit slots of x^i to reduced digits."""
        rows = []
        for i in range(2 * self.n - 1):
            if i < self.n:
                row = [0] * self.n
                row[i] = 1
            else:
                row = list(self.to_digits(self.pow(self.p, i)))
            rows.append(row)
        return np.array(rows, dtype=np.int64)

    def frob_table(self, e):
        """numpy table of a -> a^(p^e)."""
        e %= self.n
        tab = self._frob_cache.get(e)
        if tab is None:
            Q = self.order
            tab = np.zeros(Q, dtype=np.int64)
            nz = np.arange(1, Q)
            tab[nz] = self.expx[(self.log[nz] * pow(self.p, e, self._mult_order)) % self._mult_order]
            self._frob_cache[e] = tab
        return tab

    # text form

    def format(self, a):
        if self.n == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(_digits_of(a, self.p, self.n)))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def from_digits(self, digits):
        digits = list(digits)
        if len(digits) > self.n:
            raise ValueError("too many digits for this field")
        return sum((int(d) % self.p) * self.p ** i for i, d in enumerate(digits))

    def to_digits(self, a):
        return tuple(_digits_of(a, self.p, self.n))


class FixedField:
    """The subfield k^sigma of order q, with elements stored as elements of k."""

    def __init__(self, field, degree):
        self.field = field
        self.degree = degree
        self.order = field.p ** degree
        self.char = field.p
        self.zero, self.one = 0, 1
        step = (field.order - 1) // (self.order - 1)
        members = {0} | {field.pow(field.generator, step * i) for i in range(self.order - 1)}
        self.elements = sorted(members)
        self._members = frozenset(members)
        self.modulus = lowest_irreducible(field.p, degree)
        self.theta = self._find_theta()
        self._down = {}
        for code in range(self.order):
            digits = _digits_of(code, field.p, degree)
            self._down[self.up(digits)] = tuple(digits)

    def _find_theta(self):
        F = self.field
        for a in self.elements:
            if _poly.evaluate(F, list(self.modulus), a) == 0:
                return a
        raise AssertionError("the fixed field contains no root of its modulus")

    def __contains__(self, a):
        return a in self._members

    def up(self, digits):
        """Element of k from coordinates over GF(p) in the basis theta^i."""
        F = self.field
        acc = 0
        for d in reversed(list(digits)):
            acc = F.add(F.mul(acc, self.theta), F.from_int(int(d)))
        return acc

    def down(self, a):
        try:
            return self._down[a]
        except KeyError:
            raise ValueError("element is not fixed by sigma") from None

    add = property(lambda self: self.field.add)
    sub = property(lambda self: self.field.sub)
    neg = property(lambda self: self.field.neg)
    mul = property(lambda self: self.field.mul)
    inv = property(lambda self: self.field.inv)
    pow = property(lambda self: self.field.pow)
    from_int = property(lambda self: self.field.from_int)

    def random(self, rng):
        return self.elements[int(rng.integers(self.order))]


_FIELD_CACHE = {}
_CONTEXT_CACHE = {}


def finite_field(p, n, modulus=None):
    if modulus is None:
        modulus = lowest_irreducible(p, n)
    key = (p, n, tuple(int(c) % p for c in modulus))
    F = _FIELD_CACHE.get(key)
    if F is None:
        F = _FIELD_CACHE[key] = FiniteField(p, n, key[2])
    return F


class SkewContext:
    """k = GF(p^n) together with sigma = Frob^s.

    Contexts are interned: equal parameters give the same object, so
    identity comparison is enough to decide whether operands may mix.
    """

    def __init__(self, field, s):
        n = field.n
        if not 0 <= s <= n:
            raise ValueError(f"Frobenius exponent {s} outside [0, {n}]")
        self.field = field
        self.s = s
        self.m = math.gcd(n, s)
        self.r = n // self.m
        self.q = field.p ** self.m
        self.p, self.n = field.p, n
        self.conj = np.stack([field.frob_table(s * j) for j in range(self.r)])
        self._conj_l = [row.tolist() for row in self.conj]

    def __repr__(self):
        return f"SkewContext({format_field_spec(self)!r})"

    def sigma(self, a, j=1):
        return self._conj_l[j % self.r][a]

    def vsigma(self, arr, j=1):
        return self.conj[j % self.r][arr]

    @cached_property
    def fixed(self):
        return FixedField(self.field, self.m)

    @cached_property
    def opposite(self):
        """Context for sigma^-1 on the same field."""
        s = (self.n - self.s) % self.n
        if s == 0:
            s = self.s if self.s in (0, self.n) else self.n
        return build_context(self.p, self.n, self.field.modulus, s)

    @cached_property
    def _primitive(self):
        F = self.field
        if self.r == 1:
            t = 1
        else:
            start = F.p if F.n > 1 else 1
            for t in [start] + list(range(1, F.order)):
                if len({self.sigma(t, j) for j in range(self.r)}) == self.r:
                    break
        poly = [1]
        for j in range(self.r):
            poly = _poly.mul(F, poly, [F.neg(self.sigma(t, j)), 1])
        assert all(c in self.fixed for c in poly)
        return t, tuple(poly)

    @property
    def t(self):
        return self._primitive[0]

    @property
    def pi_t(self):
        return self._primitive[1]

    @cached_property
    def tcoords(self):
        """(Q, r) array of coordinates of each element in the basis t^i over k^sigma."""
        F = self.field
        fixed = np.array(self.fixed.elements, dtype=np.int64)
        vals = np.zeros(1, dtype=np.int64)
        coords = np.zeros((1, 0), dtype=np.int64)
        ti = 1
        for _ in range(self.r):
            term = F.vscale(ti, fixed)
            vals = F.vadd(vals[:, None], term[None, :]).reshape(-1)
            coords = np.concatenate([
                np.repeat(coords, len(fixed), axis=0),
                np.tile(fixed, len(coords))[:, None]], axis=1)
            ti = F.mul(ti, self.t)
        table = np.empty((F.order, self.r), dtype=np.int64)
        table[vals] = coords
        return table

    def element(self, value):
        return FieldElement(self, value)

    @property
    def w(self):
        """The class of x in k."""
        return FieldElement(self, self.p % self.field.order if self.n > 1 else 0)

    def check_same(self, other):
        if other is not self:
            raise ContextMismatch(f"{self!r} and {other!r} do not mix")


def build_context(p, n, modulus=None, s=1):
    field = finite_field(p, n, modulus)
    key = (p, n, field.modulus, s)
    ctx = _CONTEXT_CACHE.get(key)
    if ctx is None:
        ctx = _CONTEXT_CACHE[key] = SkewContext(field, s)
    return ctx


class FieldElement:
    """An element of k attached to its context."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx, value):
        value = int(value)
        if not 0 <= value < ctx.field.order:
            raise ValueError(f"{value} is not an element code of {ctx!r}")
        self.ctx = ctx
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            self.ctx.check_same(other.ctx)
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.ctx.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.field.div(self.value, b))

    def __pow__(self, e):
        return FieldElement(self.ctx, self.ctx.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.ctx.field.from_int(int(other)) and int(other) < self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        return self.ctx.field.format(self.value)

    def sigma(self, j=1):
        return FieldElement(self.ctx, self.ctx.sigma(self.value, j))

    @property
    def digits(self):
        return self.ctx.field.to_digits(self.value)

    def in_fixed_field(self):
        return self.value in self.ctx.fixed


def _unwrap(a, ctx):
    if isinstance(a, FieldElement):
        if ctx is not None:
            ctx.check_same(a.ctx)
        return a.value, a.ctx, True
    if ctx is None:
        raise TypeError("an element code needs its context")
    return int(a), ctx, False


def frobenius_power(a, j, ctx=None):
    """sigma^j(a); a is a FieldElement or an element code of ctx."""
    v, ctx, wrap = _unwrap(a, ctx)
    out = ctx.sigma(v, j)
    return FieldElement(ctx, out) if wrap else out


def conjugates(a, ctx=None):
    """(a, sigma(a), ..., sigma^(r-1)(a))."""
    v, ctx, wrap = _unwrap(a, ctx)
    out = [ctx.sigma(v, j) for j in range(ctx.r)]
    return [FieldElement(ctx, c) for c in out] if wrap else out


def relative_norm(a, ctx=None):
    """Product of the r conjugates of a; lies in k^sigma."""
    v, ctx, wrap = _unwrap(a, ctx)
    F = ctx.field
    acc = 1
    for c in conjugates(v, ctx):
        acc = F.mul(acc, c)
    return FieldElement(ctx, acc) if wrap else acc


def coerce_fixed_field(x, ctx, direction):
    """Move between k^sigma inside k and GF(q) given by digits over GF(p).

    ``direction="down"`` takes an element code of k fixed by sigma and returns
    its digit tuple in the basis theta^i; ``"up"`` is the inverse.
    """
    if direction == "down":
        return ctx.fixed.down(x)
    if direction == "up":
        return ctx.fixed.up(x)
    raise ValueError("direction must be 'up' or 'down'")


def primitive_data(ctx):
    """(t, pi_t): t has r distinct conjugates and pi_t = prod (T - sigma^j t)."""
    return ctx.t, ctx.pi_t


_SPEC_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*\^\s*(\d+)\s*(.*)\)\s*$")


def parse_field_spec(text):
    """Parse ``GF(p^n; modulus=c0,...,cn; frob=s)``; the clauses are optional."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse field spec {text!r}")
    p, n, rest = int(m.group(1)), int(m.group(2)), m.group(3)
    modulus, s = None, 1
    for clause in rest.split(";"):
        clause = clause.strip()
        if not clause:
            continue
        key, sep, val = clause.partition("=")
        key = key.strip().lower()
        if not sep:
            raise ParseError(f"malformed clause {clause!r}")
        try:
            if key == "modulus":
                modulus = tuple(int(c) for c in val.split(","))
            elif key == "frob":
                s = int(val)
            else:
                raise ParseError(f"unknown clause {key!r}")
        except ValueError as exc:
            raise ParseError(f"malformed clause {clause!r}") from exc
    try:
        return build_context(p, n, modulus, s)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_field_spec(ctx):
    mod = ",".join(str(c) for c in ctx.field.modulus)
    return f"GF({ctx.p}^{ctx.n}; modulus={mod}; frob={ctx.s})"
