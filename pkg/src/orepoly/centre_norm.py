"""The centre k^sigma[Y] (Y = X^r) and the reduced norm k[X,sigma] -> k^sigma[Y]."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import _linalg, _poly
from .errors import ContextMismatch, NotCentral
from .field_tower import FieldElement, relative_norm
from .skew_ring import NEG_INF, SkewPolynomial, _Parser, _divmod_naive, _trim

FALLBACK_TRIES = 64


class CentrePolynomial:
    """A polynomial in Y = X^r with coefficients in k^sigma (stored as codes of k)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs=()):
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                ctx.check_same(c.ctx)
                c = c.value
            vals.append(int(c))
        fixed = ctx.fixed
        for i, c in enumerate(vals):
            if c not in fixed:
                raise NotCentral(f"coefficient {i} is not fixed by sigma")
        self.ctx = ctx
        self.coeffs = tuple(_poly.trim(vals, 0))

    @classmethod
    def _wrap(cls, ctx, coeffs):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.coeffs = tuple(_poly.trim(list(coeffs), 0))
        return obj

    @classmethod
    def parse(cls, ctx, text):
        F = ctx.field
        Y = [0, 1]
        w = [ctx.w.value] if ctx.w.value else []

        class Lit:
            __slots__ = ("f",)

            def __init__(self, f):
                self.f = _poly.trim(list(f), 0)

            def __add__(self, o):
                return Lit(_poly.add(F, self.f, o.f))

            def __sub__(self, o):
                return Lit(_poly.sub(F, self.f, o.f))

            def __neg__(self):
                return Lit(_poly.neg(F, self.f))

            def __mul__(self, o):
                return Lit(_poly.mul(F, self.f, o.f))

            def __pow__(self, e):
                out = Lit([1])
                for _ in range(e):
                    out = out * self
                return out

        value = _Parser(text, {"Y": Lit(Y), "w": Lit(w)}, lambda c: Lit([F.from_int(c)])).parse()
        return cls(ctx, value.f)

    @property
    def field(self):
        return self.ctx.fixed

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self):
        return CentrePolynomial._wrap(self.ctx, _poly.monic(self.field, list(self.coeffs)))

    def _other(self, other):
        if isinstance(other, CentrePolynomial):
            if other.ctx is not self.ctx:
                raise ContextMismatch("centre polynomials from different contexts do not mix")
            return list(other.coeffs)
        if isinstance(other, int):
            return _poly.trim([self.ctx.field.from_int(other)], 0)
        return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return CentrePolynomial._wrap(self.ctx, _poly.add(self.field, list(self.coeffs), b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return CentrePolynomial._wrap(self.ctx, _poly.sub(self.field, list(self.coeffs), b))

    def __neg__(self):
        return CentrePolynomial._wrap(self.ctx, _poly.neg(self.field, list(self.coeffs)))

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return CentrePolynomial._wrap(self.ctx, _poly.mul(self.field, list(self.coeffs), b))

    __rmul__ = __mul__

    def __pow__(self, e):
        out = [1]
        for _ in range(e):
            out = _poly.mul(self.field, out, list(self.coeffs))
        return CentrePolynomial._wrap(self.ctx, out)

    def __divmod__(self, other):
        b = self._other(other)
        q, r = _poly.divmod_(self.field, list(self.coeffs), b)
        return CentrePolynomial._wrap(self.ctx, q), CentrePolynomial._wrap(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, CentrePolynomial):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def key(self):
        return _poly.sort_key(list(self.coeffs))

    def is_irreducible(self):
        return _poly.is_irreducible(self.field, list(self.coeffs))

    def __repr__(self):
        return f"CentrePolynomial({self})"

    def __str__(self):
        F = self.ctx.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = F.format(c)
            mono = "" if i == 0 else ("Y" if i == 1 else f"Y^{i}")
            if not mono:
                terms.append(cs if "+" not in cs or len(self.coeffs) == 1 else f"({cs})")
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}" if "+" in cs else f"{cs}*{mono}")
        return " + ".join(terms)


def centre_embed(C):
    """Y -> X^r."""
    r = C.ctx.r
    arr = np.zeros(r * max(len(C.coeffs) - 1, 0) + 1, dtype=np.int64)
    if C.coeffs:
        arr[::r] = np.array(C.coeffs, dtype=np.int64)
    return SkewPolynomial._wrap(C.ctx, arr)


def centre_project(P):
    ctx = P.ctx
    r = ctx.r
    arr = P.array
    for i in np.flatnonzero(arr):
        if i % r:
            raise NotCentral(f"coefficient of X^{i} is nonzero and {i} is not a multiple of r={r}")
        if int(arr[i]) not in ctx.fixed:
            raise NotCentral(f"coefficient of X^{i} is not fixed by sigma")
    return CentrePolynomial._wrap(ctx, arr[::r].tolist())


# norms

def _sign(ctx, e):
    """(-1)^e in k."""
    return ctx.field.neg(1) if e % 2 else 1


def reduced_norm_small(P):
    """Norm of P with deg P < r.

    For deg P <= 1 the norm is read off the relative norms of the
    coefficients: N(a_0 + a_1 X) = (-1)^(r-1) N(a_0) + N(a_1) Y.  From degree 2
    on the coefficientwise expression is no longer the norm (cross terms such
    as a sigma^2(a) appear), so those degrees go through the determinant.
    """
    ctx = P.ctx
    d = P.degree
    if d == NEG_INF:
        raise ValueError("the norm of zero is not defined here")
    if d >= ctx.r:
        raise ValueError(f"degree {d} is not below r = {ctx.r}")
    if d >= 2:
        return reduced_norm_matrix(P)
    F = ctx.field
    out = []
    for i in range(d + 1):
        out.append(F.mul(_sign(ctx, (ctx.r - 1) * (d - i)), relative_norm(P[i], ctx)))
    return CentrePolynomial._wrap(ctx, out)


class _NormAlgebra:
    """A = k^sigma[Y]/R with R = pi_t(R0), together with k -> A sending t to R0."""

    def __init__(self, ctx, n0):
        self.ctx = ctx
        Fs = ctx.fixed
        rng = np.random.default_rng(n0)
        pi_t = list(ctx.pi_t)
        self.is_field = False
        for _ in range(FALLBACK_TRIES):
            R0 = [Fs.random(rng) for _ in range(n0)] + [1]
            R = _poly.compose_mod(Fs, pi_t, R0, [0] * (ctx.r * n0 + 1) + [1])
            if _poly.is_irreducible(Fs, R):
                self.is_field = True
                break
        self.R0 = R0
        self.A = A = _poly.ExtensionField(Fs, R)
        r0 = A.element(R0)
        self.t_powers = [A.one]
        for _ in range(1, ctx.r):
            self.t_powers.append(A.mul(self.t_powers[-1], r0))
        self.y = A.element([0, 1])
        self._image = {}

    def image(self, c):
        """Image of an element code c of k."""
        out = self._image.get(c)
        if out is None:
            A = self.A
            out = A.zero
            for l, coord in enumerate(self.ctx.tcoords[c]):
                coord = int(coord)
                if coord:
                    out = A.add(out, tuple(self.ctx.field.mul(coord, x) for x in self.t_powers[l]))
            self._image[c] = out
        return out

    def poly_image(self, coeffs):
        """Image of sum c_l Y^l with c_l in k."""
        A = self.A
        acc = A.zero
        for c in reversed(coeffs):
            acc = A.add(A.mul(acc, self.y), self.image(int(c)))
        return acc


@lru_cache(maxsize=None)
def _norm_algebra(ctx, n0):
    return _NormAlgebra(ctx, n0)


def _norm_matrix_entries(P):
    """r x r matrix of right multiplication by P on the basis 1..X^(r-1) over k[Y].

    Entry [l][j] is sigma^j(P_{(l-j) mod r}), times Y when l < j, where
    P = sum_i P_i(X^r) X^i.  Entries are coefficient lists in Y over k.
    """
    ctx = P.ctx
    r = ctx.r
    a = P.array
    parts = [a[i::r] for i in range(r)]
    M = []
    for l in range(r):
        row = []
        for j in range(r):
            poly = ctx.conj[j][parts[(l - j) % r]].tolist()
            if l < j:
                poly = [0] + poly
            row.append(poly)
        M.append(row)
    return M


def reduced_norm_matrix(P):
    """Norm from the determinant of right multiplication by P, evaluated in a
    finite algebra k^sigma[Y]/R large enough to hold every coefficient."""
    ctx = P.ctx
    d = P.degree
    if d == NEG_INF:
        raise ValueError("the norm of zero is not defined")
    alg = _norm_algebra(ctx, d // ctx.r + 1)
    A = alg.A
    M = [[alg.poly_image(e) for e in row] for row in _norm_matrix_entries(P)]
    if alg.is_field:
        nu = _linalg.det(A, M)
    else:
        nu = _linalg.det_division_free(A, M)
    coeffs = list(nu)
    if (ctx.r - 1) * d % 2:
        coeffs = [ctx.field.neg(c) for c in coeffs]
    return CentrePolynomial(ctx, coeffs)


def _phi_r_matrix(P):
    """Matrix over k of X^r acting by left multiplication on k[X,sigma]/k[X,sigma]P."""
    ctx = P.ctx
    d = P.degree
    p = P.array
    cols = []
    v = np.zeros(ctx.r + 1, dtype=np.int64)
    v[ctx.r] = 1
    v = _divmod_naive(ctx, v, p)[1]
    for _ in range(d):
        cols.append(np.pad(v, (0, d - len(v))).tolist())
        # left multiplication by X twists and shifts
        shifted = np.concatenate([[0], ctx.conj[1][v]]).astype(np.int64)
        v = _divmod_naive(ctx, _trim(shifted), p)[1]
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def reduced_norm_charpoly(P):
    """Characteristic polynomial of X^r acting on k[X,sigma]/k[X,sigma]P."""
    ctx = P.ctx
    if not P.is_monic():
        raise ValueError("reduced_norm_charpoly needs a monic polynomial")
    if P.degree < 1:
        raise ValueError("reduced_norm_charpoly needs positive degree")
    chi = _linalg.charpoly(ctx.field, _phi_r_matrix(P))
    return CentrePolynomial(ctx, chi)


def reduced_norm(P):
    """(N_{k/k^sigma}(a), norm of the monic part) where P = a * monic part."""
    ctx = P.ctx
    if P.is_zero():
        raise ValueError("the norm of zero is not defined")
    unit = relative_norm(P.lc, ctx)
    Pm = P.monic()
    N = reduced_norm_small(Pm) if Pm.degree < ctx.r else reduced_norm_matrix(Pm)
    return FieldElement(ctx, unit), N


def norm(P):
    """Full reduced norm including the unit."""
    unit, N = reduced_norm(P)
    return N * CentrePolynomial._wrap(P.ctx, [unit.value])


def commutative_factorize(C, rng=None):
    """Sorted list of (monic irreducible CentrePolynomial, multiplicity)."""
    if C.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if rng is None:
        rng = np.random.default_rng(0)
    _, items = _poly.factor(C.field, list(C.coeffs), rng)
    return [(CentrePolynomial._wrap(C.ctx, f), k) for f, k in items]


@lru_cache(maxsize=None)
def residue_field(N):
    """E = k^sigma[Y]/(N) for an irreducible N."""
    return _poly.ExtensionField(N.ctx.fixed, list(N.coeffs))
