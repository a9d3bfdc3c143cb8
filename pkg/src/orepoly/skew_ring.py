"""The skew polynomial ring k[X, sigma] with X a = sigma(a) X.

Coefficients are stored as int64 numpy arrays of element codes, constant
term first.  The low-level kernels work on raw arrays and take the context
explicitly; :class:`SkewPolynomial` wraps them with operators.
"""

from __future__ import annotations

import math
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import ContextMismatch, ParseError
from .field_tower import FieldElement, SkewContext

NEG_INF = -math.inf


def _load_thresholds():
    text = resources.files(__package__).joinpath("thresholds.cfg").read_text()
    out = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            key, _, val = line.partition("=")
            out[key.strip()] = int(val)
    return out


THRESHOLDS = _load_thresholds()

_EMPTY = np.zeros(0, dtype=np.int64)


# raw array helpers

def _trim(a):
    nz = np.flatnonzero(a)
    return a[:nz[-1] + 1] if nz.size else a[:0]


def _pad(a, n):
    if len(a) >= n:
        return a
    out = np.zeros(n, dtype=np.int64)
    out[:len(a)] = a
    return out


def _add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[:len(b)] = F.vadd(out[:len(b)], b)
    return _trim(out)


def _sub(F, a, b):
    n = max(len(a), len(b))
    return _trim(F.vsub(_pad(a, n), _pad(b, n)))


def _twist(ctx, a, j):
    return ctx.conj[j % ctx.r][a]


def _rscale(ctx, a, c):
    """a * c for a scalar c on the right: coefficient i becomes a_i sigma^i(c)."""
    F = ctx.field
    tw = ctx.conj[:, c][np.arange(len(a)) % ctx.r]
    return _trim(F.vmul(a, tw))


def _mul_classical(ctx, a, b):
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return _EMPTY
    if la < lb and ctx.r == 1:
        a, b, la, lb = b, a, lb, la
    F, r = ctx.field, ctx.r
    twb = ctx.conj[:, b]
    out = np.zeros(la + lb - 1, dtype=np.int64)
    chunk = max(1, (1 << 18) // (2 * lb))
    cols = np.arange(lb)
    for start in range(0, la, chunk):
        idx = np.arange(start, min(la, start + chunk))
        ch = len(idx)
        prods = F.vmul(a[idx][:, None], twb[idx % r])
        buf = np.zeros((ch, ch + lb - 1), dtype=np.int64)
        rows = np.arange(ch)[:, None]
        buf[rows, rows + cols] = prods
        seg = slice(start, start + ch + lb - 1)
        out[seg] = F.vadd(out[seg], F.vsum(buf, axis=0))
    return _trim(out)


def _pack(F, x, slots, nbytes):
    arr = np.zeros((len(x), slots), dtype="<u8")
    arr[:, :F.n] = F.digits[x]
    raw = arr.reshape(-1).view(np.uint8).reshape(-1, 8)[:, :nbytes]
    return int.from_bytes(raw.tobytes(), "little")


# float64 FFT convolution stays exact while bound * log2(length) is below this
FFT_EXACT_LIMIT = 2 ** 40


def _fft_conv(F, a, b):
    """Commutative product in k[X] by one real FFT over interleaved digit slots."""
    p, n = F.p, F.n
    W = 2 * n - 1
    L = len(a) + len(b) - 1
    size = 1 << (L * W - 1).bit_length()

    def spread(x):
        z = np.zeros((len(x), W))
        z[:, :n] = F.digits[x]
        return np.fft.rfft(z.reshape(-1), size)

    c = np.fft.irfft(spread(a) * spread(b), size)[:L * W]
    vals = np.rint(c).astype(np.int64).reshape(L, W) % p
    return ((vals @ F.red) % p) @ F.pw


def _kron(F, a, b):
    """Commutative product in k[X]: FFT when exact, else Kronecker substitution
    into one integer product."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return _EMPTY
    p, n = F.p, F.n
    slots = 2 * n - 1
    bound = min(la, lb) * n * (p - 1) ** 2
    if bound * (la + lb).bit_length() < FFT_EXACT_LIMIT and min(la, lb) > 64:
        return _fft_conv(F, a, b)
    nbytes = max(1, (bound.bit_length() + 7) // 8)
    prod = _pack(F, a, slots, nbytes) * _pack(F, b, slots, nbytes)
    L = la + lb - 1
    raw = np.frombuffer(prod.to_bytes(L * slots * nbytes, "little"), dtype=np.uint8)
    wide = np.zeros((L * slots, 8), dtype=np.uint8)
    wide[:, :nbytes] = raw.reshape(-1, nbytes)
    vals = wide.view("<u8").reshape(L, slots).astype(np.int64) % p
    return ((vals @ F.red) % p) @ F.pw


def _mul_commutative(ctx, a, b):
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return _EMPTY
    F, r = ctx.field, ctx.r
    out = np.zeros(la + lb - 1, dtype=np.int64)
    for i in range(min(r, la)):
        part = a[i::r]
        if not part.any():
            continue
        spread = np.zeros(r * (len(part) - 1) + 1, dtype=np.int64)
        spread[::r] = part
        prod = _kron(F, spread, ctx.conj[i][b])
        seg = slice(i, i + len(prod))
        out[seg] = F.vadd(out[seg], prod)
    return _trim(out)


# batched Karatsuba over rows of equal length

def _classical_batch(ctx, A, B):
    F, r = ctx.field, ctx.r
    bt, L = A.shape
    out = np.zeros((bt, 2 * L - 1), dtype=np.int64)
    for i in range(L):
        term = F.vmul(A[:, i:i + 1], ctx.conj[i % r][B])
        out[:, i:i + L] = F.vadd(out[:, i:i + L], term)
    return out


class _MatrixData:
    """Tables for the representation of k[X,sigma]/(pi_t(X^r)) as r x r matrices."""

    def __init__(self, ctx):
        F, r = ctx.field, ctx.r
        t = ctx.t
        pts = [ctx.sigma(t, -j) for j in range(r)]
        V = [[F.pow(x, l) for l in range(r)] for x in pts]
        self.evalpow = np.array(V, dtype=np.int64)              # [j, l]
        self.vinv = np.array(_invert_matrix(F, V), dtype=np.int64)
        j = np.arange(r)[:, None]
        c = np.arange(r)[None, :]
        self.rows = np.broadcast_to(j, (r, r))
        self.diag_idx = (c - j) % r                              # [j, c] -> i0
        self.unrep_idx = (np.arange(r)[None, :] + np.arange(r)[:, None]) % r  # [i0, j] -> c
        tmask = np.where(c < j, t, 1)
        self.tmask = tmask.astype(np.int64)
        self.tinvmask = np.where(c < j, F.inv(t), 1).astype(np.int64)
        self.inv_rows = ((-np.arange(r)) % r)[None, :, None]


@lru_cache(maxsize=None)
def _matrix_data(ctx):
    return _MatrixData(ctx)


def _invert_matrix(F, M):
    n = len(M)
    A = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(i for i in range(col, n) if A[i][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = F.inv(A[col][col])
        A[col] = [F.mul(inv, x) for x in A[col]]
        for i in range(n):
            if i != col and A[i][col] != 0:
                f = A[i][col]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[col])]
    return [row[n:] for row in A]


def _rep_batch(ctx, A):
    """Homomorphic matrices of rows of A (length r^2): entry [j, c] is
    sigma^j(A_{(c-j) mod r})(t), times t when c < j."""
    F, r = ctx.field, ctx.r
    D = _matrix_data(ctx)
    bt = A.shape[0]
    a = A.reshape(bt, r, r)                                       # [b, l, i0]
    vals = F.vsum(F.vmul(a[:, None, :, :], D.evalpow[None, :, :, None]), axis=2)  # [b, j, i0]
    vals = ctx.conj[np.arange(r)[None, :, None], vals]
    M = vals[:, D.rows, D.diag_idx]
    return F.vmul(M, D.tmask)


def _unrep_batch(ctx, M):
    F, r = ctx.field, ctx.r
    D = _matrix_data(ctx)
    bt = M.shape[0]
    M = F.vmul(M, D.tinvmask)
    M = ctx.conj[D.inv_rows, M]
    vals = M[:, np.arange(r)[None, :], D.unrep_idx]               # [b, i0, j]
    a = F.vsum(F.vmul(D.vinv[None, :, None, :], vals[:, None, :, :]), axis=3)  # [b, l, i0]
    return a.reshape(bt, r * r)


def _matrix_leaf(ctx, A, B):
    F, r = ctx.field, ctx.r
    bt, L = A.shape
    size = r * r
    Ap = np.zeros((bt, size), dtype=np.int64)
    Bp = np.zeros((bt, size), dtype=np.int64)
    Ap[:, :L] = A
    Bp[:, :L] = B
    MA, MB = _rep_batch(ctx, Ap), _rep_batch(ctx, Bp)
    MC = F.vsum(F.vmul(MA[:, :, :, None], MB[:, None, :, :]), axis=2)
    return _unrep_batch(ctx, MC)[:, :2 * L - 1]


def _karatsuba_batch(ctx, A, B, matrix_leaf):
    F, r = ctx.field, ctx.r
    bt, L = A.shape
    if matrix_leaf:
        if 2 * (L - 1) < r * r:
            return _matrix_leaf(ctx, A, B)
        m = max(1, (L - 1) // (2 * r))
    else:
        m = (L - 1) // (2 * r)
        if m == 0 or L <= THRESHOLDS["karatsuba_leaf_len"]:
            return _classical_batch(ctx, A, B)
    h = m * r
    Lp = max(h, L - h)

    def halves(X):
        lo = np.zeros((bt, Lp), dtype=np.int64)
        hi = np.zeros((bt, Lp), dtype=np.int64)
        lo[:, :h] = X[:, :h]
        hi[:, :L - h] = X[:, h:]
        return lo, hi, F.vadd(lo, hi)

    A0, A1, As = halves(A)
    B0, B1, Bs = halves(B)
    P = _karatsuba_batch(ctx, np.concatenate([A0, A1, As]),
                         np.concatenate([B0, B1, Bs]), matrix_leaf)
    P0, P2, P1 = P[:bt], P[bt:2 * bt], P[2 * bt:]
    mid = F.vsub(F.vsub(P1, P0), P2)
    W = 2 * Lp - 1
    out = np.zeros((bt, max(2 * L - 1, 2 * h + W)), dtype=np.int64)
    out[:, :W] = P0
    out[:, h:h + W] = F.vadd(out[:, h:h + W], mid)
    out[:, 2 * h:2 * h + W] = F.vadd(out[:, 2 * h:2 * h + W], P2)
    return out[:, :2 * L - 1]


def _mul_karatsuba(ctx, a, b, matrix_leaf=False):
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return _EMPTY
    L = max(la, lb)
    A = _pad(a, L)[None, :]
    B = _pad(b, L)[None, :]
    return _trim(_karatsuba_batch(ctx, A, B, matrix_leaf)[0])


def _mul(ctx, a, b):
    """Dispatcher on raw arrays."""
    if min(len(a), len(b)) <= THRESHOLDS["classical_max_len"]:
        return _mul_classical(ctx, a, b)
    return _mul_commutative(ctx, a, b)


# division

def _divmod_naive(ctx, a, b):
    F, r = ctx.field, ctx.r
    la, lb = len(a), len(b)
    if lb == 0:
        raise ZeroDivisionError("division by the zero skew polynomial")
    if la < lb:
        return _EMPTY, a
    rem = a.copy()
    q = np.zeros(la - lb + 1, dtype=np.int64)
    twb = ctx.conj[:, b]
    binv = F.inv(int(b[-1]))
    inv_tw = [ctx.sigma(binv, j) for j in range(r)]
    for k in range(la - lb, -1, -1):
        c = int(rem[k + lb - 1])
        if c == 0:
            continue
        c = F.mul(c, inv_tw[k % r])
        q[k] = c
        rem[k:k + lb] = F.vsub(rem[k:k + lb], F.vscale(c, twb[k % r]))
    return _trim(q), _trim(rem[:lb - 1])


def _series_inverse(ctx, f, prec):
    """g with g*f = 1 mod X^prec in the ring of ctx."""
    F = ctx.field
    g = np.array([F.inv(int(f[0]))], dtype=np.int64)
    cur = 1
    while cur < prec:
        cur = min(2 * cur, prec)
        e = _mul(ctx, _mul(ctx, g, f[:cur]), g)[:cur]
        two_g = F.vadd(g, g) if F.p != 2 else np.zeros_like(g)
        g = _trim(F.vsub(_pad(two_g, cur), _pad(e, cur)))
        g = _pad(g, 1)
    return g


def _divmod_newton(ctx, a, b):
    n, m = len(a) - 1, len(b) - 1
    prec = n - m + 1
    op = ctx.opposite
    bt = _twist(ctx, b, n - m)[::-1].copy()
    g = _series_inverse(op, bt, prec)
    at = a[::-1][:prec].copy()
    qt = _pad(_mul(op, at, g)[:prec], prec)
    q = _trim(qt[::-1].copy())
    rem = _sub(ctx.field, a, _mul(ctx, q, b))
    return q, rem


def _divmod(ctx, a, b):
    if len(b) == 0:
        raise ZeroDivisionError("division by the zero skew polynomial")
    if len(a) - len(b) < THRESHOLDS["newton_min_gap"]:
        return _divmod_naive(ctx, a, b)
    return _divmod_newton(ctx, a, b)


def _psi(ctx, a):
    """Anti-isomorphism k[X,sigma] -> k[X,sigma^-1]: a_i X^i -> sigma^-i(a_i) X^i."""
    idx = (-np.arange(len(a))) % ctx.r
    return ctx.conj[idx, a]


def _psi_inv(ctx, a):
    idx = np.arange(len(a)) % ctx.r
    return ctx.conj[idx, a]


class SkewPolynomial:
    """An element of k[X, sigma]; immutable."""

    __slots__ = ("ctx", "_c")

    def __init__(self, ctx, coeffs=()):
        if not isinstance(ctx, SkewContext):
            raise TypeError("first argument must be a SkewContext")
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                ctx.check_same(c.ctx)
                c = c.value
            vals.append(int(c))
        arr = np.array(vals, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= ctx.field.order):
            raise ValueError("coefficient code out of range for this field")
        self.ctx = ctx
        self._c = _trim(arr)
        self._c.flags.writeable = False

    @classmethod
    def _wrap(cls, ctx, arr):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        arr = _trim(np.ascontiguousarray(arr, dtype=np.int64))
        if arr.flags.writeable:
            arr = arr.copy()
            arr.flags.writeable = False
        obj._c = arr
        return obj

    # constructors

    @classmethod
    def zero(cls, ctx):
        return cls._wrap(ctx, _EMPTY)

    @classmethod
    def one(cls, ctx):
        return cls.constant(ctx, 1)

    @classmethod
    def constant(cls, ctx, c):
        if isinstance(c, FieldElement):
            ctx.check_same(c.ctx)
            c = c.value
        return cls(ctx, [c])

    @classmethod
    def monomial(cls, ctx, i, c=1):
        if isinstance(c, FieldElement):
            c = c.value
        arr = np.zeros(i + 1, dtype=np.int64)
        arr[i] = c
        return cls._wrap(ctx, arr)

    @classmethod
    def x(cls, ctx):
        return cls.monomial(ctx, 1)

    @classmethod
    def random(cls, ctx, degree, rng, monic=False):
        """Uniform polynomial of degree <= ``degree`` (exactly ``degree`` if monic)."""
        if degree < 0:
            return cls.zero(ctx)
        arr = rng.integers(0, ctx.field.order, size=degree + 1).astype(np.int64)
        if monic:
            arr[-1] = 1
        return cls._wrap(ctx, arr)

    @classmethod
    def parse(cls, ctx, text):
        return parse_polynomial(ctx, text)

    # basic data

    @property
    def coeffs(self):
        return tuple(int(c) for c in self._c)

    @property
    def array(self):
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1 if len(self._c) else NEG_INF

    def is_zero(self):
        return len(self._c) == 0

    @property
    def lc(self):
        if not len(self._c):
            raise ValueError("the zero polynomial has no leading coefficient")
        return int(self._c[-1])

    def is_monic(self):
        return len(self._c) > 0 and self._c[-1] == 1

    def __getitem__(self, i):
        return int(self._c[i]) if 0 <= i < len(self._c) else 0

    def __len__(self):
        return len(self._c)

    def monic(self):
        """Left-scale by the inverse leading coefficient."""
        F = self.ctx.field
        return SkewPolynomial._wrap(self.ctx, F.vscale(F.inv(self.lc), self._c))

    def lscale(self, c):
        """c * self for an element code c."""
        return SkewPolynomial._wrap(self.ctx, self.ctx.field.vscale(c, self._c))

    def rscale(self, c):
        """self * c for an element code c."""
        return SkewPolynomial._wrap(self.ctx, _rscale(self.ctx, self._c, c))

    def twist(self, i):
        return SkewPolynomial._wrap(self.ctx, _twist(self.ctx, self._c, i))

    def shift(self, k):
        """Multiply by X^k on the right (coefficients move up unchanged)."""
        if not len(self._c):
            return self
        return SkewPolynomial._wrap(self.ctx, np.concatenate([np.zeros(k, dtype=np.int64), self._c]))

    def truncate(self, k):
        """Remainder modulo X^k (two-sided)."""
        return SkewPolynomial._wrap(self.ctx, self._c[:k])

    def quo_x(self, k):
        """The polynomial H with self = H X^k + (terms below X^k)."""
        return SkewPolynomial._wrap(self.ctx, self._c[k:])

    # arithmetic

    def _other(self, other):
        if isinstance(other, SkewPolynomial):
            if other.ctx is not self.ctx:
                raise ContextMismatch("skew polynomials from different contexts do not mix")
            return other._c
        if isinstance(other, FieldElement):
            self.ctx.check_same(other.ctx)
            return np.array([other.value], dtype=np.int64)
        if isinstance(other, (int, np.integer)):
            return _trim(np.array([self.ctx.field.from_int(int(other))], dtype=np.int64))
        return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return SkewPolynomial._wrap(self.ctx, _add(self.ctx.field, self._c, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return SkewPolynomial._wrap(self.ctx, _sub(self.ctx.field, self._c, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return SkewPolynomial._wrap(self.ctx, _sub(self.ctx.field, b, self._c))

    def __neg__(self):
        return SkewPolynomial._wrap(self.ctx, self.ctx.field.vneg(self._c))

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return SkewPolynomial._wrap(self.ctx, _mul(self.ctx, self._c, b))

    def __rmul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return SkewPolynomial._wrap(self.ctx, _mul(self.ctx, b, self._c))

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not defined")
        result = SkewPolynomial.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        return right_divmod(self, other)

    def __floordiv__(self, other):
        return right_divmod(self, other)[0]

    def __mod__(self, other):
        return right_divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, SkewPolynomial):
            return self.ctx is other.ctx and np.array_equal(self._c, other._c)
        if isinstance(other, (int, FieldElement)):
            b = self._other(other)
            return np.array_equal(self._c, b)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self._c.tobytes()))

    def __bool__(self):
        return len(self._c) > 0

    def __repr__(self):
        return f"SkewPolynomial({self})"

    def __str__(self):
        return format_polynomial(self)

    def key(self):
        """Sort key: degree, then coefficients from the top."""
        return (len(self._c), tuple(int(c) for c in self._c[::-1]))


def _check(A, B):
    if not isinstance(A, SkewPolynomial) or not isinstance(B, SkewPolynomial):
        raise TypeError("expected skew polynomials")
    if A.ctx is not B.ctx:
        raise ContextMismatch("skew polynomials from different contexts do not mix")
    return A.ctx


def skew_mul_classical(A, B):
    ctx = _check(A, B)
    return SkewPolynomial._wrap(ctx, _mul_classical(ctx, A._c, B._c))


def skew_mul_commutative(A, B):
    ctx = _check(A, B)
    return SkewPolynomial._wrap(ctx, _mul_commutative(ctx, A._c, B._c))


def skew_mul_karatsuba(A, B):
    ctx = _check(A, B)
    return SkewPolynomial._wrap(ctx, _mul_karatsuba(ctx, A._c, B._c, matrix_leaf=False))


def skew_mul_matrix(A, B):
    ctx = _check(A, B)
    return SkewPolynomial._wrap(ctx, _mul_karatsuba(ctx, A._c, B._c, matrix_leaf=True))


MUL_ALGORITHMS = {
    "classical": skew_mul_classical,
    "commutative": skew_mul_commutative,
    "karatsuba": skew_mul_karatsuba,
    "matrix": skew_mul_matrix,
}


def skew_mul(A, B):
    ctx = _check(A, B)
    return SkewPolynomial._wrap(ctx, _mul(ctx, A._c, B._c))


def coefficient_twist(B, i):
    return B.twist(i)


class SkewMatrix:
    """r x r matrix over k; entry [i][j] is an element code."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx, entries):
        entries = np.array(entries, dtype=np.int64)
        if entries.shape != (ctx.r, ctx.r):
            raise ValueError(f"expected a {ctx.r} x {ctx.r} matrix")
        entries.flags.writeable = False
        self.ctx = ctx
        self.entries = entries

    def __matmul__(self, other):
        self.ctx.check_same(other.ctx)
        F = self.ctx.field
        prod = F.vsum(F.vmul(self.entries[:, :, None], other.entries[None, :, :]), axis=1)
        return SkewMatrix(self.ctx, prod)

    def __eq__(self, other):
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        return self.ctx is other.ctx and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((id(self.ctx), self.entries.tobytes()))

    def __getitem__(self, ij):
        return int(self.entries[ij])

    def tolist(self):
        return self.entries.tolist()

    def __repr__(self):
        return f"SkewMatrix({self.tolist()})"


def _check_defining(ctx, N):
    if N is None:
        return
    coeffs = tuple(getattr(N, "coeffs", N))
    if coeffs != tuple(ctx.pi_t):
        raise ValueError("matrix_rep requires the defining polynomial pi_t of the context")


def matrix_rep(A, N=None):
    """Matrix of right multiplication by A modulo pi_t(X^r).

    Entry [i][j] is sigma^j(A_{(i-j) mod r})(t), multiplied by t above the
    diagonal, where A = sum A_i X^i with A_i in k[X^r].  The map reverses
    products: matrix_rep(A B) = matrix_rep(B) @ matrix_rep(A).
    """
    ctx = A.ctx
    _check_defining(ctx, N)
    r = ctx.r
    if A.degree >= r * r:
        A = SkewPolynomial._wrap(ctx, _reduce_defining(ctx, A._c))
    a = _pad(A._c, r * r)[None, :]
    return SkewMatrix(ctx, _rep_batch(ctx, a)[0].T)


def matrix_unrep(M, N=None):
    ctx = M.ctx
    _check_defining(ctx, N)
    return SkewPolynomial._wrap(ctx, _unrep_batch(ctx, np.ascontiguousarray(M.entries.T)[None])[0])


def _defining_array(ctx):
    r = ctx.r
    arr = np.zeros(r * r + 1, dtype=np.int64)
    arr[::r] = np.array(ctx.pi_t, dtype=np.int64)
    return arr


def _reduce_defining(ctx, a):
    return _divmod_naive(ctx, a, _defining_array(ctx))[1]


# reciprocals and division

def reciprocal(P, n):
    """tau_n(P) = sum a_{n-i} X^i, an element of the opposite ring."""
    if P.degree > n:
        raise ValueError(f"degree {P.degree} exceeds {n}")
    arr = _pad(P._c, n + 1)[::-1].copy()
    return SkewPolynomial._wrap(P.ctx.opposite, arr)


def right_divmod(A, B):
    """(Q, R) with A = Q B + R and deg R < deg B."""
    ctx = _check(A, B)
    if B.is_zero():
        raise ZeroDivisionError("division by the zero skew polynomial")
    q, rem = _divmod(ctx, A._c, B._c)
    return SkewPolynomial._wrap(ctx, q), SkewPolynomial._wrap(ctx, rem)


def right_divmod_naive(A, B):
    ctx = _check(A, B)
    if B.is_zero():
        raise ZeroDivisionError("division by the zero skew polynomial")
    q, rem = _divmod_naive(ctx, A._c, B._c)
    return SkewPolynomial._wrap(ctx, q), SkewPolynomial._wrap(ctx, rem)


def to_opposite(P):
    """Image under the anti-isomorphism onto k[X, sigma^-1]."""
    return SkewPolynomial._wrap(P.ctx.opposite, _psi(P.ctx, P._c))


def from_opposite(P, ctx):
    """Inverse of :func:`to_opposite` landing in ``ctx``."""
    if P.ctx is not ctx.opposite:
        raise ContextMismatch("polynomial does not live in the opposite ring of ctx")
    return SkewPolynomial._wrap(ctx, _psi_inv(ctx, P._c))


def left_divmod(A, B):
    """(Q, R) with A = B Q + R and deg R < deg B."""
    ctx = _check(A, B)
    q, rem = right_divmod(to_opposite(A), to_opposite(B))
    return from_opposite(q, ctx), from_opposite(rem, ctx)


# extended right gcd

def _mat_vec(M, u, v):
    return M[0][0] * u + M[0][1] * v, M[1][0] * u + M[1][1] * v


def _mat_mul(S, R):
    return [[S[0][0] * R[0][0] + S[0][1] * R[1][0], S[0][0] * R[0][1] + S[0][1] * R[1][1]],
            [S[1][0] * R[0][0] + S[1][1] * R[1][0], S[1][0] * R[0][1] + S[1][1] * R[1][1]]]


def _identity(ctx):
    one, zero = SkewPolynomial.one(ctx), SkewPolynomial.zero(ctx)
    return [[one, zero], [zero, one]]


def _step_matrix(q):
    ctx = q.ctx
    return [[SkewPolynomial.zero(ctx), SkewPolynomial.one(ctx)], [SkewPolynomial.one(ctx), -q]]


def _hgcd(a, b):
    """Half-gcd for deg a > deg b: matrix M with M (a, b) = (c, d),
    deg c >= ceil(deg a / 2) > deg d, built from the leading quotients only."""
    ctx = a.ctx
    n = a.degree
    m = (n + 1) // 2
    if b.degree < m:
        return _identity(ctx)
    if n < THRESHOLDS["hgcd_min_degree"]:
        M = _identity(ctx)
        while b.degree >= m:
            q, rem = right_divmod(a, b)
            a, b = b, rem
            M = _mat_mul(_step_matrix(q), M)
        return M
    R = _hgcd(a.quo_x(m), b.quo_x(m))
    a1, b1 = _mat_vec(R, a, b)
    if b1.degree < m:
        return R
    q, rem = right_divmod(a1, b1)
    c, d = b1, rem
    k = 2 * m - c.degree
    S = _hgcd(c.quo_x(k), d.quo_x(k))
    return _mat_mul(S, _mat_mul(_step_matrix(q), R))


def _euclid_matrix(a, b):
    """M with M (a, b) = (g, 0), g an unnormalised right gcd."""
    ctx = a.ctx
    M = _identity(ctx)
    if a.degree < b.degree:
        a, b = b, a
        M = [[M[0][1], M[0][0]], [M[1][1], M[1][0]]]
    if b.is_zero():
        return a, M
    if a.degree == b.degree:
        q, rem = right_divmod(a, b)
        a, b = b, rem
        M = _mat_mul(_step_matrix(q), M)
    while not b.is_zero():
        if a.degree >= THRESHOLDS["hgcd_min_degree"]:
            R = _hgcd(a, b)
            a, b = _mat_vec(R, a, b)
            M = _mat_mul(R, M)
            if b.is_zero():
                break
        q, rem = right_divmod(a, b)
        a, b = b, rem
        M = _mat_mul(_step_matrix(q), M)
    return a, M


def fast_extended_rgcd(A0, A1):
    """(G, M) with M (A0, A1)^T = (G, 0)^T and G the monic right gcd.

    The top row of M holds Bezout cofactors; the bottom row (V0, V1) satisfies
    V0 A0 = -V1 A1 = llcm(A0, A1), scaled so that this product is monic.
    """
    ctx = _check(A0, A1)
    if A0.is_zero() and A1.is_zero():
        raise ValueError("rgcd of two zero polynomials is undefined")
    g, M = _euclid_matrix(A0, A1)
    return _normalise(ctx, g, M, A0, A1)


def _normalise(ctx, g, M, A0, A1):
    F = ctx.field
    c = F.inv(g.lc)
    top = [M[0][0].lscale(c), M[0][1].lscale(c)]
    bottom = list(M[1])
    L = bottom[0] * A0
    if L.is_zero():
        L = bottom[1] * A1
    if not L.is_zero():
        d = F.inv(L.lc)
        bottom = [bottom[0].lscale(d), bottom[1].lscale(d)]
    return g.lscale(c), [top, bottom]


def rgcd(A, B):
    return fast_extended_rgcd(A, B)[0]


def llcm(A, B):
    """Monic generator of the intersection of the left ideals generated by A and B."""
    ctx = _check(A, B)
    if A.is_zero() or B.is_zero():
        raise ValueError("llcm requires nonzero operands")
    _, M = fast_extended_rgcd(A, B)
    return (M[1][0] * A).monic()


def lgcd(A, B):
    ctx = _check(A, B)
    return from_opposite(rgcd(to_opposite(A), to_opposite(B)), ctx)


def rlcm(A, B):
    ctx = _check(A, B)
    return from_opposite(llcm(to_opposite(A), to_opposite(B)), ctx)


def extended_rgcd_naive(A, B):
    """(G, U, V) with U A + V B = G monic, by the plain remainder sequence."""
    ctx = _check(A, B)
    if A.is_zero() and B.is_zero():
        raise ValueError("rgcd of two zero polynomials is undefined")
    zero, one = SkewPolynomial.zero(ctx), SkewPolynomial.one(ctx)
    r0, r1 = A, B
    u0, u1 = one, zero
    v0, v1 = zero, one
    while not r1.is_zero():
        q, rem = right_divmod_naive(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    c = ctx.field.inv(r0.lc)
    return r0.lscale(c), u0.lscale(c), v0.lscale(c)


# text form

def _format_coeff(ctx, c):
    return ctx.field.format(c)


def format_polynomial(P):
    ctx = P.ctx
    if P.is_zero():
        return "0"
    terms = []
    for i in range(len(P._c) - 1, -1, -1):
        c = int(P._c[i])
        if c == 0:
            continue
        cs = _format_coeff(ctx, c)
        if i == 0:
            terms.append(cs if "+" not in cs or len(P._c) == 1 else f"({cs})")
            continue
        mono = "X" if i == 1 else f"X^{i}"
        if c == 1:
            terms.append(mono)
        elif "+" in cs:
            terms.append(f"({cs})*{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


class _Parser:
    """Recursive-descent parser for sums, products and powers of integers,
    parenthesised expressions and named generators."""

    def __init__(self, text, names, const):
        self.text = text
        self.pos = 0
        self.names = names
        self.const = const

    def error(self, msg):
        raise ParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        sign = self.peek()
        if sign in "+-" and sign:
            self.pos += 1
            value = self.term()
            if sign == "-":
                value = -value
        else:
            value = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.power()
        return value

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.peek()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("expected an exponent")
            base = base ** int(self.text[start:self.pos])
        return base

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return self.const(int(self.text[start:self.pos]))
        if ch in self.names:
            self.pos += 1
            return self.names[ch]
        self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")


def parse_polynomial(ctx, text):
    """Parse text such as ``X^2 + (w+1)*X + w``; w is the class of x in k."""
    X = SkewPolynomial.x(ctx)
    w = SkewPolynomial.constant(ctx, ctx.w.value)
    const = lambda c: SkewPolynomial.constant(ctx, ctx.field.from_int(c))
    return _Parser(text, {"X": X, "w": w}, const).parse()
