"""Irreducibility, similarity, types and factorization in k[X, sigma]."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _linalg, _poly
from .centre_norm import (
    CentrePolynomial,
    _phi_r_matrix,
    centre_embed,
    commutative_factorize,
    reduced_norm,
    residue_field,
)
from .errors import ContextMismatch, NotEtale, RetryBudgetExceeded
from .field_tower import FieldElement
from .skew_ring import (
    SkewPolynomial,
    _divmod_naive,
    llcm,
    rgcd,
    right_divmod,
)

FIRST_FACTOR_BUDGET = 64    # draws per unit of e
FACTOR_STEP_BUDGET = 64     # draws per factor before falling back to first_factor


@dataclass(frozen=True)
class FactorizationResult:
    """P = unit * factors[0] * ... * factors[-1] * X^x_power."""

    unit: FieldElement
    factors: tuple
    x_power: int

    def product(self):
        ctx = self.unit.ctx
        out = SkewPolynomial.constant(ctx, self.unit.value)
        for f in self.factors:
            out = out * f
        return out * SkewPolynomial.monomial(ctx, self.x_power)

    def to_json(self):
        return {
            "unit": str(self.unit),
            "x_power": self.x_power,
            "factors": [str(f) for f in self.factors],
        }


@dataclass(frozen=True)
class TypeEntry:
    norm: CentrePolynomial
    e_seq: tuple
    dual_seq: tuple

    @property
    def delta(self):
        return self.norm.degree


@dataclass(frozen=True)
class TypeProfile:
    entries: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def to_json(self):
        return [
            {"norm": str(t.norm), "e": list(t.e_seq), "dual": list(t.dual_seq)}
            for t in self.entries
        ]


def _right_quotient(A, B):
    q, r = right_divmod(A, B)
    if not r.is_zero():
        raise ArithmeticError("exact right division left a remainder")
    return q


def strip_x(P):
    """(v, P_et) with P = P_et * X^v and P_et(0) != 0."""
    if P.is_zero():
        raise ValueError("cannot strip X from the zero polynomial")
    v = int(np.flatnonzero(P.array)[0])
    return v, P.quo_x(v)


def _require_etale(P):
    if P.is_zero() or P[0] == 0:
        raise NotEtale("polynomial is divisible by X on the right (constant coefficient is zero)")


def is_irreducible(P):
    d = P.degree
    if d < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    if d == 1:
        return True
    if P[0] == 0:
        return False
    return reduced_norm(P)[1].is_irreducible()


# similarity

def _mat_poly(F, f, M):
    """f(M) for a square matrix over F by Horner."""
    n = len(M)
    out = [[F.zero] * n for _ in range(n)]
    for c in reversed(f):
        out = _linalg.matmul(F, out, M)
        for i in range(n):
            out[i][i] = F.add(out[i][i], c)
    return out


def _nil_ranks(P, upto):
    """Ranks of left multiplication by X^j on k[X,sigma]/k[X,sigma]P, j = 1..upto."""
    ctx = P.ctx
    d = P.degree
    out = []
    for j in range(1, upto + 1):
        cols = []
        for i in range(d):
            v = np.zeros(i + j + 1, dtype=np.int64)
            v[i + j] = 1
            rem = _divmod_naive(ctx, v, P.array)[1]
            cols.append(np.pad(rem, (0, d - len(rem))).tolist())
        out.append(_linalg.rank(ctx.field, cols))
    return out


def _module_invariants(P, factors):
    F = P.ctx.field
    A = _phi_r_matrix(P)
    inv = []
    for N, mult in factors:
        if N.coeffs == (0, 1):
            inv.append(tuple(_nil_ranks(P, mult)))
            continue
        B = _mat_poly(F, list(N.coeffs), A)
        Bj = B
        ranks = []
        for _ in range(mult):
            ranks.append(_linalg.rank(F, Bj))
            Bj = _linalg.matmul(F, Bj, B)
        inv.append(tuple(ranks))
    return inv


def are_similar(P, Q):
    """True iff k[X,sigma]/k[X,sigma]P and k[X,sigma]/k[X,sigma]Q are isomorphic."""
    if P.ctx is not Q.ctx:
        raise ContextMismatch("skew polynomials from different contexts do not mix")
    if not (P.is_monic() and Q.is_monic()):
        raise ValueError("are_similar needs monic polynomials")
    if P.degree < 1 or Q.degree < 1:
        raise ValueError("are_similar needs positive degree")
    if P.degree != Q.degree:
        return False
    if P == Q:
        return True
    NP, NQ = reduced_norm(P)[1], reduced_norm(Q)[1]
    if NP != NQ:
        return False
    factors = commutative_factorize(NP)
    if all(m == 1 for _, m in factors):
        return True
    return _module_invariants(P, factors) == _module_invariants(Q, factors)


# types

def _peel(P, N):
    """Successive rgcd layers of P against embed(N): (layers, remaining quotient)."""
    EN = centre_embed(N)
    layers = []
    cur = P
    while cur.degree > 0:
        g = rgcd(cur, EN)
        if g.degree < 1:
            break
        layers.append(g)
        cur = _right_quotient(cur, g)
    return layers, cur


def _dual(e_seq):
    if not e_seq:
        return ()
    return tuple(sum(1 for e in e_seq if e >= j) for j in range(1, e_seq[0] + 1))


def _e_seq(P, N):
    layers, _ = _peel(P, N)
    delta = N.degree
    e = tuple(g.degree // delta for g in layers)
    if any(a < b for a, b in zip(e, e[1:])):
        raise AssertionError(f"layer sizes {e} are not nonincreasing")
    return e


def type_profile(P, factors=None):
    """Per irreducible centre factor N of the norm, the layer sizes of P against N."""
    _require_etale(P)
    if not P.is_monic():
        raise ValueError("type_profile needs a monic polynomial")
    if factors is None:
        factors = commutative_factorize(reduced_norm(P)[1])
    entries = []
    for N, mult in factors:
        e = _e_seq(P, N)
        if sum(e) != mult:
            raise AssertionError(f"layer sizes {e} do not add up to the multiplicity {mult}")
        entries.append(TypeEntry(N, e, _dual(e)))
    return TypeProfile(tuple(entries))


def _centre_product(ctx, items):
    out = CentrePolynomial._wrap(ctx, [1])
    for N, mult in items:
        out = out * N ** mult
    return out


def split_by_norm_factors(P, norm_factors):
    """Write P as a product of pieces each of type (e) for a single N.

    Returns a list of (N, [G_1, ..., G_s]) such that multiplying every G in
    list order (left to right, groups in list order) gives back P.
    """
    _require_etale(P)
    if not P.is_monic():
        raise ValueError("split_by_norm_factors needs a monic polynomial")
    items = [(N, m) for N, m in norm_factors]
    if _centre_product(P.ctx, items) != reduced_norm(P)[1]:
        raise ValueError("the given factors do not multiply to the norm of P")
    return _split(P, items)


def _split(P, items):
    if len(items) == 1:
        N, _ = items[0]
        layers, _ = _peel(P, N)
        return [(N, list(reversed(layers)))]
    # cut the list where the right part reaches about half the degree
    total = sum(N.degree * m for N, m in items)
    acc, cut = 0, len(items) - 1
    for i in range(len(items) - 1, 0, -1):
        acc += items[i][0].degree * items[i][1]
        cut = i
        if 2 * acc >= total:
            break
    left, right = items[:cut], items[cut:]
    M = _centre_product(P.ctx, right)
    Q1 = rgcd(P, centre_embed(M))
    Q2 = _right_quotient(P, Q1)
    return _split(Q2, left) + _split(Q1, right)


# first factor

def _e_coords(P, N, E):
    """E-coordinates of an element of k[X,sigma]/embed(N), as a flat list."""
    ctx = P.ctx
    r = ctx.r
    delta = N.degree
    arr = np.zeros(r * delta, dtype=np.int64)
    arr[:len(P)] = P.array
    tc = ctx.tcoords[arr]          # (r*delta, r): coefficient of t^i
    out = []
    for j in range(r):
        block = tc[j::r]           # Y-powers 0..delta-1 of C_j
        for i in range(r):
            out.append(tuple(int(x) for x in block[:, i]))
    return out


def _mod_central(A, EN):
    if A.degree < EN.degree:
        return A
    return right_divmod(A, EN)[1]


def _lift(ctx, alpha):
    return centre_embed(CentrePolynomial._wrap(ctx, list(alpha)))


def _simple_roots(E, f, rng):
    df = _poly.deriv(E, f)
    return [a for a in _poly.roots(E, f, rng) if _poly.evaluate(E, df, a) != E.zero]


def first_factor(P, N, rng, budget=None):
    """A monic irreducible right divisor of P with norm N (P of type (e), norm N^e)."""
    ctx = P.ctx
    delta = N.degree
    d = P.degree
    e = d // delta
    if e * delta != d:
        raise ValueError("deg P is not a multiple of deg N")
    if e == 1:
        return P.monic()
    EN = centre_embed(N)
    Q, rem = right_divmod(EN, P)
    if not rem.is_zero():
        raise ValueError("P does not right-divide embed(N)")
    E = residue_field(N)
    if budget is None:
        budget = FIRST_FACTOR_BUDGET * e
    for _ in range(budget):
        Rt = SkewPolynomial.random(ctx, d - 1, rng)
        R0 = _mod_central(Rt * Q, EN)
        if R0.is_zero():
            continue
        # minimal dependency among R0, R0^2, ... over E
        basis = _linalg.IncrementalBasis(E)
        Rj = R0
        lam = None
        for _ in range(e + 1):
            lam = basis.add(_e_coords(Rj, N, E))
            if lam is not None:
                break
            Rj = _mod_central(Rj * R0, EN)
        if lam is None:
            continue
        # R0^(s+1) = sum lam_i R0^(i+1)  =>  F(T) = T^s - sum lam_i T^i
        f = [E.neg(c) for c in lam] + [E.one]
        S0 = _mod_central(Q * Rt, EN)
        for alpha in _simple_roots(E, f, rng):
            P1 = rgcd(P, S0 - _lift(ctx, alpha))
            if P1.degree == delta:
                return P1
    raise RetryBudgetExceeded(f"first_factor found no factor in {budget} draws")


def factor_step(P, N, P1, rng, budget=None):
    """(P_e, ..., P_1) with P = P_e ... P_1, all irreducible of norm N."""
    ctx = P.ctx
    delta = N.degree
    EN = centre_embed(N)
    if budget is None:
        budget = FACTOR_STEP_BUDGET
    found = []
    cur, F = P, P1
    while cur.degree > delta:
        Qc = _right_quotient(EN, cur)
        for _ in range(budget):
            R = SkewPolynomial.random(ctx, EN.degree - 1, rng)
            S = F * Qc * R
            if S.is_zero():
                continue
            A = rgcd(cur, S)
            B = _right_quotient(llcm(A, F), F)
            if B.degree == delta:
                break
        else:
            B = None
        found.append(F)
        cur = _right_quotient(cur, F)
        F = B.monic() if B is not None else first_factor(cur, N, rng, budget)
    found.append(cur.monic())
    return tuple(reversed(found))


def skew_factorization(P, rng=None, budget=None):
    """Factor P into a unit, monic irreducibles and a power of X.

    ``budget`` overrides the retry budgets of first_factor and factor_step.
    """
    if P.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if rng is None:
        rng = np.random.default_rng()
    ctx = P.ctx
    unit = P.lc
    v, Pe = strip_x(P.monic())
    factors = []
    if Pe.degree >= 1:
        norm = reduced_norm(Pe)[1]
        items = commutative_factorize(norm, rng)
        for N, pieces in split_by_norm_factors(Pe, items):
            for G in pieces:
                P1 = first_factor(G, N, rng, budget)
                factors.extend(factor_step(G, N, P1, rng, budget))
    return FactorizationResult(FieldElement(ctx, unit), tuple(factors), v)
