import itertools

import numpy as np
import pytest

from orepoly import (
    ContextMismatch,
    ParseError,
    SkewPolynomial as SP,
    build_context,
    fast_extended_rgcd,
    lgcd,
    left_divmod,
    llcm,
    matrix_rep,
    matrix_unrep,
    rgcd,
    right_divmod,
    rlcm,
    skew_mul,
    skew_mul_classical,
    skew_mul_commutative,
    skew_mul_karatsuba,
    skew_mul_matrix,
)
from orepoly.oracle import enumerate_right_divisors, naive_extended_rgcd
from orepoly.skew_ring import (
    THRESHOLDS,
    coefficient_twist,
    from_opposite,
    reciprocal,
    right_divmod_naive,
    to_opposite,
)

ALGOS = [skew_mul_classical, skew_mul_commutative, skew_mul_karatsuba, skew_mul_matrix, skew_mul]
CONTEXTS = [(2, 2, 1), (3, 2, 1), (2, 4, 1), (2, 4, 2), (3, 3, 1), (2, 8, 1), (5, 2, 1), (3, 4, 2)]


def P(ctx, text):
    return SP.parse(ctx, text)


@pytest.mark.parametrize("mul", ALGOS)
def test_mul_examples(ctx4, mul):
    X, w = P(ctx4, "X"), P(ctx4, "w")
    assert mul(X, w) == P(ctx4, "(w+1)*X")
    A = P(ctx4, "X+w")
    assert mul(A, A) == P(ctx4, "X^2 + X + w + 1")
    assert mul(A, SP.one(ctx4)) == A
    assert mul(A, SP.zero(ctx4)).is_zero()
    assert mul(SP.zero(ctx4), A).is_zero()


def test_constants_multiply_as_in_k(ctx9):
    F = ctx9.field
    for a, b in itertools.product(range(9), repeat=2):
        assert skew_mul_matrix(SP.constant(ctx9, a), SP.constant(ctx9, b)) == SP.constant(ctx9, F.mul(a, b))


@pytest.mark.parametrize("p,n,s", CONTEXTS)
def test_algorithms_agree(p, n, s, rng):
    ctx = build_context(p, n, s=s)
    for da, db in [(0, 5), (3, 1), (30, 30), (50, 17), (129, 64), (200, 200)]:
        A, B = SP.random(ctx, da, rng), SP.random(ctx, db, rng)
        ref = skew_mul_classical(A, B)
        for mul in ALGOS[1:]:
            assert mul(A, B) == ref, mul.__name__


def test_low_degree_and_leaf_cases(ctx256, ctx9, rng):
    A, B = SP.random(ctx256, 30, rng), SP.random(ctx256, 30, rng)
    assert skew_mul_matrix(A, B) == skew_mul_classical(A, B)
    A = SP.random(ctx9, 1, rng)
    assert skew_mul_karatsuba(A, P(ctx9, "X+1")) == skew_mul_classical(A, P(ctx9, "X+1"))
    assert skew_mul_matrix(A, SP.one(ctx9)) == A


@pytest.mark.parametrize("p,n,s", CONTEXTS[:5])
def test_ring_axioms(p, n, s, rng):
    ctx = build_context(p, n, s=s)
    one = SP.one(ctx)
    for _ in range(20):
        A, B, C = (SP.random(ctx, int(rng.integers(0, 61)), rng) for _ in range(3))
        assert (A * B) * C == A * (B * C)
        assert A * (B + C) == A * B + A * C
        assert (A + B) * C == A * C + B * C
        assert one * A == A == A * one


def test_twist(ctx4):
    assert coefficient_twist(P(ctx4, "X+w"), 1) == P(ctx4, "X+w+1")
    B = P(ctx4, "w*X^3 + X + w")
    assert coefficient_twist(B, ctx4.r) == B
    assert coefficient_twist(SP.zero(ctx4), 1).is_zero()


def test_x_commutation(ctx9, rng):
    X = SP.x(ctx9)
    for a in range(9):
        assert X * SP.constant(ctx9, a) == SP.constant(ctx9, ctx9.sigma(a)) * X


def test_matrix_rep(ctx4, ctx9, rng):
    r = ctx9.r
    for ctx in (ctx4, ctx9):
        r = ctx.r
        a = ctx.w.value
        M = matrix_rep(SP.constant(ctx, a))
        assert M.tolist() == [[ctx.sigma(a, j) if i == j else 0 for j in range(r)] for i in range(r)]
        # X: ones just below the diagonal, t in the top right corner
        MX = matrix_rep(SP.x(ctx))
        expect = [[0] * r for _ in range(r)]
        for i in range(r - 1):
            expect[i + 1][i] = 1
        expect[0][r - 1] = ctx.t
        assert MX.tolist() == expect
    for _ in range(10):
        A = SP.random(ctx9, r * r - 1, rng)
        assert matrix_unrep(matrix_rep(A)) == A
        B = SP.random(ctx9, r * r - 1, rng)
        assert matrix_rep(A * B) == matrix_rep(B) @ matrix_rep(A)


def test_reciprocal(ctx4, rng):
    tau = reciprocal(P(ctx4, "X+w"), 1)
    assert tau.ctx is ctx4.opposite
    assert tau.coeffs == (1, ctx4.w.value)
    assert reciprocal(P(ctx4, "X^3"), 3).coeffs == (1,)
    # tau_{n+m}(PQ) = tau_n(P) * sigma^n(tau_m(Q)) in the opposite ring,
    # where twist(j) there applies sigma^(-j)
    for _ in range(100):
        n, m = (int(x) for x in rng.integers(0, 12, 2))
        A, B = SP.random(ctx4, n, rng), SP.random(ctx4, m, rng)
        lhs = reciprocal(A * B, n + m)
        assert lhs == reciprocal(A, n) * reciprocal(B, m).twist(-n % ctx4.r)


def test_right_divmod_examples(ctx4):
    q, r = right_divmod(P(ctx4, "X^2+1"), P(ctx4, "X+w"))
    assert q == P(ctx4, "X+w+1") and r.is_zero()
    q, r = right_divmod(P(ctx4, "X^2+1"), P(ctx4, "X+1"))
    assert q == P(ctx4, "X+1") and r.is_zero()
    A = P(ctx4, "X^3 + w*X + 1")
    assert right_divmod(A, A) == (SP.one(ctx4), SP.zero(ctx4))
    with pytest.raises(ZeroDivisionError):
        right_divmod(A, SP.zero(ctx4))


def test_left_divmod_examples(ctx4, rng):
    q, r = left_divmod(P(ctx4, "X^2+1"), P(ctx4, "X+w"))
    assert q == P(ctx4, "X+w+1") and r.is_zero()
    assert P(ctx4, "X+w") * q == P(ctx4, "X^2+1")
    for _ in range(50):
        B = SP.random(ctx4, int(rng.integers(1, 20)), rng, monic=True)
        C = SP.random(ctx4, int(rng.integers(0, 20)), rng)
        D = SP.random(ctx4, B.degree - 1, rng)
        assert left_divmod(B * C + D, B) == (C, D)


@pytest.mark.parametrize("p,n,s", CONTEXTS)
def test_division_identity(p, n, s, rng):
    ctx = build_context(p, n, s=s)
    for _ in range(40):
        A = SP.random(ctx, int(rng.integers(0, 80)), rng)
        B = SP.random(ctx, int(rng.integers(0, 40)), rng)
        if B.is_zero():
            continue
        q, r = right_divmod(A, B)
        assert q * B + r == A and r.degree < B.degree
        assert (q, r) == right_divmod_naive(A, B)
        q, r = left_divmod(A, B)
        assert B * q + r == A and r.degree < B.degree


def test_opposite_transport(ctx9, rng):
    for _ in range(30):
        A, B = SP.random(ctx9, 6, rng), SP.random(ctx9, 5, rng)
        assert from_opposite(to_opposite(A), ctx9) == A
        assert to_opposite(A * B) == to_opposite(B) * to_opposite(A)


def test_gcd_examples(ctx4):
    A, B = P(ctx4, "X^2+1"), P(ctx4, "X+w")
    G, M = fast_extended_rgcd(A, B)
    assert G == B
    assert M[0][0].is_zero() and M[0][1] == SP.one(ctx4)
    assert llcm(P(ctx4, "X+w"), P(ctx4, "X+w+1")) == A
    Z = SP.zero(ctx4)
    G, M = fast_extended_rgcd(P(ctx4, "w*X^2 + 1"), Z)
    assert G == P(ctx4, "w*X^2+1").monic()
    assert rgcd(A, SP.one(ctx4)) == SP.one(ctx4)
    with pytest.raises(ValueError):
        rgcd(Z, Z)


@pytest.mark.parametrize("p,n,s", CONTEXTS[:6])
def test_gcd_properties(p, n, s, rng):
    ctx = build_context(p, n, s=s)
    for _ in range(15):
        C = SP.random(ctx, int(rng.integers(0, 12)), rng, monic=True)
        A = SP.random(ctx, int(rng.integers(0, 40)), rng, monic=True) * C
        B = SP.random(ctx, int(rng.integers(0, 40)), rng, monic=True) * C
        G, M = fast_extended_rgcd(A, B)
        assert M[0][0] * A + M[0][1] * B == G and G.is_monic()
        assert right_divmod(A, G)[1].is_zero() and right_divmod(B, G)[1].is_zero()
        assert right_divmod(G, C)[1].is_zero()
        assert G == naive_extended_rgcd(A, B)[0]
        L = llcm(A, B)
        assert L.is_monic() and L.degree == A.degree + B.degree - G.degree
        assert right_divmod(L, A)[1].is_zero() and right_divmod(L, B)[1].is_zero()
        # rgcd(A D, B D) = rgcd(A, B) D
        D = SP.random(ctx, 3, rng, monic=True)
        assert rgcd(A * D, B * D) == G * D
        Gl = lgcd(A, B)
        assert left_divmod(A, Gl)[1].is_zero() and left_divmod(B, Gl)[1].is_zero()
        Lr = rlcm(A, B)
        assert left_divmod(Lr, A)[1].is_zero() and left_divmod(Lr, B)[1].is_zero()
        assert Lr.degree == A.degree + B.degree - Gl.degree


def test_gcd_against_divisor_enumeration(ctx4, rng):
    for _ in range(25):
        A = SP.random(ctx4, int(rng.integers(1, 4)), rng, monic=True)
        B = SP.random(ctx4, int(rng.integers(1, 4)), rng, monic=True)
        G = rgcd(A, B)
        for d in range(1, min(A.degree, B.degree) + 1):
            for D in enumerate_right_divisors(A, d) & enumerate_right_divisors(B, d):
                assert right_divmod(G, D)[1].is_zero()


def test_half_gcd_path(ctx9, rng):
    assert THRESHOLDS["hgcd_min_degree"] <= 40
    A = SP.random(ctx9, 120, rng, monic=True)
    B = SP.random(ctx9, 110, rng, monic=True)
    G, M = fast_extended_rgcd(A, B)
    Gn, U, V = naive_extended_rgcd(A, B)
    assert G == Gn
    assert M[0][0] * A + M[0][1] * B == G
    assert (M[1][0] * A).is_monic() and M[1][0] * A == -(M[1][1] * B)


def test_print_parse_round_trip(rng):
    for p, n, s in CONTEXTS:
        ctx = build_context(p, n, s=s)
        for _ in range(20):
            A = SP.random(ctx, int(rng.integers(0, 8)), rng)
            assert SP.parse(ctx, str(A)) == A


def test_formatting(ctx4):
    assert str(P(ctx4, "X*w")) == "(w+1)*X"
    assert str(P(ctx4, "(X+w)^2")) == "X^2 + X + (w+1)"
    assert str(SP.zero(ctx4)) == "0"


@pytest.mark.parametrize("bad", ["X+", "X^", "(X+1", "X $ 1", "Z"])
def test_parse_errors(ctx4, bad):
    with pytest.raises(ParseError):
        SP.parse(ctx4, bad)


def test_context_mismatch(ctx4, ctx9):
    with pytest.raises(ContextMismatch):
        SP.x(ctx4) * SP.x(ctx9)


def test_zero_degree_is_not_an_integer(ctx4):
    assert SP.zero(ctx4).degree < -10 ** 9
