import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, Symbol, isprime

from eigenvanish import (
    BadInput,
    CyclotomicSetup,
    FieldTooLarge,
    NotCoprime,
    NotInSubgroup,
    build_field,
    least_primitive_root,
    multiplicative_order,
    trace,
)
from eigenvanish.ffield import (
    _coeffs_to_int,
    _int_to_coeffs,
    _is_irreducible,
    dlog_order_p,
    generator_recurrence,
)


def test_multiplicative_order_known():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(3, 7) == 6
    assert multiplicative_order(3, 11) == 5
    assert multiplicative_order(5, 19) == 9
    assert multiplicative_order(13, 43) == 21


def test_multiplicative_order_not_coprime():
    with pytest.raises(NotCoprime):
        multiplicative_order(14, 7)


def test_least_primitive_root():
    assert least_primitive_root(7) == 3
    assert least_primitive_root(11) == 2
    assert least_primitive_root(13) == 2
    assert least_primitive_root(23) == 5
    assert least_primitive_root(41) == 6


def test_setup_golden():
    s = CyclotomicSetup.create(7, 2)
    assert (s.n, s.e, s.f, s.g) == (3, 2, 1, 3)
    s = CyclotomicSetup.create(11, 3)
    assert (s.n, s.e, s.f) == (5, 2, 22)
    s = CyclotomicSetup.create(13, 3)
    assert (s.n, s.e, s.f) == (3, 4, 2)
    s = CyclotomicSetup.create(19, 5)
    assert (s.n, s.e, s.f) == (9, 2, 102796)


def test_setup_guards():
    with pytest.raises(BadInput):
        CyclotomicSetup.create(4, 3)  # p not prime
    with pytest.raises(BadInput):
        CyclotomicSetup.create(3, 2)  # p too small
    with pytest.raises(BadInput):
        CyclotomicSetup.create(7, 7)  # q = p
    with pytest.raises(BadInput):
        CyclotomicSetup.create(7, 9)  # q not prime
    with pytest.raises(BadInput):
        CyclotomicSetup.create(13, 53)  # 53 ≡ 1 mod 13, order would be 1
    with pytest.raises(BadInput):
        CyclotomicSetup.create(7, 2, g=2)  # 2 has order 3, not primitive


def test_setup_g_override():
    s = CyclotomicSetup.create(7, 2, g=5)
    assert s.g == 5


def test_build_field_golden_f8(f8):
    setup, ctx = f8
    assert ctx.modulus_int == 11  # x^3 + x + 1, the lex-least irreducible cubic
    assert ctx.encode(ctx.alpha) == 2  # x itself is primitive
    assert ctx.encode(ctx.zeta) == 2  # f = 1 so zeta = alpha
    assert ctx.basis_traces == (1, 0, 0)
    assert ctx.order == 7


def test_build_field_golden_f27(f27):
    setup, ctx = f27
    assert ctx.modulus_int == 34  # x^3 + 2x + 1
    assert ctx.encode(ctx.alpha) == 3
    assert ctx.encode(ctx.zeta) == 9  # alpha^2, order 13
    assert ctx.pow(ctx.zeta, 13) == ctx.one


def test_field_too_large():
    s = CyclotomicSetup.create(19, 5)
    with pytest.raises(FieldTooLarge):
        build_field(s, cap=1 << 10)


def test_build_field_uncapped_large():
    # index-only contexts build fine far beyond any scan cap
    s = CyclotomicSetup.create(31, 7)
    ctx = build_field(s)
    assert ctx.order == 7**15 - 1
    assert ctx.pow(ctx.zeta, 31) == ctx.one


@settings(max_examples=150, deadline=None)
@given(
    q=st.sampled_from([2, 3, 5]),
    coeffs=st.lists(st.integers(0, 4), min_size=1, max_size=4),
)
def test_irreducibility_matches_sympy(q, coeffs):
    cand = tuple(c % q for c in coeffs)  # non-leading coefficients, monic implied
    x = Symbol("x")
    poly = Poly(
        x ** len(cand) + sum(c * x**i for i, c in enumerate(cand)), x, modulus=q
    )
    assert _is_irreducible(cand, q) == poly.is_irreducible


@given(k=st.integers(0, 3**6 - 1))
def test_coeff_int_roundtrip(k):
    assert _coeffs_to_int(_int_to_coeffs(k, 6, 3), 3) == k


def test_trace_frobenius_invariant(f27):
    setup, ctx = f27
    x = ctx.alpha
    for _ in range(10):
        assert trace(ctx, x) == trace(ctx, ctx.pow(x, ctx.q))
        x = ctx.mul(x, ctx.alpha)


def test_trace_is_additive(f27):
    setup, ctx = f27
    a, b = ctx.alpha, ctx.pow(ctx.alpha, 5)
    s = tuple((u + w) % ctx.q for u, w in zip(a, b))
    assert trace(ctx, s) == (trace(ctx, a) + trace(ctx, b)) % ctx.q


@pytest.mark.parametrize("pq", [(7, 2), (13, 3), (11, 3)])
def test_generator_recurrence_matches_power_walk(pq):
    p, q = pq
    setup = CyclotomicSetup.create(p, q)
    ctx = build_field(setup, cap=1 << 20)
    rec, seed = generator_recurrence(ctx)
    assert len(rec) == ctx.n and len(seed) == ctx.n
    walked = []
    x = ctx.one
    for _ in range(40):
        walked.append(trace(ctx, x))
        x = ctx.mul(x, ctx.alpha)
    stream = list(seed)
    while len(stream) < 40:
        k = len(stream) - ctx.n
        stream.append((-sum(rec[j] * stream[k + j] for j in range(ctx.n))) % q)
    assert stream[:40] == walked


def test_dlog_order_p(f27):
    setup, ctx = f27
    for j in range(13):
        assert dlog_order_p(ctx, ctx.pow(ctx.zeta, j), 13) == j
    with pytest.raises(NotInSubgroup):
        dlog_order_p(ctx, ctx.alpha, 13)  # alpha has order 26, not in <zeta>


def test_modulus_is_lex_least(f8):
    # every smaller monic cubic over F_2 must be reducible
    setup, ctx = f8
    for k in range(ctx.modulus_int - 8):
        assert not _is_irreducible(_int_to_coeffs(k, 3, 2), 2)
