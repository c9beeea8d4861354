"""Exact arithmetic in F_{q^n} with canonical, reproducible generators.

Elements are coefficient tuples of length n over F_q (little-endian: index i
holds the coefficient of x^i). The modulus is the lexicographically least
monic irreducible polynomial of degree n, "lexicographic" meaning the base-q
little-endian integer encoding of the non-leading coefficients. The generator
alpha is the lexicographically least primitive element under the same
encoding, certified primitive against the full factorization of q^n - 1, and
zeta = alpha^f is the canonical p-th root of unity.
"""

from dataclasses import dataclass, field

from sympy import factorint, isprime
from sympy.polys.specialpolys import cyclotomic_poly

from .errors import (
    BadInput,
    FactorizationFailure,
    FieldTooLarge,
    InternalInvariant,
    NotCoprime,
    NotInSubgroup,
)

# Primitivity certification refuses composite cofactors above this size; at
# supported field sizes the cyclotomic split keeps pieces far below it.
_FACTOR_DIGIT_LIMIT = 80


def multiplicative_order(a: int, m: int) -> int:
    """Least t >= 1 with a^t = 1 mod m."""
    if m < 2:
        raise BadInput(f"modulus {m} < 2")
    a %= m
    if _gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) != 1")
    # group exponent divides phi(m); strip each prime as far as possible
    phi = 1
    for prime, mult in factorint(m).items():
        phi *= (prime - 1) * prime ** (mult - 1)
    order = phi
    for prime in factorint(phi):
        while order % prime == 0 and pow(a, order // prime, m) == 1:
            order //= prime
    return order


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class CyclotomicSetup:
    """The (p, q) frame: orders, cofactor f = (q^n - 1)/p, primitive root g."""

    p: int
    q: int
    n: int
    e: int
    f: int
    g: int

    @classmethod
    def create(cls, p: int, q: int, g: int | None = None) -> "CyclotomicSetup":
        if p <= 3 or not isprime(p):
            raise BadInput(f"p={p} must be an odd prime > 3")
        if not isprime(q) or q == p:
            raise BadInput(f"q={q} must be a prime distinct from p")
        if q % p == 1:
            raise BadInput(f"q={q} is 1 mod p={p}; the order n would be 1")
        n = multiplicative_order(q, p)
        e = (p - 1) // n
        f = (q**n - 1) // p
        if g is None:
            g = least_primitive_root(p)
        elif multiplicative_order(g % p, p) != p - 1:
            raise BadInput(f"g={g} is not a primitive root mod {p}")
        setup = cls(p=p, q=q, n=n, e=e, f=f, g=g % p)
        setup.check()
        return setup

    def field_size(self) -> int:
        return self.q**self.n

    def check(self) -> None:
        p, q, n, e, f = self.p, self.q, self.n, self.e, self.f
        if pow(q, n, p) != 1 or any(pow(q, m, p) == 1 for m in range(1, n)):
            raise InternalInvariant("n is not the order of q mod p")
        if n < 2 or (p - 1) % n or e * n != p - 1 or p * f != q**n - 1:
            raise InternalInvariant("order bookkeeping failed")
        if (q**n - 1) % (p * (q - 1)):
            raise InternalInvariant("p(q-1) does not divide q^n - 1")


def least_primitive_root(p: int) -> int:
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise InternalInvariant(f"no primitive root mod {p}")


# ---------------------------------------------------------------------------
# polynomial arithmetic mod (modulus, q)


def _int_to_coeffs(k: int, n: int, q: int) -> tuple[int, ...]:
    return tuple((k // q**i) % q for i in range(n))


def _coeffs_to_int(c, q: int) -> int:
    k = 0
    for ci in reversed(c):
        k = k * q + ci
    return k


def _mulmod(a, b, modulus, q: int):
    """Product of two residues; `modulus` holds the n non-leading coefficients."""
    n = len(modulus)
    res = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % q
    for i in range(len(res) - 1, n - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(n):
                res[i - n + j] = (res[i - n + j] - c * modulus[j]) % q
    return tuple(res[:n])


def _powmod(a, exponent: int, modulus, q: int):
    n = len(modulus)
    result = (1,) + (0,) * (n - 1)
    base = tuple(a)
    while exponent:
        if exponent & 1:
            result = _mulmod(result, base, modulus, q)
        base = _mulmod(base, base, modulus, q)
        exponent >>= 1
    return result


def _poly_deg(c) -> int:
    for i in range(len(c) - 1, -1, -1):
        if c[i]:
            return i
    return -1


def _gcd_is_one(a, b, q: int) -> bool:
    a, b = list(a), list(b)
    while True:
        db = _poly_deg(b)
        if db < 0:
            return _poly_deg(a) == 0
        inv = pow(b[db], q - 2, q)
        da = _poly_deg(a)
        while da >= db:
            c = a[da] * inv % q
            if c:
                for j in range(db + 1):
                    a[da - db + j] = (a[da - db + j] - c * b[j]) % q
            while da >= 0 and a[da] == 0:
                da -= 1
        a, b = b, a


def _is_irreducible(coeffs, q: int) -> bool:
    """Rabin test for the monic polynomial x^n + sum coeffs[i] x^i."""
    n = len(coeffs)
    if n == 1:
        return True
    if coeffs[0] == 0:
        return False  # divisible by x
    x = (0, 1) + (0,) * (n - 2)
    if _powmod(x, q**n, coeffs, q) != x:
        return False
    full = list(coeffs) + [1]
    for ell in factorint(n):
        xp = _powmod(x, q ** (n // ell), coeffs, q)
        diff = tuple((u - v) % q for u, v in zip(xp, x))
        if not any(diff):
            return False
        if not _gcd_is_one(full, diff, q):
            return False
    return True


def _group_order_factors(q: int, n: int) -> list[int]:
    """Prime factors of q^n - 1, split along cyclotomic polynomial values."""
    primes: set[int] = set()
    for d in range(1, n + 1):
        if n % d:
            continue
        piece = int(cyclotomic_poly(d, q))
        if len(str(piece)) > _FACTOR_DIGIT_LIMIT and not isprime(piece):
            raise FactorizationFailure(
                f"cofactor of q^n - 1 too large to certify primitivity ({len(str(piece))} digits)"
            )
        primes.update(factorint(piece))
    return sorted(primes)


@dataclass(frozen=True)
class FieldContext:
    """Canonical realization of F_{q^n} plus cached trace data."""

    q: int
    n: int
    modulus: tuple[int, ...]  # non-leading coefficients of the monic modulus
    alpha: tuple[int, ...]
    zeta: tuple[int, ...]
    basis_traces: tuple[int, ...]
    order_factors: tuple[int, ...] = field(repr=False, default=())

    @property
    def order(self) -> int:
        return self.q**self.n - 1

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.n - 1)

    def mul(self, a, b):
        return _mulmod(a, b, self.modulus, self.q)

    def pow(self, a, exponent: int):
        if exponent < 0:
            raise BadInput("negative exponent")
        return _powmod(a, exponent, self.modulus, self.q)

    def encode(self, x) -> int:
        """Element as a base-q integer (little-endian coefficients)."""
        return _coeffs_to_int(x, self.q)

    @property
    def modulus_int(self) -> int:
        """The monic modulus as a base-q integer, leading term included."""
        return _coeffs_to_int(self.modulus, self.q) + self.q**self.n


def build_field(setup: CyclotomicSetup, cap: int | None = None) -> FieldContext:
    """Construct the canonical F_{q^n} for `setup`.

    `cap` bounds the field size for element-enumeration work (the period
    scan); index-only callers pass None, since building the context costs
    polynomial time in n and log q regardless of q^n.
    """
    q, n, f = setup.q, setup.n, setup.f
    size = q**n
    if cap is not None and size > cap:
        raise FieldTooLarge(f"q^n = {size} exceeds cap {cap}")

    modulus = None
    for k in range(size):
        cand = _int_to_coeffs(k, n, q)
        if _is_irreducible(cand, q):
            modulus = cand
            break
    if modulus is None:
        raise InternalInvariant("no irreducible polynomial found")

    factors = _group_order_factors(q, n)
    order = size - 1
    one = (1,) + (0,) * (n - 1)
    alpha = None
    for k in range(q, size):  # constants are never primitive for n >= 2
        cand = _int_to_coeffs(k, n, q)
        if all(_powmod(cand, order // ell, modulus, q) != one for ell in factors):
            alpha = cand
            break
    if alpha is None:
        raise InternalInvariant("no primitive element found")

    zeta = _powmod(alpha, f, modulus, q)
    traces = _basis_traces(modulus, q)
    ctx = FieldContext(
        q=q,
        n=n,
        modulus=modulus,
        alpha=alpha,
        zeta=zeta,
        basis_traces=traces,
        order_factors=tuple(factors),
    )
    if ctx.pow(zeta, setup.p) != one or zeta == one:
        raise InternalInvariant("zeta is not a primitive p-th root of unity")
    return ctx


def _basis_traces(modulus, q: int) -> tuple[int, ...]:
    """t_i = Tr(x^i) for i < n, via summing Frobenius powers."""
    n = len(modulus)
    x = (0, 1) + (0,) * (n - 2) if n > 1 else (0,)
    acc = [[0] * n for _ in range(n)]
    for j in range(n):
        frob = _powmod(x, q**j, modulus, q)
        power = (1,) + (0,) * (n - 1)
        for i in range(n):
            acc[i] = [(u + v) % q for u, v in zip(acc[i], power)]
            power = _mulmod(power, frob, modulus, q)
    traces = []
    for i, row in enumerate(acc):
        if any(row[1:]):
            raise InternalInvariant(f"trace of x^{i} not in the prime field")
        traces.append(row[0])
    return tuple(traces)


def trace(ctx: FieldContext, x) -> int:
    """Absolute trace F_{q^n} -> F_q, linear in the coefficient basis."""
    return sum(c * t for c, t in zip(x, ctx.basis_traces)) % ctx.q


def fpow(ctx: FieldContext, x, exponent: int):
    """x^exponent in the field (exponent >= 0)."""
    return ctx.pow(x, exponent)


def dlog_order_p(ctx: FieldContext, y, p: int) -> int:
    """Discrete log of y in the order-p subgroup <zeta>: the k with zeta^k = y."""
    if ctx.pow(y, p) != ctx.one:
        raise NotInSubgroup("element is not a p-th root of unity")
    z = ctx.one
    for k in range(p):
        if z == y:
            return k
        z = ctx.mul(z, ctx.zeta)
    raise NotInSubgroup("p-th root of unity outside <zeta>")  # unreachable


def generator_recurrence(ctx: FieldContext) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Seed data for the trace-sequence scan of powers of alpha.

    Returns (rec, seed): rec holds the n non-leading coefficients of the
    minimal polynomial of alpha (monic, degree n since alpha is primitive), and
    seed[k] = Tr(alpha^k) for k < n. The full sequence t_k = Tr(alpha^k) then
    follows t_{k+n} = -sum_j rec[j] * t_{k+j} mod q.
    """
    q, n = ctx.q, ctx.n
    zero = (0,) * n
    # product of (y - alpha^(q^j)) with coefficients in the field
    poly = [ctx.one]
    conj = ctx.alpha
    for _ in range(n):
        shifted = [zero] + poly
        scaled = [ctx.mul(conj, c) for c in poly] + [zero]
        poly = [tuple((u - v) % q for u, v in zip(a, b)) for a, b in zip(shifted, scaled)]
        conj = ctx.pow(conj, q)
    if len(poly) != n + 1 or poly[-1] != ctx.one:
        raise InternalInvariant("minimal polynomial of alpha is not monic of degree n")
    rec = []
    for c in poly[:-1]:
        if any(c[1:]):
            raise InternalInvariant("minimal polynomial coefficient outside F_q")
        rec.append(c[0])
    seed = []
    power = ctx.one
    for _ in range(n):
        seed.append(trace(ctx, power))
        power = ctx.mul(power, ctx.alpha)
    return tuple(rec), tuple(seed)
