"""Imaginary-quadratic class numbers and representations by x^2 + D*y^2.

Class numbers h(-p) for p ≡ 3 mod 4 arrive two independent ways: scaled
residue/nonresidue sums, and a brute count of reduced binary quadratic forms.
Representation machinery: Cornacchia for prime targets, a complete
factorization-based enumeration for composite ones (with the exhaustive scan
kept as a cross-check oracle), odd-power lifting of solutions, the sign
congruence for the distinguished representation of 4q^h, and prime-density
estimates for the forms x^2 + p*y^2 and x^2 + p^3*y^2.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt

from sympy import factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

from .errors import (
    BadDiscriminant,
    BadInput,
    BadPrime,
    BoundTooSmall,
    EvenExponent,
    InternalInvariant,
    NotARepresentation,
    NoWitnessFound,
    SearchTooLarge,
)

_EXHAUSTIVE_LIMIT = 1 << 21  # max floor(sqrt(N)) the brute scan will walk
_AUTO_SWITCH = 1 << 12  # above this, auto dispatch prefers the factor route


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    if p < 3 or p % 2 == 0:
        raise BadPrime(f"p={p} must be an odd prime")
    a %= p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return 1 if s == 1 else -1


@dataclass(frozen=True)
class ClassNumberData:
    p: int
    R: int
    V: int
    h: int


def class_number(p: int) -> ClassNumberData:
    """h(-p) = V - R from residue/nonresidue sums over the full range [1, p-1]."""
    if p <= 3 or p % 4 != 3:
        raise BadPrime(f"p={p} must be a prime ≡ 3 mod 4, p > 3")
    res_sum = 0
    nonres_sum = 0
    for x in range(1, p):
        if legendre(x, p) == 1:
            res_sum += x
        else:
            nonres_sum += x
    if res_sum % p or nonres_sum % p:
        raise InternalInvariant("residue sums not divisible by p")
    R, V = res_sum // p, nonres_sum // p
    if V + R != (p - 1) // 2:
        raise InternalInvariant("V + R != (p-1)/2")
    h = V - R
    if h < 1 or h % 2 == 0:
        raise InternalInvariant(f"h = {h} is not a positive odd integer")
    return ClassNumberData(p=p, R=R, V=V, h=h)


def reduced_forms_count(disc: int) -> int:
    """Number of reduced forms (a,b,c), b^2 - 4ac = disc < 0: |b| <= a <= c,
    with b >= 0 when |b| = a or a = c."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise BadDiscriminant(f"disc={disc} must be negative and 0 or 1 mod 4")
    count = 0
    amax = isqrt(-disc // 3) + 1
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a:
                continue
            if b < 0 and (abs(b) == a or a == c):
                continue
            count += 1
    return count


def _sqrt_mod_prime(a: int, p: int) -> int | None:
    """Deterministic Tonelli-Shanks; None when a is a nonresidue."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p-1 = s * 2^t
    s, t = p - 1, 0
    while s % 2 == 0:
        s //= 2
        t += 1
    z = 2
    while pow(z, (p - 1) // 2, p) == 1:
        z += 1
    c = pow(z, s, p)
    x = pow(a, (s + 1) // 2, p)
    u = pow(a, s, p)
    while u != 1:
        k, uu = 0, u
        while uu != 1:
            uu = uu * uu % p
            k += 1
        b = pow(c, 1 << (t - k - 1), p)
        x = x * b % p
        c = b * b % p
        u = u * c % p
        t = k
    return x


def cornacchia(D: int, N: int) -> tuple[int, int] | None:
    """The solution of x^2 + D*y^2 = N for prime N, or None. Deterministic:
    descends from the root of -D in (N/2, N)."""
    if D <= 0 or N <= 0:
        raise BadInput("D and N must be positive")
    if N == 2:
        return (1, 1) if D == 1 else None
    root = _sqrt_mod_prime(-D, N)
    if root is None:
        return None
    if 2 * root < N:
        root = N - root
    a, b = N, root
    limit = isqrt(N)
    while b > limit:
        a, b = b, a % b
    rem = N - b * b
    if rem % D:
        return None
    y2 = rem // D
    y = isqrt(y2)
    if y * y != y2:
        return None
    return (b, y)


def _primitive_reps(D: int, M: int) -> set[tuple[int, int]]:
    """All primitive (x, y >= 0) with x^2 + D*y^2 = M, via every root of -D mod M."""
    if M == 1:
        return {(1, 0)}
    reps = set()
    roots = sqrt_mod(-D, M, all_roots=True) or []
    limit = isqrt(M)
    for root in set(roots):
        a, b = M, root
        while b > limit:
            a, b = b, a % b
        rem = M - b * b
        if rem % D:
            continue
        y2 = rem // D
        y = isqrt(y2)
        if y * y == y2 and gcd(b, y) == 1:
            reps.add((b, y))
    return reps


def represent_all(D: int, N: int, method: str = "auto") -> list[tuple[int, int]]:
    """All (x >= 0, y >= 0) with x^2 + D*y^2 = N, ascending in x.

    method="exhaustive" forces the brute scan (SearchTooLarge beyond the
    iteration guard); "auto" switches to the complete factorization-based
    enumeration when the scan would be too long. Both agree exactly.
    """
    if D <= 0 or N < 0:
        raise BadInput("need D > 0, N >= 0")
    if N == 0:
        return [(0, 0)]
    limit = isqrt(N)
    if method == "exhaustive" or (method == "auto" and limit <= _AUTO_SWITCH):
        if limit > _EXHAUSTIVE_LIMIT:
            raise SearchTooLarge(f"sqrt(N) = {limit} exceeds the exhaustive guard")
        out = []
        for x in range(limit + 1):
            rem = N - x * x
            if rem % D:
                continue
            y2 = rem // D
            y = isqrt(y2)
            if y * y == y2:
                out.append((x, y))
        return out
    if method not in ("auto", "factor"):
        raise BadInput(f"unknown method {method!r}")
    sols = set()
    square_divs = [1]
    for prime, mult in factorint(N).items():
        square_divs = [d * prime**k for d in square_divs for k in range(mult // 2 + 1)]
    for d in square_divs:
        for x, y in _primitive_reps(D, N // (d * d)):
            sols.add((d * x, d * y))
    return sorted(sols)


@dataclass(frozen=True)
class QfSolution:
    D: int
    N: int
    xval: int
    yval: int

    def check(self) -> None:
        if self.xval**2 + self.D * self.yval**2 != self.N:
            raise NotARepresentation(
                f"{self.xval}^2 + {self.D}*{self.yval}^2 != {self.N}"
            )


def power_representation(u: int, w: int, s: int, p: int) -> QfSolution:
    """(u + w sqrt(-p))^s = X + Y sqrt(-p) by exact recursion, cross-checked
    against the closed-form expansion of Y; returns x^2 + p y^2 = (u^2+p w^2)^s."""
    if s < 1 or s % 2 == 0:
        raise EvenExponent(f"s={s} must be odd and positive")
    x, y = u, w
    for _ in range(s - 1):
        x, y = u * x - p * w * y, w * x + u * y
    closed = w * sum(
        comb(s, 2 * j) * (-p * w * w) ** ((s - 2 * j - 1) // 2) * (u * u) ** j
        for j in range((s + 1) // 2)
    )
    if y != closed:
        raise InternalInvariant(f"recursion Y={y} disagrees with closed form {closed}")
    norm = (u * u + p * w * w) ** s
    sol = QfSolution(D=p, N=norm, xval=x, yval=y)
    sol.check()
    return sol


def find_good_prime(p: int, qbound: int) -> tuple[int, QfSolution, QfSolution]:
    """Smallest prime q <= qbound represented as u^2 + p w^2 with p dividing
    neither u nor w, lifted to the doubled representation of 4 q^h."""
    h = class_number(p).h
    from sympy import primerange

    for q in primerange(2, qbound + 1):
        if q == p:
            continue
        if q % 2 and legendre(-p, q) != 1:
            continue
        rep = cornacchia(p, q)
        if rep is None:
            continue
        u, w = rep
        if u == 0 or w == 0 or u % p == 0 or w % p == 0:
            continue
        lift = power_representation(u, w, h, p)
        if lift.yval % p == 0:
            raise InternalInvariant("lifted yval divisible by p despite p∤u, p∤w")
        doubled = QfSolution(D=p, N=4 * q**h, xval=2 * lift.xval, yval=2 * lift.yval)
        doubled.check()
        return q, QfSolution(D=p, N=q, xval=u, yval=w), doubled
    raise NoWitnessFound(f"no represented prime q <= {qbound} for p={p}")


def stickelberger_sign(p: int, q: int, R: int, C: int) -> int | None:
    """Which of ±C satisfies C ≡ 2(-q)^(-R) mod p; None if neither."""
    target = 2 * pow(pow(-q % p, R, p), -1, p) % p
    if C % p == target:
        return 1
    if (-C) % p == target:
        return -1
    return None


def stickelberger_check(p: int, q: int, R: int, C: int, D: int, N: int) -> bool:
    """True iff C^2 + p D^2 = N, p ∤ C, and one of ±C meets the sign congruence."""
    if C * C + p * D * D != N:
        raise NotARepresentation(f"{C}^2 + {p}*{D}^2 != {N}")
    if C % p == 0:
        return False
    return stickelberger_sign(p, q, R, abs(C)) is not None


@dataclass(frozen=True)
class DensityEstimate:
    D: int
    bound: int
    represented: int
    primes: int
    ratio: Fraction

    @property
    def ratio_float(self) -> float:
        return float(self.ratio)


def _prime_sieve(limit: int) -> bytearray:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return sieve


def density_estimate(D: int, X: int) -> DensityEstimate:
    """Among primes N <= X, the fraction representable as x^2 + D*y^2."""
    if X < 100:
        raise BoundTooSmall(f"X={X} < 100 gives meaningless ratios")
    sieve = _prime_sieve(X)
    represented = 0
    primes = 0
    for N in range(2, X + 1):
        if not sieve[N]:
            continue
        primes += 1
        if cornacchia(D, N) is not None:
            represented += 1
    return DensityEstimate(
        D=D, bound=X, represented=represented, primes=primes,
        ratio=Fraction(represented, primes),
    )
