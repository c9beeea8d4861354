"""Gaussian periods, the valuation v, and the derived integer sequences d and a.

For m in [0, p): eta_m = sum over k ≡ m (mod p), k < q^n - 1, of zeta_q^Tr(alpha^k),
held as a count vector over the q-th roots of unity. Every eta_m here is a
rational integer; v is the minimal coset digit-sum valuation; d_i are the
scaled period differences and a_k their exact character-twisted sums.
"""

from dataclasses import dataclass

from .errors import DivisibilityFailure, InternalInvariant, NonIntegralPeriod
from .ffield import CyclotomicSetup, FieldContext, generator_recurrence
from ._scan import scan_counts


@dataclass(frozen=True)
class CycIntQ:
    """Integer combination sum_t counts[t] * zeta_q^t.

    Since the q-th roots of unity sum to zero, equality ignores addition of a
    constant to every count.
    """

    counts: tuple[int, ...]

    def normalized(self) -> tuple[int, ...]:
        base = min(self.counts)
        return tuple(c - base for c in self.counts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycIntQ):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    @property
    def is_rational(self) -> bool:
        tail = self.counts[1:]
        return all(c == tail[0] for c in tail) if tail else True

    @property
    def rational_value(self) -> int:
        if not self.is_rational:
            raise NonIntegralPeriod(f"counts {self.counts} are not Galois-fixed")
        return self.counts[0] - (self.counts[1] if len(self.counts) > 1 else 0)


@dataclass(frozen=True)
class PeriodTable:
    setup: CyclotomicSetup
    eta: tuple[CycIntQ, ...]
    v: int
    d: tuple[int, ...]
    a: tuple[int, ...]

    @property
    def eta_values(self) -> tuple[int, ...]:
        return tuple(x.rational_value for x in self.eta)


def _residue(a: int, p: int) -> int:
    """Smallest nonnegative residue of a mod p."""
    return a % p


def compute_v(p: int, q: int, g: int) -> int:
    """min over cosets of (1/p) * sum of residues |g^(k+e*l)|_p, l < n."""
    n = 1
    while pow(q, n, p) != 1:
        n += 1
    e = (p - 1) // n
    best = None
    for k in range(e):
        s = sum(_residue(pow(g, k + e * l, p), p) for l in range(n))
        if s % p:
            raise InternalInvariant(f"coset residue sum {s} not divisible by {p}")
        best = s // p if best is None else min(best, s // p)
    if best is None or best < 1:
        raise InternalInvariant("valuation must be positive")
    return best


def compute_d(setup: CyclotomicSetup, eta_values, v: int) -> tuple[int, ...]:
    """d_i = (eta_{g^i} - eta_0) / q^v, exact."""
    p, q, g, e = setup.p, setup.q, setup.g, setup.e
    scale = q**v
    d = []
    for i in range(e):
        diff = eta_values[pow(g, i, p)] - eta_values[0]
        if diff % scale:
            raise DivisibilityFailure(f"eta_(g^{i}) - eta_0 = {diff} not divisible by {q}^{v}")
        d.append(diff // scale)
    return tuple(d)


def compute_a(setup: CyclotomicSetup, d, v: int) -> tuple[int, ...]:
    """a_k = n q^v sum_i g^(nki) d_i as exact integers (plain powers of g)."""
    n, q, g, e = setup.n, setup.q, setup.g, setup.e
    lead = n * q**v
    return tuple(lead * sum(g ** (n * k * i) * d[i] for i in range(e)) for k in range(e))


def compute_period_table(
    ctx: FieldContext, setup: CyclotomicSetup, backend: str | None = None
) -> PeriodTable:
    p, q, f = setup.p, setup.q, setup.f
    rec, seed = generator_recurrence(ctx)
    counts = scan_counts(rec, seed, ctx.order, p, q, backend=backend)

    eta = []
    for m in range(p):
        row = CycIntQ(tuple(int(c) for c in counts[m]))
        if sum(row.counts) != f:
            raise InternalInvariant(f"eta_{m} count total {sum(row.counts)} != f = {f}")
        if not row.is_rational:
            raise NonIntegralPeriod(f"eta_{m} counts {row.counts} not Galois-fixed")
        eta.append(row)
    values = [x.rational_value for x in eta]
    if sum(values) != -1:
        raise InternalInvariant(f"sum of periods is {sum(values)}, expected -1")
    if any((val - f) % q for val in values):
        raise InternalInvariant("some period is not congruent to f mod q")

    v = compute_v(p, q, setup.g)
    if setup.n - 2 * v < 0:
        raise InternalInvariant(f"n - 2v = {setup.n - 2 * v} < 0")
    d = compute_d(setup, values, v)
    a = compute_a(setup, d, v)
    return PeriodTable(setup=setup, eta=tuple(eta), v=v, d=d, a=a)
