"""Cyclotomic-unit indices mod p and the two consistency checks tying them to
the period pipeline.

beta_r = prod_{i=1}^{p-1} (1 - zeta_p^i)^(i^(p-1-r)) reduces mod Q to a power
of alpha; i_r is recovered mod p as the discrete log of beta_r^f inside the
order-p subgroup. A nonzero i_r certifies that the r-th even eigenspace of the
p-part of the class group is trivial; i_r = 0 decides nothing.
"""

from dataclasses import dataclass
from math import comb

from .errors import BadEigenspaceIndex, MissingIndex
from .ffield import CyclotomicSetup, FieldContext, dlog_order_p

TRIVIAL = "Trivial"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class IndexRecord:
    r: int
    i_mod_p: int
    verdict: str


def verdict(i_mod_p: int) -> str:
    return TRIVIAL if i_mod_p else UNKNOWN


def index_mod_p(ctx: FieldContext, setup: CyclotomicSetup, r: int) -> int:
    """i_r mod p for any r in [2, p-2], odd r included (used by the congruence
    checks, where even-order pairs put p - ln at odd values)."""
    p, q, f = setup.p, setup.q, setup.f
    if not 2 <= r <= p - 2:
        raise BadEigenspaceIndex(f"r={r} outside [2, {p - 2}]")
    exp_mod = ctx.order
    beta = ctx.one
    zpow = ctx.one
    for i in range(1, p):
        zpow = ctx.mul(zpow, ctx.zeta)  # zeta^i
        base = tuple((u - w) % q for u, w in zip(ctx.one, zpow))
        beta = ctx.mul(beta, ctx.pow(base, pow(i, p - 1 - r, exp_mod)))
    return dlog_order_p(ctx, ctx.pow(beta, f), p)


def beta_index_mod_p(ctx: FieldContext, setup: CyclotomicSetup, r: int) -> IndexRecord:
    if r % 2 or not 2 <= r <= setup.p - 3:
        raise BadEigenspaceIndex(f"r={r} must be even and in [2, {setup.p - 3}]")
    i = index_mod_p(ctx, setup, r)
    return IndexRecord(r=r, i_mod_p=i, verdict=verdict(i))


def verify_identity_i(setup: CyclotomicSetup, table) -> int:
    """Exact residual of e^2 q^(n-2v) = (sum d)^2 + p(e sum d^2 - (sum d)^2)."""
    e, q, n, p = setup.e, setup.q, setup.n, setup.p
    s1 = sum(table.d)
    s2 = sum(x * x for x in table.d)
    return e * e * q ** (n - 2 * table.v) - (s1 * s1 + p * (e * s2 - s1 * s1))


def congruence_residual(setup: CyclotomicSetup, a, l: int, i_val: int) -> int:
    """Residual mod p of the degree-l product congruence.

    sum_{m=1}^{l} (-1)^m C(ln-1, mn-1) a_{l-m} a_m == -i_{p-ln} (mod p),
    so the returned value is (sum + i) mod p and must vanish.
    """
    p, n = setup.p, setup.n
    total = sum(
        (-1) ** m * comb(l * n - 1, m * n - 1) * a[l - m] * a[m] for m in range(1, l + 1)
    )
    return (total + i_val) % p


def verify_congruences_ii(setup: CyclotomicSetup, a, indices) -> tuple[int, dict[int, int]]:
    """Check a_0 ≡ -1 and the odd-l product congruences.

    `indices` maps each odd l in [1, e-1] to i_{p-ln} mod p. Returns the a_0
    residual together with the per-l residuals; all must be 0 mod p.
    """
    p = setup.p
    a0_residual = (a[0] + 1) % p
    residuals: dict[int, int] = {}
    for l in range(1, setup.e, 2):
        if l not in indices:
            raise MissingIndex(f"no index supplied for l={l} (r={p - l * setup.n})")
        residuals[l] = congruence_residual(setup, a, l, indices[l])
    return a0_residual, residuals
