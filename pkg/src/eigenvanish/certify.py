"""Certificates that the eigenspace component at r = (p+1)/2 is trivial.

A witness is a prime q of multiplicative order (p-1)/2 mod p. Its record links
three independently computable objects: the quadratic-form representation
4q^h = a^2 + p*b^2, the Gaussian-period data (d0, d1) with a = d0+d1 and
b = d0-d1, and the unit index i mod p at r = (p+1)/2. Whenever p does not
divide b the eigenspace is trivial and the certificate closes.

Witnesses whose field q^n fits under the cap get the full period pipeline and
the form representation, cross-checked against each other. Beyond the cap the
period scan is skipped; the representation of 4q^h (unique up to sign with
p not dividing a) plus the index pin down signed a, b, d0, d1 exactly, so the
record carries the same information either way.
"""

from dataclasses import dataclass, field
from math import gcd

from sympy import isprime, primerange

from .errors import (
    BadEigenspaceIndex,
    BadInput,
    BadPrime,
    BoundExhausted,
    EigenvanishError,
    InternalInvariant,
)
from .ffield import CyclotomicSetup, build_field, multiplicative_order
from .periods import compute_period_table, compute_v
from .quadforms import class_number, represent_all
from .units import TRIVIAL, UNKNOWN, index_mod_p, verdict

DEFAULT_FIELD_CAP = 1 << 27
DEFAULT_QBOUND = 10_000

INCONCLUSIVE = "Inconclusive"

ROUTE_FULL = "periods+forms"
ROUTE_ANALYTIC = "forms+index"


def _primes_of_order(p: int, n: int, qbound: int):
    for q in primerange(2, qbound + 1):
        if q != p and multiplicative_order(q, p) == n:
            yield q


def find_primes_of_order(p: int, n: int, count: int, qbound: int) -> list[int]:
    """First `count` primes q <= qbound with multiplicative order n mod p."""
    if n < 2 or (p - 1) % n != 0:
        raise BadPrime(f"n={n} must divide p-1={p - 1} and be >= 2")
    found = []
    for q in _primes_of_order(p, n, qbound):
        found.append(q)
        if len(found) == count:
            return found
    raise BoundExhausted(
        f"only {len(found)} of {count} primes of order {n} mod {p} below {qbound}"
    )


@dataclass(frozen=True)
class WitnessRecord:
    q: int
    n: int
    v: int
    h: int
    d0: int
    d1: int
    a: int
    b: int
    a0_mod_p: int
    a1_mod_p: int
    i_mod_p: int
    qf_identity_ok: bool
    route: str


@dataclass(frozen=True)
class Certificate:
    p: int
    r: int
    verdict: str
    witnesses: tuple[WitnessRecord, ...]
    g: int
    field_cap: int
    # (q, modulus encoding, generator encoding) per witness, little-endian base q
    field_choices: tuple[tuple[int, int, int], ...] = field(default=())


def _signed_representation(
    p: int, q: int, n: int, v: int, h: int, i_val: int
) -> tuple[int, int]:
    """Signed (a, b) with 4q^h = a^2 + p b^2: |a|,|b| from the unique
    representation with gcd(a, b) | 2 (a pure prime-power ideal generator,
    possibly half-integral), signs from a0 ≡ -1 and i ≡ a0*a1 mod p."""
    all_reps = represent_all(p, 4 * q**h)
    if any(x % p == 0 for x, _ in all_reps):
        raise InternalInvariant(f"a representation of 4*{q}^{h} has p | a")
    reps = [(x, y) for x, y in all_reps if gcd(x, y) <= 2]
    if len(reps) != 1:
        raise InternalInvariant(
            f"expected one primitive representation of 4*{q}^{h}, got {reps}"
        )
    absa, absb = reps[0]
    lead = n * pow(q, v, p) % p
    if (lead * absa + 1) % p == 0:
        a = absa
    elif (lead * absa - 1) % p == 0:
        a = -absa
    else:
        raise InternalInvariant(f"neither sign of a={absa} gives a0 ≡ -1 mod {p}")
    if i_val % p == 0:
        if absb % p:
            raise InternalInvariant(f"i ≡ 0 but p={p} does not divide b={absb}")
        return a, absb
    target = i_val * pow(lead * lead * a, -1, p) % p
    if absb % p == target:
        return a, absb
    if (-absb) % p == target:
        return a, -absb
    raise InternalInvariant(f"neither sign of b={absb} matches i={i_val} mod {p}")


def _witness_record(
    setup: CyclotomicSetup,
    h: int,
    R: int,
    field_cap: int,
    backend: str | None,
) -> tuple[WitnessRecord, tuple[int, int, int]]:
    p, q, n = setup.p, setup.q, setup.n
    v = compute_v(p, q, setup.g)
    if v != R:
        raise InternalInvariant(f"v={v} != R={R} for order-(p-1)/2 witness q={q}")
    if n - 2 * v != h:
        raise InternalInvariant(f"n - 2v = {n - 2 * v} != h = {h}")
    ctx = build_field(setup)
    i_val = index_mod_p(ctx, setup, (p + 1) // 2)
    a, b = _signed_representation(p, q, n, v, h, i_val)
    if (a + b) % 2:
        raise InternalInvariant(f"a={a}, b={b} have different parity")
    d0, d1 = (a + b) // 2, (a - b) // 2
    lead = n * pow(q, v, p) % p
    a0m, a1m = lead * a % p, lead * b % p
    if a0m != p - 1:
        raise InternalInvariant(f"a0 ≡ {a0m}, expected -1 mod {p}")
    if (a0m * a1m - i_val) % p:
        raise InternalInvariant("i ≢ a0*a1 mod p")
    route = ROUTE_ANALYTIC
    if setup.field_size() <= field_cap:
        table = compute_period_table(ctx, setup, backend=backend)
        if table.d != (d0, d1):
            raise InternalInvariant(
                f"period route d={table.d} disagrees with form route {(d0, d1)}"
            )
        if table.a[0] % p != a0m or table.a[1] % p != a1m:
            raise InternalInvariant("period-route a_k disagree mod p")
        route = ROUTE_FULL
    rec = WitnessRecord(
        q=q, n=n, v=v, h=h, d0=d0, d1=d1, a=a, b=b,
        a0_mod_p=a0m, a1_mod_p=a1m, i_mod_p=i_val,
        qf_identity_ok=(4 * q**h == a * a + p * b * b),
        route=route,
    )
    choices = (q, ctx.modulus_int, ctx.encode(ctx.alpha))
    return rec, choices


def certify_half_plus(
    p: int,
    max_witnesses: int = 8,
    qbound: int = DEFAULT_QBOUND,
    field_cap: int = DEFAULT_FIELD_CAP,
    g: int | None = None,
    backend: str | None = None,
) -> Certificate:
    """Run witnesses of order (p-1)/2 until one shows p ∤ b (verdict Trivial)."""
    if p <= 3 or p % 4 != 3:
        raise BadPrime(f"p={p} must be a prime ≡ 3 mod 4, p > 3")
    cn = class_number(p)
    n = (p - 1) // 2
    records: list[WitnessRecord] = []
    choices: list[tuple[int, int, int]] = []
    tried = 0
    the_g = None
    for q in _primes_of_order(p, n, qbound):
        if tried >= max_witnesses:
            break
        tried += 1
        setup = CyclotomicSetup.create(p, q, g=g)
        the_g = setup.g
        rec, choice = _witness_record(setup, cn.h, cn.R, field_cap, backend)
        records.append(rec)
        choices.append(choice)
        if rec.b % p:
            return Certificate(
                p=p, r=(p + 1) // 2, verdict=TRIVIAL,
                witnesses=tuple(records), g=setup.g, field_cap=field_cap,
                field_choices=tuple(choices),
            )
    if not records:
        raise BoundExhausted(f"no primes of order {n} mod {p} below {qbound}")
    return Certificate(
        p=p, r=(p + 1) // 2, verdict=INCONCLUSIVE,
        witnesses=tuple(records), g=the_g, field_cap=field_cap,
        field_choices=tuple(choices),
    )


def check_certificate(cert: Certificate) -> list[str]:
    """Re-check every stored identity from the record alone; returns problems."""
    problems: list[str] = []
    p = cert.p
    if p <= 3 or p % 4 != 3 or not isprime(p):
        return [f"p={p} is not a prime ≡ 3 mod 4 above 3"]
    if cert.r != (p + 1) // 2:
        problems.append(f"r={cert.r} is not (p+1)/2")
    if cert.verdict not in (TRIVIAL, INCONCLUSIVE):
        problems.append(f"unknown verdict {cert.verdict!r}")
    if cert.verdict == TRIVIAL and not cert.witnesses:
        problems.append("Trivial verdict with no witnesses")
    saw_nontrivial_b = False
    for w in cert.witnesses:
        tag = f"witness q={w.q}"
        try:
            order = multiplicative_order(w.q, p)
        except EigenvanishError:
            order = None
        if order != w.n or w.n != (p - 1) // 2:
            problems.append(f"{tag}: order mismatch")
            continue
        if w.n - 2 * w.v != w.h:
            problems.append(f"{tag}: n - 2v != h")
        if 4 * w.q**w.h != w.a * w.a + p * w.b * w.b:
            problems.append(f"{tag}: 4q^h != a^2 + p b^2")
        if not w.qf_identity_ok:
            problems.append(f"{tag}: qf_identity_ok is false")
        if (w.d0 + w.d1, w.d0 - w.d1) != (w.a, w.b):
            problems.append(f"{tag}: (d0, d1) inconsistent with (a, b)")
        lead = w.n * pow(w.q, w.v, p) % p
        if lead * w.a % p != w.a0_mod_p or w.a0_mod_p != p - 1:
            problems.append(f"{tag}: a0 ≢ -1 mod p")
        if lead * w.b % p != w.a1_mod_p:
            problems.append(f"{tag}: a1 ≢ n q^v b mod p")
        if (w.a0_mod_p * w.a1_mod_p - w.i_mod_p) % p:
            problems.append(f"{tag}: i ≢ a0*a1 mod p")
        if (w.i_mod_p % p == 0) != (w.b % p == 0):
            problems.append(f"{tag}: (i ≡ 0) and (p | b) disagree")
        if w.b % p:
            saw_nontrivial_b = True
    expected = TRIVIAL if saw_nontrivial_b else INCONCLUSIVE
    if cert.verdict != expected:
        problems.append(f"verdict {cert.verdict!r} but witnesses say {expected!r}")
    return problems


def verify_certificate(cert: Certificate) -> bool:
    return not check_certificate(cert)


CERT_SCHEMA = "eigenvanish-certificate/1"


def certificate_to_dict(cert: Certificate) -> dict:
    """JSON-safe dict; exact integers that can outgrow doubles go as strings."""
    return {
        "schema": CERT_SCHEMA,
        "p": cert.p,
        "r": cert.r,
        "verdict": cert.verdict,
        "g": cert.g,
        "field_cap": cert.field_cap,
        "witnesses": [
            {
                "q": w.q, "n": w.n, "v": w.v, "h": w.h,
                "d0": str(w.d0), "d1": str(w.d1), "a": str(w.a), "b": str(w.b),
                "a0_mod_p": w.a0_mod_p, "a1_mod_p": w.a1_mod_p,
                "i_mod_p": w.i_mod_p, "qf_identity_ok": w.qf_identity_ok,
                "route": w.route,
            }
            for w in cert.witnesses
        ],
        "field_choices": [
            {"q": q, "modulus": str(m), "generator": str(a)}
            for q, m, a in cert.field_choices
        ],
    }


def certificate_from_dict(data: dict) -> Certificate:
    try:
        witnesses = tuple(
            WitnessRecord(
                q=int(w["q"]), n=int(w["n"]), v=int(w["v"]), h=int(w["h"]),
                d0=int(w["d0"]), d1=int(w["d1"]), a=int(w["a"]), b=int(w["b"]),
                a0_mod_p=int(w["a0_mod_p"]), a1_mod_p=int(w["a1_mod_p"]),
                i_mod_p=int(w["i_mod_p"]),
                qf_identity_ok=bool(w["qf_identity_ok"]),
                route=str(w.get("route", "unknown")),
            )
            for w in data["witnesses"]
        )
        choices = tuple(
            (int(c["q"]), int(c["modulus"]), int(c["generator"]))
            for c in data.get("field_choices", [])
        )
        return Certificate(
            p=int(data["p"]), r=int(data["r"]), verdict=str(data["verdict"]),
            witnesses=witnesses, g=int(data["g"]),
            field_cap=int(data["field_cap"]), field_choices=choices,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"malformed certificate: {exc}") from None


def _witness_fields(p: int, qbound: int, field_cap: int):
    """(field size, q, n) for every candidate witness prime, smallest fields first."""
    out = []
    for q in primerange(2, qbound + 1):
        if q == p or q % p == 1:
            continue
        n = multiplicative_order(q, p)
        size = q**n
        if size <= field_cap:
            out.append((size, q, n))
    out.sort()
    return out


@dataclass(frozen=True)
class EigenspaceScan:
    r: int
    verdict: str
    witness_q: int | None
    i_mod_p: int | None
    tried: tuple[tuple[int, int, int], ...]  # (q, n, i mod p)
    admissible_orders: tuple[int, ...]


@dataclass(frozen=True)
class VandiverReport:
    p: int
    scans: tuple[EigenspaceScan, ...]

    @property
    def all_certified(self) -> bool:
        return all(s.verdict == TRIVIAL for s in self.scans)


def _admissible_orders(p: int, r: int) -> tuple[int, ...]:
    # i_r can only be nonzero when ord_p(q) divides p - r (and is odd, which
    # is automatic since p - r is odd for even r); n = 1 would need q ≡ 1.
    d = gcd(p - 1, p - r)
    return tuple(n for n in range(3, d + 1) if d % n == 0)


def vandiver_scan(
    p: int,
    max_witnesses_per_r: int = 5,
    qbound: int = DEFAULT_QBOUND,
    field_cap: int = DEFAULT_FIELD_CAP,
    g: int | None = None,
) -> VandiverReport:
    """Try to certify every even eigenspace r in [2, p-3] via successive
    witness primes, smallest fields first."""
    if p <= 3 or not isprime(p):
        raise BadPrime(f"p={p} must be an odd prime > 3")
    candidates = _witness_fields(p, qbound, field_cap)
    contexts: dict[int, tuple] = {}
    scans = []
    for r in range(2, p - 2, 2):
        tried = []
        hit = None
        for _, q, n in candidates:
            if len(tried) >= max_witnesses_per_r:
                break
            if q not in contexts:
                setup = CyclotomicSetup.create(p, q, g=g)
                contexts[q] = (setup, build_field(setup))
            setup, ctx = contexts[q]
            i_val = index_mod_p(ctx, setup, r)
            tried.append((q, n, i_val))
            if i_val:
                hit = (q, i_val)
                break
        scans.append(
            EigenspaceScan(
                r=r,
                verdict=TRIVIAL if hit else UNKNOWN,
                witness_q=hit[0] if hit else None,
                i_mod_p=hit[1] if hit else None,
                tried=tuple(tried),
                admissible_orders=_admissible_orders(p, r),
            )
        )
    return VandiverReport(p=p, scans=tuple(scans))


@dataclass(frozen=True)
class ExploreWitness:
    q: int
    n: int
    v: int
    d: tuple[int, ...]
    sum_d: int
    spread: int  # e*sum(d^2) - (sum d)^2
    lhs: int
    rhs: int
    i_mod_p: int
    verdict: str


@dataclass(frozen=True)
class ExploreReport:
    p: int
    which: str
    e: int
    r: int
    witness: ExploreWitness


_EXPLORE = {"e4": (4, 8, 5), "e6": (6, 12, 7)}


def remark_explore(
    p: int,
    which: str,
    qbound: int = DEFAULT_QBOUND,
    field_cap: int = DEFAULT_FIELD_CAP,
    g: int | None = None,
    backend: str | None = None,
) -> ExploreReport:
    """Order-(p-1)/4 and order-(p-1)/6 analogues of the witness identity:
    e^2 q^(n-2v) = (Σd)^2 + p(e Σd^2 - (Σd)^2), plus the index at the
    matching eigenspace r. Identity checking only — no vanishing claim."""
    if which not in _EXPLORE:
        raise BadEigenspaceIndex(f"which={which!r} must be 'e4' or 'e6'")
    e, mod, residue = _EXPLORE[which]
    if p % mod != residue:
        raise BadPrime(f"p={p} must be ≡ {residue} mod {mod} for {which}")
    n = (p - 1) // e
    if n < 2:
        raise BadPrime(f"p={p} gives order {n} < 2")
    r = ((e - 1) * p + 1) // e
    for q in _primes_of_order(p, n, qbound):
        if q**n > field_cap:
            continue
        setup = CyclotomicSetup.create(p, q, g=g)
        ctx = build_field(setup, cap=field_cap)
        table = compute_period_table(ctx, setup, backend=backend)
        s1 = sum(table.d)
        s2 = sum(x * x for x in table.d)
        spread = e * s2 - s1 * s1
        lhs = e * e * q ** (n - 2 * table.v)
        rhs = s1 * s1 + p * spread
        if lhs != rhs:
            raise InternalInvariant(f"identity fails for p={p}, q={q}: {lhs} != {rhs}")
        i_val = index_mod_p(ctx, setup, r)
        witness = ExploreWitness(
            q=q, n=n, v=table.v, d=table.d, sum_d=s1, spread=spread,
            lhs=lhs, rhs=rhs, i_mod_p=i_val, verdict=verdict(i_val),
        )
        return ExploreReport(p=p, which=which, e=e, r=r, witness=witness)
    raise BoundExhausted(
        f"no prime of order {n} mod {p} with field under {field_cap} below {qbound}"
    )
