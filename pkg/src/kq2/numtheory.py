"""Exact integer number theory for real quadratic fields.

Everything here is exact arithmetic on Python integers: 2-adic valuations,
deterministic primality, continued fractions of quadratic irrationals,
fundamental units, and class numbers of real quadratic fields via cycles of
reduced indefinite binary quadratic forms.  This layer is the independent
oracle against which the closed-form regularity criteria are checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import BadModulus, BoundExceeded, EvenQ, NonPositive, Undecided

TRIAL_DIVISION_BOUND = 10**12
CLASS_NUMBER_BOUND = 10**6
CF_STEP_BOUND = 10**6


# ---------------------------------------------------------------------------
# 2-adic valuations


def nu2(n: int) -> int:
    """Largest e with 2^e dividing n (n >= 1)."""
    if n < 1:
        raise NonPositive(f"nu2 requires n >= 1, got {n}")
    return (n & -n).bit_length() - 1


def two_part(n: int) -> int:
    """The 2-part of n, i.e. 2^nu2(n)."""
    if n < 1:
        raise NonPositive(f"two_part requires n >= 1, got {n}")
    return n & -n


def val2_q_power(q: int, m: int) -> int:
    """The 2-part of q^m - 1 by the closed multiplicativity formulas.

    For odd m the 2-part equals that of q - 1; for even m = 2m' it equals
    the 2-part of q^2 - 1 times the 2-part of m'.  Tests compare this
    against direct modular exponentiation.
    """
    if q < 3 or q % 2 == 0:
        raise EvenQ(f"q must be odd and >= 3, got {q}")
    if m < 1:
        raise NonPositive(f"exponent must be >= 1, got {m}")
    if m % 2 == 1:
        return two_part(q - 1)
    return two_part(q * q - 1) * two_part(m // 2)


# ---------------------------------------------------------------------------
# Primality and factorization

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# This witness set is a deterministic Miller-Rabin certificate for every
# n < 3.3 * 10^24, far beyond the 2^63 contract.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality for all n below 2^63 (and well beyond)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = nu2(d)
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, ...]:
    """Prime factor multiset of n by trial division (1 <= n <= bound)."""
    if n < 1:
        raise NonPositive(f"factorize requires n >= 1, got {n}")
    if n > bound:
        raise BoundExceeded(f"{n} exceeds the trial-division bound {bound}")
    factors: list[int] = []
    for p in (2, 3):
        while n % p == 0:
            factors.append(p)
            n //= p
    p = 5
    # 6k +- 1 wheel
    step = 2
    while p * p <= n:
        while n % p == 0:
            factors.append(p)
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        factors.append(n)
    return tuple(sorted(factors))


def squarefree_part(n: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[bool, tuple[int, ...]]:
    """(is n squarefree, prime factor multiset of n)."""
    factors = factorize(n, bound)
    squarefree = len(factors) == len(set(factors))
    return squarefree, factors


def euler_phi(m: int) -> int:
    if m < 1:
        raise NonPositive(f"euler_phi requires m >= 1, got {m}")
    out = m
    for p in sorted(set(factorize(m))):
        out = out // p * (p - 1)
    return out


def is_primitive_root(g: int, m: int) -> bool:
    """Whether g generates (Z/m)^*; m must be an odd prime power >= 3."""
    if m < 3 or m % 2 == 0:
        raise BadModulus(f"modulus must be an odd prime power >= 3, got {m}")
    facs = set(factorize(m))
    if len(facs) != 1:
        raise BadModulus(f"modulus must be a prime power, got {m}")
    phi = euler_phi(m)
    if pow(g, phi, m) != 1:  # not coprime
        return False
    return all(pow(g, phi // p, m) != 1 for p in set(factorize(phi)))


def is_sophie_germain_type(m: int) -> bool:
    """m and (m-1)/2 both prime (the safe-prime shape 2p + 1)."""
    return m % 2 == 1 and is_prime(m) and is_prime((m - 1) // 2)


# ---------------------------------------------------------------------------
# Quadratic field elements


def _sign_embedding(x: int, y: int, d: int) -> int:
    """Sign of x + y*sqrt(d), exactly; the element must be nonzero."""
    if y == 0:
        if x == 0:
            raise ValueError("zero element has no sign")
        return 1 if x > 0 else -1
    if x >= 0 and y > 0:
        return 1
    if x <= 0 and y < 0:
        return -1
    norm = x * x - d * y * y
    if x > 0:  # y < 0
        return 1 if norm > 0 else -1
    return 1 if norm < 0 else -1  # x < 0 < y


@dataclass(frozen=True)
class QuadUnit:
    """Element (x + y*sqrt(d))/denom of a real quadratic field.

    Used both for fundamental units (norm +-1) and dyadic S-unit generators
    (norm +-2^k).  ``denom`` = 2 is only allowed for d = 1 (mod 4) with
    x = y (mod 2).
    """

    x: int
    y: int
    denom: int
    d: int
    norm: int

    def __post_init__(self) -> None:
        if self.denom not in (1, 2):
            raise ValueError("denom must be 1 or 2")
        if self.denom == 2 and (self.d % 4 != 1 or (self.x - self.y) % 2 != 0):
            raise ValueError("half-integer coordinates need d = 1 (mod 4) and x = y (mod 2)")
        if self.x * self.x - self.d * self.y * self.y != self.norm * self.denom**2:
            raise ValueError(
                f"norm equation violated: ({self.x}^2 - {self.d}*{self.y}^2)"
                f"/{self.denom}^2 != {self.norm}"
            )

    def sign_vector(self) -> tuple[int, int]:
        """Signs under the two real embeddings sqrt(d) -> +-sqrt(d)."""
        return (
            _sign_embedding(self.x, self.y, self.d),
            _sign_embedding(self.x, -self.y, self.d),
        )

    def __str__(self) -> str:
        num = f"{self.x} + {self.y}*sqrt({self.d})"
        return f"({num})/2" if self.denom == 2 else num


def _require_squarefree_d(d: int) -> None:
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    squarefree, _ = squarefree_part(d)
    if not squarefree:
        raise ValueError(f"d must be squarefree, got {d}")


def _cf_reduced_period(P0: int, Q0: int, d: int, max_steps: int = CF_STEP_BOUND) -> list[int]:
    """Partial quotients over one period of the purely periodic continued
    fraction of the reduced irrational (P0 + sqrt(d))/Q0.

    Requires Q0 | d - P0^2; the recurrence preserves that invariant.
    """
    s = isqrt(d)
    P, Q = P0, Q0
    quotients: list[int] = []
    while True:
        a = (P + s) // Q
        quotients.append(a)
        P = a * Q - P
        Q = (d - P * P) // Q
        if (P, Q) == (P0, Q0):
            return quotients
        if len(quotients) >= max_steps:
            raise BoundExceeded(f"continued-fraction period of ({P0}+sqrt({d}))/{Q0} exceeds {max_steps}")


def fundamental_unit(d: int, max_steps: int = CF_STEP_BOUND) -> QuadUnit:
    """Fundamental unit > 1 of the maximal order of Q(sqrt(d)).

    Expands the continued fraction of a reduced generator of the maximal
    order; the automorph over one period is the fundamental unit and its
    norm is (-1)^(period length).
    """
    _require_squarefree_d(d)
    s = isqrt(d)
    if d % 4 == 1:
        # reduced element (P0 + sqrt(d))/2 of Z[(1+sqrt(d))/2]: P0 odd in (sqrt(d)-2, sqrt(d))
        P0 = s if s % 2 == 1 else s - 1
        Q0 = 2
    else:
        P0, Q0 = s, 1
    quotients = _cf_reduced_period(P0, Q0, d, max_steps)
    q_prev, q_curr = 1, 0  # q_{-2}, q_{-1}
    for a in quotients:
        q_prev, q_curr = q_curr, a * q_curr + q_prev
    # unit = q_{l-1} * omega + q_{l-2} with omega = (P0 + sqrt(d))/Q0
    if Q0 == 2:
        x, y, denom = q_curr * P0 + 2 * q_prev, q_curr, 2
        if x % 2 == 0 and y % 2 == 0:
            x, y, denom = x // 2, y // 2, 1
    else:
        x, y, denom = q_curr * P0 + q_prev, q_curr, 1
    norm = -1 if len(quotients) % 2 == 1 else 1
    return QuadUnit(x, y, denom, d, norm)


def norm_two_element(d: int, max_steps: int = CF_STEP_BOUND) -> QuadUnit | None:
    """An integral element of Q(sqrt(d)) of norm +-2, or None if none exists.

    For d >= 5 every primitive solution of |x^2 - d y^2| = 2 < sqrt(d) shows
    up among the convergents of sqrt(d), whose values enumerate the cycle of
    denominators Q_i; scanning one full period is a complete search.
    """
    _require_squarefree_d(d)
    if d == 2:
        return QuadUnit(0, 1, 1, 2, -2)
    if d == 3:
        return QuadUnit(1, 1, 1, 3, -2)
    s = isqrt(d)
    P, Q = 0, 1
    p_prev, p_curr = 0, 1  # p_{-2}, p_{-1}
    q_prev, q_curr = 1, 0  # q_{-2}, q_{-1}
    seen_states: set[tuple[int, int]] = set()
    for _ in range(max_steps):
        a = (P + s) // Q
        p_prev, p_curr = p_curr, a * p_curr + p_prev
        q_prev, q_curr = q_curr, a * q_curr + q_prev
        P = a * Q - P
        Q = (d - P * P) // Q
        # p_i^2 - d q_i^2 = (-1)^(i+1) Q_(i+1); |value| = 2 iff Q_(i+1) = 2
        if Q == 2:
            norm = p_curr * p_curr - d * q_curr * q_curr
            if abs(norm) != 2:
                raise RuntimeError(f"convergent bookkeeping broke for d={d}")
            return QuadUnit(p_curr, q_curr, 1, d, norm)
        if (P, Q) in seen_states:
            return None
        seen_states.add((P, Q))
    raise BoundExceeded(f"continued fraction of sqrt({d}) exceeded {max_steps} steps")


# ---------------------------------------------------------------------------
# Reduced indefinite binary quadratic forms

Form = tuple[int, int, int]


def _is_reduced(f: Form, D: int) -> bool:
    # (a, b, c) indefinite of discriminant D is reduced iff
    # |sqrt(D) - 2|a|| < b < sqrt(D)
    a, b, _ = f
    if b <= 0 or b * b >= D:
        return False
    t = 2 * abs(a)
    if (t + b) ** 2 <= D:  # need t > sqrt(D) - b
        return False
    if t > b and (t - b) ** 2 >= D:  # need t < sqrt(D) + b
        return False
    return True


def _rho(f: Form, D: int, s: int) -> Form:
    """One reduction/cycle step: (a, b, c) -> (c, b', c')."""
    _, b, c = f
    cabs = abs(c)
    t = 2 * cabs
    b2 = (-b) % t
    if cabs > s:
        if b2 > cabs:
            b2 -= t
    else:
        b2 += ((s - b2) // t) * t  # largest value = -b (mod t) that is <= floor(sqrt(D))
    c2 = (b2 * b2 - D) // (4 * c)
    return (c, b2, c2)


def _reduce_form(f: Form, D: int, s: int, max_steps: int = 10000) -> Form:
    for _ in range(max_steps):
        if _is_reduced(f, D):
            return f
        f = _rho(f, D, s)
    raise BoundExceeded(f"form reduction of {f} (D={D}) did not terminate")


def _cycle_of(f: Form, D: int, s: int, max_steps: int = 10**6) -> frozenset[Form]:
    f0 = _reduce_form(f, D, s)
    cycle = {f0}
    g = _rho(f0, D, s)
    steps = 0
    while g != f0:
        cycle.add(g)
        g = _rho(g, D, s)
        steps += 1
        if steps > max_steps:
            raise BoundExceeded(f"cycle through {f0} (D={D}) exceeded {max_steps} forms")
    return frozenset(cycle)


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def reduced_forms(D: int) -> set[Form]:
    """All reduced indefinite forms of (nonsquare) discriminant D > 0."""
    s = isqrt(D)
    forms: set[Form] = set()
    for b in range(1, s + 1):
        if (D - b * b) % 4 != 0:
            continue
        m = (D - b * b) // 4  # = -a*c > 0
        for a0 in _divisors(m):
            c0 = m // a0
            for a, c in ((a0, -c0), (-a0, c0)):
                f = (a, b, c)
                if _is_reduced(f, D):
                    forms.add(f)
    return forms


def principal_form(D: int) -> Form:
    s = isqrt(D)
    b0 = s if (s - D) % 2 == 0 else s - 1
    return (1, b0, (b0 * b0 - D) // 4)


def _form_cycles(D: int) -> list[frozenset[Form]]:
    s = isqrt(D)
    remaining = reduced_forms(D)
    cycles: list[frozenset[Form]] = []
    while remaining:
        f = next(iter(remaining))
        cyc = _cycle_of(f, D, s)
        if not cyc <= remaining:
            raise RuntimeError(f"cycle through {f} left the reduced-form set (D={D})")
        remaining -= cyc
        cycles.append(cyc)
    return cycles


def _sqrt_mod_2pow(D: int, e: int) -> int:
    """An odd square root of D modulo 2^e, for D = 1 (mod 8), e >= 3."""
    r = 1
    for j in range(3, e):
        if (r * r - D) % (1 << (j + 1)) != 0:
            r += 1 << (j - 1)
    return r % (1 << e)


@dataclass(frozen=True)
class DyadicData:
    """Behaviour of the prime 2 in Q(sqrt(d)) and the ideal class it spans."""

    count: int                      # number of dyadic primes (1 or 2)
    class_order: int | None         # order of the dyadic prime class in Cl
    narrow_class_order: int | None  # its order in the narrow class group
    generator_norm_negative: bool | None  # a power has a negative-norm generator
    generator: QuadUnit | None      # explicit S-unit generator when available


@dataclass(frozen=True)
class ClassData:
    """Class numbers of Q(sqrt(d)) and the dyadic class order."""

    d: int
    discriminant: int
    h: int
    h_narrow: int
    dyadic_class_order: int | None


def _dyadic_forms(d: int, D: int, k: int) -> list[Form]:
    """The forms of the primitive ideals of norm 2^k (there are 0, 1 or 2)."""
    a = 1 << k
    if d % 8 == 1:
        r = _sqrt_mod_2pow(D, k + 2)
        bs = {r % (2 * a), (-r) % (2 * a)}
    else:
        bs = {b for b in range(0, 2 * a) if (b * b - D) % (4 * a) == 0}
    out = []
    for b in sorted(bs):
        c = (b * b - D) // (4 * a)
        out.append((a, b, c))
    return out


def dyadic_data(d: int) -> DyadicData:
    """Splitting of 2 and the order of the dyadic ideal class.

    Principality of a power of the dyadic prime is decided by reducing its
    form and testing membership in the principal cycle (narrow) or in the
    principal-or-negated-principal cycles (wide).  Explicit norm +-2
    generators are extracted from the continued fraction of sqrt(d) when 2
    is ramified.
    """
    _require_squarefree_d(d)
    D = d if d % 4 == 1 else 4 * d
    s = isqrt(D)
    princ = _cycle_of(principal_form(D), D, s)
    b0 = principal_form(D)[1]
    neg = _cycle_of((-1, b0, (D - b0 * b0) // 4), D, s)

    if d % 8 == 5:
        # 2 inert: the dyadic prime is (2) itself
        return DyadicData(1, 1, 1, False, QuadUnit(2, 0, 1, d, 4))

    if d % 8 == 1:
        # 2 split: two dyadic primes; walk powers until one is principal
        cycles = _form_cycles(D)
        h_narrow = len(cycles)
        order = narrow_order = None
        neg_gen = None
        for k in range(1, h_narrow + 1):
            reduced = [_reduce_form(f, D, s) for f in _dyadic_forms(d, D, k)]
            if narrow_order is None and any(f in princ for f in reduced):
                narrow_order = k
            if order is None:
                if any(f in princ for f in reduced):
                    order, neg_gen = k, False
                elif any(f in neg for f in reduced):
                    order, neg_gen = k, True
            if order is not None and narrow_order is not None:
                break
        if order is None or narrow_order is None:
            raise Undecided(f"dyadic class order search exhausted for d={d}")
        return DyadicData(2, order, narrow_order, neg_gen, None)

    # 2 ramified: the square of the dyadic prime is (2)
    gen = norm_two_element(d)
    if gen is not None:
        f = _reduce_form(_dyadic_forms(d, D, 1)[0], D, s)
        if f not in princ and f not in neg:
            raise RuntimeError(f"norm +-2 element found but form not principal (d={d})")
        narrow_order = 1 if f in princ else 2
        return DyadicData(1, 1, narrow_order, gen.norm < 0, gen)
    return DyadicData(1, 2, 2, False, QuadUnit(2, 0, 1, d, 4))


def class_numbers(d: int, bound: int = CLASS_NUMBER_BOUND) -> ClassData:
    """Class number data for Q(sqrt(d)) via reduced-form cycles.

    The narrow class number is the number of cycles of reduced forms of the
    field discriminant; the wide class number follows from the norm of the
    fundamental unit.
    """
    _require_squarefree_d(d)
    if d > bound:
        raise BoundExceeded(f"d={d} exceeds the class-number bound {bound}")
    D = d if d % 4 == 1 else 4 * d
    h_narrow = len(_form_cycles(D))
    eps = fundamental_unit(d)
    if eps.norm == -1:
        h = h_narrow
    else:
        if h_narrow % 2 != 0:
            raise RuntimeError(f"narrow class number parity inconsistent for d={d}")
        h = h_narrow // 2
    return ClassData(d, D, h, h_narrow, dyadic_data(d).class_order)


def unit_signature_span(d: int, dyadic_generators=()) -> set[tuple[int, int]]:
    """Subgroup of {+-1}^2 spanned by the signs of the 2-unit generators.

    -1 and the fundamental unit are always included; callers add the dyadic
    S-unit generators.  The full four-element group means the field has
    units of independent signs.
    """
    vectors = {(-1, -1), fundamental_unit(d).sign_vector()}
    for g in dyadic_generators:
        vectors.add(g.sign_vector())
    span = {(1, 1)}
    for v in vectors:
        span |= {(v[0] * w[0], v[1] * w[1]) for w in span}
    return span


def sign_span_is_full(span: set[tuple[int, int]]) -> bool:
    return len(span) == 4
