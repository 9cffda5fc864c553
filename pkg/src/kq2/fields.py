"""Totally real field descriptions, their 2-regularity, and the prime q.

A field enters either as one of the closed-form families (the rationals,
real quadratic fields, maximal real subfields of cyclotomic fields) or as a
generic description by its invariants.  The fast criteria decide
2-regularity in closed form; :func:`two_regular_oracle` re-derives the
quadratic verdict from first principles (dyadic splitting, class group
parity, unit signatures) using the exact machinery in :mod:`kq2.numtheory`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from . import numtheory as nt
from .errors import InadmissibleQ, InvalidSpec, NotPrimitiveRoot, NotTwoRegular


@dataclass(frozen=True)
class Rationals:
    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class RealQuadratic:
    """Q(sqrt(d)) for squarefree d >= 2."""

    d: int

    def __str__(self) -> str:
        return f"Q(sqrt {self.d})"


@dataclass(frozen=True)
class MaxRealCyclo2:
    """Maximal real subfield of the 2^b-th cyclotomic field, b >= 2."""

    b: int

    def __str__(self) -> str:
        return f"Q(zeta 2^{self.b})+"


@dataclass(frozen=True)
class MaxRealCycloOdd:
    """Maximal real subfield of the m-th cyclotomic field, m an odd prime
    power with 2 a primitive root modulo m."""

    m: int

    def __str__(self) -> str:
        return f"Q(zeta {self.m})+"


@dataclass(frozen=True)
class Generic:
    """A totally real field given by its invariants.

    ``regular_claim`` is either a boolean, or a triple of booleans
    (unique dyadic prime, odd Picard group, units of independent signs),
    or None for an unverified description.
    """

    r: int
    a: int
    c: int = 0
    regular_claim: Union[bool, tuple, None] = None

    def __str__(self) -> str:
        suffix = " regular" if self.regular_claim is True else ""
        return f"generic r={self.r} a={self.a}{suffix}"


FieldSpec = Union[Rationals, RealQuadratic, MaxRealCyclo2, MaxRealCycloOdd, Generic]


@dataclass(frozen=True)
class FieldInvariants:
    """Invariant bundle for a field; None encodes "unknown"."""

    r: int
    c: int
    a_F: int
    dyadic_count: int | None
    pic_odd: bool | None
    units_indep_signs: bool | None
    narrow_pic_odd: bool | None
    two_regular: bool
    reasons: tuple[str, ...] = field(default_factory=tuple)


def validate_spec(spec: FieldSpec) -> None:
    if isinstance(spec, Rationals):
        return
    if isinstance(spec, RealQuadratic):
        if spec.d < 2:
            raise InvalidSpec(f"d must be >= 2, got {spec.d}")
        squarefree, _ = nt.squarefree_part(spec.d)
        if not squarefree:
            raise InvalidSpec(f"d must be squarefree, got {spec.d}")
        return
    if isinstance(spec, MaxRealCyclo2):
        if spec.b < 2:
            raise InvalidSpec(f"b must be >= 2, got {spec.b}")
        return
    if isinstance(spec, MaxRealCycloOdd):
        m = spec.m
        if m < 3 or m % 2 == 0:
            raise InvalidSpec(f"m must be an odd prime power >= 3, got {m}")
        if len(set(nt.factorize(m))) != 1:
            raise InvalidSpec(f"m must be a prime power, got {m}")
        return
    if isinstance(spec, Generic):
        if spec.r < 1:
            raise InvalidSpec(f"generic spec needs r >= 1, got {spec.r}")
        if spec.a < 2:
            raise InvalidSpec(f"generic spec needs a >= 2, got {spec.a}")
        if spec.c < 0:
            raise InvalidSpec(f"generic spec needs c >= 0, got {spec.c}")
        if isinstance(spec.regular_claim, tuple) and len(spec.regular_claim) != 3:
            raise InvalidSpec("regular_claim triple must have three entries")
        return
    raise InvalidSpec(f"unknown field spec {spec!r}")


def real_embeddings(spec: FieldSpec) -> int:
    validate_spec(spec)
    if isinstance(spec, Rationals):
        return 1
    if isinstance(spec, RealQuadratic):
        return 2
    if isinstance(spec, MaxRealCyclo2):
        return 2 ** (spec.b - 2)
    if isinstance(spec, MaxRealCycloOdd):
        return nt.euler_phi(spec.m) // 2
    return spec.r


def a_param(spec: FieldSpec) -> int:
    """The 2-adic size parameter a_F (= 2 except in the 2-power cyclotomic
    tower, where it grows, and for Q(sqrt 2) where it is 3)."""
    validate_spec(spec)
    if isinstance(spec, Rationals):
        return 2
    if isinstance(spec, RealQuadratic):
        return 3 if spec.d == 2 else 2
    if isinstance(spec, MaxRealCyclo2):
        return spec.b
    if isinstance(spec, MaxRealCycloOdd):
        return 2
    return spec.a


def _quadratic_criterion(d: int) -> tuple[bool, str]:
    # 2-regular iff d = 2, d = p, or d = 2p with p = +-3 (mod 8) prime
    if d == 2:
        return True, "d = 2"
    if nt.is_prime(d):
        if d % 8 in (3, 5):
            return True, f"d = {d} is prime with {d} = {d % 8} (mod 8)"
        return False, f"d = {d} is prime but {d} = {d % 8} (mod 8) is not +-3 (mod 8)"
    if d % 2 == 0 and nt.is_prime(d // 2):
        p = d // 2
        if p % 8 in (3, 5):
            return True, f"d = 2*{p} with {p} = {p % 8} (mod 8)"
        return False, f"d = 2*{p} but {p} = {p % 8} (mod 8) is not +-3 (mod 8)"
    return False, f"d = {d} is neither 2, a prime, nor twice a prime"


def is_two_regular(spec: FieldSpec) -> tuple[bool, str]:
    """Fast closed-form 2-regularity verdict with a one-line reason.

    Quadratic fields use the exact d = 2 / p / 2p criterion; odd cyclotomic
    fields outside the certified list report False rather than guessing.
    Generic specs are trusted: a missing claim counts as unverified-regular
    so that table queries stay possible (callers should flag this).
    """
    validate_spec(spec)
    if isinstance(spec, Rationals):
        return True, "the rationals are 2-regular"
    if isinstance(spec, MaxRealCyclo2):
        return True, "maximal real 2-power cyclotomic fields are 2-regular"
    if isinstance(spec, RealQuadratic):
        return _quadratic_criterion(spec.d)
    if isinstance(spec, MaxRealCycloOdd):
        m = spec.m
        if not nt.is_primitive_root(2, m):
            raise NotPrimitiveRoot(f"2 is not a primitive root modulo {m}")
        phi = nt.euler_phi(m)
        if m != 29 and phi <= 66:
            return True, f"phi({m}) = {phi} <= 66"
        if m == 29:
            return False, "m = 29 is the known exception to the phi <= 66 rule"
        if nt.is_sophie_germain_type(m) and m % 8 != 7:
            return True, f"m = {m} and (m-1)/2 both prime with m != 7 (mod 8)"
        return False, f"m = {m} is outside the certified list"
    # Generic
    claim = spec.regular_claim
    if claim is None:
        return True, "generic spec without verification data (treated as claimed regular)"
    if isinstance(claim, tuple):
        dyadic_one, pic_odd, units = (bool(v) for v in claim)
        if dyadic_one and pic_odd and units:
            return True, "caller-supplied invariants satisfy the regularity test"
        failing = []
        if not dyadic_one:
            failing.append("more than one dyadic prime")
        if not pic_odd:
            failing.append("Pic(R_F) has even order")
        if not units:
            failing.append("units of independent signs fail")
        return False, "; ".join(failing)
    return (True, "caller claims 2-regular") if claim else (False, "caller claims not 2-regular")


def is_unverified_generic(spec: FieldSpec) -> bool:
    return isinstance(spec, Generic) and spec.regular_claim is None


def require_two_regular(spec: FieldSpec) -> None:
    regular, reason = is_two_regular(spec)
    if not regular:
        raise NotTwoRegular(f"{spec} is not 2-regular: {reason}")


def bokstedt_cartesian(spec: FieldSpec) -> bool:
    """Whether the K-theory pullback square for the field is cartesian;
    this is equivalent to 2-regularity."""
    return is_two_regular(spec)[0]


def two_regular_oracle(spec: RealQuadratic) -> FieldInvariants:
    """Independent 2-regularity verdict for a real quadratic field.

    Recomputes the three defining conditions from scratch: the number of
    dyadic primes from the splitting of 2, the parity of Pic(R_F) from the
    class number divided by the dyadic class order, and units of
    independent signs from the signatures of the 2-unit generators.
    """
    if not isinstance(spec, RealQuadratic):
        raise InvalidSpec("the regularity oracle covers real quadratic fields only")
    validate_spec(spec)
    d = spec.d
    cd = nt.class_numbers(d)
    dy = nt.dyadic_data(d)
    eps = nt.fundamental_unit(d)

    reasons: list[str] = []
    if dy.count == 1:
        reasons.append("unique dyadic prime")
    else:
        reasons.append(f"two dyadic primes (d = {d} splits 2, d = 1 mod 8)")

    pic_odd: bool | None = None
    if dy.class_order is not None:
        pic_order = cd.h // dy.class_order
        pic_odd = pic_order % 2 == 1
        reasons.append(
            f"Pic(R_F) has {'odd' if pic_odd else 'even'} order {pic_order}"
            f" (h = {cd.h}, dyadic class order {dy.class_order})"
        )

    narrow_pic_odd: bool | None = None
    if dy.narrow_class_order is not None:
        narrow_order = cd.h_narrow // dy.narrow_class_order
        narrow_pic_odd = narrow_order % 2 == 1

    # The signature span is generated by -1, the fundamental unit, and the
    # dyadic S-units; mixed signs exist iff some generator has negative norm.
    if eps.norm == -1:
        units = True
        reasons.append("fundamental unit has norm -1 (independent signs)")
    elif dy.generator is not None:
        gen = dy.generator
        conj = nt.QuadUnit(gen.x, -gen.y, gen.denom, d, gen.norm)
        gens = [gen, conj]
        units = nt.sign_span_is_full(nt.unit_signature_span(d, gens))
        reasons.append(
            "units of independent signs"
            if units
            else "units of independent signs fail (all 2-unit generators totally positive up to sign)"
        )
    elif dy.generator_norm_negative is not None:
        units = dy.generator_norm_negative
        reasons.append(
            "units of independent signs"
            if units
            else "units of independent signs fail"
        )
    else:
        units = None
        reasons.append("unit signature search undecided")

    two_regular = dy.count == 1 and pic_odd is True and units is True
    if two_regular:
        reasons.append("2-regular")
    return FieldInvariants(
        r=2,
        c=0,
        a_F=a_param(spec),
        dyadic_count=dy.count,
        pic_odd=pic_odd,
        units_indep_signs=units,
        narrow_pic_odd=narrow_pic_odd,
        two_regular=two_regular,
        reasons=tuple(reasons),
    )


# ---------------------------------------------------------------------------
# The auxiliary prime q


def is_admissible_q(q: int, spec: FieldSpec) -> bool:
    """Congruence admissibility: q prime, q = +-1 (mod 2^a) but not
    (mod 2^(a+1)), where a is the field's 2-adic size parameter."""
    a = a_param(spec)
    if q < 3 or not nt.is_prime(q):
        return False
    m, m2 = 1 << a, 1 << (a + 1)
    if q % m not in (1, m - 1):
        return False
    return q % m2 not in (1, m2 - 1)


def find_q_for_a(a: int, limit: int = 10**7) -> int:
    """Smallest congruence-admissible prime for the parameter a."""
    m, m2 = 1 << a, 1 << (a + 1)
    q = 3
    while q < limit:
        if q % m in (1, m - 1) and q % m2 not in (1, m2 - 1) and nt.is_prime(q):
            return q
        q += 2
    raise InadmissibleQ(f"no admissible prime below {limit} for a = {a}")


def find_q(spec: FieldSpec) -> int:
    """Smallest congruence-admissible prime for the field."""
    return find_q_for_a(a_param(spec))


def require_admissible_q(q: int, spec: FieldSpec) -> None:
    if not is_admissible_q(q, spec):
        raise InadmissibleQ(
            f"q = {q} is not congruence-admissible for {spec} (a = {a_param(spec)})"
        )


# ---------------------------------------------------------------------------
# Text syntax

_QUAD_RE = re.compile(r"^Q\(\s*sqrt\s*(\d+)\s*\)$")
_CYCLO2_RE = re.compile(r"^Q\(\s*zeta\s*2\^(\d+)\s*\)\+$")
_CYCLO_RE = re.compile(r"^Q\(\s*zeta\s*(\d+)\s*\)\+$")
_GENERIC_RE = re.compile(r"^generic\s+r=(\d+)\s+a=(\d+)(\s+regular)?$")


class FieldSyntaxError(ValueError):
    """Unparseable field text (a usage error, not a domain error)."""


def parse_field(text: str) -> FieldSpec:
    """Parse "Q", "Q(sqrt D)", "Q(zeta 2^B)+", "Q(zeta M)+",
    "generic r=R a=A [regular]"."""
    text = text.strip()
    if text == "Q":
        return Rationals()
    m = _QUAD_RE.match(text)
    if m:
        spec: FieldSpec = RealQuadratic(int(m.group(1)))
        validate_spec(spec)
        return spec
    m = _CYCLO2_RE.match(text)
    if m:
        spec = MaxRealCyclo2(int(m.group(1)))
        validate_spec(spec)
        return spec
    m = _CYCLO_RE.match(text)
    if m:
        n = int(m.group(1))
        if n >= 4 and n & (n - 1) == 0:
            spec = MaxRealCyclo2(n.bit_length() - 1)
        else:
            spec = MaxRealCycloOdd(n)
        validate_spec(spec)
        return spec
    m = _GENERIC_RE.match(text)
    if m:
        claim = True if m.group(3) else None
        spec = Generic(r=int(m.group(1)), a=int(m.group(2)), regular_claim=claim)
        validate_spec(spec)
        return spec
    raise FieldSyntaxError(
        f"cannot parse field {text!r}; expected Q, Q(sqrt D), Q(zeta 2^B)+, "
        f"Q(zeta M)+, or generic r=R a=A [regular]"
    )
