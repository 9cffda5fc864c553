"""Closed-form 2-primary group tables.

All tables are stored as shape templates indexed by n mod 8, evaluated with
the field parameters r (real embeddings), a (2-adic size), k = n // 8 and,
where torsion orders depend on it, the auxiliary prime q.  Theories over the
ring of 2-integers R_F require a 2-regular field; the barred building-block
theories, the topological theories, and the finite-field theories do not.

The module also carries a fault-injection switch used by the verification
suite to prove its own discriminating power: any single row of the stored
closed-form tables can be perturbed by an extra Z/2 summand.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

from .abgroup import C, C2, FgAb2, Z, ZERO, direct_sum, subtract_summand
from .errors import (
    DegreeOutOfRange,
    EvenN,
    NegativeDegree,
    OddM,
)
from .fields import FieldSpec, a_param, real_embeddings, require_two_regular
from .numtheory import nu2, val2_q_power


def w(m: int, a: int) -> int:
    """The torsion order 2^(a + nu2(m)) attached to even m."""
    if m % 2 != 0 or m < 2:
        raise OddM(f"w(m, a) needs even m >= 2, got m = {m}")
    if a < 2:
        raise ValueError(f"a must be >= 2, got {a}")
    return 1 << (a + nu2(m))


def t(n: int, q: int) -> int:
    """The 2-part of q^((n+1)/2) - 1, defined for odd n >= 1."""
    if n % 2 == 0 or n < 1:
        raise EvenN(f"t(n, q) needs odd n >= 1, got n = {n}")
    return val2_q_power(q, (n + 1) // 2)


# ---------------------------------------------------------------------------
# Topological theories

_KO_ROWS = (Z(1), C(2), C(2), ZERO, Z(1), ZERO, ZERO, ZERO)


def ko(n: int) -> FgAb2:
    """Real topological K-theory, period 8: Z, Z/2, Z/2, 0, Z, 0, 0, 0."""
    if n < 0:
        raise NegativeDegree(f"ko needs n >= 0, got {n}")
    return _KO_ROWS[n % 8]


def ku(n: int) -> FgAb2:
    """Complex topological K-theory, period 2: Z, 0."""
    if n < 0:
        raise NegativeDegree(f"ku needs n >= 0, got {n}")
    return Z(1) if n % 2 == 0 else ZERO


def kq_top(n: int, eps: int, base: str) -> FgAb2:
    """Topological hermitian K-groups of R or C.

    The orthogonal theory of R splits as two copies of KO and that of C is
    KO itself; the symplectic theory of R is KU and that of C is KO shifted
    by four degrees.
    """
    if n < 0:
        raise NegativeDegree(f"kq_top needs n >= 0, got {n}")
    _check_eps(eps)
    if base not in ("R", "C"):
        raise ValueError(f"base must be 'R' or 'C', got {base!r}")
    if eps == 1:
        return direct_sum(ko(n), ko(n)) if base == "R" else ko(n)
    return ku(n) if base == "R" else ko(n + 4)


def _check_eps(eps: int) -> None:
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")


# ---------------------------------------------------------------------------
# Finite-field theories


def k_fq(n: int, q: int) -> FgAb2:
    """2-primary algebraic K-groups of the field with q elements."""
    if n < 0:
        raise NegativeDegree(f"k_fq needs n >= 0, got {n}")
    if n == 0:
        return Z(1)
    if n % 2 == 0:
        return ZERO
    return C(val2_q_power(q, (n + 1) // 2))


def kq_fq(n: int, eps: int, q: int) -> FgAb2:
    """2-primary hermitian K-groups of the field with q elements.

    The orthogonal column is obtained by removing the KO summand from the
    one-real-place building block; the symplectic column is the stored
    fixture forced by the fiber of the Adams-operation self-map of
    topological symplectic K-theory, cross-checked by the long-exact-
    sequence counting in the verification suite.
    """
    if n < 0:
        raise NegativeDegree(f"kq_fq needs n >= 0, got {n}")
    _check_eps(eps)
    if eps == 1:
        return subtract_summand(kq_bar(n, 1, q), ko(n))
    row = n % 8
    if row == 0:
        return Z(1) if n == 0 else ZERO
    if row in (1, 2):
        return ZERO
    if row in (3, 7):
        return C(t(n, q))
    if row in (4, 6):
        return C(2)
    return C2(2)  # row 5


# ---------------------------------------------------------------------------
# Stored row templates with fault injection

_FAULTS: set[tuple[str, int]] = set()


@contextmanager
def fault_injection(table: str, row: int):
    """Temporarily corrupt one stored table row by an extra Z/2 summand."""
    if table not in _TABLE_ROWS:
        raise KeyError(f"unknown table {table!r}")
    if not 0 <= row < 8:
        raise ValueError(f"row must be in 0..7, got {row}")
    key = (table, row)
    _FAULTS.add(key)
    try:
        yield
    finally:
        _FAULTS.discard(key)


def fault_sites() -> list[tuple[str, int]]:
    """Every (table, row) pair the fault switch can perturb."""
    return [(name, row) for name in sorted(_TABLE_ROWS) for row in range(8)]


@dataclass(frozen=True)
class _Ctx:
    n: int
    k: int
    r: int
    a: int
    q: int | None

    def t(self) -> int:
        if self.q is None:
            raise ValueError("this table entry needs the auxiliary prime q")
        return t(self.n, self.q)


def _d0(c: _Ctx) -> FgAb2:
    return Z(1) if c.n == 0 else ZERO


_TABLE_ROWS = {
    # hermitian K of R_F, orthogonal column
    "kq_rf+": (
        lambda c: direct_sum(_d0(c), Z(c.r), C(2)),
        lambda c: C2(c.r + 2),
        lambda c: C2(c.r + 1),
        lambda c: C(w(4 * c.k + 2, c.a)),
        lambda c: Z(c.r),
        lambda c: ZERO,
        lambda c: ZERO,
        lambda c: C(w(4 * c.k + 4, c.a)),
    ),
    # hermitian K of R_F, symplectic column
    "kq_rf-": (
        lambda c: _d0(c),
        lambda c: ZERO,
        lambda c: Z(c.r),
        lambda c: direct_sum(C2(c.r - 1), C(2 * w(4 * c.k + 2, c.a))),
        lambda c: C2(c.r),
        lambda c: C(2),
        lambda c: Z(c.r),
        lambda c: C(w(4 * c.k + 4, c.a)),
    ),
    # algebraic K of R_F
    "k_rf": (
        lambda c: _d0(c),
        lambda c: direct_sum(Z(c.r), C(2)),
        lambda c: C2(c.r),
        lambda c: direct_sum(C2(c.r - 1), C(2 * w(4 * c.k + 2, c.a))),
        lambda c: ZERO,
        lambda c: Z(c.r),
        lambda c: ZERO,
        lambda c: C(w(4 * c.k + 4, c.a)),
    ),
    # forgetful-map fiber V of R_F
    "v_rf+": (
        lambda c: Z(2 * c.r),
        lambda c: C2(2 * c.r),
        lambda c: C2(2 * c.r),
        lambda c: ZERO,
        lambda c: Z(2 * c.r),
        lambda c: ZERO,
        lambda c: ZERO,
        lambda c: ZERO,
    ),
    "v_rf-": (
        lambda c: direct_sum(Z(c.r), C(2)),
        lambda c: ZERO,
        lambda c: Z(c.r),
        lambda c: ZERO,
        lambda c: Z(c.r),
        lambda c: C(2),
        lambda c: direct_sum(Z(c.r), C(2)),
        lambda c: C(2),
    ),
    # one-real-place building block, hermitian
    "kq_bar+": (
        lambda c: direct_sum(_d0(c), Z(1), C(2)),
        lambda c: C2(3),
        lambda c: C2(2),
        lambda c: C(c.t()),
        lambda c: Z(1),
        lambda c: ZERO,
        lambda c: ZERO,
        lambda c: C(c.t()),
    ),
    "kq_bar-": (
        lambda c: _d0(c),
        lambda c: ZERO,
        lambda c: Z(1),
        lambda c: C(2 * c.t()),
        lambda c: C(2),
        lambda c: C(2),
        lambda c: Z(1),
        lambda c: C(c.t()),
    ),
    # one-real-place building block, V-theory
    "v_bar+": (
        lambda c: Z(2),
        lambda c: C2(2),
        lambda c: C2(2),
        lambda c: ZERO,
        lambda c: Z(2),
        lambda c: ZERO,
        lambda c: ZERO,
        lambda c: ZERO,
    ),
    "v_bar-": (
        lambda c: direct_sum(Z(1), C(2)),
        lambda c: ZERO,
        lambda c: Z(1),
        lambda c: ZERO,
        lambda c: Z(1),
        lambda c: C(2),
        lambda c: direct_sum(Z(1), C(2)),
        lambda c: C(2),
    ),
}


def _eval_row(table: str, ctx: _Ctx) -> FgAb2:
    row = ctx.n % 8
    g = _TABLE_ROWS[table][row](ctx)
    if (table, row) in _FAULTS:
        g = direct_sum(g, C(2))
    return g


def _rf_ctx(n: int, spec: FieldSpec, q: int | None) -> _Ctx:
    require_two_regular(spec)
    if n < 0:
        raise NegativeDegree(f"table degree must be >= 0, got {n}")
    return _Ctx(n=n, k=n // 8, r=real_embeddings(spec), a=a_param(spec), q=q)


# ---------------------------------------------------------------------------
# Theories over the 2-integers of a 2-regular field


def k_rf(n: int, spec: FieldSpec) -> FgAb2:
    """2-primary algebraic K-groups of the 2-integers of the field."""
    return _eval_row("k_rf", _rf_ctx(n, spec, None))


def kq_rf(n: int, eps: int, spec: FieldSpec, q: int | None = None) -> FgAb2:
    """2-primary hermitian K-groups of the 2-integers of the field."""
    _check_eps(eps)
    return _eval_row("kq_rf+" if eps == 1 else "kq_rf-", _rf_ctx(n, spec, q))


def v_rf(n: int, eps: int, spec: FieldSpec) -> FgAb2:
    """Homotopy of the fiber of the forgetful map, hermitian to algebraic."""
    _check_eps(eps)
    return _eval_row("v_rf+" if eps == 1 else "v_rf-", _rf_ctx(n, spec, None))


def u_rf(n: int, eps: int, spec: FieldSpec) -> FgAb2:
    """Homotopy of the fiber of the hyperbolic map; the sign-swapped
    V-theory shifted one degree down."""
    _check_eps(eps)
    if n < 1:
        raise DegreeOutOfRange(f"u_rf needs n >= 1, got {n}")
    return v_rf(n - 1, -eps, spec)


# ---------------------------------------------------------------------------
# Barred (one real place) building blocks


def kq_bar(n: int, eps: int, q: int) -> FgAb2:
    """Hermitian K-groups of the one-real-place building block."""
    _check_eps(eps)
    if n < 0:
        raise NegativeDegree(f"kq_bar needs n >= 0, got {n}")
    ctx = _Ctx(n=n, k=n // 8, r=1, a=2, q=q)
    return _eval_row("kq_bar+" if eps == 1 else "kq_bar-", ctx)


def v_bar(n: int, eps: int) -> FgAb2:
    """V-theory of the one-real-place building block."""
    _check_eps(eps)
    if n < 0:
        raise NegativeDegree(f"v_bar needs n >= 0, got {n}")
    ctx = _Ctx(n=n, k=n // 8, r=1, a=2, q=None)
    return _eval_row("v_bar+" if eps == 1 else "v_bar-", ctx)


def k_bar(n: int, q: int | None, a: int) -> FgAb2:
    """Algebraic K-groups of the one-real-place building block (n >= 1).

    The torsion order in degree 7 mod 8 is w(4k+4, a); this choice is the
    unique one compatible with the K-theory splitting identity and is
    asserted by the verification suite (see k_bar_uses_resolved_order).
    """
    if n < 0:
        raise NegativeDegree(f"k_bar needs n >= 0, got {n}")
    if n == 0:
        raise DegreeOutOfRange("k_bar is tabulated for n >= 1")
    row, k = n % 8, n // 8
    if row == 1:
        return direct_sum(Z(1), C(2))
    if row == 2:
        return C(2)
    if row == 3:
        return C(2 * w(4 * k + 2, a))
    if row == 5:
        return Z(1)
    if row == 7:
        return C(w(4 * k + 4, a))
    return ZERO


def k_bar_uses_resolved_order(n: int) -> bool:
    """Degrees whose stored torsion order comes from the even-index
    convention w(4k+4) rather than a literal transcription."""
    return n % 8 == 7


# ---------------------------------------------------------------------------
# Witt-type groups and square classes


def witt(spec: FieldSpec) -> FgAb2:
    """Witt group of the 2-integers: Z^r + Z/2 for 2-regular fields."""
    require_two_regular(spec)
    return direct_sum(Z(real_embeddings(spec)), C(2))


def cowitt(spec: FieldSpec) -> FgAb2:
    """CoWitt group; isomorphic to the Witt group in the 2-regular case."""
    require_two_regular(spec)
    return direct_sum(Z(real_embeddings(spec)), C(2))


def w1(spec: FieldSpec) -> FgAb2:
    """Degree-1 Witt group: the 2-torsion of Pic plus Z/2, and Pic is odd
    for 2-regular fields."""
    require_two_regular(spec)
    return C(2)


def square_classes(spec: FieldSpec) -> FgAb2:
    """Square classes of the 2-unit group: (Z/2)^(r+1)."""
    require_two_regular(spec)
    return C2(real_embeddings(spec) + 1)


# ---------------------------------------------------------------------------
# Low degrees and endomorphism classifications


def low_dim(spec: FieldSpec, eps: int) -> dict[int, FgAb2]:
    """Hermitian K-groups in degrees -1, 0, 1 from first principles."""
    _check_eps(eps)
    require_two_regular(spec)
    if eps == -1:
        return {-1: ZERO, 0: Z(1), 1: ZERO}
    r = real_embeddings(spec)
    return {-1: ZERO, 0: kq_rf(0, 1, spec), 1: C2(r + 2)}


HF_MULTIPLY_BY_2 = "MultiplyBy2"
HF_IMAGE_ORDER_2 = "ImageOrder2"
HF_ZERO = "Zero"
INV_IDENTITY = "Identity"
INV_MINUS_IDENTITY = "MinusIdentity"


def hf_class(n: int, eps: int) -> str:
    """Hyperbolic-after-forgetful endomorphism of the hermitian K-groups."""
    _check_eps(eps)
    if n < 1:
        raise DegreeOutOfRange(f"hf_class needs n >= 1, got {n}")
    if n % 4 == 3:
        return HF_MULTIPLY_BY_2
    if eps == 1 and n % 8 in (1, 2):
        return HF_IMAGE_ORDER_2
    return HF_ZERO


def fh_class(n: int) -> str:
    """Forgetful-after-hyperbolic endomorphism of the algebraic K-groups."""
    if n < 1:
        raise DegreeOutOfRange(f"fh_class needs n >= 1, got {n}")
    return HF_MULTIPLY_BY_2 if n % 4 == 3 else HF_ZERO


def involution_class(n: int) -> str:
    """The canonical duality involution on the algebraic K-groups."""
    if n < 0:
        raise DegreeOutOfRange(f"involution_class needs n >= 0, got {n}")
    if n == 0 or n % 4 == 3:
        return INV_IDENTITY
    return INV_MINUS_IDENTITY


def forgetful_rank_image_index(eps: int) -> int:
    """Index of the image of the forgetful map on the rank summand:
    1 in the orthogonal case, 2 in the symplectic case."""
    _check_eps(eps)
    return 1 if eps == 1 else 2


# ---------------------------------------------------------------------------
# Theory-name dispatch (shared by the CLI)

THEORY_NAMES = (
    "K", "KQ+", "KQ-", "V+", "V-", "U+", "U-",
    "W", "W'", "W1",
    "Kbar", "KQbar+", "KQbar-", "Vbar+", "Vbar-",
    "KO", "KU", "KFq", "KQFq+", "KQFq-",
)

_ALIASES = {"WPRIME": "W'", "W′": "W'"}


@dataclass(frozen=True)
class TheoryTag:
    """A parsed theory name: base theory, sign, and variant flags."""

    name: str

    @classmethod
    def parse(cls, text: str) -> "TheoryTag":
        canon = {n.upper(): n for n in THEORY_NAMES}
        key = text.strip().upper()
        key = _ALIASES.get(key, key)
        if key not in canon:
            raise ValueError(f"unknown theory {text!r}; expected one of {', '.join(THEORY_NAMES)}")
        return cls(canon[key])

    @property
    def eps(self) -> int | None:
        if self.name.endswith("+"):
            return 1
        if self.name.endswith("-"):
            return -1
        return None

    @property
    def barred(self) -> bool:
        return "bar" in self.name

    @property
    def needs_degree(self) -> bool:
        return self.name not in ("W", "W'", "W1")

    @property
    def needs_q(self) -> bool:
        return self.name in ("Kbar", "KQbar+", "KQbar-", "KFq", "KQFq+", "KQFq-")

    @property
    def allows_degree_minus_one(self) -> bool:
        return self.name in ("KQ+", "KQ-")


def query(tag: TheoryTag, n: int | None, spec: FieldSpec, q: int | None) -> FgAb2:
    """Evaluate one theory at one degree.  Degree rules follow the theory:
    only KQ+- accept n = -1 (via the low-degree computation)."""
    name = tag.name
    if name == "W":
        return witt(spec)
    if name == "W'":
        return cowitt(spec)
    if name == "W1":
        return w1(spec)
    if n is None:
        raise ValueError(f"theory {name} needs a degree")
    if name in ("KQ+", "KQ-") and n == -1:
        return low_dim(spec, tag.eps or 1)[-1]
    if n < 0:
        raise NegativeDegree(f"theory {name} needs n >= 0, got {n}")
    if name == "K":
        return k_rf(n, spec)
    if name in ("KQ+", "KQ-"):
        return kq_rf(n, tag.eps, spec, q)
    if name in ("V+", "V-"):
        return v_rf(n, tag.eps, spec)
    if name in ("U+", "U-"):
        return u_rf(n, tag.eps, spec)
    if name == "Kbar":
        return k_bar(n, q, a_param(spec))
    if name in ("KQbar+", "KQbar-"):
        if q is None:
            raise ValueError(f"theory {name} needs q")
        return kq_bar(n, tag.eps, q)
    if name in ("Vbar+", "Vbar-"):
        return v_bar(n, tag.eps)
    if name == "KO":
        return ko(n)
    if name == "KU":
        return ku(n)
    if name == "KFq":
        if q is None:
            raise ValueError("theory KFq needs q")
        return k_fq(n, q)
    if name in ("KQFq+", "KQFq-"):
        if q is None:
            raise ValueError(f"theory {name} needs q")
        return kq_fq(n, tag.eps, q)
    raise ValueError(f"unhandled theory {name}")
