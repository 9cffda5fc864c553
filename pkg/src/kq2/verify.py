"""Cross-validation of every inter-table identity and exact-sequence
constraint.

A passing suite certifies that the stored tables are mutually consistent as
isomorphism classes: the five splitting identities, the Mayer-Vietoris rank
count for the pullback defining the barred theories, short-exact-sequence
and order-telescoping necessary conditions, the valuation identity
t(n, q) = w((n+1)/2, a), the wedge description of the orthogonal V-theory,
and the low-degree computations.  Boundary maps are not modeled, so the
checks are necessary-condition checks; they do not by themselves prove the
tables correct, but fault injection (see tests) shows they reject any
single-row perturbation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import tables as tb
from .abgroup import (
    C2,
    ExactWindow,
    FgAb2,
    Z,
    ZERO,
    direct_sum,
    exact_window_check,
    format_group,
    n_copies,
    ses_consistent,
)
from .errors import InadmissibleQ
from .fields import (
    FieldSpec,
    a_param,
    find_q,
    is_admissible_q,
    real_embeddings,
    require_two_regular,
)

REPORT_HEADER = (
    "consistency suite: compares isomorphism classes only; connecting maps "
    "are not modeled, so a pass certifies mutual consistency of the tables, "
    "not their derivation"
)


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    details: str
    counterexample: dict | None = None

    def __post_init__(self) -> None:
        if not self.passed and self.counterexample is None:
            raise ValueError("failing report needs a counterexample")

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "details": self.details}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _equality_report(name: str, cases: Iterable[tuple[dict, FgAb2, FgAb2]], details: str) -> CheckReport:
    checked = 0
    for params, expected, actual in cases:
        checked += 1
        if expected != actual:
            return CheckReport(
                name,
                False,
                f"first failure at {params}",
                {
                    **params,
                    "expected": format_group(expected),
                    "actual": format_group(actual),
                },
            )
    return CheckReport(name, True, f"{details} ({checked} cases)")


def _prepare(spec: FieldSpec, q: int | None) -> int:
    require_two_regular(spec)
    if q is None:
        return find_q(spec)
    if not is_admissible_q(q, spec):
        raise InadmissibleQ(f"q = {q} is not congruence-admissible for {spec}")
    return q


def check_splittings(spec: FieldSpec, q: int | None = None, n_max: int = 64) -> list[CheckReport]:
    """The five wedge-splitting identities relating the R_F tables to the
    one-real-place building block plus topological copies."""
    q = _prepare(spec, q)
    if n_max < 8:
        raise ValueError(f"n_max must be >= 8, got {n_max}")
    r = real_embeddings(spec)
    a = a_param(spec)
    degrees = range(0, n_max + 1)

    def cases_a():
        for n in degrees:
            yield (
                {"identity": "KQ+", "n": n, "r": r},
                tb.kq_rf(n, 1, spec, q),
                direct_sum(tb.kq_bar(n, 1, q), n_copies(r - 1, tb.ko(n))),
            )

    def cases_b():
        for n in degrees:
            yield (
                {"identity": "KQ-", "n": n, "r": r},
                tb.kq_rf(n, -1, spec, q),
                direct_sum(tb.kq_bar(n, -1, q), n_copies(r - 1, tb.ko(n + 6))),
            )

    def cases_c():
        for n in degrees:
            yield (
                {"identity": "V+", "n": n, "r": r},
                tb.v_rf(n, 1, spec),
                direct_sum(tb.v_bar(n, 1), n_copies(2 * (r - 1), tb.ko(n))),
            )

    def cases_d():
        for n in degrees:
            yield (
                {"identity": "V-", "n": n, "r": r},
                tb.v_rf(n, -1, spec),
                direct_sum(tb.v_bar(n, -1), n_copies(r - 1, tb.ku(n))),
            )

    def cases_e():
        for n in degrees:
            if n >= 1:
                yield (
                    {"identity": "K", "n": n, "r": r},
                    tb.k_rf(n, spec),
                    direct_sum(tb.k_bar(n, q, a), n_copies(r - 1, tb.ko(n - 1))),
                )

    return [
        _equality_report("splitting KQ+ = KQbar+ + (r-1) KO", cases_a(), f"n <= {n_max}"),
        _equality_report("splitting KQ- = KQbar- + (r-1) KO[6]", cases_b(), f"n <= {n_max}"),
        _equality_report("splitting V+ = Vbar+ + 2(r-1) KO", cases_c(), f"n <= {n_max}"),
        _equality_report("splitting V- = Vbar- + (r-1) KU", cases_d(), f"n <= {n_max}"),
        _equality_report(
            "splitting K = Kbar + (r-1) KO[-1] (fixes the degree 7 mod 8 order as w(4k+4))",
            cases_e(),
            f"1 <= n <= {n_max}",
        ),
    ]


def _mv_window(spec: FieldSpec, q: int, eps: int, n_lo: int, n_hi: int) -> ExactWindow:
    """One stretch of the Mayer-Vietoris sequence for the pullback that
    defines the barred theory, ordered as it appears in the sequence:

        ... -> r * KQ_{n+1}(C) -> KQbar_n -> KQ_n(Fq) + r * KQ_n(R)
            -> r * KQ_n(C) -> ...
    """
    r = real_embeddings(spec)
    groups: list[FgAb2] = []
    for n in range(n_hi, n_lo - 1, -1):
        groups.append(n_copies(r, tb.kq_top(n + 1, eps, "C")))
        groups.append(direct_sum(tb.kq_bar(n, eps, q), _split_summand(spec, eps, n)))
        groups.append(direct_sum(tb.kq_fq(n, eps, q), n_copies(r, tb.kq_top(n, eps, "R"))))
    return ExactWindow(tuple(groups), bounded=False)


def _split_summand(spec: FieldSpec, eps: int, n: int) -> FgAb2:
    r = real_embeddings(spec)
    return n_copies(r - 1, tb.ko(n) if eps == 1 else tb.ko(n + 6))


def check_les(spec: FieldSpec, q: int | None = None) -> list[CheckReport]:
    """Exact-sequence necessary conditions.

    (a) the Mayer-Vietoris rank Euler characteristic vanishes over a full
        period, for both signs;
    (b) the two short exact sequences through degree 1 and degree 0 pass
        the rank/order consistency test;
    (c) the all-finite vertical window in degrees 3 mod 8 telescopes.
    """
    q = _prepare(spec, q)
    r = real_embeddings(spec)
    reports: list[CheckReport] = []

    for eps in (1, -1):
        failure = None
        for n_lo in (1, 9):
            window = _mv_window(spec, q, eps, n_lo, n_lo + 7)
            if not exact_window_check(window):
                failure = {
                    "eps": eps,
                    "degrees": f"{n_lo}..{n_lo + 7}",
                    "groups": [format_group(g) for g in window.groups],
                }
                break
        reports.append(
            CheckReport(
                f"Mayer-Vietoris rank Euler characteristic (eps = {eps:+d})",
                failure is None,
                "full periods, degrees 1..8 and 9..16",
                failure,
            )
        )

    # degree-1 sequence: 0 -> r*K_2(C) -> K_1(R_F) -> r*K_1(R) + K_1(Fq) -> 0
    a_grp = n_copies(r, tb.ku(2))
    b_grp = tb.k_rf(1, spec)
    c_grp = direct_sum(C2(r), tb.k_fq(1, q))
    passed = ses_consistent(a_grp, b_grp, c_grp)
    reports.append(
        CheckReport(
            "K_1 short exact sequence rank/order consistency",
            passed,
            f"0 -> {a_grp} -> {b_grp} -> {c_grp} -> 0",
            None
            if passed
            else {"a": format_group(a_grp), "b": format_group(b_grp), "c": format_group(c_grp)},
        )
    )

    # coWitt discriminant rows: 0 -> Z^r -> Z^r + Z/2 -> (Z/2)^(r+1) -> 0
    for label, (a2, b2, c2) in {
        "coWitt discriminant sequence (2-integers row)": (
            Z(r),
            tb.cowitt(spec),
            tb.square_classes(spec),
        ),
        "coWitt discriminant sequence (archimedean/residue row)": (
            Z(r),
            direct_sum(Z(r), C2(1)),
            direct_sum(C2(r), C2(1)),
        ),
    }.items():
        passed = ses_consistent(a2, b2, c2)
        reports.append(
            CheckReport(
                label,
                passed,
                f"0 -> {a2} -> {b2} -> {c2} -> 0",
                None
                if passed
                else {"a": format_group(a2), "b": format_group(b2), "c": format_group(c2)},
            )
        )

    # vertical window through degree 3 mod 8 (all groups finite):
    # 0 -> KQbar-(8k+5) -> KQFq-(8k+5) -> KO(8k+10) -> KQbar-(8k+4)
    #   -> KQFq-(8k+4) -> KO(8k+9) -> KQbar-(8k+3) -> KQFq-(8k+3) -> 0
    # the right boundary map lands in a free group, hence is zero on torsion.
    for k in (0, 1):
        n3 = 8 * k + 3
        groups = (
            ZERO,
            tb.kq_bar(n3 + 2, -1, q),
            tb.kq_fq(n3 + 2, -1, q),
            tb.ko(n3 + 7),
            tb.kq_bar(n3 + 1, -1, q),
            tb.kq_fq(n3 + 1, -1, q),
            tb.ko(n3 + 6),
            tb.kq_bar(n3, -1, q),
            tb.kq_fq(n3, -1, q),
            ZERO,
        )
        window = ExactWindow(groups, bounded=True)
        passed = exact_window_check(window)
        reports.append(
            CheckReport(
                f"vertical sequence telescoping through degree {n3}",
                passed,
                "alternating product of orders equals 1",
                None if passed else {"n": n3, "groups": [format_group(g) for g in groups]},
            )
        )
    return reports


def check_t_w(a_range: Iterable[int], n_max: int = 400) -> CheckReport:
    """The identity t(n, q) = w((n+1)/2, a) for admissible q and
    n = 3 (mod 4)."""
    from .fields import find_q_for_a

    checked = 0
    for a in a_range:
        q = find_q_for_a(a)
        for n in range(3, n_max + 1, 4):
            checked += 1
            lhs = tb.t(n, q)
            rhs = tb.w((n + 1) // 2, a)
            if lhs != rhs:
                return CheckReport(
                    "valuation identity t(n, q) = w((n+1)/2, a)",
                    False,
                    f"fails at a={a}, q={q}, n={n}",
                    {"a": a, "q": q, "n": n, "t": lhs, "w": rhs},
                )
    return CheckReport(
        "valuation identity t(n, q) = w((n+1)/2, a)",
        True,
        f"all n = 3 (mod 4), n <= {n_max} ({checked} cases)",
    )


def _check_extras(spec: FieldSpec, q: int, n_max: int) -> list[CheckReport]:
    r = real_embeddings(spec)
    reports: list[CheckReport] = []

    reports.append(
        _equality_report(
            "V+ is 2r copies of KO",
            (
                ({"n": n, "r": r}, tb.v_rf(n, 1, spec), n_copies(2 * r, tb.ko(n)))
                for n in range(0, n_max + 1)
            ),
            f"n <= {n_max}",
        )
    )
    reports.append(
        _equality_report(
            "U-theory is sign-swapped V-theory shifted by one",
            (
                ({"n": n, "eps": eps}, tb.u_rf(n, eps, spec), tb.v_rf(n - 1, -eps, spec))
                for n in range(1, n_max + 1)
                for eps in (1, -1)
            ),
            f"1 <= n <= {n_max}",
        )
    )
    reports.append(
        _equality_report(
            "V-theory 8-periodicity",
            (
                ({"n": n, "eps": eps}, tb.v_rf(n, eps, spec), tb.v_rf(n + 8, eps, spec))
                for n in range(0, n_max + 1)
                for eps in (1, -1)
            ),
            f"n <= {n_max}",
        )
    )
    reports.append(
        _equality_report(
            "orthogonal finite-field groups complement KO in the building block",
            (
                ({"n": n}, tb.kq_bar(n, 1, q), direct_sum(tb.kq_fq(n, 1, q), tb.ko(n)))
                for n in range(0, n_max + 1)
            ),
            f"n <= {n_max}",
        )
    )

    def low_dim_cases():
        for eps in (1, -1):
            ld = tb.low_dim(spec, eps)
            for n in (0, 1):
                yield ({"n": n, "eps": eps}, ld[n], tb.kq_rf(n, eps, spec, q))

    reports.append(
        _equality_report(
            "low-degree computations agree with the table",
            low_dim_cases(),
            "degrees 0 and 1, both signs",
        )
    )
    return reports


def run_all(spec: FieldSpec, q: int | None = None, n_max: int = 64) -> list[CheckReport]:
    """Full consistency suite for one 2-regular field."""
    q = _prepare(spec, q)
    reports = check_splittings(spec, q, n_max)
    reports += check_les(spec, q)
    reports += [check_t_w([a_param(spec)], min(4 * n_max, 400))]
    reports += _check_extras(spec, q, n_max)
    return sorted(reports, key=lambda rep: rep.name)


def all_passed(reports: Iterable[CheckReport]) -> bool:
    return all(rep.passed for rep in reports)


def reports_to_json(reports: Iterable[CheckReport]) -> list[dict]:
    return [rep.to_json() for rep in reports]
