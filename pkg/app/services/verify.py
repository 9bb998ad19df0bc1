"""
Exact cross-checks for step traces.

Record t of a trace holds the triple (a_t, b_t, k_t) and the pair (m_t, l_t)
that produced it from record t-1, dividing by |k_{t-1}|. Record 0 is produced
from the identity triple (1, 0, 1). Writing sg(x) for the sign of x, every
consistent trace satisfies

    a_t a_{t-1} - d b_t b_{t-1} =  sg(k_{t-1}) m_t
    a_t b_{t-1} - b_t a_{t-1}   = -sg(k_{t-1}) l_t
    q_t = (l_{t-1} m_t + m_{t-1} l_t) / |k_{t-1}|                    (an integer)
    l_t a_{t+1} = q_{t+1} a_t - sg(k_{t-1}) sg(k_t) l_{t+1} a_{t-1}   (same for b)
    l_t d b_t = m_t a_t - sg(k_{t-1}) k_t a_{t-1}
    l_t a_t   = m_t b_t - sg(k_{t-1}) k_t b_{t-1}
    phi_t = (m_{t-1} + l_{t-1} sqrt(d)) l_t / |k_{t-1}|
    phi_{t+1} (phi_t - q_t) = -sg(k_{t-1}) sg(k_t) l_{t-1} l_{t+1}

With l = 1 these are the continued fraction identities. Checks of proven
identities are HARD; bounds and convergence properties that are only
observed empirically are CLAIM checks, which report without failing.
"""

import logging
from math import gcd

from app.core.arith import lies_below_sqrt, sign
from app.core.config import config
from app.core.quadnum import QuadNum
from app.models.pell import Algorithm, StepRecord, StepTrace
from app.models.report import CheckResult, CheckStatus, Severity, VerifyReport

from .cf import sqrt_convergents
from .genpell import power_product

logger = logging.getLogger(__name__)

_IDENTITY = StepRecord(i=-1, k=1, m=1, l=0, a=1, b=0)

_CL_FAMILY = (
    Algorithm.SECOND_L,
    Algorithm.SECOND_CF_L,
    Algorithm.SECOND_CF_S,
)


def _with_previous(steps: list[StepRecord]) -> list[tuple[StepRecord, StepRecord]]:
    return list(zip([_IDENTITY, *steps[:-1]], steps))


def _q_value(prev: StepRecord, cur: StepRecord) -> tuple[int, int]:
    return divmod(prev.l * cur.m + prev.m * cur.l, abs(prev.k))


def check_triples(trace: StepTrace, d: int) -> list[CheckResult]:
    """Norm, primitivity and the two product identities of consecutive triples."""
    names = ("norm", "primitive", "product-identity", "cross-identity")
    if not trace.tracks_big:
        return [
            CheckResult.not_applicable(name, Severity.HARD, "big numbers not tracked")
            for name in names
        ]
    failures: dict[str, list[int]] = {name: [] for name in names}
    for prev, cur in _with_previous(trace.steps):
        sk = sign(prev.k)
        if cur.a * cur.a - d * cur.b * cur.b != cur.k:
            failures["norm"].append(cur.i)
        if gcd(cur.a, cur.b) != 1:
            failures["primitive"].append(cur.i)
        if cur.a * prev.a - d * cur.b * prev.b != sk * cur.m:
            failures["product-identity"].append(cur.i)
        if cur.a * prev.b - cur.b * prev.a != -sk * cur.l:
            failures["cross-identity"].append(cur.i)
    n = trace.step_count
    return [CheckResult.from_failures(name, Severity.HARD, n, failures[name]) for name in names]


def check_recurrences(trace: StepTrace, d: int) -> list[CheckResult]:
    """q_t integrality, the three-term recurrences and the norm recurrences."""
    steps = trace.steps
    q_failed = [cur.i for prev, cur in zip(steps, steps[1:]) if _q_value(prev, cur)[1]]
    results = [
        CheckResult.from_failures("q-integrality", Severity.HARD, len(steps) - 1, q_failed)
    ]
    names = ("recurrence-a", "recurrence-b", "norm-recurrence")
    if not trace.tracks_big:
        return results + [
            CheckResult.not_applicable(name, Severity.HARD, "big numbers not tracked")
            for name in names
        ]

    three_term_a: list[int] = []
    three_term_b: list[int] = []
    for before, cur, after in zip(steps, steps[1:], steps[2:]):
        q, rem = _q_value(cur, after)
        if rem:
            continue
        s = -sign(before.k) * sign(cur.k)
        if cur.l * after.a != q * cur.a + s * after.l * before.a:
            three_term_a.append(cur.i)
        if cur.l * after.b != q * cur.b + s * after.l * before.b:
            three_term_b.append(cur.i)

    norm_failed: list[int] = []
    for prev, cur in zip(steps, steps[1:]):
        sk = sign(prev.k)
        if cur.l * d * cur.b != cur.m * cur.a - sk * cur.k * prev.a:
            norm_failed.append(cur.i)
        elif cur.l * cur.a != cur.m * cur.b - sk * cur.k * prev.b:
            norm_failed.append(cur.i)

    window = max(len(steps) - 2, 0)
    return results + [
        CheckResult.from_failures("recurrence-a", Severity.HARD, window, three_term_a),
        CheckResult.from_failures("recurrence-b", Severity.HARD, window, three_term_b),
        CheckResult.from_failures(
            "norm-recurrence", Severity.HARD, len(steps) - 1, norm_failed
        ),
    ]


def phi(prev: StepRecord, cur: StepRecord, d: int) -> QuadNum:
    """Generalized complete quotient (m_{t-1} + l_{t-1} sqrt(d)) l_t / |k_{t-1}|."""
    return QuadNum.of(prev.m, prev.l, d) * cur.l / abs(prev.k)


def check_phi_recurrence(trace: StepTrace, d: int) -> list[CheckResult]:
    steps = trace.steps
    failed: list[int] = []
    for before, cur, after in zip(steps, steps[1:], steps[2:]):
        q, rem = _q_value(before, cur)
        if rem:
            failed.append(cur.i)
            continue
        lhs = phi(cur, after, d) * (phi(before, cur, d) - q)
        rhs = -sign(before.k) * sign(cur.k) * before.l * after.l
        if not lhs.is_rational or lhs.u != rhs:
            failed.append(cur.i)
    return [
        CheckResult.from_failures(
            "phi-recurrence", Severity.HARD, max(len(steps) - 2, 0), failed
        )
    ]


def check_power_product(trace: StepTrace, d: int) -> list[CheckResult]:
    """
    Fold the step factors and compare with the triples.

    Without big numbers, every running product must still be an algebraic
    integer whose norm is the recorded k.
    """
    failed: list[int] = []
    for record, value in zip(trace.steps, power_product(trace.steps, d)):
        if record.has_triple:
            if value != QuadNum.of(record.a, record.b, d):
                failed.append(record.i)
        elif not value.is_integral or value.norm() != record.k:
            failed.append(record.i)
    detail = None if trace.tracks_big else "checked integrality and norm only"
    return [
        CheckResult.from_failures(
            "power-product", Severity.HARD, trace.step_count, failed, detail=detail
        )
    ]


def _convergent_severity(algorithm: Algorithm) -> Severity:
    match algorithm:
        case Algorithm.CF | Algorithm.CHAKRAVALA:
            return Severity.HARD
        case Algorithm.LLL:
            return Severity.INFO
    return Severity.CLAIM


def convergent_flags(trace: StepTrace, d: int, bound: int) -> list[bool | None]:
    """Per record: is (a, b) a convergent of sqrt(d)? None when untracked or b > bound."""
    wanted = [r.b for r in trace.steps if r.has_triple and r.b <= bound]
    known: set[tuple[int, int]] = set()
    if wanted:
        limit = max(wanted)
        for A, B in sqrt_convergents(d):
            if B > limit:
                break
            known.add((A, B))
    return [
        (r.a, r.b) in known if r.has_triple and r.b <= bound else None
        for r in trace.steps
    ]


def check_convergents(
    trace: StepTrace, d: int, bound: int | None = None
) -> tuple[list[CheckResult], list[bool | None]]:
    """
    Convergent membership of (a_t, b_t) plus the observed bounds on k and M.

    Records with b above `bound` (default `config.convergent_check_bound`) are
    skipped: their flag is None and they count as skipped, not failed.
    """
    bound = bound if bound is not None else config.convergent_check_bound
    flags = convergent_flags(trace, d, bound)
    checked = [i for i, flag in enumerate(flags) if flag is not None]
    non_convergent = [trace.steps[i].i for i in checked if not flags[i]]
    results = [
        CheckResult.from_failures(
            "convergents",
            _convergent_severity(trace.algorithm),
            len(checked),
            non_convergent,
            skipped=len(flags) - len(checked),
        )
    ]

    later = trace.steps[1:]
    algorithm = trace.algorithm
    if algorithm in (Algorithm.CHAKRAVALA, Algorithm.FIRST_L):
        severity = Severity.HARD if algorithm is Algorithm.CHAKRAVALA else Severity.CLAIM
        failed = [r.i for r in later if not lies_below_sqrt(abs(r.k), d)]
        results.append(CheckResult.from_failures("k-below-sqrt-d", severity, len(later), failed))
    elif algorithm is Algorithm.CF:
        failed = [r.i for r in later if not lies_below_sqrt(abs(r.k), d, multiple=2)]
        results.append(
            CheckResult.from_failures("k-below-2sqrt-d", Severity.HARD, len(later), failed)
        )
    elif algorithm in _CL_FAMILY or algorithm is Algorithm.LLL:
        severity = Severity.CLAIM if algorithm in _CL_FAMILY else Severity.INFO
        failed = [r.i for r in later if not lies_below_sqrt(abs(r.k), d, multiple=2)]
        results.append(CheckResult.from_failures("k-below-2sqrt-d", severity, len(later), failed))

    residues = [r for r in trace.steps if r.M is not None]
    if algorithm is not Algorithm.CF:
        failed = [r.i for r in residues if not lies_below_sqrt(r.M, d)]
        severity = Severity.INFO if algorithm is Algorithm.LLL else Severity.CLAIM
        results.append(CheckResult.from_failures("M-below-sqrt-d", severity, len(residues), failed))
    return results, flags


def verify_trace(trace: StepTrace, bound: int | None = None) -> VerifyReport:
    """Run every check on a trace; failures are logged and collected, never raised."""
    d = trace.d
    convergent_results, flags = check_convergents(trace, d, bound)
    checks = [
        *check_triples(trace, d),
        *check_recurrences(trace, d),
        *check_phi_recurrence(trace, d),
        *check_power_product(trace, d),
        *convergent_results,
    ]
    for check in checks:
        if check.status is not CheckStatus.FAILED:
            continue
        if check.severity is Severity.HARD:
            logger.error(f"d={d} {trace.algorithm}: {check.name} fails at steps {check.failed_steps}")
        else:
            logger.warning(
                f"d={d} {trace.algorithm}: observed property {check.name} fails at steps "
                f"{check.failed_steps}"
            )
    return VerifyReport(
        d=d,
        algorithm=trace.algorithm,
        checks=checks,
        convergent_flags=flags,
        minimality=trace.minimality,
    )
