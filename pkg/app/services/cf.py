"""
Simple continued fractions.

The expansion of sqrt(d) follows the classical recurrences

    P_0 = 0, Q_0 = 1, q_n = floor((P_n + floor(sqrt(d))) / Q_n),
    P_{n+1} = q_n * Q_n - P_n, Q_{n+1} = (d - P_{n+1}^2) / Q_n,

with convergents A_n / B_n built by the three-term recurrence. Rationals are
expanded with the Euclidean algorithm, and irrationals known only through a
rational bracket are expanded as far as the bracket allows.
"""

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction

from app.core.arith import isqrt, require_nonsquare
from app.core.exceptions import InvalidInputError, StepLimitError
from app.models.pell import (
    Algorithm,
    Minimality,
    Outcome,
    PellSolution,
    StepRecord,
    StepTrace,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CfSqrtState:
    """Step n of the expansion of sqrt(d): P_n, Q_n, q_n and the convergents n, n-1."""

    n: int
    P: int
    Q: int
    q: int
    A_cur: int
    B_cur: int
    A_prev: int
    B_prev: int

    def next_P(self) -> int:
        return self.q * self.Q - self.P

    def norm(self, d: int) -> int:
        """A_n^2 - d*B_n^2, which equals (-1)^(n+1) * Q_{n+1}."""
        P_next = self.next_P()
        Q_next = (d - P_next * P_next) // self.Q
        return Q_next if self.n % 2 == 1 else -Q_next

    def record(self, d: int) -> StepRecord:
        # the step factor is (P_{n+1} + sqrt(d)) / Q_n
        return StepRecord(
            i=self.n,
            k=self.norm(d),
            m=self.next_P(),
            l=1,
            a=self.A_cur,
            b=self.B_cur,
        )


def cf_init(d: int) -> CfSqrtState:
    root = require_nonsquare(d)
    return CfSqrtState(
        n=0, P=0, Q=1, q=root, A_cur=root, B_cur=1, A_prev=1, B_prev=0
    )


def cf_sqrt_step(state: CfSqrtState, d: int) -> CfSqrtState:
    root = isqrt(d)
    P = state.q * state.Q - state.P
    Q = (d - P * P) // state.Q
    q = (P + root) // Q
    return CfSqrtState(
        n=state.n + 1,
        P=P,
        Q=Q,
        q=q,
        A_cur=q * state.A_cur + state.A_prev,
        B_cur=q * state.B_cur + state.B_prev,
        A_prev=state.A_cur,
        B_prev=state.B_cur,
    )


def solve_pell_cf(d: int, max_steps: int) -> tuple[PellSolution, StepTrace]:
    """
    Expand sqrt(d) until a convergent satisfies A^2 - d*B^2 = 1.

    Returns the fundamental solution together with the trace of every
    convergent visited (the initial one included).

    Raises:
        PerfectSquareError: If d is a square.
        StepLimitError: If no solution appears within max_steps convergents.
    """
    state = cf_init(d)
    logger.info(f"Solving x^2 - {d}*y^2 = 1 with continued fractions")
    records: list[StepRecord] = []
    while True:
        record = state.record(d)
        records.append(record)
        if record.k == 1:
            break
        if len(records) >= max_steps:
            logger.warning(f"Continued fraction for d={d} hit the cap of {max_steps} steps")
            raise StepLimitError(d, max_steps)
        state = cf_sqrt_step(state, d)

    solution = PellSolution.from_xy(state.A_cur, state.B_cur, len(records))
    logger.info(
        f"Continued fraction solved d={d} in {solution.steps} steps "
        f"({solution.digits10} digits)"
    )
    trace = StepTrace(
        d=d,
        algorithm=Algorithm.CF,
        outcome=Outcome.SOLVED,
        solution=solution,
        minimality=Minimality.FUNDAMENTAL,
        power=1,
        steps=records,
    )
    return solution, trace


def sqrt_convergents(d: int) -> Iterator[tuple[int, int]]:
    """Endless stream of the convergents (A_n, B_n) of sqrt(d)."""
    state = cf_init(d)
    while True:
        yield state.A_cur, state.B_cur
        state = cf_sqrt_step(state, d)


def is_convergent_of_sqrt(d: int, a: int, b: int) -> bool:
    if b < 1:
        return False
    for A, B in sqrt_convergents(d):
        if B > b:
            return False
        if A == a and B == b:
            return True
    return False  # pragma: no cover


def rational_cf(x: Fraction | int) -> list[int]:
    """Partial quotients of a rational number (Euclidean algorithm)."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    quotients: list[int] = []
    while den:
        q, rem = divmod(num, den)
        quotients.append(q)
        num, den = den, rem
    return quotients


def convergents(quotients: Iterable[int]) -> Iterator[tuple[int, int]]:
    """Convergents (p_n, q_n) of [a_0; a_1, a_2, ...]."""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for a in quotients:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q


def best_approx_upto(alpha: Fraction | int, L: int) -> tuple[int, int]:
    """
    The convergent p/q of alpha with the largest denominator q <= L.

    That pair minimizes |q*alpha - p| over 1 <= q <= L.
    """
    if L < 1:
        raise InvalidInputError(f"L must be >= 1, got {L}")
    best = None
    for p, q in convergents(rational_cf(alpha)):
        if q > L:
            break
        best = (p, q)
    assert best is not None  # the first convergent has denominator 1
    return best


def cf_quotients_between(lo: Fraction, hi: Fraction) -> list[int]:
    """
    Partial quotients shared by every number of the open interval (lo, hi).

    An irrational known to lie in the interval has a continued fraction that
    starts with the returned list.
    """
    if not lo < hi:
        raise InvalidInputError(f"empty interval ({lo}, {hi})")
    quotients: list[int] = []
    while True:
        a = lo.numerator // lo.denominator
        if hi.numerator // hi.denominator != a or lo == a:
            return quotients
        quotients.append(a)
        # x -> 1 / (x - a) reverses the order of the endpoints
        lo, hi = 1 / (hi - a), 1 / (lo - a)
