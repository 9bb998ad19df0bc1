import logging
from collections.abc import Iterator, Sequence

from app.core.config import config
from app.core.exceptions import InvariantViolationError, StepLimitError
from app.core.quadnum import QuadNum
from app.models.pell import (
    Algorithm,
    Minimality,
    Outcome,
    PellSolution,
    StepRecord,
    StepTrace,
)
from app.models.strategy import (
    FirstL,
    SecondCfL,
    SecondCfSteps,
    SecondL,
    SecondLLL,
    Strategy,
    describe,
)

from ..cf import solve_pell_cf
from .state import GenState, gen_init
from .steps import step_first_L, step_second_cf, step_second_L, step_second_lll

logger = logging.getLogger(__name__)


def power_product(records: Sequence[StepRecord], d: int) -> Iterator[QuadNum]:
    """
    Running products (m_1 + l_1*sqrt(d)) * ... * (m_i + l_i*sqrt(d)) / (|k_0| ... |k_{i-1}|).

    The i-th value is a_i + b_i*sqrt(d) whenever the trace is consistent; the
    first factor comes from the identity triple, whose norm is 1.
    """
    value = QuadNum.of(1, 0, d)
    K_prev = 1
    for record in records:
        value = value * QuadNum.of(record.m, record.l, d) / K_prev
        K_prev = abs(record.k)
        yield value


def _apply(
    state: GenState, d: int, strategy: Strategy, iteration: int
) -> tuple[GenState, int | None] | None:
    """Next state and the schedule segment used, or None once a schedule is used up."""
    match strategy:
        case FirstL(L=L):
            return step_first_L(state, d, L), None
        case SecondL(L=L):
            return step_second_L(state, d, L), None
        case SecondCfL() | SecondCfSteps():
            return step_second_cf(state, d, strategy), None
        case SecondLLL(schedule=schedule):
            located = schedule.locate(iteration)
            if located is None:
                return None
            segment, exponent = located
            return step_second_lll(state, d, exponent), segment
    raise TypeError(f"unknown strategy {strategy!r}")


def _repeat_key(state: GenState, strategy: Strategy, iteration: int) -> tuple[int, ...] | None:
    """
    What the next step depends on: (k, M), plus the exponent for a lattice run.

    None inside a closed schedule segment, where the exponent will still change.
    """
    if isinstance(strategy, SecondLLL):
        located = strategy.schedule.locate(iteration)
        if located is None or strategy.schedule.segments[located[0]].steps is not None:
            return None
        return state.k, state.M, located[1]
    return state.k, state.M


def classify_minimality(
    d: int, x: int, y: int, bound: int | None = None
) -> tuple[Minimality, int | None]:
    """
    Compare a solution with the fundamental one from the continued fraction.

    Returns FUNDAMENTAL with power 1, POWER with the exponent n such that the
    solution is the n-th power of the fundamental one, or UNVERIFIED when d is
    above the configured bound or the expansion does not finish.
    """
    bound = bound if bound is not None else config.minimality_check_bound
    if d > bound:
        return Minimality.UNVERIFIED, None
    try:
        fundamental, _ = solve_pell_cf(d, config.cf_max_steps)
    except StepLimitError:
        logger.warning(f"Minimality of the solution for d={d} left unverified")
        return Minimality.UNVERIFIED, None

    x0, y0 = fundamental.x, fundamental.y
    X, Y, n = x0, y0, 1
    while X < x:
        X, Y = X * x0 + d * Y * y0, X * y0 + Y * x0
        n += 1
    if (X, Y) != (x, y):
        raise InvariantViolationError(
            f"({x}, {y}) solves x^2 - {d}*y^2 = 1 but is not a power of ({x0}, {y0})"
        )
    if n == 1:
        return Minimality.FUNDAMENTAL, 1
    logger.info(f"Solution for d={d} is the fundamental solution to the power {n}")
    return Minimality.POWER, n


def solve(
    d: int,
    strategy: Strategy,
    max_steps: int | None = None,
    track_big: bool = True,
    minimality_bound: int | None = None,
) -> StepTrace:
    """
    Iterate a generalized step rule from the chakravala starting triple until k = 1.

    Parameters:
        d (int): Non-square positive integer.
        strategy (Strategy): Step rule and its parameter.
        max_steps (int | None): Cap on the number of triples, defaults to
            `config.max_steps`. Reaching it ends the run as DIVERGED.
        track_big (bool): Carry the triples (a, b, k) along. Without it the
            solution is rebuilt from the power product once k = 1.
        minimality_bound (int | None): Largest d whose solution is compared
            with the continued fraction one, defaults to
            `config.minimality_check_bound`.

    Returns:
        StepTrace: Every step, the outcome and, when solved, the solution with
            its minimality status.

    Raises:
        PerfectSquareError: If d is a square.
    """
    cap = max_steps if max_steps is not None else config.max_steps
    state = gen_init(d, track_big)
    logger.info(f"Solving x^2 - {d}*y^2 = 1 with {describe(strategy)}")

    records = [state.record()]
    seen: set[tuple[int, ...]] = set()
    outcome = Outcome.SOLVED
    while state.k != 1:
        key = _repeat_key(state, strategy, len(records) - 1)
        if key is not None:
            if key in seen:
                logger.warning(
                    f"{describe(strategy)} for d={d} diverged: "
                    f"k={state.k}, M={state.M} repeats at step {state.i}"
                )
                outcome = Outcome.DIVERGED
                break
            seen.add(key)
        if len(records) >= cap:
            logger.warning(f"{describe(strategy)} for d={d} diverged: no k = 1 within {cap} steps")
            outcome = Outcome.DIVERGED
            break
        moved = _apply(state, d, strategy, len(records) - 1)
        if moved is None:
            logger.warning(f"{describe(strategy)} for d={d}: schedule ran out before k = 1")
            outcome = Outcome.DIVERGED
            break
        state, segment = moved
        records.append(state.record(segment))
        logger.debug(f"d={d} step {state.i}: l={state.l}, k={state.k}, M={state.M}")

    trace = StepTrace(
        d=d,
        algorithm=Algorithm(strategy.kind),
        params=strategy,
        outcome=outcome,
        steps=records,
    )
    if outcome is not Outcome.SOLVED:
        return trace

    if state.triple is not None:
        x, y = state.triple.a, state.triple.b
    else:
        for value in power_product(records, d):
            pass
        x, y = value.as_ints()
    if x * x - d * y * y != 1:
        raise InvariantViolationError(f"final pair ({x}, {y}) does not solve the equation for d={d}")

    minimality, power = classify_minimality(d, x, y, minimality_bound)
    solution = PellSolution.from_xy(x, y, len(records))
    logger.info(
        f"{describe(strategy)} solved d={d} in {solution.steps} steps "
        f"({solution.digits10} digits, {minimality})"
    )
    return trace.model_copy(
        update={"solution": solution, "minimality": minimality, "power": power}
    )
