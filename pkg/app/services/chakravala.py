import logging
from dataclasses import dataclass

from app.core.arith import isqrt, require_nonsquare
from app.core.exceptions import InvariantViolationError, StepLimitError
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
class ChakState:
    """
    Current triple (A, B, Q) of the cyclic method, A^2 - d*B^2 = Q, and the
    multiplier P that produced it.
    """

    A: int
    B: int
    P: int
    Q: int

    @property
    def residue(self) -> int:
        """-P mod |Q|, equal to -A/B mod |Q|."""
        return -self.P % abs(self.Q)


def initial_root(d: int) -> int:
    """The integer next to sqrt(d) whose square is closer to d (the floor on ties)."""
    root = require_nonsquare(d)
    if (root + 1) ** 2 - d < d - root * root:
        return root + 1
    return root


def chak_init(d: int) -> ChakState:
    a = initial_root(d)
    return ChakState(A=a, B=1, P=a, Q=a * a - d)


def next_multiplier(P: int, Q: int, d: int) -> int:
    """
    The positive P' = -P (mod |Q|) for which |P'^2 - d| is smallest.

    Of the two members of the residue class around sqrt(d) the smaller one
    wins ties.
    """
    K = abs(Q)
    root = isqrt(d)
    q = (P + root) // K
    lower = -P + K * q
    upper = lower + K
    if lower <= 0:
        return upper
    return lower if d - lower * lower <= upper * upper - d else upper


def chak_step(state: ChakState, d: int) -> ChakState:
    K = abs(state.Q)
    P = next_multiplier(state.P, state.Q, d)
    Q, rem_q = divmod(P * P - d, state.Q)
    A, rem_a = divmod(state.A * P + d * state.B, K)
    B, rem_b = divmod(state.A + state.B * P, K)
    if rem_q or rem_a or rem_b:
        raise InvariantViolationError(
            f"inexact chakravala division for d={d} at P={P}, Q={state.Q}"
        )
    return ChakState(A=A, B=B, P=P, Q=Q)


def solve_pell_chakravala(d: int, max_steps: int) -> tuple[PellSolution, StepTrace]:
    """
    Run the cyclic method until Q = 1.

    Q = -1 is not a stopping point; the iteration continues through it.

    Raises:
        PerfectSquareError: If d is a square.
        StepLimitError: If Q = 1 is not reached within max_steps triples.
    """
    state = chak_init(d)
    logger.info(f"Solving x^2 - {d}*y^2 = 1 with the chakravala method")
    records = [
        StepRecord(
            i=0, k=state.Q, m=state.P, l=1, M=state.residue, a=state.A, b=state.B
        )
    ]
    while state.Q != 1:
        if len(records) >= max_steps:
            logger.warning(f"Chakravala for d={d} hit the cap of {max_steps} steps")
            raise StepLimitError(d, max_steps)
        previous = state
        state = chak_step(state, d)
        records.append(
            StepRecord(
                i=len(records),
                k=state.Q,
                m=state.P,
                l=1,
                M=state.residue,
                r=(state.P - previous.residue) // abs(previous.Q),
                a=state.A,
                b=state.B,
            )
        )
        logger.debug(f"d={d} step {len(records) - 1}: P={state.P}, Q={state.Q}")

    solution = PellSolution.from_xy(state.A, state.B, len(records))
    logger.info(
        f"Chakravala solved d={d} in {solution.steps} steps ({solution.digits10} digits)"
    )
    trace = StepTrace(
        d=d,
        algorithm=Algorithm.CHAKRAVALA,
        outcome=Outcome.SOLVED,
        solution=solution,
        minimality=Minimality.FUNDAMENTAL,
        power=1,
        steps=records,
    )
    return solution, trace
