"""
Step rules of the generalized algorithms.

Every rule picks a pair (l, r) and hands it to `advance`, which forms
m = M*l + r*|k|, the next norm k' = (m^2 - d*l^2) / k and, when big numbers
are tracked, the next triple. With alpha = (sqrt(d) - M) / |k| the quantity
r/l is an approximation of alpha; the rules differ in how it is chosen.
"""

import logging
from dataclasses import replace

from app.core.arith import SqrtCtx, cmp_abs_quad, floor_quad, round_quad
from app.core.config import config
from app.core.exceptions import (
    InvariantViolationError,
    PrecisionExhaustedError,
    ZeroDenominatorError,
)
from app.models.strategy import SecondCfL, SecondCfSteps

from ..cf import cf_quotients_between, convergents
from ..lattice import approx_best
from .m_index import compute_M_bigfree
from .state import GenState, compute_M_reference, scale_composition

logger = logging.getLogger(__name__)


def advance(state: GenState, l: int, r: int, sqrt: SqrtCtx | None = None) -> GenState:  # noqa: E741
    d = state.d
    m = state.M * l + r * state.K
    if m <= 0:
        raise InvariantViolationError(
            f"step {state.i + 1} for d={d} chose (l={l}, r={r}) with m={m} <= 0"
        )
    k_next, rem = divmod(m * m - d * l * l, state.k)
    if rem:
        raise InvariantViolationError(
            f"m^2 - d*l^2 is not divisible by k={state.k} at step {state.i + 1} for d={d}"
        )
    triple = None
    if state.triple is not None:
        triple = scale_composition(state.triple, m, l, k_next, d)

    draft = GenState(
        i=state.i + 1,
        k=k_next,
        M=0,
        l=l,
        m=m,
        r_prev=r,
        k_prev=state.k,
        M_prev=state.M,
        triple=triple,
        sqrt=sqrt or state.sqrt,
    )
    M = compute_M_bigfree(draft)
    if triple is not None and config.cross_check_m:
        expected = compute_M_reference(triple.a, triple.b, triple.k)
        if M != expected:
            logger.error(
                f"d={d} step {draft.i}: residue {M} from small numbers, {expected} from the triple"
            )
            raise InvariantViolationError(
                f"residue mismatch at step {draft.i} for d={d}: {M} != {expected}"
            )
    return replace(draft, M=M)


def step_first_L(state: GenState, d: int, L: int) -> GenState:
    """
    Minimize |m^2 - d*l^2| over 1 <= l <= L, r on either side of l*alpha.

    Ties keep the smaller l, then the smaller r.
    """
    M, K = state.M, state.K
    best: tuple[int, int, int] | None = None
    for l in range(1, L + 1):  # noqa: E741
        below = floor_quad(-M * l, l, K, d)
        for r in (below, below + 1):
            m = M * l + r * K
            if m <= 0:
                continue
            value = abs(m * m - d * l * l)
            if best is None or value < best[0]:
                best = (value, l, r)
    if best is None:
        raise InvariantViolationError(f"no admissible pair at step {state.i + 1} for d={d}")
    _, l, r = best
    return advance(state, l, r)


def step_second_L(state: GenState, d: int, L: int) -> GenState:
    """
    Pick 1 <= l <= L for which l*alpha is closest to an integer r.

    Distances |l*alpha - r| * |k| = |l*sqrt(d) - M*l - r*|k|| are compared
    exactly; the smallest l wins a tie.
    """
    M, K = state.M, state.K
    best: tuple[int, int, int] | None = None  # (offset, l, r)
    for l in range(1, L + 1):  # noqa: E741
        r = round_quad(-M * l, l, K, d)
        if M * l + r * K <= 0:
            continue
        offset = -M * l - r * K
        if best is None or cmp_abs_quad(offset, l, best[0], best[1], d) < 0:
            best = (offset, l, r)
    if best is None:
        raise InvariantViolationError(f"no admissible pair at step {state.i + 1} for d={d}")
    _, l, r = best
    return advance(state, l, r)


def _pick_convergent(
    quotients: list[int], mode: SecondCfL | SecondCfSteps, M: int, K: int
) -> tuple[int, int] | None:
    """(r, l) from the known convergents of alpha, or None when more are needed."""
    match mode:
        case SecondCfL(L=L):
            best = None
            for p, q in convergents(quotients):
                if q > L:
                    return best
                if M * q + p * K > 0:
                    best = (p, q)
            return None
        case SecondCfSteps(s=s):
            for index, (p, q) in enumerate(convergents(quotients), start=1):
                if index >= s and M * q + p * K > 0:
                    return p, q
            return None
    raise TypeError(f"unknown continued fraction mode {mode!r}")


def step_second_cf(
    state: GenState, d: int, mode: SecondCfL | SecondCfSteps
) -> GenState:
    """
    Take l, r from the continued fraction of alpha.

    With SecondCfL the convergent with the largest denominator <= L is used,
    with SecondCfSteps the s-th convergent. Alpha is expanded from a rational
    bracket of sqrt(d), and the bracket is tightened until it determines the
    required convergents.

    Raises:
        PrecisionExhaustedError: If the bracket is still too wide after the
            configured number of refinements.
    """
    M, K = state.M, state.K
    ctx = state.sqrt
    if isinstance(mode, SecondCfL):
        ctx = ctx.ensure(2 * len(str(mode.L)) + len(str(K)) + config.sqrt_guard_digits)
    for _ in range(config.precision_retries + 1):
        lo, hi = ctx.alpha_bounds(M, K)
        choice = _pick_convergent(cf_quotients_between(lo, hi), mode, M, K)
        if choice is not None:
            r, l = choice
            return advance(state, l, r, sqrt=ctx)
        logger.warning(
            f"d={d} step {state.i + 1}: {ctx.p} digits of sqrt(d) are not enough, refining"
        )
        ctx = ctx.refined()
    raise PrecisionExhaustedError(
        f"alpha still undetermined with {ctx.p} digits at step {state.i + 1} for d={d}"
    )


def step_second_lll(state: GenState, d: int, exponent: int) -> GenState:
    """
    Take (r, l) from the reduced rank-2 lattice for eps = sqrt(2) / 10^exponent.

    Guarantees |r - l*alpha| <= eps (up to the rounding of alpha) and
    1 <= l <= 10^exponent.
    """
    M, K = state.M, state.K
    ctx = state.sqrt.ensure(2 * exponent + config.sqrt_guard_digits + len(str(K)))
    last_error: ZeroDenominatorError | None = None
    for _ in range(config.precision_retries + 1):
        alpha, _hi = ctx.alpha_bounds(M, K)
        try:
            r, l = approx_best(alpha, exponent)
        except ZeroDenominatorError as e:
            last_error = e
            logger.warning(f"d={d} step {state.i + 1}: {e}; refining sqrt(d)")
            ctx = ctx.refined()
            continue
        return advance(state, l, r, sqrt=ctx)
    raise InvariantViolationError(
        f"degenerate lattice: reduction kept returning q = 0 at step {state.i + 1} for d={d}"
    ) from last_error
