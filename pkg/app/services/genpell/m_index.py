"""
Residue M_i = -a_i/b_i mod |k_i| computed from small quantities only.

Write the previous triple as (a, b, k) with K = |k| and residue M, and the
step pair as (m, l) with m = M*l + r*K. The next triple (a', b', k') then
satisfies

    a'*l - b'*m = -sign(k) * b * k'
    a'*r - b'*s =  sign(k) * t * k'      with s = (-M*m + d*l) / K,

for some integer t, so -a'/b' is pinned down modulo |k'| / gcd(l, |k'|) by the
pair (m, l) and modulo |k'| / gcd(r, |k'|) by the pair (s, r). Since
gcd(r, l) = 1 the two moduli together cover |k'|. Modulo g = gcd(l, |k'|)
the residue also equals the previous M, which settles the common case
without s.
"""

import logging
from math import gcd

from app.core.arith import crt_combine, mod_inv
from app.core.exceptions import (
    InconsistentCongruenceError,
    InvariantViolationError,
    NotInvertibleError,
)

from .state import GenState

logger = logging.getLogger(__name__)


def _ratio_residue(num: int, den: int, modulus: int) -> int:
    """-num/den mod modulus for gcd(den, modulus) = 1."""
    if modulus == 1:
        return 0
    return -num * mod_inv(den, modulus) % modulus


def compute_M_bigfree(state: GenState) -> int:
    """
    Residue of the triple held by `state` from (m, l, r_prev, k_prev, M_prev, k).

    `state.M` is not read.

    Raises:
        InvariantViolationError: If none of the congruence routes determines
            M modulo |k|.
    """
    K_next = abs(state.k)
    if K_next == 1:
        return 0
    m, l = state.m, state.l  # noqa: E741
    try:
        g = gcd(l, K_next)
        if g == 1:
            return _ratio_residue(m, l, K_next)

        if m % g:
            raise InvariantViolationError(
                f"gcd(l, |k|) = {g} does not divide m = {m} at step {state.i}"
            )
        K_reduced = K_next // g
        from_ml = _ratio_residue(m // g, l // g, K_reduced)
        if gcd(g, K_reduced) == 1:
            M, _ = crt_combine(from_ml, K_reduced, state.M_prev, g)
            return M

        K_prev = abs(state.k_prev)
        s, rem = divmod(-state.M_prev * m + state.d * l, K_prev)
        if rem:
            raise InvariantViolationError(
                f"s = (-M*m + d*l)/|k| is not integral at step {state.i}"
            )
        r = state.r_prev
        h = gcd(r, K_next)
        if h == 1:
            return _ratio_residue(s, r, K_next)
        from_sr = _ratio_residue(s // h, r // h, K_next // h)
        M, modulus = crt_combine(from_ml, K_reduced, from_sr, K_next // h)
        if modulus != K_next:
            raise InvariantViolationError(
                f"residues modulo {K_reduced} and {K_next // h} leave M undetermined "
                f"modulo {K_next} at step {state.i}"
            )
        return M
    except (NotInvertibleError, InconsistentCongruenceError) as e:
        logger.error(f"Cannot resolve M at step {state.i} for d={state.d}: {e}")
        raise InvariantViolationError(
            f"cannot resolve M at step {state.i} for d={state.d}"
        ) from e
