from dataclasses import dataclass

from app.core.arith import SqrtCtx, mod_inv
from app.core.config import config
from app.core.exceptions import InvariantViolationError
from app.models.pell import PellTriple, StepRecord

from ..chakravala import initial_root


@dataclass(frozen=True, slots=True)
class GenState:
    """
    Iteration state of the generalized algorithms.

    The current triple has norm `k` and residue `M` = -a/b mod |k|. It was
    produced from the previous triple (norm `k_prev`, residue `M_prev`) by the
    pair (m, l), where m = M_prev*l + r_prev*|k_prev|. The initial triple is
    treated as produced from (1, 0, 1) by (a_1, 1).
    """

    i: int
    k: int
    M: int
    l: int  # noqa: E741
    m: int
    r_prev: int
    k_prev: int
    M_prev: int
    triple: PellTriple | None
    sqrt: SqrtCtx

    @property
    def d(self) -> int:
        return self.sqrt.d

    @property
    def K(self) -> int:
        return abs(self.k)

    def record(self, segment: int | None = None) -> StepRecord:
        return StepRecord(
            i=self.i,
            k=self.k,
            m=self.m,
            l=self.l,
            M=self.M,
            r=self.r_prev if self.i > 0 else None,
            a=self.triple.a if self.triple is not None else None,
            b=self.triple.b if self.triple is not None else None,
            segment=segment,
        )


def compose_triples(t1: PellTriple, t2: PellTriple, d: int) -> PellTriple:
    """Brahmagupta composition (a, b, k) o (m, l, s) = (am + dbl, al + bm, ks)."""
    return PellTriple(
        a=t1.a * t2.a + d * t1.b * t2.b,
        b=t1.a * t2.b + t1.b * t2.a,
        k=t1.k * t2.k,
    )


def compute_M_reference(a: int, b: int, k: int) -> int:
    """M in [0, |k|) with M*b = -a (mod |k|)."""
    K = abs(k)
    if K == 1:
        return 0
    return -a * mod_inv(b, K) % K


def gen_init(d: int, track_big: bool = True) -> GenState:
    """Start from the same triple as the chakravala method."""
    a = initial_root(d)
    k = a * a - d
    return GenState(
        i=0,
        k=k,
        M=compute_M_reference(a, 1, k),
        l=1,
        m=a,
        r_prev=a,
        k_prev=1,
        M_prev=0,
        triple=PellTriple(a=a, b=1, k=k) if track_big else None,
        sqrt=SqrtCtx.create(d, config.sqrt_guard_digits + len(str(d))),
    )


def scale_composition(triple: PellTriple, m: int, l: int, k_next: int, d: int) -> PellTriple:  # noqa: E741
    """(a, b, k) o (m, l, m^2 - d*l^2) divided through by |k|."""
    K = abs(triple.k)
    composed = compose_triples(triple, PellTriple(a=m, b=l, k=k_next * triple.k), d)
    a, rem_a = divmod(composed.a, K)
    b, rem_b = divmod(composed.b, K)
    if rem_a or rem_b:
        raise InvariantViolationError(
            f"composition with (m={m}, l={l}) is not divisible by {K} for d={d}"
        )
    return PellTriple(a=a, b=b, k=k_next)
