from .m_index import compute_M_bigfree
from .schedule import estimate_regulator, regulator_schedule
from .solver import classify_minimality, power_product, solve
from .state import GenState, compose_triples, compute_M_reference, gen_init
from .steps import (
    advance,
    step_first_L,
    step_second_cf,
    step_second_L,
    step_second_lll,
)

__all__ = [
    "GenState",
    "advance",
    "classify_minimality",
    "compose_triples",
    "compute_M_bigfree",
    "compute_M_reference",
    "estimate_regulator",
    "gen_init",
    "power_product",
    "regulator_schedule",
    "solve",
    "step_first_L",
    "step_second_L",
    "step_second_cf",
    "step_second_lll",
]
