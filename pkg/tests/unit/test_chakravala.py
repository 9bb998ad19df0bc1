import pytest

from app.core.exceptions import PerfectSquareError, StepLimitError
from app.models.pell import Algorithm, Minimality
from app.services.cf import is_convergent_of_sqrt, solve_pell_cf
from app.services.chakravala import (
    ChakState,
    chak_init,
    chak_step,
    initial_root,
    next_multiplier,
    solve_pell_chakravala,
)

D61_CHAKRAVALA_TRIPLES = [
    (8, 1, 3),
    (39, 5, -4),
    (164, 21, -5),
    (453, 58, 5),
    (1523, 195, 4),
    (5639, 722, -3),
    (29718, 3805, -1),
    (469849, 60158, -3),
    (2319527, 296985, 4),
    (9747957, 1248098, 5),
    (26924344, 3447309, -5),
    (90520989, 11590025, -4),
    (335159612, 42912791, 3),
    (1766319049, 226153980, 1),
]


class TestInitialisation:
    """The starting triple (a, 1, a^2 - d) with a^2 nearest to d."""

    @pytest.mark.parametrize(
        "d, expected",
        [(61, (8, 1, 3)), (2, (1, 1, -1)), (46, (7, 1, 3)), (132901, (365, 1, 324))],
    )
    def test_chak_init(self, d, expected):
        state = chak_init(d)
        assert (state.A, state.B, state.Q) == expected
        assert state.P == state.A

    def test_initial_root_takes_the_nearer_square(self):
        assert initial_root(2) == 1
        assert initial_root(3) == 2

    def test_square_rejected(self):
        with pytest.raises(PerfectSquareError):
            chak_init(16)


class TestStep:
    """One step of the cyclic method."""

    def test_next_multiplier(self):
        assert next_multiplier(8, 3, 61) == 7
        assert next_multiplier(7, -4, 61) == 9

    def test_next_multiplier_is_positive(self):
        # |Q| = 1 admits every m; 1 and 2 are the candidates around sqrt(2)
        assert next_multiplier(1, -1, 2) == 1

    def test_steps_for_61(self):
        state = chak_init(61)
        state = chak_step(state, 61)
        assert (state.A, state.B, state.Q) == (39, 5, -4)
        state = chak_step(state, 61)
        assert (state.A, state.B, state.Q) == (164, 21, -5)

    def test_residue(self):
        assert ChakState(A=39, B=5, P=7, Q=-4).residue == 1


class TestSolvePellChakravala:
    """Full runs against the published table and the continued fraction."""

    def test_d61_trace(self):
        solution, trace = solve_pell_chakravala(61, 100)

        assert [(r.a, r.b, r.k) for r in trace.steps] == D61_CHAKRAVALA_TRIPLES
        assert (solution.x, solution.y, solution.steps) == (1766319049, 226153980, 14)
        assert trace.algorithm is Algorithm.CHAKRAVALA
        assert trace.minimality is Minimality.FUNDAMENTAL

    @pytest.mark.parametrize("d, steps", [(46, 8), (97, 12), (109, 22), (313, 26), (541, 56)])
    def test_step_counts(self, d, steps):
        solution, _ = solve_pell_chakravala(d, 1000)
        fundamental, _ = solve_pell_cf(d, 1000)
        assert solution.steps == steps
        assert (solution.x, solution.y) == (fundamental.x, fundamental.y)

    def test_continues_through_minus_one(self):
        solution, trace = solve_pell_chakravala(2, 100)
        assert [r.k for r in trace.steps] == [-1, 1]
        assert (solution.x, solution.y) == (3, 2)

    def test_every_triple_is_a_convergent(self):
        _, trace = solve_pell_chakravala(109, 1000)
        assert all(is_convergent_of_sqrt(109, r.a, r.b) for r in trace.steps)

    def test_residues_match_triples(self):
        _, trace = solve_pell_chakravala(61, 100)
        for record in trace.steps:
            K = abs(record.k)
            assert (record.M * record.b + record.a) % K == 0

    def test_step_limit(self):
        with pytest.raises(StepLimitError):
            solve_pell_chakravala(541, 10)

    def test_large_d(self):
        solution, trace = solve_pell_chakravala(1234567890, 10_000)
        # 2612 records: the published count for this d is in iterations
        assert trace.step_count == 2612
        assert trace.iterations == 2611
        assert solution.digits10 == 1935
