from app.models.pell import Algorithm, StepTrace
from app.models.report import VerifyReport
from app.models.run import RunConfig

from .cf import solve_pell_cf
from .chakravala import solve_pell_chakravala
from .genpell import solve
from .verify import verify_trace


def run_solver(run: RunConfig) -> StepTrace:
    """
    Solve x^2 - d*y^2 = 1 for one run configuration.

    Parameters:
        run (RunConfig): d, the algorithm with its parameter and the step cap.

    Returns:
        StepTrace: The full trace. Generalized algorithms report divergence in
            the trace outcome.

    Raises:
        PerfectSquareError: If d is a square.
        StepLimitError: If the continued fraction or chakravala solver runs
            out of steps.
    """
    match run.algorithm:
        case Algorithm.CF:
            _, trace = solve_pell_cf(run.d, run.step_cap)
        case Algorithm.CHAKRAVALA:
            _, trace = solve_pell_chakravala(run.d, run.step_cap)
        case _:
            trace = solve(
                run.d,
                run.strategy,
                max_steps=run.step_cap,
                track_big=run.track_big,
                minimality_bound=run.minimality_bound,
            )
    return trace


def run_and_verify(run: RunConfig) -> tuple[StepTrace, VerifyReport | None]:
    """`run_solver`, followed by `verify_trace` when the run asks for it."""
    trace = run_solver(run)
    report = verify_trace(trace) if run.verify else None
    return trace, report
