"""Python facade over the difference-potentials benchmark solver."""

try:
    from ._dpmbench import (  # type: ignore  # noqa: F401
        Circle,
        LevelSetCurve,
        convergence_rate,
        emit_table,
        run,
        run_refinement,
    )
except ImportError:  # module built standalone (e.g. straight from CMake)
    from _dpmbench import (  # noqa: F401
        Circle,
        LevelSetCurve,
        convergence_rate,
        emit_table,
        run,
        run_refinement,
    )

__all__ = [
    "Circle",
    "LevelSetCurve",
    "convergence_rate",
    "emit_table",
    "run",
    "run_refinement",
]
