"""Queue-automaton workbench.

Thin package face over the compiled module: bounded exploration,
strong/branching equivalence, machine passes, transducer runs, the
recursive queue specification, and the acceptance harness. All functions
take machine/spec file text and return plain Python structures.
"""

from _qaw import (
    FormatError,
    MachineError,
    accepts,
    bisim,
    check_computation,
    compose,
    control,
    criteria,
    explore,
    queue_spec,
    run,
    transform,
    validate,
)

__all__ = [
    "FormatError",
    "MachineError",
    "accepts",
    "bisim",
    "check_computation",
    "compose",
    "control",
    "criteria",
    "explore",
    "queue_spec",
    "run",
    "transform",
    "validate",
]
