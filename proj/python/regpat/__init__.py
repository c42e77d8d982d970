"""Pattern languages with regular constraints, and the 2-counter reduction."""

from ._core import (
    ConstrainedPattern,
    Machine,
    RegpatError,
    bounded_equivalence,
    decode_computation,
    encode_computation,
    encode_config,
    find_accepting_computations,
    in_valc,
    reduce,
    run_cli,
    successors,
    verify,
)

__all__ = [
    "ConstrainedPattern",
    "Machine",
    "RegpatError",
    "bounded_equivalence",
    "decode_computation",
    "encode_computation",
    "encode_config",
    "find_accepting_computations",
    "in_valc",
    "reduce",
    "run_cli",
    "successors",
    "verify",
]
