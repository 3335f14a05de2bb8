"""Proto-algorithms: validation, execution, equivalence checking and proofs."""

from pathlib import Path

from ._core import (
    ProtoAlgorithm,
    ProtoalgError,
    equivalence,
    generate,
    isomorphism,
    unfolding_report,
    parse,
    prove,
    simulation,
)


def load(path):
    """Reads a `.palg` file into a ProtoAlgorithm."""
    return ProtoAlgorithm.from_text(Path(path).read_text())


__all__ = [
    "ProtoAlgorithm",
    "ProtoalgError",
    "equivalence",
    "generate",
    "isomorphism",
    "unfolding_report",
    "load",
    "parse",
    "prove",
    "simulation",
]
