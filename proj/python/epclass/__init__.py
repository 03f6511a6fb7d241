"""Exceptional-class classification of non-Hermitian lattice models."""

from ._core import (
    EpclassError,
    ModelSpec,
    __version__,
    bloch,
    builtin_model_names,
    classify,
    classify_circle,
    discriminant,
    eig,
    enumerate_classes,
    load_model,
    locate_eps,
    normalize_signature,
    obc_hamiltonian,
    obc_report,
    parse_model,
    phase_diagram,
    phase_rigidity,
    run_cli,
)

__all__ = [
    "EpclassError",
    "ModelSpec",
    "__version__",
    "bloch",
    "builtin_model_names",
    "classify",
    "classify_circle",
    "discriminant",
    "eig",
    "enumerate_classes",
    "load_model",
    "locate_eps",
    "normalize_signature",
    "obc_hamiltonian",
    "obc_report",
    "parse_model",
    "phase_diagram",
    "phase_rigidity",
    "run_cli",
]
