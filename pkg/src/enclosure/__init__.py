"""Enclose path decompositions of lambda K_n in Hamiltonian decompositions
and 2-factorizations of mu K_{n+m}."""

from .decomp import ClassKind, Decomposition, profile, validate
from .enclose import (HAMILTONIAN, TWOFACTOR, EnclosureCertificate, EnclosureDecision, decide, enclose,
                      enclose_hamiltonian, enclose_twofactor, verify_enclosure)
from .errors import ConstructionError, DecisionFailedError, InfeasibleError, OutOfRegimeError
from .graphcore import Multigraph, complete_multigraph
from .oracle import OracleVerdict, oracle_exists, random_instance

__version__ = "0.1.0"

__all__ = [
    "ClassKind", "ConstructionError", "DecisionFailedError", "Decomposition", "EnclosureCertificate",
    "EnclosureDecision", "HAMILTONIAN", "InfeasibleError", "Multigraph", "OracleVerdict", "OutOfRegimeError",
    "TWOFACTOR", "complete_multigraph", "decide", "enclose", "enclose_hamiltonian", "enclose_twofactor",
    "oracle_exists", "profile", "random_instance", "validate", "verify_enclosure",
]
