"""Subspace controllability and dynamical symmetries of XXZ spin networks
with local Z-controls."""

from .analytic import (BetheEnumeration, BetheSolution, bethe_symmetric_kappas,
                       closed_form_eigensystem, heisenberg_controllable,
                       scan_symmetric_kappas, star_controllable_conjecture,
                       star_end_control_predicate, xx_controllable,
                       xx_symmetry_predicate)
from .hamiltonian import (SubspaceHamiltonian, control_matrix,
                          second_excitation_chain, single_excitation)
from .lie import ControllabilityVerdict, LieClosureResult, lie_closure, verdict
from .network import (InvalidNetworkError, NetworkSpec, StarDescriptor, make_chain,
                      make_star, parse_network, serialize_network)
from .report import AnalysisReport, TableReport, analyze, reproduce_table
from .symmetry import (AnticommutantResult, CommutantBasis, DarkStateSet,
                       DecompositionReport, SymmetryReport, commutant, dark_states,
                       decompose, graph_automorphisms, internal_symmetry,
                       permutation_matrix, symmetry_report)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport", "AnticommutantResult", "BetheEnumeration", "BetheSolution",
    "CommutantBasis", "ControllabilityVerdict", "DarkStateSet",
    "DecompositionReport", "InvalidNetworkError", "LieClosureResult",
    "NetworkSpec", "StarDescriptor", "SubspaceHamiltonian", "SymmetryReport",
    "TableReport", "analyze", "bethe_symmetric_kappas", "closed_form_eigensystem",
    "commutant", "control_matrix", "dark_states", "decompose",
    "graph_automorphisms", "heisenberg_controllable", "internal_symmetry",
    "lie_closure", "make_chain", "make_star", "parse_network",
    "permutation_matrix", "reproduce_table", "scan_symmetric_kappas",
    "second_excitation_chain", "serialize_network", "single_excitation",
    "star_controllable_conjecture", "star_end_control_predicate",
    "symmetry_report", "verdict", "xx_controllable", "xx_symmetry_predicate",
]
