"""Bundled reference values for the table-regeneration harness.

These are the published reference results this tool reproduces: the
symmetric-anisotropy table for uniform chains, the two branched-network
controllability tables, the four multi-node-control examples on the 10-node
network, and two explicitly printed matrices. The harness recomputes every
row from scratch and reports match/mismatch against these values; reference
defects are flagged, never silently corrected.

Angles are stored as exact multiples of pi (numerator, denominator).
"""

from __future__ import annotations

import math

import numpy as np

REFERENCE_VERSION = "2024.1"

_C15 = 2 * math.cos(math.pi / 5)
_C25 = 2 * math.cos(2 * math.pi / 5)
_C35 = 2 * math.cos(3 * math.pi / 5)
_S3 = math.sqrt(3.0)
_S22 = math.sqrt(2.0) / 2

# Symmetric-kappa table rows: (N, k, thetas as (num, den) of pi, kappa display,
# kappa values). thetas None means the reference row prints "No solution".
SYMMETRIC_KAPPA_TABLE = [
    {"N": 5, "k": 2, "thetas": [(1, 2)], "kappas": ["0"], "kappa_values": [0.0]},
    {"N": 6, "k": 2, "thetas": [(1, 3), (2, 3)], "kappas": ["1", "-1"],
     "kappa_values": [1.0, -1.0]},
    {"N": 6, "k": 3, "thetas": None, "kappas": [], "kappa_values": []},
    {"N": 7, "k": 2, "thetas": [(1, 2)], "kappas": ["0"], "kappa_values": [0.0]},
    {"N": 7, "k": 3, "thetas": None, "kappas": [], "kappa_values": []},
    {"N": 8, "k": 2, "thetas": [(1, 5), (2, 5)],
     "kappas": ["2cos(pi/5)", "-2cos(pi/5)"], "kappa_values": [_C15, -_C15]},
    {"N": 8, "k": 3, "thetas": [(1, 3)], "kappas": ["0"], "kappa_values": [0.0]},
    {"N": 8, "k": 4, "thetas": None, "kappas": [], "kappa_values": []},
    {"N": 9, "k": 2, "thetas": [(1, 6), (5, 6), (1, 3), (2, 3), (1, 2)],
     "kappas": ["sqrt(3)", "-sqrt(3)", "1", "-1", "0"],
     "kappa_values": [_S3, -_S3, 1.0, -1.0, 0.0]},
    {"N": 9, "k": 3, "thetas": [(1, 4), (3, 4)],
     "kappas": ["sqrt(2)/2", "-sqrt(2)/2"], "kappa_values": [_S22, -_S22]},
    {"N": 9, "k": 4, "thetas": [(1, 2)], "kappas": ["0"], "kappa_values": [0.0]},
    {"N": 10, "k": 2, "thetas": [(1, 7), (2, 7), (3, 7), (4, 7), (5, 7), (6, 7)],
     "kappas": ["2cos(pi/5)", "-2cos(pi/5)", "2cos(2pi/5)", "-2cos(2pi/5)",
                "2cos(3pi/5)", "-2cos(3pi/5)"],
     "kappa_values": [_C15, -_C15, _C25, -_C25, _C35, -_C35]},
    {"N": 10, "k": 3, "thetas": [(1, 5), (2, 5)], "kappas": ["1", "-1"],
     "kappa_values": [1.0, -1.0]},
    {"N": 10, "k": 4, "thetas": None, "kappas": [], "kappa_values": []},
    {"N": 10, "k": 5, "thetas": None, "kappas": [], "kappa_values": []},
]

# Branched XX networks, center control: (lengths, symmetry, dim, controllable).
XX_BRANCH_TABLE = [
    {"N": 10, "lengths": (5, 4, 3), "symmetry": False, "dim": 100, "controllable": True},
    {"N": 11, "lengths": (6, 4, 3), "symmetry": True, "dim": 65, "controllable": False},
    {"N": 12, "lengths": (6, 5, 3), "symmetry": True, "dim": 101, "controllable": False},
    {"N": 12, "lengths": (7, 4, 3), "symmetry": False, "dim": 144, "controllable": True},
    {"N": 13, "lengths": (6, 5, 4), "symmetry": True, "dim": 144, "controllable": False},
    {"N": 14, "lengths": (7, 5, 3, 2), "symmetry": False, "dim": 196, "controllable": True},
]

# Branched Heisenberg networks, center control.
HEISENBERG_BRANCH_TABLE = [
    {"N": 8, "lengths": (2, 3, 5), "symmetry": True, "dim": 50, "controllable": False},
    {"N": 9, "lengths": (2, 4, 5), "symmetry": True, "dim": 65, "controllable": False},
    {"N": 9, "lengths": (2, 3, 6), "symmetry": False, "dim": 81, "controllable": True},
    {"N": 10, "lengths": (3, 4, 5), "symmetry": True, "dim": 65, "controllable": False},
    {"N": 10, "lengths": (2, 4, 6), "symmetry": False, "dim": 100, "controllable": True},
    {"N": 10, "lengths": (2, 3, 7), "symmetry": False, "dim": 100, "controllable": True},
    {"N": 11, "lengths": (3, 4, 6), "symmetry": False, "dim": 121, "controllable": True},
    {"N": 12, "lengths": (2, 4, 8), "symmetry": True, "dim": 65, "controllable": False},
    {"N": 12, "lengths": (3, 5, 6), "symmetry": False, "dim": 144, "controllable": True},
    {"N": 13, "lengths": (4, 5, 6), "symmetry": False, "dim": 169, "controllable": True},
    {"N": 14, "lengths": (4, 5, 7), "symmetry": False, "dim": 196, "controllable": True},
    {"N": 14, "lengths": (2, 4, 10), "symmetry": False, "dim": 196, "controllable": True},
    {"N": 15, "lengths": (2, 4, 11), "symmetry": True, "dim": 122, "controllable": False},
]

# Multi-node control examples on the 10-node network equal to the n=2 sector
# of the uniform 5-chain: control the first ell basis states.
FIG2_EXAMPLES = [
    {"ell": 1, "dim": 81, "symmetry": True, "controllable": False},
    {"ell": 2, "dim": 81, "symmetry": True, "controllable": False},
    {"ell": 3, "dim": 100, "symmetry": False, "controllable": True},
    {"ell": 4, "dim": 25, "symmetry": False, "controllable": False},
]

# n=2 drift of the 5-chain with couplings 1:2:3:4 (kappa = 0), as printed.
INHOMOGENEOUS_10x10 = np.array([
    [0, 2, 0, 0, 0, 0, 0, 0, 0, 0],
    [2, 0, 3, 0, 1, 0, 0, 0, 0, 0],
    [0, 3, 0, 4, 0, 1, 0, 0, 0, 0],
    [0, 0, 4, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 3, 0, 0, 0, 0],
    [0, 0, 1, 0, 3, 0, 4, 2, 0, 0],
    [0, 0, 0, 1, 0, 4, 0, 0, 2, 0],
    [0, 0, 0, 0, 0, 2, 0, 0, 4, 0],
    [0, 0, 0, 0, 0, 0, 2, 4, 0, 3],
    [0, 0, 0, 0, 0, 0, 0, 0, 3, 0],
], dtype=float)

# Non-permutation symmetry of the uniform XX 7-chain controlled at node 2.
COMMUTING_MATRIX_7 = np.array([
    [0, 0, 1, 0, -1, 0, 1],
    [0, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 1, 0, -1],
    [0, 0, 0, 1, 0, 0, 0],
    [-1, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0],
    [1, 0, -1, 0, 1, 0, 0],
], dtype=float)

INHOMOGENEOUS_10x10.setflags(write=False)
COMMUTING_MATRIX_7.setflags(write=False)


def theta_value(num_den: tuple[int, int]) -> float:
    num, den = num_den
    return num * math.pi / den
