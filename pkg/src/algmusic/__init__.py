"""Symmetry models of counterpoint and modulation over Z/12Z.

* :mod:`algmusic.pitch_algebra` affine maps, rigidity, dichotomies and polarities
* :mod:`algmusic.dual_numbers` the dual plane Z/12Z[ε] and its symmetry group H
* :mod:`algmusic.counterpoint` counterpoint symmetries and admissible successors
* :mod:`algmusic.modulation` tonalities, cadences and modulation quanta
* :mod:`algmusic.neo_riemannian` the TI and PLR groups on the 24 triads
* :mod:`algmusic.scores`, :mod:`algmusic.report`, :mod:`algmusic.fixtures` I/O and the golden corpus
"""

from .counterpoint import (
    CounterpointInterval,
    CounterpointWorld,
    PolarityVariant,
    admissible_successors,
    analyze_sequence,
    counterpoint_symmetries,
    little_theorem_report,
    transition_symmetries,
)
from .dual_numbers import DualNumber, DualSymmetry, enumerate_H
from .modulation import (
    Degree,
    Tonality,
    cadential_sets,
    find_modulators,
    major_tonality,
    modulation_quantum,
    transpose_modulation,
)
from .neo_riemannian import Triad, cadence_transform, verify_group_properties, word_apply
from .pitch_algebra import AffineMap, Dichotomy, is_rigid, is_strong_dichotomy, polarities, stabilizer

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "CounterpointInterval",
    "CounterpointWorld",
    "Degree",
    "Dichotomy",
    "DualNumber",
    "DualSymmetry",
    "PolarityVariant",
    "Tonality",
    "Triad",
    "admissible_successors",
    "analyze_sequence",
    "cadence_transform",
    "cadential_sets",
    "counterpoint_symmetries",
    "enumerate_H",
    "find_modulators",
    "is_rigid",
    "is_strong_dichotomy",
    "little_theorem_report",
    "major_tonality",
    "modulation_quantum",
    "polarities",
    "stabilizer",
    "transition_symmetries",
    "transpose_modulation",
    "verify_group_properties",
    "word_apply",
]
