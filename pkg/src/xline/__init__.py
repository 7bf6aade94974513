"""Signed permutation representations of doubly transitive linear groups.

Build the signed lift of SL/GL+/GL acting on the lines of GF(q)^d, decide
whether an invariant sign matrix exists, and compute its exact spectrum.
"""
from .classify import ClassificationReport, analyse, classify
from .ffield import FElt, FieldCtx, field_new, field_of_order
from .paley import paley_conference, paley_match, switching_normalize
from .projgeom import GroupSpec, MatG, ProjBasis, act_on_point, enum_points, group_generators
from .seidel import SeidelMatrix, propagate, synthesize, verify_invariance
from .signedrep import (
    SignedOrbitReport,
    SignedPerm,
    burnside_orbit_count,
    compose,
    inverse,
    is_two_transitive,
    lift,
    orbits_on_signed_pairs,
)
from .spectral import (
    QuadMatrix,
    QuadVal,
    Spectrum,
    eigen_data,
    equiangular_params,
    gram,
    projector,
    quadratic_minpoly,
)

__version__ = "0.1.0"
