"""
primdecomp: exact primary decompositions of downsets and downset-finite
modules over polyhedral partially ordered groups, checked against a
finite-grid oracle.
"""
from .config import settings, setup_logging
from .cone_geometry import GeneralPiece, grid_supports_general, localize_general, piece_member
from .downset import (CoprincipalPiece, DownsetExpr, canonical_decomposition, global_support,
                      is_coprimary_downset, local_support, localize, primary_component, prune_redundant)
from .errors import BudgetError, InvariantViolation, PrimdecompError, ValidationError
from .grid_module import (GridModule, HullPresentation, classify_element, is_coprimary_module,
                          localize_module, primary_decomposition_module, realize)
from .pogroup import ConePresentation, FaceLattice, enumerate_faces, fourier_motzkin, is_closed, leq
from .region import Interval, Region, make_interval

__version__ = '0.1.0'
