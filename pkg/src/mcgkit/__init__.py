"""Exact computations in the mapping class group of a surface with one boundary component."""

from .words import Automorphism, Endomorphism, Word, apply, commutator, compose, invert, multiply, reduce
from .surface import MappingClass, SurfaceContext, boundary_word, conjugated_twist, is_mapping_class
from .symplectic import SymplecticMatrix, abelianize, congruence_check, intersection, torelli_check, transvection
from .exterior import ExteriorElement, iota, iota_solve, pushforward_fundamental, wedge
from .johnson import NilpotentElement, bp_expected, johnson_hom, johnson_mod_p, johnson_tau, project_nilpotent

__version__ = "0.1.0"
