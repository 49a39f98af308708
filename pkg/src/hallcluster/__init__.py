"""Exact quantum cluster characters, dual Hall products and quantum seed
mutation for acyclic quivers over finite fields."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .characters import CCContext, cc_character, cc_character_shifted
from .finfield import CapExceeded, FiniteField, make_field
from .hall import HallElement, delta, hall_star, psi
from .mutation import QuantumSeed, frame_expand, initial_seed, mutate_sequence, seed_mutate
from .qtorus import NotDivisible, TorusContext, TorusElement, t_exact_div
from .quiver import Quiver, build_quiver, find_lambda, kronecker, principal_framing, type_a
from .reps import Representation, ext1_dim, hom_dim, is_isomorphic
from .scalars import FREE, Scalar, ScalarRing, make_ring, qbinom

__all__ = [
    "BACKEND",
    "CCContext",
    "CapExceeded",
    "FREE",
    "FiniteField",
    "HallElement",
    "NotDivisible",
    "QuantumSeed",
    "Quiver",
    "Representation",
    "Scalar",
    "ScalarRing",
    "TorusContext",
    "TorusElement",
    "build_quiver",
    "cc_character",
    "cc_character_shifted",
    "delta",
    "ext1_dim",
    "find_lambda",
    "frame_expand",
    "hall_star",
    "hom_dim",
    "initial_seed",
    "is_isomorphic",
    "kronecker",
    "make_field",
    "make_ring",
    "mutate_sequence",
    "principal_framing",
    "psi",
    "qbinom",
    "seed_mutate",
    "t_exact_div",
    "type_a",
]
