"""Exact-rational polyhedral core: lattices, cones, polytopes, fans."""
from .cone import Cone
from .dd import double_description
from .fan import Certificate, Fan, fan_covers_cone, is_smooth_simplicial_fan
from .lattice import complete_to_lattice_basis, lattice_index, smith_diagonal
from .polytope import (
    FaceDescriptor, Polytope, face_lattice, normal_cone, polytope_volume, triangulate,
)
from .rational import RatVec, fmt, fmt_vec, frac, ratvec

__all__ = [
    "Certificate", "Cone", "FaceDescriptor", "Fan", "Polytope", "RatVec",
    "complete_to_lattice_basis", "double_description", "face_lattice", "fan_covers_cone",
    "fmt", "fmt_vec", "frac", "is_smooth_simplicial_fan", "lattice_index", "normal_cone",
    "polytope_volume", "ratvec", "smith_diagonal", "triangulate",
]
