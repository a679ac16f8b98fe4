"""Lines on the Fermat surface x^d - y^d - z^d + w^d = 0 and their skew families."""

from .errors import *  # noqa: F401,F403
from .families import (
    Family,
    ValidationReport,
    complete_family,
    construct_2d,
    construct_auto,
    construct_builtin,
    construct_even,
    construct_odd_1mod4,
    construct_odd_3mod4,
    is_skew_family,
    read_family,
    validate_structured,
    write_family,
)
from .geometry import disagreements, meets_geometric, meets_modular, on_surface, planes_of
from .lines import LineId, LineSetView, enumerate_lines, meets, neighbors, resolve_view
from .mis import Certificate, IntersectionGraph, build_graph, export_dimacs, max_independent_set, verify_certificate
from .residue import SurfaceParams, phi_minus, phi_plus, psi

__version__ = "0.1.0"
