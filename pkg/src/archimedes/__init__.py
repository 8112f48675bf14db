"""Certified enclosures for Archimedes-style circle measurement and rectification."""

from .chains import Chain, ChainOrder, chain_between, compare_chains, euclid_triangle_checks, is_concave_same_direction
from .constructible import eval_expr, is_constructible, parse, serialize
from .errors import ArchimedesError
from .exactnum import Interval, Ordering, interval_arith, interval_sqrt, parse_rational, to_decimal
from .exhaustion import squeeze_state, verify_euclid_xii2, verify_prop1, verify_sector
from .polygon_pi import PolygonPair, convergence_report, double_step, hexagon_init, pi_enclosure
from .rectify import CurveSpec, inscribed_length, log_spiral_tail, quadratrix_base, spiral_subtangent
from .solids import cylinder_sphere_ratios, sphere_constants

__all__ = [
    "ArchimedesError",
    "Chain",
    "ChainOrder",
    "CurveSpec",
    "Interval",
    "Ordering",
    "PolygonPair",
    "chain_between",
    "compare_chains",
    "convergence_report",
    "cylinder_sphere_ratios",
    "double_step",
    "euclid_triangle_checks",
    "eval_expr",
    "hexagon_init",
    "inscribed_length",
    "interval_arith",
    "interval_sqrt",
    "is_concave_same_direction",
    "is_constructible",
    "log_spiral_tail",
    "parse",
    "parse_rational",
    "pi_enclosure",
    "quadratrix_base",
    "serialize",
    "sphere_constants",
    "spiral_subtangent",
    "squeeze_state",
    "to_decimal",
    "verify_euclid_xii2",
    "verify_prop1",
    "verify_sector",
]
