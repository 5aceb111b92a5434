"""Complex volumes (vol + i cs) of hyperbolic alternating knot orbifolds.

Thin Python facade over the compiled ``_orbivol`` extension: closed-form
double-twist invariants, the generic alternating-diagram solver, and the
supporting special functions.
"""

try:
    # Wheel layout: the extension lives inside the package.
    from ._orbivol import *  # noqa: F401,F403
    from ._orbivol import __doc__ as _core_doc
except ImportError:
    # In-tree build layout: the extension sits on sys.path (build dir).
    from _orbivol import *  # noqa: F401,F403
    from _orbivol import __doc__ as _core_doc

__version__ = "1.0.0"

__all__ = [
    "li2",
    "principal_log",
    "rogers_r",
    "mod_reduce",
    "mod_dist",
    "mu_of",
    "cheb_s",
    "rm_polynomial",
    "roots_all",
    "rep_residual",
    "KnotDiagram",
    "generate_j_diagram",
    "parse_pd",
    "emit_pd",
    "diagram_isomorphic",
    "table1_row",
    "geometric_lambda",
    "solve_complete",
    "solve_orbifold",
    "complex_volume",
    "golden_rows",
    "OrbivolError",
]
