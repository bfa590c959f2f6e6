"""Meander curves: representations, exact curve counts, and fast algorithms for bi-rainbow meanders."""
from .birainbow import (
    BiRainbow,
    StepTrace,
    connected_family,
    middle,
    parity_paths,
    scale,
    z_gcd_small,
    z_inner,
    z_oracle,
    z_outer,
)
from .collapse import CollapsedRainbow, z_via_collapse
from .core import (
    BracketExpression,
    Meander,
    count_components,
    flip,
    parse_brackets,
    parse_meander,
)
from .errors import MeanderError

__version__ = "0.1.0"
