"""Term graphs with the rigid partial order, the rigid metric and graph rewriting"""
from .config import Settings, get_settings, load_settings, use_settings
from .core import (
    BOT,
    OMEGA,
    CanonicalTermGraph,
    Signature,
    TermGraph,
    canonicalize,
    unravel_to_depth,
    validate,
)
from .errors import ParseError, SizeLimit, TermGraphError, ValidationError
from .hom import find_delta_hom, is_isomorphic, unravel_eq
from .metric import NotCauchy, distance, limit_of_sequence, similarity, truncate
from .order import glb, glb2, leq_rigid, liminf, lub_compatible
from .rewriting import GRS, Rule, Strategy, run, step
from .textformat import Document, parse, serialize

__version__ = "0.1.0"
