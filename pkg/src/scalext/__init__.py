"""Exact computations for quiver representations, Hochschild cohomology and A-infinity lifting."""
from .errors import ScalextError
from .fields import GF, QQ, Field, FunctionField, parse_field

__version__ = "0.1.0"
