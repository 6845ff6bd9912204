"""Extending structures, unified products and Galois groups of finite dimensional algebras."""

from .algebra import Algebra, algebra_from_json, algebra_from_presentation, algebra_to_json
from .errors import AlgExtError
from .field import field_parse

__all__ = ["Algebra", "AlgExtError", "algebra_from_json", "algebra_from_presentation",
           "algebra_to_json", "field_parse"]
__version__ = "0.1.0"
