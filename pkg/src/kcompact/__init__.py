"""Equivariant and ordinary K-theory of toroidal compactifications of adjoint groups."""

__version__ = "0.1.0"

from .weyl import RootSystem, weyl_group
from .laurent import Laurent, Tensor
from .fan import Fan, PLFunction
from .instance import load_instance
from .compactification import Compactification, OrdinaryRing

__all__ = [
    "Compactification",
    "Fan",
    "Laurent",
    "OrdinaryRing",
    "PLFunction",
    "RootSystem",
    "Tensor",
    "load_instance",
    "weyl_group",
]
