"""cocolour: colouring complexity toolkit for complement-closed classes."""

from .graphs import Graph

__all__ = ["Graph"]
__version__ = "0.1.0"
