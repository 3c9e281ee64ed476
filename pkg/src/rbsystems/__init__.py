"""Exact computations with Rota-Baxter systems on Leibniz algebras."""
from .errors import InputError, PreconditionError

__all__ = ["InputError", "PreconditionError", "__version__"]

__version__ = "0.1.0"
