"""Symbol calculus, Murnaghan-Nakayama values and small-group checks for finite classical groups."""
from .algebra import FiniteField, FqMatrix, Poly, group_order, make_field
from .symbols import SeriesDescriptor, Symbol, enumerate_symbols, level, rank

__all__ = ["FiniteField", "FqMatrix", "Poly", "group_order", "make_field",
           "SeriesDescriptor", "Symbol", "enumerate_symbols", "level", "rank"]
