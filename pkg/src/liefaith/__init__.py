"""Small faithful representations of nilpotent Lie algebras from quotients of
the universal enveloping algebra, computed in exact rational arithmetic."""

__version__ = "0.1.0"
