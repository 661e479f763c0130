"""Exact kernel for superalgebra/super-coalgebra duality, formal
superschemes, comodule flatness and descent, and Krull superdimension."""

__version__ = "0.1.0"
