"""Finite semi-Heyting algebras with a dual hemimorphism: algebras, identities,
varieties, logical matrices and a Hilbert-style proof kernel."""
from . import algebra, classes, corpus, equations, formula, library, matrices, proofs, varieties
from .algebra import FiniteAlgebra
from .formula import parse, render

__version__ = "0.1.0"

__all__ = ["algebra", "classes", "corpus", "equations", "formula", "library", "matrices",
           "proofs", "varieties", "FiniteAlgebra", "parse", "render"]
