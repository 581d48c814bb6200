"""
Genetic Volterra algebras: exact construction, characters, associativity,
tournaments, derivations, local derivations and QSO dynamics.
"""

__version__ = "0.1.0"
