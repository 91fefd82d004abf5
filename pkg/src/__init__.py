"""
Prestable Chow - Source Package

Chow rings of the genus-0 moduli stacks of prestable curves, computed with
exact arithmetic from decorated prestable graphs.
"""

__version__ = "0.1.0"
