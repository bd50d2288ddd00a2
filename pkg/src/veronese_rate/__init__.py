"""Rates of graded modules over Veronese subrings, checked on concrete examples."""

__version__ = "0.1.0"
