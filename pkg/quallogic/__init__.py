# quallogic/__init__.py
"""Workbench for qualitative-uncertainty logics over Gödel and paraconsistent algebras."""

__version__ = "0.1.0"
