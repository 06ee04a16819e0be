"""Residue codes of extremal Type II Z4-codes of length 24.

Binary and Z4 code algebra, weight-4 augmentation, lift enumeration, the
classification of candidate residue codes and the doubling calculus for
length-48 triply even codes.
"""

__version__ = "0.1.0"
