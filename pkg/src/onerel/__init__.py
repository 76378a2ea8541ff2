"""Exact computations around one-relator presentations.

Submodules:

- ``words`` / ``presentations``: free-group word algebra and the text grammar
- ``domains`` / ``oracles`` / ``groupring``: exact group-ring arithmetic,
  unique products, engulfing analysis and the series-expansion order
- ``foxcalc``: free differential calculus, derivative matrices, resolutions
- ``trapezoid``: staircase-shape certificates for group-ring matrices
- ``hierarchy``: epimorphisms to Z, prefix sequences, HNN splitting steps
- ``graphs`` / ``covers``: cycle bases, embedded-cycle lifting, finite-cover
  chain complexes and exact homology
- ``bsverify``: the exact 2x2 commutator-power identity
- ``cli``: the ``onerel`` command
"""

from .domains import QQ, ZZ, PrimeFieldDomain
from .presentations import Presentation, load_presentation, parse_presentation, parse_word
from .words import Word, cyclic_reduce, exponent_sum, free_reduce, \
    is_proper_power, proper_subwords, syllable_decompose

__version__ = "0.1.0"

__all__ = [
    "QQ", "ZZ", "PrimeFieldDomain",
    "Presentation", "load_presentation", "parse_presentation", "parse_word",
    "Word", "cyclic_reduce", "exponent_sum", "free_reduce",
    "is_proper_power", "proper_subwords", "syllable_decompose",
    "__version__",
]
