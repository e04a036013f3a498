"""Exact computations with truncated cosimplicial objects.

Submodules: ``abelian`` (finitely generated abelian groups), ``groupoid``,
``simplicial``, ``cosimplicial``, ``cosab`` (cosimplicial abelian groups),
``torsors``, ``postnikov``, ``io`` (JSON bundles), ``suites`` and ``cli``.
"""

from .abelian import AbHom, CochainComplex, FGAbGroup, NNChainComplex, cohomology
from .cosab import TruncCosimpAb, cohomology_H, derived_limit_cobar
from .cosimplicial import TruncCosimpSet
from .errors import (CapExceeded, CosimplexError, DegreeError, HypothesisFailed,
                     NotATorsor, ValidationError)
from .groupoid import FinCategory, FinGroupoid, GpdFunctor
from .simplicial import TruncSimpAb, TruncSimpSet
from .torsors import HDiagram, TruncCosimpGpd

__all__ = [
    "AbHom", "CochainComplex", "FGAbGroup", "NNChainComplex", "cohomology",
    "TruncCosimpAb", "cohomology_H", "derived_limit_cobar", "TruncCosimpSet",
    "CapExceeded", "CosimplexError", "DegreeError", "HypothesisFailed", "NotATorsor",
    "ValidationError", "FinCategory", "FinGroupoid", "GpdFunctor", "TruncSimpAb",
    "TruncSimpSet", "HDiagram", "TruncCosimpGpd",
]
