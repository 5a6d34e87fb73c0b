"""
Exact Selberg character sums over F_q[x]
"""

from .field import FiniteField, make_field
from .cyclotomic import CycRing, CycInt, CycFrac
from .polynomial import PolynomialRing, RationalFunc, ring_for
from .characters import CharacterGroup, MulCharacter, group_for
from .gauss_sums import GaussContext, context_for
from .selberg import SelbergEngine, SelbergParams, SelbergResult
from .aevw import AevwEvaluator
from .series import LSeriesAnalyzer, RationalFn, rational_reconstruct
from .suites import VerificationSuites
from .pipeline import SeriesPipeline, SweepPipeline

__all__ = [
    'FiniteField',
    'make_field',
    'CycRing',
    'CycInt',
    'CycFrac',
    'PolynomialRing',
    'RationalFunc',
    'ring_for',
    'CharacterGroup',
    'MulCharacter',
    'group_for',
    'GaussContext',
    'context_for',
    'SelbergEngine',
    'SelbergParams',
    'SelbergResult',
    'AevwEvaluator',
    'LSeriesAnalyzer',
    'RationalFn',
    'rational_reconstruct',
    'VerificationSuites',
    'SeriesPipeline',
    'SweepPipeline'
]
