"""
semibrick-lab Core Module
=========================

Exact linear algebra over prime fields for finite-dimensional quiver
representations, and the randomized engines built on top of it.

This module serves as the central hub for:
- Quivers, dimension vectors and weights (``core.algebra``)
- Representations, sampling and serialisation (``core.modrep``)
- Hom / Ext, bricks and semibricks (``core.homology``)
- Decompositions and Schur roots (``core.decompose``)
- Projective presentations and the F-bar-theta oracle (``core.presentations``)
- Semibrick extension, growth and maximality probing (``core.extend``)

Usage:
    from core.algebra import load_quiver
    from core.modrep import random_module
    from core.homology import is_brick

    q = load_quiver("k2.q")
    print(is_brick(random_module(q, (1, 1), seed=0)))
"""

__version__ = "1.0.0"
__author__ = "Honey Badger Universe"

from . import languages
from .algebra import DimVector, Quiver, ThetaVector, load_quiver, parse_quiver
from .modrep import FieldSpec, RepModule, random_module, read_module

__all__ = [
    "DimVector", "FieldSpec", "Quiver", "RepModule", "ThetaVector",
    "languages", "load_quiver", "parse_quiver", "random_module", "read_module",
]
