"""
sphere_actions - free group actions on even-dimensional homotopy spheres.

This package decides, with certificates, whether an involution θ of a free group
together with an orientation φ on F ⋊_θ Z2 is realized by a free cellular action
on a homotopy sphere of dimension 2n, and reproduces the classification of virtually
cyclic groups acting this way together with their covering actions.
"""

__version__ = "0.1.0"
__author__ = "Sphere Actions Team"

from .algebra.twistgrp import TwistedGroup, OrientationHom
from .deciders.realize import Verdict, realizable_general
from .deciders.classify import classify_vc

__all__ = ["TwistedGroup", "OrientationHom", "Verdict", "realizable_general", "classify_vc"]
