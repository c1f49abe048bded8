"""Toolkit for the sharp Holder-regularity invariant of semisimple Lie groups.

Exact root-system arithmetic over the classification (the ``rootsys`` and
``catalog`` modules), matrix decompositions for the special linear group
(``liegroup``), numerical spherical functions (``spherical``), and
stationary-phase / Holder-norm verification utilities (``asymptotics``).
"""

__version__ = "0.1.0"
