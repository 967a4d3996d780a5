"""Fixed-point sets of pseudo-equivalences between finite G-complexes.

Finite groups and their Oliver class, G-CW complexes with exact homology,
Euler-characteristic bookkeeping over cellular maps, splittings of group
extensions read off finite covers, Hattori-Stallings ranks, and a verdict
that combines the resulting necessary and sufficient conditions.
"""

from .errors import PseudofixError
from .groups import FiniteGroup, Subgroup
from .complexes import GCWComplex, Subcomplex, validate
from .oliver import OliverClass, OliverTag, classify
from .euler import DeficitVector, EulerProfile, rebalance_profile
from .pseudo import ObstructionVerdict, verdict

__version__ = "0.1.0"

__all__ = [
    "PseudofixError",
    "FiniteGroup",
    "Subgroup",
    "GCWComplex",
    "Subcomplex",
    "validate",
    "OliverClass",
    "OliverTag",
    "classify",
    "DeficitVector",
    "EulerProfile",
    "rebalance_profile",
    "ObstructionVerdict",
    "verdict",
]
