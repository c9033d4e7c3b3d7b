"""Exact arithmetic for connected-sum monoids of manifolds.

Subpackages cover canonical abelian-group arithmetic (``abgroup``), bounded
decision procedures for commutative monoids (``monoidkit``), the monoid of
smooth simply connected 5-manifolds (``barden``), the invariant fragment of
highly connected even-dimensional manifolds (``wallhc``), finite group
presentations (``grouppres``), mapping-cone classes (``cones``), symbolic
manifold descriptors and witness certificates (``mfdexpr``), and a command
line front end (``cli``).
"""

from .abgroup import AbelianGroup, IntMatrix, cokernel, direct_sum, parse_group, snf
from .barden import Height, Manifold5

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "IntMatrix",
    "Height",
    "Manifold5",
    "cokernel",
    "direct_sum",
    "parse_group",
    "snf",
    "__version__",
]
