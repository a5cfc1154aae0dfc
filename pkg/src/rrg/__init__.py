"""Gordon markings, three-step lattice paths and the bijection between them,
with brute-force and q-series checks of the associated counting identities.
"""
from importlib.metadata import PackageNotFoundError, version

from rrg.errors import RRGError
from rrg.moves import BijectionLedger, phi, phi_inverse
from rrg.partitions import FamilySpec, GordonMarking, Partition, gordon_mark, is_member
from rrg.paths import LatticePath, PathFamilySpec, psi, psi_inverse, theta, theta_inverse

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source checkout
    __version__ = "0.1.0"

__all__ = [
    "BijectionLedger",
    "FamilySpec",
    "GordonMarking",
    "LatticePath",
    "Partition",
    "PathFamilySpec",
    "RRGError",
    "gordon_mark",
    "is_member",
    "phi",
    "phi_inverse",
    "psi",
    "psi_inverse",
    "theta",
    "theta_inverse",
]
