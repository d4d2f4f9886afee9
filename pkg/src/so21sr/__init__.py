"""Sub-Riemannian geometry of SO0(2,1) with an SO(2)-right-invariant metric."""

from .boundary_solver import PathSolution, ShootingError, sr_distance, sr_log
from .cut_locus import CutTimeResult, cut_point, cut_time, cut_time_profile
from .geodesics import GeodesicParams, geodesic_matrix, geodesic_path, project_to_L2
from .hyperbolic_plane import hyp_distance
from .kernels import BACKEND
from .lie_core import (
    GroupMembershipError,
    So21Vector,
    Sl2Vector,
    check_group,
    exp_sl2,
    exp_so21,
    is_in_so2,
    so2_rotation,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CutTimeResult",
    "GeodesicParams",
    "GroupMembershipError",
    "PathSolution",
    "ShootingError",
    "Sl2Vector",
    "So21Vector",
    "check_group",
    "cut_point",
    "cut_time",
    "cut_time_profile",
    "exp_sl2",
    "exp_so21",
    "geodesic_matrix",
    "geodesic_path",
    "hyp_distance",
    "is_in_so2",
    "project_to_L2",
    "so2_rotation",
    "sr_distance",
    "sr_log",
]
