from .sphere import SphericalPoint
from .sphere import ViewportSpec
from .sphere import wrap_angle
from .sphere import clamp_pitch
from .sphere import unwrap_yaw
from .sphere import direction_vector
from .sphere import yaw_pitch_from_vector
from .sphere import geodesic
from .sphere import point_geodesic
from .sphere import overlap_proxy
from .sphere import trace_vpo
from .sphere import angular_speed
from .sphere import mean_angular_speed
from .sphere import axis_rates
from .coverage import CoverageGrid
from .coverage import coverage_grid
from .coverage import sphere_coverage
from .coverage import band_solid_angle
