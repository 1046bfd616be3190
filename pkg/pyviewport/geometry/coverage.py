"""
Share of the sphere seen by a trace chunk, estimated on an equirectangular
grid of cells weighted by their solid angle.
"""
import math
from functools import lru_cache

import numpy as np

from ..exception import InsufficientDataError
from ..exception import TraceValidationError
from .sphere import ViewportSpec
from .sphere import unwrap_yaw

FOUR_PI = 4.0 * math.pi


class CoverageGrid(object):
    """
    Equirectangular grid with `cell_deg` square cells. Rows run from the south
    pole up, columns from yaw -pi eastwards.
    """

    def __init__(self, cell_deg=1.0):
        n_pitch = int(round(180.0 / cell_deg))
        n_yaw = int(round(360.0 / cell_deg))
        if n_pitch < 1 or abs(n_pitch * cell_deg - 180.0) > 1e-9:
            raise TraceValidationError("cell size {} does not divide 180 degrees".format(cell_deg))
        self.cell_deg = cell_deg
        self.n_pitch = n_pitch
        self.n_yaw = n_yaw
        self.d_pitch = math.pi / n_pitch
        self.d_yaw = 2.0 * math.pi / n_yaw
        self.pitch_centers = -0.5 * math.pi + (np.arange(n_pitch) + 0.5) * self.d_pitch
        self.yaw_centers = -math.pi + (np.arange(n_yaw) + 0.5) * self.d_yaw
        # solid angle of one cell in each row
        self.row_weights = np.cos(self.pitch_centers) * self.d_yaw * self.d_pitch

    def row_span(self, pitch, half_extent):
        low = math.ceil((pitch - half_extent + 0.5 * math.pi) / self.d_pitch - 0.5)
        high = math.floor((pitch + half_extent + 0.5 * math.pi) / self.d_pitch - 0.5)
        return max(low, 0), min(high, self.n_pitch - 1)

    def column_indices(self, yaw, half_extent):
        low = math.ceil((yaw - half_extent + math.pi) / self.d_yaw - 0.5)
        high = math.floor((yaw + half_extent + math.pi) / self.d_yaw - 0.5)
        if high - low + 1 >= self.n_yaw:
            return slice(None)
        return np.arange(low, high + 1) % self.n_yaw

    def viewport_mask(self, yaw, pitch, viewport):
        """
        Boolean (n_pitch, n_yaw) mask of the cells whose centres fall inside
        the union of the viewports centred on the given samples.
        """
        covered = np.zeros((self.n_pitch, self.n_yaw), dtype=bool)
        half_yaw = 0.5 * viewport.yaw_extent
        half_pitch = 0.5 * viewport.pitch_extent
        for sample_yaw, sample_pitch in zip(np.atleast_1d(yaw), np.atleast_1d(pitch)):
            row_low, row_high = self.row_span(float(sample_pitch), half_pitch)
            if row_low > row_high:
                continue
            covered[row_low:row_high + 1, self.column_indices(float(sample_yaw), half_yaw)] = True
        return covered

    def covered_solid_angle(self, mask):
        return float(np.dot(mask.sum(axis=1), self.row_weights))


@lru_cache(maxsize=8)
def coverage_grid(cell_deg=1.0):
    return CoverageGrid(cell_deg)


def sphere_coverage(chunk, viewport=None, grid=1.0):
    """
    Percentage of the full sphere covered by the union of the viewports
    centred on every sample of the chunk. The chunk is measured rotated so
    its first sample sits at yaw 0, so the result does not depend on where
    the motion lies relative to the grid columns or the yaw seam.
    :param chunk: anything with `yaw` and `pitch` sample arrays
    :param viewport: ViewportSpec, 100x100 degrees by default
    :param grid: cell size in degrees, or a CoverageGrid
    :return: percent in [0, 100]
    """
    if len(chunk.yaw) == 0:
        raise InsufficientDataError("coverage of an empty chunk")
    viewport = ViewportSpec() if viewport is None else viewport
    grid = grid if isinstance(grid, CoverageGrid) else coverage_grid(float(grid))
    yaw = unwrap_yaw(chunk.yaw)
    mask = grid.viewport_mask(yaw - yaw[0], chunk.pitch, viewport)
    return min(100.0, 100.0 * grid.covered_solid_angle(mask) / FOUR_PI)


def band_solid_angle(pitch_low, pitch_high, yaw_width):
    """
    Exact solid angle of the yaw/pitch box [pitch_low, pitch_high] x yaw_width.
    """
    return yaw_width * (np.sin(pitch_high) - np.sin(pitch_low))
