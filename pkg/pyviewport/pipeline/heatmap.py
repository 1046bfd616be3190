"""
Equirectangular heatmaps of head orientation samples.

The grid file holds raw sample counts, one row per pitch band from the south
pole up and one column per yaw band from -180 degrees eastwards. The image
divides every count by its cell's solid angle and scales the result to [0, 1].
"""
import math

import numpy as np

from ..exception import InsufficientDataError
from ..exception import TraceValidationError
from ..geometry import band_solid_angle
from .plots import pyplot
from .plots import save_figure


class Heatmap(object):

    def __init__(self, counts, cell_deg):
        self.counts = np.asarray(counts)
        self.cell_deg = cell_deg

    @property
    def total(self):
        return int(self.counts.sum())

    @property
    def pitch_edges(self):
        return np.radians(np.linspace(-90.0, 90.0, self.counts.shape[0] + 1))

    @property
    def yaw_edges(self):
        return np.radians(np.linspace(-180.0, 180.0, self.counts.shape[1] + 1))

    def cell_solid_angles(self):
        """
        Exact solid angle of the cells of every row, as a column vector.
        """
        edges = self.pitch_edges
        yaw_width = 2.0 * math.pi / self.counts.shape[1]
        return band_solid_angle(edges[:-1], edges[1:], yaw_width)[:, None]

    def density(self):
        """
        Samples per steradian, scaled so the densest cell is 1.
        """
        density = self.counts / self.cell_solid_angles()
        peak = density.max()
        return density / peak if peak > 0 else density

    def save_grid(self, path):
        np.savetxt(path, self.counts, fmt='%d', delimiter=',', newline='\n')

    @classmethod
    def load_grid(cls, path):
        counts = np.loadtxt(path, delimiter=',', dtype=np.int64, ndmin=2)
        return cls(counts, 180.0 / counts.shape[0])


def sample_heatmap(yaw, pitch, cell_deg=1.0):
    """
    2D histogram of the samples on `cell_deg` cells.
    :rtype: Heatmap
    """
    yaw = np.concatenate([np.ravel(values) for values in yaw]) if isinstance(yaw, list) else np.ravel(yaw)
    pitch = np.concatenate([np.ravel(values) for values in pitch]) if isinstance(pitch, list) else np.ravel(pitch)
    if len(yaw) == 0:
        raise InsufficientDataError("no samples selected for the heatmap")
    n_pitch = int(round(180.0 / cell_deg))
    if n_pitch < 1 or abs(n_pitch * cell_deg - 180.0) > 1e-9:
        raise TraceValidationError("heatmap cell size {} does not divide 180 degrees".format(cell_deg))
    counts, _, _ = np.histogram2d(pitch, yaw, bins=[n_pitch, 2 * n_pitch],
                                  range=[[-0.5 * math.pi, 0.5 * math.pi], [-math.pi, math.pi]])
    return Heatmap(counts.astype(np.int64), cell_deg)


def render_heatmap(heatmap, path, title=None):
    """
    Writes the density image of the heatmap, north up.
    """
    plt = pyplot()
    figure, axis = plt.subplots(figsize=(8, 4))
    image = axis.imshow(heatmap.density(), origin='lower', extent=(-180, 180, -90, 90),
                        cmap='hot', vmin=0.0, vmax=1.0, aspect='auto', interpolation='nearest')
    axis.set_xlabel('yaw (deg)')
    axis.set_ylabel('pitch (deg)')
    if title:
        axis.set_title(title)
    figure.colorbar(image, ax=axis, label='relative density')
    save_figure(plt, figure, path)
