"""Static figures for reputation-driven capacity/advertising studies."""

__version__ = "0.1.0"

from .csvdata import (SchemaError, TrajectoryData, VoiSweepData,
                      read_trajectory, read_voi_sweep)
from .render import PlotSpec, render
