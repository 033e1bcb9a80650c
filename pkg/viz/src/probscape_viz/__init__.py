"""Figure rendering for exported analysis bundles."""

from .bundle import VizBundle, load_bundle
from .render import heatmap_plot, tsne_plot

__all__ = ["VizBundle", "load_bundle", "heatmap_plot", "tsne_plot"]

__version__ = "0.1.0"
