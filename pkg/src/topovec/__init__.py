"""topovec: persistence barcodes and thirteen barcode vectorization methods.

Compute Vietoris-Rips / cubical persistence at desk scale, then turn barcodes
into fixed-length feature vectors through a uniform method catalogue, a CLI,
and an HTTP service.
"""

from .barcode import (
    Barcode,
    BarcodeError,
    DEFAULT_POLICY,
    EmptyBarcodeError,
    EssentialPolicy,
    Interval,
    normalize,
)
from .bottleneck import bottleneck_distance
from .filtration import (
    FilteredComplex,
    GrayscaleImage,
    PointCloud,
    ResourceBudgetError,
    cubical_complex,
    rips_complex,
)
from .io import read_barcodes, write_barcodes
from .methods import (
    FeatureVector,
    METHOD_IDS,
    feature_labels,
    feature_width,
    fit_state,
    list_methods,
    transform,
    transform_dims,
)
from .reduction import compute_persistence

__version__ = "0.1.0"

__all__ = [
    "Barcode",
    "BarcodeError",
    "DEFAULT_POLICY",
    "EmptyBarcodeError",
    "EssentialPolicy",
    "FeatureVector",
    "FilteredComplex",
    "GrayscaleImage",
    "Interval",
    "METHOD_IDS",
    "PointCloud",
    "ResourceBudgetError",
    "bottleneck_distance",
    "compute_persistence",
    "cubical_complex",
    "feature_labels",
    "feature_width",
    "fit_state",
    "list_methods",
    "normalize",
    "read_barcodes",
    "rips_complex",
    "transform",
    "transform_dims",
    "write_barcodes",
]
