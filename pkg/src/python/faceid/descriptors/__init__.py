from ._codes import (
    extract_lbp,
    extract_ltp,
    extract_mlbp,
    lbp_codes,
    ltp_codes,
    mlbp_codes,
    neighbor_offsets,
)
from ._gradients import (
    extract_hog,
    extract_phog,
    gradients,
    orientation_histogram,
    phog_histograms,
)
from ._histograms import N_CODES, block_histograms
from ._lpq import extract_lpq, lpq_codes
from ._params import DescriptorParams
from ._registry import (
    EXTRACTORS,
    Extractor,
    descriptor_dim,
    extract,
    extract_all,
    get_extractor,
)

__all__ = [
    "DescriptorParams",
    "EXTRACTORS",
    "Extractor",
    "N_CODES",
    "block_histograms",
    "descriptor_dim",
    "extract",
    "extract_all",
    "extract_hog",
    "extract_lbp",
    "extract_lpq",
    "extract_ltp",
    "extract_mlbp",
    "extract_phog",
    "get_extractor",
    "gradients",
    "lbp_codes",
    "lpq_codes",
    "ltp_codes",
    "mlbp_codes",
    "neighbor_offsets",
    "orientation_histogram",
    "phog_histograms",
]
