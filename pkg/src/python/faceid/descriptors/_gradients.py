import numpy as np

from .._exceptions import ArgumentError, DimensionError
from .._model import DescriptorId, FeatureVector
from ..imaging import GrayImage
from ._params import DescriptorParams

HOG_EPSILON = 1e-6


def gradients(img: GrayImage) -> tuple[np.ndarray, np.ndarray]:
    """
    Central-difference gradients with edge clamping.

    :return: ``(magnitude, orientation)``, orientation in unsigned degrees
        within ``[0, 180)``
    """
    padded = np.pad(img.data.astype(np.float64), 1, mode="edge")
    gx = padded[1:-1, 2:] - padded[1:-1, :-2]
    gy = padded[2:, 1:-1] - padded[:-2, 1:-1]
    magnitude = np.hypot(gx, gy)
    orientation = np.mod(np.degrees(np.arctan2(gy, gx)), 180.0)
    # mod can round values just below 180 up to exactly 180
    orientation[orientation >= 180.0] = 0.0
    return magnitude, orientation


def _bin_votes(
    magnitude: np.ndarray, orientation: np.ndarray, bins: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    # Bin k is centred on k * 180 / bins; votes are split linearly between
    # the two nearest centres, wrapping around at 180°.
    position = orientation / (180.0 / bins)
    lo = np.floor(position).astype(np.int64)
    frac = position - lo
    lo = np.mod(lo, bins)
    hi = np.mod(lo + 1, bins)
    return lo, hi, magnitude * (1.0 - frac), magnitude * frac


def orientation_histogram(
    magnitude: np.ndarray, orientation: np.ndarray, bins: int
) -> np.ndarray:
    """
    Magnitude-weighted orientation histogram of a region, with linear
    interpolation between adjacent bins.
    """
    lo, hi, w_lo, w_hi = _bin_votes(magnitude.ravel(), orientation.ravel(), bins)
    return np.bincount(lo, weights=w_lo, minlength=bins) + np.bincount(
        hi, weights=w_hi, minlength=bins
    )


def _cell_histograms(
    magnitude: np.ndarray, orientation: np.ndarray, cell: int, bins: int
) -> np.ndarray:
    rows = magnitude.shape[0] // cell
    cols = magnitude.shape[1] // cell
    cell_rows = np.arange(rows * cell) // cell
    cell_cols = np.arange(cols * cell) // cell
    cell_idx = cell_rows[:, None] * cols + cell_cols[None, :]

    lo, hi, w_lo, w_hi = _bin_votes(
        magnitude[: rows * cell, : cols * cell],
        orientation[: rows * cell, : cols * cell],
        bins,
    )
    n = rows * cols * bins
    hist = np.bincount(
        (cell_idx * bins + lo).ravel(), weights=w_lo.ravel(), minlength=n
    ) + np.bincount((cell_idx * bins + hi).ravel(), weights=w_hi.ravel(), minlength=n)
    return hist.reshape(rows * cols, bins)


def extract_hog(img: GrayImage, params: DescriptorParams) -> FeatureVector:
    """
    HOG descriptor: per-cell unsigned orientation histograms, each
    L2-normalized, cells taken row by row. Trailing pixels that do not fill a
    whole cell are discarded.
    """
    if img.width < params.hog_cell or img.height < params.hog_cell:
        raise DimensionError(
            f"Image of size {img.width}x{img.height} is smaller than one "
            f"{params.hog_cell}x{params.hog_cell} cell"
        )

    magnitude, orientation = gradients(img)
    hists = _cell_histograms(magnitude, orientation, params.hog_cell, params.hog_bins)
    norms = np.sqrt(np.sum(hists**2, axis=1, keepdims=True) + HOG_EPSILON**2)
    return FeatureVector(DescriptorId.HOG, (hists / norms).reshape(-1))


def _region_bounds(length: int, parts: int) -> list[tuple[int, int]]:
    edges = [(i * length) // parts for i in range(parts + 1)]
    return list(zip(edges[:-1], edges[1:]))


def phog_histograms(
    img: GrayImage, levels: int, bins: int
) -> list[list[np.ndarray]]:
    """
    Unnormalized PHOG histograms: for every level ``l``, the orientation
    histograms of the ``2**l`` × ``2**l`` regions, row by row.
    """
    parts = 2**levels
    if parts > img.width or parts > img.height:
        raise ArgumentError(
            f"Image of size {img.width}x{img.height} cannot be split into "
            f"{parts}x{parts} regions at pyramid level {levels}"
        )

    magnitude, orientation = gradients(img)
    pyramid = []
    for level in range(levels + 1):
        n = 2**level
        level_hists = []
        for y0, y1 in _region_bounds(img.height, n):
            for x0, x1 in _region_bounds(img.width, n):
                level_hists.append(
                    orientation_histogram(
                        magnitude[y0:y1, x0:x1], orientation[y0:y1, x0:x1], bins
                    )
                )
        pyramid.append(level_hists)

    return pyramid


def extract_phog(img: GrayImage, params: DescriptorParams) -> FeatureVector:
    """
    PHOG descriptor: the orientation histograms of every pyramid level,
    concatenated coarse to fine and L1-normalized as a whole.
    """
    pyramid = phog_histograms(img, params.phog_levels, params.phog_bins)
    values = np.concatenate([h for level in pyramid for h in level])
    total = values.sum()
    if total > 0:
        values = values / total
    return FeatureVector(DescriptorId.PHOG, values)
