import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .._model import DescriptorId, FeatureVector
from ..imaging import GrayImage
from ._histograms import block_histograms, check_block_layout, embed_codes
from ._params import DescriptorParams


def neighbor_offsets(radius: int) -> list[tuple[int, int]]:
    """
    The eight ``(row, col)`` neighbour offsets of a square window, clockwise
    from the top-left corner. The first offset is the most significant bit
    of the code.
    """
    r = radius
    return [(-r, -r), (-r, 0), (-r, r), (0, r), (r, r), (r, 0), (r, -r), (0, -r)]


def _interior(data: np.ndarray, radius: int, dy: int = 0, dx: int = 0) -> np.ndarray:
    h, w = data.shape
    return data[radius + dy : h - radius + dy, radius + dx : w - radius + dx]


def _pack_bits(bits: list[np.ndarray]) -> np.ndarray:
    code = np.zeros(bits[0].shape, dtype=np.int16)
    for bit in bits:
        code = (code << 1) | bit.astype(np.int16)
    return code


def lbp_codes(img: GrayImage, window: int = 3) -> np.ndarray:
    """
    Per-pixel LBP codes of the interior pixels: bit is 1 where the neighbour
    is greater than or equal to the centre.

    :return: A ``(height - window + 1, width - window + 1)`` int16 array
    """
    radius = window // 2
    data = img.data.astype(np.int16)
    center = _interior(data, radius)
    return _pack_bits(
        [
            _interior(data, radius, dy, dx) >= center
            for dy, dx in neighbor_offsets(radius)
        ]
    )


def mlbp_codes(img: GrayImage, window: int = 3) -> np.ndarray:
    """
    Per-pixel modified LBP codes: neighbours are compared to the mean of the
    whole window instead of the centre.
    """
    radius = window // 2
    data = img.data.astype(np.int64)
    # n * neighbour >= window sum  <=>  neighbour >= window mean, exactly
    window_sums = sliding_window_view(data, (window, window)).sum(axis=(-2, -1))
    n = window * window
    return _pack_bits(
        [
            n * _interior(data, radius, dy, dx) >= window_sums
            for dy, dx in neighbor_offsets(radius)
        ]
    )


def ltp_codes(
    img: GrayImage, window: int = 3, threshold: int = 5
) -> tuple[np.ndarray, np.ndarray]:
    """
    Per-pixel LTP codes split into the upper (+1) and lower (-1) binary
    patterns. With ``threshold == 0`` equality counts as +1, so the upper
    pattern equals the LBP code.
    """
    radius = window // 2
    data = img.data.astype(np.int16)
    center = _interior(data, radius)
    upper, lower = [], []
    for dy, dx in neighbor_offsets(radius):
        diff = _interior(data, radius, dy, dx) - center
        is_upper = diff >= threshold
        upper.append(is_upper)
        lower.append((diff <= -threshold) & ~is_upper)

    return _pack_bits(upper), _pack_bits(lower)


def extract_lbp(img: GrayImage, params: DescriptorParams) -> FeatureVector:
    check_block_layout(img, params.block_size, params.radius)
    codes = embed_codes(img, lbp_codes(img, params.window), params.radius)
    hists = block_histograms(codes, params.block_size)
    return FeatureVector(DescriptorId.LBP, hists.reshape(-1))


def extract_mlbp(img: GrayImage, params: DescriptorParams) -> FeatureVector:
    check_block_layout(img, params.block_size, params.radius)
    codes = embed_codes(img, mlbp_codes(img, params.window), params.radius)
    hists = block_histograms(codes, params.block_size)
    return FeatureVector(DescriptorId.MLBP, hists.reshape(-1))


def extract_ltp(img: GrayImage, params: DescriptorParams) -> FeatureVector:
    """
    LTP descriptor: the block histograms of the upper pattern followed by
    the block histograms of the lower pattern.
    """
    check_block_layout(img, params.block_size, params.radius)
    upper, lower = ltp_codes(img, params.window, params.ltp_threshold)
    upper_hists = block_histograms(
        embed_codes(img, upper, params.radius), params.block_size
    )
    lower_hists = block_histograms(
        embed_codes(img, lower, params.radius), params.block_size
    )
    return FeatureVector(
        DescriptorId.LTP,
        np.concatenate([upper_hists.reshape(-1), lower_hists.reshape(-1)]),
    )
