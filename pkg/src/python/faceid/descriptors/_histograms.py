import numpy as np

from .._exceptions import ArgumentError, DimensionError
from ..imaging import GrayImage, partition_blocks

N_CODES = 256

# Marks pixels without a full neighbourhood window
NO_CODE = -1


def embed_codes(img: GrayImage, interior: np.ndarray, radius: int) -> np.ndarray:
    """
    Place an interior code raster back into full-image coordinates, with
    :data:`NO_CODE` on the ``radius``-wide border.
    """
    codes = np.full((img.height, img.width), NO_CODE, dtype=np.int16)
    codes[radius : img.height - radius, radius : img.width - radius] = interior
    return codes


def check_block_layout(img: GrayImage, block_size: int, radius: int) -> None:
    """
    Validate that every block contains at least one pixel with a full
    window.
    """
    partition_blocks(img, block_size)
    if block_size <= radius:
        raise ArgumentError(
            f"block_size {block_size} leaves no pixel with a full window of "
            f"radius {radius} in the corner blocks"
        )
    if img.width <= 2 * radius or img.height <= 2 * radius:
        raise DimensionError(
            f"Image of size {img.width}x{img.height} has no interior pixels "
            f"for a window of radius {radius}"
        )


def block_histograms(codes: np.ndarray, block_size: int) -> np.ndarray:
    """
    L1-normalized 256-bin histogram of the valid codes of every block,
    blocks taken row by row from the top-left corner.

    :param codes: Full-image code raster, :data:`NO_CODE` where undefined
    :return: A ``(n_blocks, 256)`` array
    """
    rows = codes.shape[0] // block_size
    cols = codes.shape[1] // block_size
    covered = codes[: rows * block_size, : cols * block_size]
    per_block = (
        covered.reshape(rows, block_size, cols, block_size)
        .transpose(0, 2, 1, 3)
        .reshape(rows * cols, block_size * block_size)
    )

    block_idx = np.repeat(np.arange(rows * cols), block_size * block_size).reshape(
        per_block.shape
    )
    valid = per_block != NO_CODE
    counts = np.bincount(
        block_idx[valid] * N_CODES + per_block[valid].astype(np.int64),
        minlength=rows * cols * N_CODES,
    ).reshape(rows * cols, N_CODES)

    totals = counts.sum(axis=1, keepdims=True)
    if np.any(totals == 0):
        raise DimensionError("A block contains no pixel with a full window")
    return counts / totals
