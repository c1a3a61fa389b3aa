import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.ndimage import convolve1d

from .._exceptions import ArgumentError, DimensionError

DEFAULT_SIZE = 224

# ITU-R BT.601 luma weights
_LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def round_half_up(values: np.ndarray) -> np.ndarray:
    """
    Round to the nearest integer, with ties going up, and clamp to the 8-bit
    range.
    """
    return np.clip(np.floor(np.asarray(values, dtype=np.float64) + 0.5), 0, 255).astype(
        np.uint8
    )


@dataclass(frozen=True, eq=False)
class GrayImage:
    """
    An 8-bit single-channel raster.

    ``data`` is a read-only ``(height, width)`` uint8 array in row-major
    order.
    """

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise DimensionError(
                f"Grayscale raster must be 2-D, got shape {data.shape}"
            )
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise DimensionError(f"Empty raster of shape {data.shape}")
        if data.dtype != np.uint8:
            if np.any(data < 0) or np.any(data > 255):
                raise ArgumentError("Intensities must lie within [0, 255]")
            if np.issubdtype(data.dtype, np.floating) and np.any(
                data != np.floor(data)
            ):
                raise ArgumentError("Intensities must be integers")

        data = np.array(data, dtype=np.uint8)
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @classmethod
    def from_flat(cls, width: int, height: int, data: Sequence[int]) -> "GrayImage":
        """
        Build an image from a flat, row-major sequence of intensities.
        """
        flat = np.asarray(data)
        if width <= 0 or height <= 0:
            raise DimensionError(f"Invalid image size {width}x{height}")
        if flat.size != width * height:
            raise DimensionError(
                f"Expected {width * height} intensities for a {width}x{height} "
                f"image, got {flat.size}"
            )
        return cls(flat.reshape(height, width))

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def size(self) -> tuple[int, int]:
        return (self.width, self.height)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.data.shape, self.data.tobytes()))


@dataclass(frozen=True)
class BlockGrid:
    """
    Non-overlapping ``block_size`` × ``block_size`` tiling of an image,
    stored row by row.
    """

    block_size: int
    rows: int
    cols: int
    blocks: tuple[GrayImage, ...]

    def block(self, row: int, col: int) -> GrayImage:
        return self.blocks[row * self.cols + col]

    def assemble(self) -> GrayImage:
        """
        Stitch the blocks back into the covered region of the source image.
        """
        rows = [
            np.hstack([self.block(r, c).data for c in range(self.cols)])
            for r in range(self.rows)
        ]
        return GrayImage(np.vstack(rows))


def to_grayscale(rgb) -> GrayImage:
    """
    Convert a 3-channel 8-bit raster to grayscale with the BT.601 luma
    weights.

    :param rgb: Either a ``(height, width, 3)`` array or a sequence of three
        ``(height, width)`` channel arrays in R, G, B order.
    """
    if isinstance(rgb, np.ndarray) and rgb.ndim == 3:
        if rgb.shape[2] != 3:
            raise DimensionError(f"Expected 3 channels, got {rgb.shape[2]}")
        channels = [rgb[:, :, i] for i in range(3)]
    else:
        channels = [np.asarray(c) for c in rgb]
        if len(channels) != 3:
            raise DimensionError(f"Expected 3 channels, got {len(channels)}")

    shapes = {c.shape for c in channels}
    if len(shapes) != 1:
        raise DimensionError(
            f"Channel dimensions do not match: {sorted(shapes)}"
        )

    r, g, b = (c.astype(np.float64) for c in channels)
    luma = _LUMA_WEIGHTS[0] * r + _LUMA_WEIGHTS[1] * g + _LUMA_WEIGHTS[2] * b
    return GrayImage(round_half_up(luma))


def _source_coords(
    out_len: int, in_len: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # Pixel-center alignment, clamped to the source edges
    scale = in_len / out_len
    src = (np.arange(out_len, dtype=np.float64) + 0.5) * scale - 0.5
    src = np.clip(src, 0, in_len - 1)
    lo = np.floor(src).astype(np.intp)
    hi = np.minimum(lo + 1, in_len - 1)
    return lo, hi, src - lo


def resize_bilinear(img: GrayImage, out_w: int, out_h: int) -> GrayImage:
    """
    Resize an image with bilinear interpolation and edge clamping.
    """
    if out_w <= 0 or out_h <= 0:
        raise ArgumentError(f"Invalid target size {out_w}x{out_h}")
    if (out_w, out_h) == img.size:
        return img

    x0, x1, wx = _source_coords(out_w, img.width)
    y0, y1, wy = _source_coords(out_h, img.height)
    src = img.data.astype(np.float64)

    top = src[y0][:, x0] * (1 - wx) + src[y0][:, x1] * wx
    bottom = src[y1][:, x0] * (1 - wx) + src[y1][:, x1] * wx
    out = top * (1 - wy)[:, None] + bottom * wy[:, None]
    return GrayImage(round_half_up(out))


def partition_blocks(img: GrayImage, block_size: int) -> BlockGrid:
    """
    Tile an image into non-overlapping square blocks from the top-left
    corner. Trailing pixels that do not fill a whole block are discarded.
    """
    if block_size < 1:
        raise ArgumentError(f"block_size must be >= 1, got {block_size}")
    if img.width < block_size or img.height < block_size:
        raise DimensionError(
            f"Image of size {img.width}x{img.height} is smaller than one "
            f"{block_size}x{block_size} block"
        )

    rows = img.height // block_size
    cols = img.width // block_size
    blocks = tuple(
        GrayImage(
            img.data[
                r * block_size : (r + 1) * block_size,
                c * block_size : (c + 1) * block_size,
            ]
        )
        for r in range(rows)
        for c in range(cols)
    )

    return BlockGrid(block_size=block_size, rows=rows, cols=cols, blocks=blocks)


def gaussian_kernel(sigma: float) -> np.ndarray:
    """
    Normalized 1-D Gaussian kernel of radius ``ceil(3 * sigma)``.
    """
    if sigma < 0:
        raise ArgumentError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return np.ones(1, dtype=np.float64)

    radius = math.ceil(3 * sigma)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(x**2) / (2 * sigma**2))
    return kernel / kernel.sum()


def gaussian_blur(img: GrayImage, sigma: float) -> GrayImage:
    """
    Separable Gaussian blur with edge clamping.
    """
    kernel = gaussian_kernel(sigma)
    if kernel.size == 1:
        return img

    data = img.data.astype(np.float64)
    data = convolve1d(data, kernel, axis=1, mode="nearest")
    data = convolve1d(data, kernel, axis=0, mode="nearest")
    return GrayImage(round_half_up(data))
