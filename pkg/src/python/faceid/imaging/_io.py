import logging
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .._exceptions import FormatError
from ._image import (
    DEFAULT_SIZE,
    GrayImage,
    resize_bilinear,
    round_half_up,
    to_grayscale,
)

logger = logging.getLogger(__name__)

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg")

# Pillow modes of 16-bit grayscale PNGs
_WIDE_GRAY_MODES = ("I;16", "I;16B", "I;16L", "I")
_WIDE_GRAY_MAX = 65535


def _narrow_wide_gray(samples: np.ndarray, path: Path) -> GrayImage:
    values = samples.astype(np.float64)
    if values.min() < 0 or values.max() > _WIDE_GRAY_MAX:
        raise FormatError(
            f"Sample values outside the 16-bit range [0, {_WIDE_GRAY_MAX}]",
            path=str(path),
        )
    return GrayImage(round_half_up(values * 255.0 / _WIDE_GRAY_MAX))


def load_image(path: str | Path) -> GrayImage:
    """
    Decode a PNG or JPEG file into a grayscale raster.

    Color images are converted with :func:`to_grayscale`, so the luma
    weights are the same whatever the codec. 16-bit grayscale images are
    rescaled to 8 bits over their full range.

    :param path: Path of the image file
    :raise FormatError: If the file cannot be read or decoded
    """
    path = Path(path)
    if path.suffix.lower() not in IMAGE_EXTENSIONS:
        raise FormatError(f"Unsupported image format '{path.suffix}'", path=str(path))

    try:
        with Image.open(path) as im:
            im.load()
            if im.mode == "L":
                return GrayImage(np.asarray(im).copy())
            if im.mode in _WIDE_GRAY_MODES:
                return _narrow_wide_gray(np.asarray(im), path)
            if im.mode == "F":
                raise FormatError(
                    "Floating-point images are not supported", path=str(path)
                )
            rgb = np.asarray(im.convert("RGB"))
    except (UnidentifiedImageError, OSError) as e:
        raise FormatError(f"Cannot decode image: {e}", path=str(path)) from e

    return to_grayscale(rgb)


def save_image(path: str | Path, img: GrayImage) -> None:
    """
    Write a grayscale raster as a lossless 8-bit PNG.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(np.ascontiguousarray(img.data)).save(path, format="PNG")
    logger.debug("Saved %dx%d image to %s", img.width, img.height, path)


def preprocess(img: GrayImage, size: int = DEFAULT_SIZE) -> GrayImage:
    """
    Standard preprocessing applied before every descriptor: a bilinear resize
    to ``size`` × ``size``.
    """
    return resize_bilinear(img, size, size)
