from ._image import (
    DEFAULT_SIZE,
    BlockGrid,
    GrayImage,
    gaussian_blur,
    gaussian_kernel,
    partition_blocks,
    resize_bilinear,
    round_half_up,
    to_grayscale,
)
from ._io import IMAGE_EXTENSIONS, load_image, preprocess, save_image

__all__ = [
    "BlockGrid",
    "DEFAULT_SIZE",
    "GrayImage",
    "IMAGE_EXTENSIONS",
    "gaussian_blur",
    "gaussian_kernel",
    "load_image",
    "partition_blocks",
    "preprocess",
    "resize_bilinear",
    "round_half_up",
    "save_image",
    "to_grayscale",
]
