from typing import Callable, Iterable

from .._exceptions import ArgumentError
from .._model import DescriptorId, FeatureVector
from ..imaging import GrayImage
from ._codes import extract_lbp, extract_ltp, extract_mlbp
from ._gradients import extract_hog, extract_phog
from ._histograms import N_CODES
from ._lpq import extract_lpq
from ._params import DescriptorParams


Extractor = Callable[[GrayImage, DescriptorParams], FeatureVector]

EXTRACTORS: dict[DescriptorId, Extractor] = {
    DescriptorId.LBP: extract_lbp,
    DescriptorId.MLBP: extract_mlbp,
    DescriptorId.HOG: extract_hog,
    DescriptorId.PHOG: extract_phog,
    DescriptorId.LPQ: extract_lpq,
    DescriptorId.LTP: extract_ltp,
}


def get_extractor(descriptor: str | DescriptorId) -> Extractor:
    """
    Look up a handcrafted extractor by name.

    :raise ArgumentError: If the name is not one of the six handcrafted
        descriptors
    """
    descriptor_id = DescriptorId.from_raw(descriptor)
    if descriptor_id not in EXTRACTORS:
        raise ArgumentError(
            f"{descriptor_id.value} has no handcrafted extractor. Valid descriptors: "
            + ", ".join(d.value for d in EXTRACTORS)
        )
    return EXTRACTORS[descriptor_id]


def extract(
    descriptor: str | DescriptorId,
    img: GrayImage,
    params: DescriptorParams | None = None,
) -> FeatureVector:
    return get_extractor(descriptor)(img, params or DescriptorParams())


def extract_all(
    img: GrayImage,
    params: DescriptorParams | None = None,
    descriptors: Iterable[str | DescriptorId] | None = None,
) -> dict[DescriptorId, FeatureVector]:
    """
    Extract several descriptors from the same image.

    :param descriptors: The descriptors to extract. Default: all six.
    """
    params = params or DescriptorParams()
    ids = [DescriptorId.from_raw(d) for d in (descriptors or EXTRACTORS)]
    return {d: get_extractor(d)(img, params) for d in ids}


def descriptor_dim(
    descriptor: str | DescriptorId,
    width: int,
    height: int,
    params: DescriptorParams | None = None,
) -> int:
    """
    Closed-form dimension of a descriptor for an image of the given size.
    """
    params = params or DescriptorParams()
    descriptor_id = DescriptorId.from_raw(descriptor)
    n_blocks = (width // params.block_size) * (height // params.block_size)

    if descriptor_id in (DescriptorId.LBP, DescriptorId.MLBP, DescriptorId.LPQ):
        return N_CODES * n_blocks
    if descriptor_id == DescriptorId.LTP:
        return 2 * N_CODES * n_blocks
    if descriptor_id == DescriptorId.HOG:
        return (
            params.hog_bins * (width // params.hog_cell) * (height // params.hog_cell)
        )
    if descriptor_id == DescriptorId.PHOG:
        n_regions = sum(4**level for level in range(params.phog_levels + 1))
        return params.phog_bins * n_regions

    raise ArgumentError(f"{descriptor_id.value} has no closed-form dimension")
