import numpy as np
from scipy.signal import convolve2d

from .._model import DescriptorId, FeatureVector
from ..imaging import GrayImage
from ._histograms import block_histograms, check_block_layout, embed_codes
from ._params import DescriptorParams

# Coefficients are rounded before sign quantization, so that frequency
# responses that vanish analytically (e.g. of flat patches) quantize as 0.
_ROUND_DECIMALS = 9


def _stft_kernels(window: int) -> list[np.ndarray]:
    """
    Rectangular-window STFT kernels at the four lowest non-zero frequency
    pairs ``(a, 0)``, ``(0, a)``, ``(a, a)`` and ``(a, -a)``, with
    ``a = 1 / window``. Kernels are indexed ``[row, col]``, i.e. ``[y, x]``.
    """
    radius = window // 2
    a = 1.0 / window
    y = np.arange(-radius, radius + 1, dtype=np.float64)
    w0 = np.ones_like(y, dtype=np.complex128)
    w1 = np.exp(-2j * np.pi * a * y)
    w2 = np.conj(w1)

    return [
        np.outer(w0, w1),  # u1 = (a, 0)
        np.outer(w1, w0),  # u2 = (0, a)
        np.outer(w1, w1),  # u3 = (a, a)
        np.outer(w2, w1),  # u4 = (a, -a)
    ]


def lpq_codes(img: GrayImage, window: int = 3) -> np.ndarray:
    """
    Per-pixel LPQ codes of the interior pixels.

    The 8 scalars ``Re F(u1..u4)`` and ``Im F(u1..u4)`` are quantized by
    sign (``>= 0`` gives 1); the i-th scalar in that order carries weight
    ``2**i``.
    """
    data = img.data.astype(np.float64)
    responses = []
    for kernel in _stft_kernels(window):
        # Convolving with the flipped kernel correlates with the kernel:
        # F(u, x) = sum_y f(x + y) exp(-2j * pi * u . y)
        responses.append(convolve2d(data, kernel[::-1, ::-1], mode="valid"))

    scalars = [r.real for r in responses] + [r.imag for r in responses]
    code = np.zeros(scalars[0].shape, dtype=np.int16)
    for i, scalar in enumerate(scalars):
        code |= (np.round(scalar, _ROUND_DECIMALS) >= 0).astype(np.int16) << i

    return code


def extract_lpq(img: GrayImage, params: DescriptorParams) -> FeatureVector:
    check_block_layout(img, params.block_size, params.lpq_radius)
    codes = embed_codes(img, lpq_codes(img, params.lpq_window), params.lpq_radius)
    hists = block_histograms(codes, params.block_size)
    return FeatureVector(DescriptorId.LPQ, hists.reshape(-1))
