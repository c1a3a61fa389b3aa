import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.ndimage import gaussian_filter

from .._exceptions import ArgumentError
from .._model import Condition
from ..imaging import DEFAULT_SIZE, GrayImage, round_half_up, save_image

logger = logging.getLogger(__name__)

DEFAULT_NOISE_SIGMA = 4.0
DEFAULT_DAY_SHIFT = 40.0
DEFAULT_DAY_CONTRAST = 0.6
DEFAULT_DAY_RAMP = 80.0

TEXTURE_CORRELATION = 1.5
TEXTURE_CONTRAST = 40.0

_CONDITION_INDEX = {c: i for i, c in enumerate(Condition)}


@dataclass(frozen=True)
class Lighting:
    """
    Global illumination of an acquisition condition.

    :param shift: Brightness offset, in intensity levels
    :param contrast: Gain applied to the texture around its mean level
    :param ramp: Extra brightness reached at the right edge of the face by a
        horizontal illumination gradient that starts at 0 on the left edge
    """

    shift: float = 0.0
    contrast: float = 1.0
    ramp: float = 0.0

    def __post_init__(self):
        if self.contrast <= 0:
            raise ArgumentError(f"contrast must be > 0, got {self.contrast}")

    def apply(self, texture: np.ndarray) -> np.ndarray:
        mean = texture.mean()
        ramp = np.linspace(0.0, self.ramp, texture.shape[1])[None, :]
        return mean + self.contrast * (texture - mean) + self.shift + ramp


OFFICE_LIGHTING = Lighting()


def day_lighting(
    shift: float = DEFAULT_DAY_SHIFT,
    contrast: float = DEFAULT_DAY_CONTRAST,
    ramp: float = DEFAULT_DAY_RAMP,
) -> Lighting:
    """
    Harsh side daylight: brighter, flatter and brighter still towards one
    side, so that part of the face saturates.
    """
    return Lighting(shift=shift, contrast=contrast, ramp=ramp)


@dataclass(frozen=True)
class SyntheticImage:
    """
    A generated face-like sample and its labels.
    """

    subject_id: str
    image_id: str
    condition: Condition
    image: GrayImage

    @property
    def relative_path(self) -> Path:
        return Path(self.condition.value, self.subject_id, f"{self.image_id}.png")


def subject_id(index: int) -> str:
    return f"s{index:03d}"


def image_id(index: int) -> str:
    return f"img{index:03d}"


def generate_texture(
    rng: np.random.Generator,
    size: int = DEFAULT_SIZE,
    *,
    correlation: float = TEXTURE_CORRELATION,
    contrast: float = TEXTURE_CONTRAST,
) -> np.ndarray:
    """
    A subject base texture: band-limited noise, i.e. white noise smoothed by
    a Gaussian of standard deviation ``correlation`` pixels and rescaled to
    a standard deviation of ``contrast`` levels around a bright base level.

    :return: A float ``(size, size)`` array, not yet quantized
    """
    base = rng.uniform(150, 180)
    noise = gaussian_filter(rng.normal(size=(size, size)), correlation, mode="wrap")
    return base + contrast * noise / noise.std()


def render_sample(
    texture: np.ndarray,
    rng: np.random.Generator,
    *,
    noise_sigma: float = DEFAULT_NOISE_SIGMA,
    lighting: Lighting = OFFICE_LIGHTING,
) -> GrayImage:
    """
    Render one image of a subject: the texture under the given lighting plus
    additive Gaussian sensor noise, quantized to 8 bits with saturation.
    """
    lit = lighting.apply(texture)
    return GrayImage(
        round_half_up(lit + rng.normal(0.0, noise_sigma, size=texture.shape))
    )


def generate_dataset(
    n_subjects: int,
    images_per_subject: int,
    *,
    conditions: Sequence[Condition] = (Condition.OFFICE, Condition.DAY),
    seed: int = 0,
    noise_sigma: float = DEFAULT_NOISE_SIGMA,
    day_shift: float = DEFAULT_DAY_SHIFT,
    day_contrast: float = DEFAULT_DAY_CONTRAST,
    day_ramp: float = DEFAULT_DAY_RAMP,
    size: int = DEFAULT_SIZE,
) -> list[SyntheticImage]:
    """
    Generate a seeded identification corpus.

    Every subject gets a distinct base texture; every image adds independent
    noise. ``OFFICE`` images are rendered under neutral lighting, ``DAY``
    images under :func:`day_lighting` with the given shift, contrast and
    ramp.

    Each image depends only on ``(seed, subject, condition, image)``, so
    growing the corpus never changes the images already generated.
    """
    if n_subjects < 1 or images_per_subject < 1:
        raise ArgumentError("A synthetic corpus needs at least one subject and image")
    if noise_sigma < 0:
        raise ArgumentError(f"noise_sigma must be >= 0, got {noise_sigma}")

    lightings = {
        Condition.OFFICE: OFFICE_LIGHTING,
        Condition.DAY: day_lighting(day_shift, day_contrast, day_ramp),
    }

    samples = []
    for s in range(n_subjects):
        texture = generate_texture(np.random.default_rng([seed, s]), size)
        for condition in conditions:
            for i in range(images_per_subject):
                rng = np.random.default_rng([seed, s, _CONDITION_INDEX[condition], i])
                samples.append(
                    SyntheticImage(
                        subject_id=subject_id(s),
                        image_id=image_id(i),
                        condition=condition,
                        image=render_sample(
                            texture,
                            rng,
                            noise_sigma=noise_sigma,
                            lighting=lightings[condition],
                        ),
                    )
                )

    logger.info(
        "Generated %d images for %d subjects under %s",
        len(samples),
        n_subjects,
        ", ".join(c.value for c in conditions),
    )
    return samples


def generate_textures(
    count: int, *, seed: int = 0, size: int = DEFAULT_SIZE
) -> list[GrayImage]:
    """
    Noise-free textured images, one per seeded base texture.
    """
    return [
        GrayImage(
            round_half_up(generate_texture(np.random.default_rng([seed, i]), size))
        )
        for i in range(count)
    ]


def write_dataset(root: str | Path, samples: Iterable[SyntheticImage]) -> int:
    """
    Write a corpus as ``<root>/<condition>/<subject>/<image>.png``.

    :return: The number of images written
    """
    root = Path(root)
    count = 0
    for sample in samples:
        save_image(root / sample.relative_path, sample.image)
        count += 1

    logger.info("Wrote %d images under %s", count, root)
    return count
