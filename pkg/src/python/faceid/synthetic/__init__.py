from ._generator import (
    DEFAULT_DAY_CONTRAST,
    DEFAULT_DAY_RAMP,
    DEFAULT_DAY_SHIFT,
    DEFAULT_NOISE_SIGMA,
    OFFICE_LIGHTING,
    Lighting,
    SyntheticImage,
    day_lighting,
    generate_dataset,
    generate_texture,
    generate_textures,
    image_id,
    render_sample,
    subject_id,
    write_dataset,
)

__all__ = [
    "DEFAULT_DAY_CONTRAST",
    "DEFAULT_DAY_RAMP",
    "DEFAULT_DAY_SHIFT",
    "DEFAULT_NOISE_SIGMA",
    "OFFICE_LIGHTING",
    "Lighting",
    "SyntheticImage",
    "day_lighting",
    "generate_dataset",
    "generate_texture",
    "generate_textures",
    "image_id",
    "render_sample",
    "subject_id",
    "write_dataset",
]
