from .._exceptions import ArgumentError
from .._model import ModelInfo

_MODELS = (
    ModelInfo("ResNet-50", 23.5, "Residual network, 50 layers"),
    ModelInfo("VGG-16", 138, "VGG network, 16 layers"),
    ModelInfo("MobileNetV2", 3.4, "Inverted-residual mobile network"),
    ModelInfo("EfficientNet-B0", 5.3, "Compound-scaled mobile network"),
    ModelInfo("LightCNN-29", 12.6, "Max-feature-map network, 29 layers"),
    ModelInfo("LightCNN-9", 5.5, "Max-feature-map network, 9 layers"),
)

# Published per-sample extraction times (ms) on mobile devices. None marks a
# model that could not run on the device because of memory constraints.
_REFERENCE_TIMINGS_MS: dict[str, dict[str, float | None]] = {
    "ResNet-50": {"iPhone 6": 2386, "iPhone X": 941, "iPhone XR": 834},
    "VGG-16": {"iPhone 6": None, "iPhone X": 4138, "iPhone XR": 3747},
    "MobileNetV2": {"iPhone 6": 1022, "iPhone X": 357, "iPhone XR": 240},
    "EfficientNet-B0": {"iPhone 6": 1321, "iPhone X": 450, "iPhone XR": 329},
    "LightCNN-29": {"iPhone 6": 1426, "iPhone X": 604, "iPhone XR": 430},
    "LightCNN-9": {"iPhone 6": 562, "iPhone X": 248, "iPhone XR": 171},
}


def model_registry() -> list[ModelInfo]:
    """
    The deep models whose 512-dim embeddings the toolkit is meant to ingest,
    with their parameter counts in millions.
    """
    return list(_MODELS)


def model_info(name: str) -> ModelInfo:
    """
    Look up a model by name (case-insensitive).

    :raise ArgumentError: If the model is not registered
    """
    for info in _MODELS:
        if info.name.lower() == name.strip().lower():
            return info

    raise ArgumentError(
        f"Unknown model '{name}'. Known models: "
        + ", ".join(m.name for m in _MODELS)
    )


def reference_timings() -> dict[str, dict[str, float | None]]:
    """
    Published on-device extraction times, for side-by-side reporting only:
    they are not comparable with timings measured on another host.
    """
    return {name: dict(timings) for name, timings in _REFERENCE_TIMINGS_MS.items()}
