import logging
import tomllib
from dataclasses import asdict, dataclass, field, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any

from .._exceptions import ArgumentError
from .._model import Condition, DescriptorId, Metric
from ..bench import DEFAULT_REPETITIONS, DEFAULT_WARMUP
from ..descriptors import DescriptorParams
from ..identification import (
    DEFAULT_GALLERY_PER_SUBJECT,
    DEFAULT_GALLERY_SEED,
    DEFAULT_MAX_RANK,
    DEFAULT_PROBE_SEED,
    DEFAULT_PROBES_PER_SUBJECT,
    ProtocolConfig,
)
from ..imaging import DEFAULT_SIZE
from ..synthetic import (
    DEFAULT_DAY_CONTRAST,
    DEFAULT_DAY_RAMP,
    DEFAULT_DAY_SHIFT,
    DEFAULT_NOISE_SIGMA,
)

logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    MARKDOWN = "markdown"

    @classmethod
    def from_raw(cls, raw: "str | OutputFormat") -> "OutputFormat":
        if isinstance(raw, cls):
            return raw

        normalized = str(raw).strip().lower()
        if normalized == "md":
            return cls.MARKDOWN
        try:
            return cls(normalized)
        except ValueError as e:
            raise ArgumentError(
                f"Unknown output format: {raw}. Valid formats: "
                + ", ".join(f.value for f in cls)
            ) from e


@dataclass(frozen=True)
class SynthConfig:
    """
    Settings of the ``synth-dataset`` command.
    """

    n_subjects: int = 20
    images_per_subject: int = 32
    conditions: tuple[Condition, ...] = (Condition.OFFICE, Condition.DAY)
    noise_sigma: float = DEFAULT_NOISE_SIGMA
    day_shift: float = DEFAULT_DAY_SHIFT
    day_contrast: float = DEFAULT_DAY_CONTRAST
    day_ramp: float = DEFAULT_DAY_RAMP
    size: int = DEFAULT_SIZE
    seed: int = 0

    def __post_init__(self):
        for name in ("n_subjects", "images_per_subject", "size"):
            if getattr(self, name) < 1:
                raise ArgumentError(f"{name} must be >= 1, got {getattr(self, name)}")
        if not self.conditions:
            raise ArgumentError("At least one condition is required")
        if self.noise_sigma < 0:
            raise ArgumentError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.day_contrast <= 0:
            raise ArgumentError(f"day_contrast must be > 0, got {self.day_contrast}")

    @classmethod
    def from_dict(cls, data: dict) -> "SynthConfig":
        data = _check_keys(cls, data, "synth")
        if "conditions" in data:
            data["conditions"] = tuple(
                Condition.from_raw(c) for c in data["conditions"]
            )
        return cls(**data)


@dataclass(frozen=True)
class RunConfig:
    """
    Configuration of a CLI run.

    Values come from the defaults below, then from the ``--config`` TOML
    file, then from the command-line flags.

    :param descriptor: Descriptor extracted by ``extract``
    :param metric: Matching metric. Default: cosine for embeddings,
        Euclidean for handcrafted descriptors
    :param resize: Side of the square raster images are resized to before
        extraction
    :param host: Device label of the timing rows. Default: the host name
    """

    descriptor: DescriptorId = DescriptorId.LBP
    params: DescriptorParams = field(default_factory=DescriptorParams)
    metric: Metric | None = None
    gallery_per_subject: int = DEFAULT_GALLERY_PER_SUBJECT
    probes_per_subject: int = DEFAULT_PROBES_PER_SUBJECT
    gallery_seed: int = DEFAULT_GALLERY_SEED
    probe_seed: int = DEFAULT_PROBE_SEED
    max_rank: int = DEFAULT_MAX_RANK
    output_format: OutputFormat = OutputFormat.CSV
    jobs: int = 1
    warmup: int = DEFAULT_WARMUP
    repetitions: int = DEFAULT_REPETITIONS
    resize: int = DEFAULT_SIZE
    host: str = ""
    synth: SynthConfig = field(default_factory=SynthConfig)

    def __post_init__(self):
        for name in (
            "gallery_per_subject",
            "probes_per_subject",
            "max_rank",
            "jobs",
            "repetitions",
            "resize",
        ):
            if getattr(self, name) < 1:
                raise ArgumentError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.warmup < 0:
            raise ArgumentError(f"warmup must be >= 0, got {self.warmup}")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        """
        Build a configuration from the parsed TOML document.

        Flat keys map to the fields of this class; the optional
        ``[descriptor]`` table holds the descriptor ``name`` and the
        :class:`DescriptorParams` fields; the optional ``[synth]`` table holds
        the :class:`SynthConfig` fields. ``seed`` is accepted as a shorthand
        for the gallery seed, the probe seed being ``seed + 1``.

        :raise ArgumentError: On unknown keys or invalid values
        """
        data = dict(data)
        kwargs: dict[str, Any] = {}

        descriptor = data.pop("descriptor", {})
        if isinstance(descriptor, dict):
            descriptor = dict(descriptor)
            if "name" in descriptor:
                kwargs["descriptor"] = DescriptorId.from_raw(descriptor.pop("name"))
            kwargs["params"] = DescriptorParams.from_dict(descriptor)
        else:
            kwargs["descriptor"] = DescriptorId.from_raw(descriptor)

        if "synth" in data:
            kwargs["synth"] = SynthConfig.from_dict(data.pop("synth"))
        if "seed" in data:
            seed = data.pop("seed")
            _check_number("top-level", "seed", seed, int)
            kwargs["gallery_seed"] = seed
            kwargs["probe_seed"] = seed + 1
        if "metric" in data:
            kwargs["metric"] = Metric.from_raw(data.pop("metric"))
        if "format" in data:
            kwargs["output_format"] = OutputFormat.from_raw(data.pop("format"))

        kwargs.update(
            _check_keys(
                cls,
                data,
                "top-level",
                exclude=("params", "synth", "descriptor", "metric", "output_format"),
            )
        )
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        """
        Load a TOML configuration file.
        """
        with open(path, "rb") as f:
            try:
                data = tomllib.load(f)
            except tomllib.TOMLDecodeError as e:
                raise ArgumentError(f"Invalid configuration file {path}: {e}") from e

        logger.debug("Loaded configuration from %s", path)
        return cls.from_dict(data)

    def with_overrides(
        self,
        *,
        seed: int | None = None,
        jobs: int | None = None,
        output_format: str | None = None,
        metric: str | None = None,
        descriptor: str | None = None,
        **overrides,
    ) -> "RunConfig":
        """
        Apply command-line flags. ``None`` values leave the configuration
        untouched.
        """
        changes = {k: v for k, v in overrides.items() if v is not None}
        if seed is not None:
            changes["gallery_seed"] = seed
            changes["probe_seed"] = seed + 1
            changes["synth"] = replace(self.synth, seed=seed)
        if jobs is not None:
            changes["jobs"] = jobs
        if output_format is not None:
            changes["output_format"] = OutputFormat.from_raw(output_format)
        if metric is not None:
            changes["metric"] = Metric.from_raw(metric)
        if descriptor is not None:
            changes["descriptor"] = DescriptorId.from_raw(descriptor)

        return replace(self, **changes) if changes else self

    def protocol_config(self, *, exclude_gallery: bool = True) -> ProtocolConfig:
        return ProtocolConfig(
            gallery_per_subject=self.gallery_per_subject,
            probes_per_subject=self.probes_per_subject,
            gallery_seed=self.gallery_seed,
            probe_seed=self.probe_seed,
            max_rank=self.max_rank,
            metric=self.metric,
            jobs=self.jobs,
            exclude_gallery=exclude_gallery,
        )

    def to_dict(self) -> dict:
        data = asdict(self)
        data["descriptor"] = self.descriptor.value
        data["metric"] = self.metric.value if self.metric else None
        data["output_format"] = self.output_format.value
        data["synth"]["conditions"] = [c.value for c in self.synth.conditions]
        return data


def _check_keys(cls, data: dict, section: str, exclude: tuple[str, ...] = ()) -> dict:
    known = {f.name for f in fields(cls)} - set(exclude)
    unknown = sorted(set(data) - known)
    if unknown:
        raise ArgumentError(
            f"Unknown {section} configuration keys: {', '.join(unknown)}"
        )
    for f in fields(cls):
        if f.name in data and f.type in (int, float):
            _check_number(section, f.name, data[f.name], f.type)
    return dict(data)


def _check_number(section: str, name: str, value: Any, kind: type) -> None:
    # TOML booleans are ints to Python; integers are valid floats
    accepted = (int,) if kind is int else (int, float)
    if isinstance(value, bool) or not isinstance(value, accepted):
        raise ArgumentError(
            f"{section} configuration key {name} must be {kind.__name__}, "
            f"got {value!r}"
        )
