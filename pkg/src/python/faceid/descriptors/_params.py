from dataclasses import asdict, dataclass, fields

from .._exceptions import ArgumentError


@dataclass(frozen=True)
class DescriptorParams:
    """
    Parameters shared by the handcrafted descriptors.

    :param block_size: Side of the square blocks over which code histograms
        are computed (pixels)
    :param window: Odd side of the LBP/mLBP/LTP neighbourhood window
    :param ltp_threshold: LTP dead-band half-width (intensity levels)
    :param lpq_window: Odd side of the LPQ short-term Fourier window
    :param hog_cell: Side of the HOG cells (pixels)
    :param hog_bins: Number of unsigned HOG orientation bins over [0°, 180°)
    :param phog_levels: Deepest PHOG pyramid level
    :param phog_bins: Number of unsigned PHOG orientation bins over [0°, 180°)
    """

    block_size: int = 32
    window: int = 3
    ltp_threshold: int = 5
    lpq_window: int = 3
    hog_cell: int = 8
    hog_bins: int = 9
    phog_levels: int = 3
    phog_bins: int = 8

    def __post_init__(self):
        for name in ("window", "lpq_window"):
            value = getattr(self, name)
            if value < 3 or value % 2 == 0:
                raise ArgumentError(f"{name} must be odd and >= 3, got {value}")

        for name in ("block_size", "hog_cell", "hog_bins", "phog_bins"):
            value = getattr(self, name)
            if value < 1:
                raise ArgumentError(f"{name} must be >= 1, got {value}")

        if self.phog_levels < 0:
            raise ArgumentError(f"phog_levels must be >= 0, got {self.phog_levels}")
        if self.ltp_threshold < 0:
            raise ArgumentError(
                f"ltp_threshold must be >= 0, got {self.ltp_threshold}"
            )

    @property
    def radius(self) -> int:
        return self.window // 2

    @property
    def lpq_radius(self) -> int:
        return self.lpq_window // 2

    @classmethod
    def from_dict(cls, data: dict) -> "DescriptorParams":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ArgumentError(f"Unknown descriptor parameters: {', '.join(unknown)}")
        try:
            values = {k: int(v) for k, v in data.items()}
        except (TypeError, ValueError) as e:
            raise ArgumentError(f"Invalid descriptor parameter: {e}") from e
        return cls(**values)

    def to_dict(self) -> dict:
        return asdict(self)
