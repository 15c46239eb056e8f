""" TransformSpec: which of the four transforms, and its parameters """
from dataclasses import asdict, dataclass
from typing import Optional

from .exceptions import InvalidParams
from .synthesis.profiles import BETA_PRESETS, BetaProfile, get_profile

TRANSFORM_KINDS = ("gabor-sharp", "gabor-blended", "shannon", "meyer")
GABOR_KINDS = ("gabor-sharp", "gabor-blended")
BLENDED_KINDS = ("gabor-blended", "meyer")


@dataclass(frozen=True)
class TransformSpec:
    kind: str
    n: int
    b: Optional[int] = None
    beta: Optional[str] = "linear"

    def __post_init__(self):
        assert self.kind in TRANSFORM_KINDS, f"unknown transform kind {self.kind}"
        if self.kind in GABOR_KINDS:
            if self.b is None:
                object.__setattr__(self, "b", (self.n - 1) // 2)
        else:
            object.__setattr__(self, "b", None)
        if self.kind in BLENDED_KINDS:
            if self.beta not in BETA_PRESETS:
                raise InvalidParams(
                    f"unknown beta profile {self.beta!r}, expected one of {list(BETA_PRESETS)}"
                )
        else:
            object.__setattr__(self, "beta", None)
        self._check_sizes()

    def _check_sizes(self):
        n, b = self.n, self.b
        if self.kind == "gabor-sharp" and not (0 <= b and n >= b + 2):
            raise InvalidParams(f"sharp Gabor needs 0 <= b <= n - 2, got n={n}, b={b}", n=n, b=b)
        if self.kind == "gabor-blended" and not (1 <= b and n >= b + 3):
            raise InvalidParams(
                f"blended Gabor needs 1 <= b and n >= b + 3, got n={n}, b={b}", n=n, b=b
            )
        if self.kind == "shannon" and n < 2:
            raise InvalidParams(f"Shannon wavelets need n >= 2, got n={n}", n=n)
        if self.kind == "meyer" and n < 3:
            raise InvalidParams(f"Meyer wavelets need n >= 3, got n={n}", n=n)

    @property
    def size(self) -> int:
        return 2**self.n

    @property
    def profile(self) -> Optional[BetaProfile]:
        return None if self.beta is None else get_profile(self.beta)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "TransformSpec":
        unknown = set(data) - {"kind", "n", "b", "beta"}
        if unknown:
            raise InvalidParams(f"unknown transform fields {sorted(unknown)}")
        return cls(**data)

    def describe(self) -> str:
        parts = [self.kind, f"n={self.n}"]
        if self.b is not None:
            parts.append(f"b={self.b}")
        if self.beta is not None:
            parts.append(f"beta={self.beta}")
        return " ".join(parts)
