from msgspec import Struct


class NonParametricPolicy(Struct, frozen=True, tag="free"):
    """A separate carbon tax (GBP/tCO2) for every simulated year."""

    prices: tuple[float, ...]


class LinearPolicy(Struct, frozen=True, tag="linear"):
    """Carbon tax ``a1 * y + a2`` for year index ``y`` (1-based)."""

    a1: float
    a2: float


CarbonPolicy = NonParametricPolicy | LinearPolicy
