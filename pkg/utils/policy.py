"""Carbon tax trajectories and their genome encodings.

Linear policies may price carbon below zero in late years; a negative tax is a per-tCO2 subsidy and
is passed to the market unclamped.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

from config import DEFAULT_HORIZON, SLOPE_LIMIT, TAX_CEILING
from exceptions import GenomeError, PolicySpecError
from models import PolicyKind
from schema.policy import CarbonPolicy, LinearPolicy, NonParametricPolicy

Bounds = list[tuple[float, float]]


def bounds(kind: PolicyKind | str, horizon: int = DEFAULT_HORIZON) -> Bounds:
    match PolicyKind(kind):
        case PolicyKind.FREE:
            return [(0.0, TAX_CEILING)] * horizon
        case PolicyKind.LINEAR:
            return [(-SLOPE_LIMIT, SLOPE_LIMIT), (0.0, TAX_CEILING)]


def kind_of(policy: CarbonPolicy) -> PolicyKind:
    return PolicyKind.LINEAR if isinstance(policy, LinearPolicy) else PolicyKind.FREE


def price_at(policy: CarbonPolicy, year_index: int, horizon: int | None = None) -> float:
    """Carbon price (GBP/tCO2) for 1-based ``year_index``."""
    if isinstance(policy, NonParametricPolicy):
        horizon = len(policy.prices) if horizon is None else min(horizon, len(policy.prices))
    if year_index < 1 or (horizon is not None and year_index > horizon):
        raise IndexError(f"year index {year_index} outside horizon 1..{horizon}")
    if isinstance(policy, LinearPolicy):
        return policy.a1 * year_index + policy.a2
    return policy.prices[year_index - 1]


def trajectory(policy: CarbonPolicy, horizon: int) -> list[float]:
    return [price_at(policy, year_index, horizon) for year_index in range(1, horizon + 1)]


def encode(policy: CarbonPolicy) -> list[float]:
    if isinstance(policy, LinearPolicy):
        return [policy.a1, policy.a2]
    return list(policy.prices)


def clamp(genome: Sequence[float], gene_bounds: Bounds) -> list[float]:
    return [min(max(float(gene), low), high) for gene, (low, high) in zip(genome, gene_bounds, strict=True)]


def decode(
    genome: Sequence[float],
    kind: PolicyKind | str,
    *,
    horizon: int = DEFAULT_HORIZON,
    repair: bool = False,
) -> CarbonPolicy:
    gene_bounds = bounds(kind, horizon)
    if len(genome) != len(gene_bounds):
        raise GenomeError(f"{kind} genome needs {len(gene_bounds)} genes, got {len(genome)}")
    genes = [float(gene) for gene in genome]
    if any(math.isnan(gene) for gene in genes):
        raise GenomeError("genome contains NaN")
    if repair:
        genes = clamp(genes, gene_bounds)
    else:
        for index, (gene, (low, high)) in enumerate(zip(genes, gene_bounds, strict=True)):
            if not low <= gene <= high:
                raise GenomeError(f"gene {index} = {gene} outside [{low}, {high}]")

    if PolicyKind(kind) is PolicyKind.LINEAR:
        return LinearPolicy(a1=genes[0], a2=genes[1])
    return NonParametricPolicy(prices=tuple(genes))


def parse_policy_spec(spec: str, horizon: int = DEFAULT_HORIZON) -> CarbonPolicy:
    """Parse ``linear:a1,a2``, ``free:v1,...,vN`` or ``flat:c``."""
    label, sep, body = spec.partition(":")
    if not sep or not body:
        raise PolicySpecError(f"policy spec {spec!r} must look like linear:a1,a2 / free:v1,... / flat:c")
    try:
        values = [float(value) for value in body.split(",")]
    except ValueError:
        raise PolicySpecError(f"policy spec {spec!r} holds a non-numeric value") from None

    try:
        match label.strip().lower():
            case "flat":
                if len(values) != 1:
                    raise PolicySpecError(f"flat policy takes one value, got {len(values)}")
                return decode(values * horizon, PolicyKind.FREE, horizon=horizon)
            case "linear":
                return decode(values, PolicyKind.LINEAR, horizon=horizon)
            case "free":
                return decode(values, PolicyKind.FREE, horizon=horizon)
            case _:
                raise PolicySpecError(f"unknown policy kind {label!r}")
    except GenomeError as exc:
        raise PolicySpecError(f"policy spec {spec!r}: {exc}") from exc
