from __future__ import annotations

import hashlib
import logging
import math
from pathlib import Path

import msgspec

from config import SCENARIO_DIR, SCENARIO_SUFFIX
from exceptions import ScenarioParseError, ScenarioValidationError
from schema.scenario import Scenario
from utils.dispatch import active_fleet, run_year

logger = logging.getLogger(__name__)

HOURS_PER_YEAR = 8760.0
HOURS_TOLERANCE = 1e-6


def resolve_scenario_path(name_or_path: str | Path) -> Path:
    """Accept a file path or the name of a bundled scenario (``uk_synthetic``)."""
    path = Path(name_or_path)
    if path.is_file():
        return path
    bundled = SCENARIO_DIR / f"{path.name}{SCENARIO_SUFFIX}"
    if bundled.is_file():
        return bundled
    raise ScenarioParseError(f"scenario not found: {name_or_path}")


def scenario_checksum(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _validate_technologies(s: Scenario) -> list[str]:
    violations = []
    seen: set[str] = set()
    if not s.technologies:
        violations.append("technologies: catalog is empty")
    for index, tech in enumerate(s.technologies):
        where = f"technologies[{index}]"
        if tech.name in seen:
            violations.append(f"{where}.name: duplicate technology {tech.name!r}")
        seen.add(tech.name)
        if not tech.capacity_mw > 0:
            violations.append(f"{where}.capacity_mw: {tech.capacity_mw} must be > 0")
        if not 0 < tech.efficiency <= 1:
            violations.append(f"{where}.efficiency: {tech.efficiency} not in (0, 1]")
        if not tech.emission_factor >= 0:
            violations.append(f"{where}.emission_factor: {tech.emission_factor} must be >= 0")
        if tech.lifetime_years < 1:
            violations.append(f"{where}.lifetime_years: {tech.lifetime_years} must be >= 1")
        if tech.construction_lag_years < 0:
            violations.append(f"{where}.construction_lag_years: {tech.construction_lag_years} must be >= 0")
        for cost in ("capital_cost", "fixed_om", "variable_om"):
            value = getattr(tech, cost)
            if not (math.isfinite(value) and value >= 0):
                violations.append(f"{where}.{cost}: {value} must be a finite value >= 0")
        if tech.is_intermittent and tech.resource is None:
            violations.append(f"{where}.resource: intermittent technology needs a resource (solar or wind)")
    return violations


def _validate_fleet(s: Scenario) -> list[str]:
    violations = []
    techs = s.technology_map()
    genco_ids = [genco.id for genco in s.gencos]
    if len(set(genco_ids)) != len(genco_ids):
        violations.append("gencos: duplicate GenCo ids")
    for index, genco in enumerate(s.gencos):
        if not genco.budget >= 0:
            violations.append(f"gencos[{index}].budget: {genco.budget} must be >= 0")

    plant_ids = [plant.id for plant in s.initial_fleet if plant.id]
    if len(set(plant_ids)) != len(plant_ids):
        violations.append("initial_fleet: duplicate plant ids")
    for index, plant in enumerate(s.initial_fleet):
        where = f"initial_fleet[{index}]"
        if plant.technology not in techs:
            violations.append(f"{where}.technology: unknown technology {plant.technology!r}")
        if plant.owner not in genco_ids:
            violations.append(f"{where}.owner: unknown GenCo {plant.owner!r}")
        if plant.unit_count < 1:
            violations.append(f"{where}.unit_count: {plant.unit_count} must be >= 1")
    return violations


def _validate_days(s: Scenario) -> list[str]:
    violations = []
    if not s.representative_days:
        return ["representative_days: at least one day is required"]
    total_hours = 0.0
    for day_index, day in enumerate(s.representative_days):
        where = f"representative_days[{day_index}]"
        if not day.weight_days > 0:
            violations.append(f"{where}.weight_days: {day.weight_days} must be > 0")
        if not day.segments:
            violations.append(f"{where}.segments: day has no segments")
        for segment_index, segment in enumerate(day.segments):
            at = f"{where}.segments[{segment_index}]"
            if not segment.duration_hours > 0:
                violations.append(f"{at}.duration_hours: {segment.duration_hours} must be > 0")
            if not segment.demand_mw > 0:
                violations.append(f"{at}.demand_mw: {segment.demand_mw} must be > 0")
            for name in ("solar_capacity_factor", "wind_capacity_factor"):
                value = getattr(segment, name)
                if not 0 <= value <= 1:
                    violations.append(f"{at}.{name}: {value} not in [0, 1]")
        total_hours += day.weight_days * sum(segment.duration_hours for segment in day.segments)
    if abs(total_hours - HOURS_PER_YEAR) > HOURS_TOLERANCE:
        violations.append(
            f"representative_days: weighted segment hours total {total_hours:g}, expected {HOURS_PER_YEAR:g}",
        )
    return violations


def _validate_fuel_prices(s: Scenario) -> list[str]:
    violations = []
    years = range(s.start_year, s.start_year + s.horizon_years)
    fuel_kinds = sorted({tech.fuel_kind for tech in s.technologies if tech.fuel_kind})
    for fuel_kind in fuel_kinds:
        series = s.fuel_prices.get(fuel_kind)
        if series is None:
            violations.append(f"fuel_prices.{fuel_kind}: no price series for referenced fuel")
            continue
        missing = [year for year in years if year not in series]
        if missing:
            violations.append(f"fuel_prices.{fuel_kind}: coverage missing years {missing}")
        negative = [year for year, price in series.items() if not price >= 0]
        if negative:
            violations.append(f"fuel_prices.{fuel_kind}: negative or undefined prices in years {negative}")
    return violations


def validate_scenario(s: Scenario) -> list[str]:
    """Every violated invariant as a message prefixed with its field path; empty when valid."""
    violations = []
    if s.horizon_years < 2:
        violations.append(f"horizon_years: {s.horizon_years} must be >= 2")
    if not s.discount_rate > -1:
        violations.append(f"discount_rate: {s.discount_rate} must be > -1")
    if not s.demand_growth > 0:
        violations.append(f"demand_growth: {s.demand_growth} must be > 0")
    if not s.loss_of_load_price > 0:
        violations.append(f"loss_of_load_price: {s.loss_of_load_price} must be > 0")
    if s.base_carbon_intensity is not None and not s.base_carbon_intensity > 0:
        violations.append(f"base_carbon_intensity: {s.base_carbon_intensity} must be > 0")
    if s.investment_lookahead_years < 0:
        violations.append(f"investment_lookahead_years: {s.investment_lookahead_years} must be >= 0")
    if s.max_builds_per_year < 0:
        violations.append(f"max_builds_per_year: {s.max_builds_per_year} must be >= 0")
    if not 0 <= s.profit_retention <= 1:
        violations.append(f"profit_retention: {s.profit_retention} not in [0, 1]")
    if not s.demand_jitter >= 0:
        violations.append(f"demand_jitter: {s.demand_jitter} must be >= 0")

    violations.extend(_validate_technologies(s))
    violations.extend(_validate_fleet(s))
    violations.extend(_validate_days(s))
    violations.extend(_validate_fuel_prices(s))
    return violations


def measure_base_intensity(s: Scenario) -> float:
    """Carbon intensity of the start-year fleet dispatched at zero carbon price."""
    fleet = active_fleet(s.initial_fleet, s.start_year, s)
    return run_year(fleet, s.start_year, 0.0, s).carbon_intensity


def _with_plant_ids(s: Scenario) -> Scenario:
    if all(plant.id for plant in s.initial_fleet):
        return s
    fleet = tuple(
        plant if plant.id else msgspec.structs.replace(plant, id=f"p{index}")
        for index, plant in enumerate(s.initial_fleet)
    )
    return msgspec.structs.replace(s, initial_fleet=fleet)


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario {path}: {exc}") from exc
    try:
        scenario = msgspec.json.decode(raw, type=Scenario)
    except msgspec.DecodeError as exc:
        raise ScenarioParseError(f"{path}: {exc}") from exc

    scenario = _with_plant_ids(scenario)
    violations = validate_scenario(scenario)
    if violations:
        raise ScenarioValidationError(violations)

    if scenario.base_carbon_intensity is None:
        base = measure_base_intensity(scenario)
        if not base > 0:
            raise ScenarioValidationError(
                ["base_carbon_intensity: start-year fleet emits nothing, set the field explicitly"],
            )
        scenario = msgspec.structs.replace(scenario, base_carbon_intensity=base)

    logger.debug(
        "loaded scenario %s (%d plants, %d days)",
        path,
        len(scenario.initial_fleet),
        len(scenario.representative_days),
    )
    return scenario


def save_scenario(s: Scenario, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(msgspec.json.format(msgspec.json.encode(s), indent=2) + b"\n")
    return path
