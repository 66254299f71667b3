from msgspec import Struct

from exceptions import ConfigurationError
from models import Resource


class Technology(Struct, frozen=True, forbid_unknown_fields=True):
    name: str
    capacity_mw: float
    capital_cost: float
    fixed_om: float
    variable_om: float
    efficiency: float
    emission_factor: float
    lifetime_years: int
    construction_lag_years: int = 0
    fuel_kind: str | None = None
    is_intermittent: bool = False
    resource: Resource | None = None


class PowerPlant(Struct, frozen=True, forbid_unknown_fields=True):
    technology: str
    owner: str
    commission_year: int
    unit_count: int = 1
    id: str = ""


class GenCo(Struct, forbid_unknown_fields=True):
    id: str
    budget: float


class Segment(Struct, frozen=True, array_like=True):
    duration_hours: float
    demand_mw: float
    solar_capacity_factor: float = 0.0
    wind_capacity_factor: float = 0.0


class RepresentativeDay(Struct, frozen=True, forbid_unknown_fields=True):
    weight_days: float
    segments: tuple[Segment, ...]
    name: str = ""


class Scenario(Struct, frozen=True, forbid_unknown_fields=True):
    start_year: int
    technologies: tuple[Technology, ...]
    initial_fleet: tuple[PowerPlant, ...]
    gencos: tuple[GenCo, ...]
    representative_days: tuple[RepresentativeDay, ...]
    fuel_prices: dict[str, dict[int, float]]
    horizon_years: int = 18
    demand_growth: float = 1.0
    discount_rate: float = 0.06
    base_carbon_intensity: float | None = None
    loss_of_load_price: float = 6000.0
    investment_lookahead_years: int = 10
    max_builds_per_year: int = 10
    profit_retention: float = 0.0
    demand_jitter: float = 0.0
    name: str = ""

    @property
    def end_year(self) -> int:
        return self.start_year + self.horizon_years - 1

    def calendar_year(self, year_index: int) -> int:
        return self.start_year + year_index - 1

    def technology_map(self) -> dict[str, Technology]:
        return {tech.name: tech for tech in self.technologies}

    def fuel_price(self, fuel_kind: str, year: int, *, extrapolate: bool = False) -> float:
        """Fuel price in GBP/MWh thermal.

        With ``extrapolate`` a year past the last covered one takes the last covered price.
        """
        series = self.fuel_prices.get(fuel_kind)
        if series:
            if year in series:
                return series[year]
            if extrapolate:
                covered = [covered_year for covered_year in series if covered_year <= year]
                if covered:
                    return series[max(covered)]
        raise ConfigurationError(f"no {fuel_kind} fuel price for {year}")
