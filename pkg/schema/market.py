from msgspec import Struct

from models import EventKind
from schema.scenario import PowerPlant


class Bid(Struct, frozen=True):
    plant: PowerPlant
    available_mw: float
    srmc: float
    emission_factor: float = 0.0


class SegmentClearing(Struct, frozen=True):
    dispatched: tuple[tuple[PowerPlant, float], ...]
    clearing_price: float
    unserved_mw: float


class YearResult(Struct, frozen=True):
    year: int
    carbon_price: float
    energy_by_technology: dict[str, float]
    emissions_t: float
    average_price: float
    served_mwh: float
    unserved_mwh: float
    carbon_intensity: float


class CarbonForecast(Struct, frozen=True):
    slope: float
    intercept: float

    def at(self, year: float) -> float:
        return self.intercept + self.slope * year


class InvestmentDecision(Struct, frozen=True):
    genco: str
    technology: str
    unit_count: int
    npv: float
    capital: float
    plant: PowerPlant


class Event(Struct, frozen=True):
    year: int
    kind: EventKind
    genco: str
    technology: str
    plant_id: str
    unit_count: int
    npv: float | None = None
    capital: float | None = None


class SimulationResult(Struct, frozen=True):
    per_year: tuple[YearResult, ...]
    objective_price: float
    objective_rci: float
    events: tuple[Event, ...] = ()
