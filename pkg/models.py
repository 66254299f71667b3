from enum import StrEnum


class PolicyKind(StrEnum):
    FREE = "free"
    LINEAR = "linear"


class Resource(StrEnum):
    SOLAR = "solar"
    WIND = "wind"


class MutationKind(StrEnum):
    PER_GENE = "per_gene"
    PER_CHILD = "per_child"
    POLYNOMIAL = "polynomial"


class EventKind(StrEnum):
    INVEST = "invest"
    COMMISSION = "commission"
    RETIRE = "retire"


class BenchmarkProblem(StrEnum):
    SCHAFFER = "schaffer"
    ZDT1 = "zdt1"


class CommandName(StrEnum):
    SIMULATE = "simulate"
    OPTIMIZE = "optimize"
    BENCHMARK = "benchmark"
    MIX = "mix"
