from twofold.lab.report import (
    BaseEmitter,
    JsonLinesEmitter,
    MsgPackEmitter,
    ScenarioReport,
    TextEmitter,
)
from twofold.lab.scenarios import (
    ScenarioConfig,
    run_jordan,
    run_quadratic,
    run_rump,
    run_scenario,
    run_summation,
)
from twofold.lab.solver import lu_solve

__all__ = [
    "BaseEmitter",
    "JsonLinesEmitter",
    "MsgPackEmitter",
    "ScenarioReport",
    "TextEmitter",
    "ScenarioConfig",
    "lu_solve",
    "run_jordan",
    "run_quadratic",
    "run_rump",
    "run_scenario",
    "run_summation",
]
