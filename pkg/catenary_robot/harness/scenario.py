# catenary_robot/harness/scenario.py
"""Scenario documents: validated, serializable descriptions of one experiment."""
import copy
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from catenary_robot.catenary.geometry import CableSpec, TensionMode
from catenary_robot.control.controller import Gains, GravitySign, TensionSource
from catenary_robot.dynamics.quadrotor import (
    DEFAULT_INERTIA_DIAG,
    DEFAULT_MASS,
    DEFAULT_TAU_MAX,
    QuadrotorParams,
)
from catenary_robot.errors import ScenarioError, TraceIOError, UnknownScenario
from catenary_robot.trajectory.frames import CatenaryTrajectory
from catenary_robot.trajectory.scenarios import BUILTIN_TRAJECTORIES, build_trajectory
from catenary_robot.utils.config import config
from catenary_robot.utils.logger import get_logger

logger = get_logger(__name__)

SCHEMA_VERSION = 1
SCENARIO_SUFFIXES = ('.json', '.yaml', '.yml')


def _vector3(value: List[float], name: str) -> List[float]:
    if len(value) != 3:
        raise ValueError(f"{name} needs exactly 3 entries, got {len(value)}")
    return value


class _Section(BaseModel):
    model_config = ConfigDict(extra='forbid')


class CableModel(_Section):
    length_m: float = Field(gt=0)
    mass_kg: float = Field(ge=0)
    # Object carried by the cable, lumped into its mass
    payload_kg: float = Field(default=0.0, ge=0)


class VehicleModel(_Section):
    mass_kg: float = Field(default=DEFAULT_MASS, gt=0)
    inertia_diag: List[float] = Field(default_factory=lambda: list(DEFAULT_INERTIA_DIAG))
    f_max: Optional[float] = Field(default=None, gt=0)
    tau_max: float = Field(default=DEFAULT_TAU_MAX, gt=0)

    @field_validator('inertia_diag')
    @classmethod
    def _check_inertia(cls, value: List[float]) -> List[float]:
        _vector3(value, 'inertia_diag')
        if any(v <= 0 for v in value):
            raise ValueError("inertia_diag entries must be positive")
        return value


class GainsModel(_Section):
    kp: List[float]
    kv: List[float]
    kR: float = Field(gt=0)
    kOmega: float = Field(gt=0)

    @field_validator('kp', 'kv')
    @classmethod
    def _check_diagonal(cls, value: List[float]) -> List[float]:
        _vector3(value, 'gain')
        if any(v <= 0 for v in value):
            raise ValueError("gain entries must be positive")
        return value

    @classmethod
    def default_for(cls, vehicle_mass: float) -> 'GainsModel':
        return cls(kp=[8.0 * vehicle_mass] * 3, kv=[4.0 * vehicle_mass] * 3, kR=0.01, kOmega=0.002)


class TrajectoryModel(_Section):
    type: Literal['flower', 'traverse', 'min_snap', 'hover']
    params: Dict[str, Any] = Field(default_factory=dict)


class SimModel(_Section):
    dt: float = Field(default_factory=lambda: config.get_sim_config()['dt'], gt=0)
    control_hz: float = Field(default_factory=lambda: config.get_sim_config()['control_hz'], gt=0)
    duration_s: float = Field(default=30.0, ge=0)
    log_hz: float = Field(default_factory=lambda: config.get_sim_config()['log_hz'], gt=0)
    stats_from_s: float = Field(default_factory=lambda: config.get_sim_config()['stats_from_s'], ge=0)
    # None is ideal sensing; otherwise the controller sees the state sampled at this rate
    sensing_hz: Optional[float] = Field(default=None, gt=0)
    k_taut: float = Field(default_factory=lambda: config.get_sim_config()['k_taut'], gt=0)

    @model_validator(mode='after')
    def _check_rates(self) -> 'SimModel':
        if self.dt > 0.5 / self.control_hz * (1.0 + 1e-12):
            raise ValueError(
                f"dt {self.dt} exceeds half the control period {1.0 / self.control_hz}"
            )
        return self


class ModesModel(_Section):
    tension: TensionMode = TensionMode.CLASSICAL
    feedforward: bool = True
    tension_source: TensionSource = TensionSource.DESIRED
    gravity_sign: GravitySign = GravitySign.CORRECTED

    @field_validator('tension', 'gravity_sign', mode='before')
    @classmethod
    def _resolve_alias(cls, value: Any, info) -> Any:
        if isinstance(value, str):
            enum_type = TensionMode if info.field_name == 'tension' else GravitySign
            try:
                return enum_type(value)
            except ValueError:
                return value
        return value


class InitialModel(_Section):
    # Shift of both vehicles away from their t = 0 references
    offset: Optional[List[float]] = None

    @field_validator('offset')
    @classmethod
    def _check_offset(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        return None if value is None else _vector3(value, 'offset')


class ScenarioSpec(_Section):
    schema_version: Literal[1] = SCHEMA_VERSION
    name: str = Field(min_length=1)
    cable: CableModel
    vehicle: VehicleModel = Field(default_factory=VehicleModel)
    gains: Optional[GainsModel] = None
    trajectory: TrajectoryModel
    sim: SimModel = Field(default_factory=SimModel)
    modes: ModesModel = Field(default_factory=ModesModel)
    initial: InitialModel = Field(default_factory=InitialModel)

    @model_validator(mode='after')
    def _fill_gains(self) -> 'ScenarioSpec':
        if self.gains is None:
            self.gains = GainsModel.default_for(self.vehicle.mass_kg)
        return self

    def cable_spec(self) -> CableSpec:
        return CableSpec(self.cable.length_m, self.cable.mass_kg).with_payload(self.cable.payload_kg)

    def quad_params(self) -> QuadrotorParams:
        return QuadrotorParams.for_cable(
            self.cable_spec(),
            mass=self.vehicle.mass_kg,
            inertia_diag=self.vehicle.inertia_diag,
            f_max=self.vehicle.f_max,
            tau_max=self.vehicle.tau_max,
        )

    def controller_gains(self) -> Gains:
        return Gains.from_lists(self.gains.kp, self.gains.kv, self.gains.kR, self.gains.kOmega)

    def build_trajectory(self) -> CatenaryTrajectory:
        return build_trajectory(self.trajectory.type, self.trajectory.params)

    def to_document(self) -> Dict[str, Any]:
        return self.model_dump(mode='json')

    def with_overrides(
        self,
        dt: Optional[float] = None,
        duration_s: Optional[float] = None,
        tension: Optional[str] = None,
        feedforward: Optional[bool] = None,
        log_hz: Optional[float] = None,
    ) -> 'ScenarioSpec':
        """Copy with command-line overrides applied and re-validated."""
        document = self.to_document()
        sim_updates = {'dt': dt, 'duration_s': duration_s, 'log_hz': log_hz}
        document['sim'].update({k: v for k, v in sim_updates.items() if v is not None})
        if tension is not None:
            document['modes']['tension'] = tension
        if feedforward is not None:
            document['modes']['feedforward'] = feedforward
        return parse_scenario(document)


def parse_scenario(document: Dict[str, Any]) -> ScenarioSpec:
    try:
        return ScenarioSpec.model_validate(document)
    except ValidationError as e:
        raise ScenarioError(f"invalid scenario document: {str(e)}") from e


def _builtin(
    name: str,
    cable_mass: float,
    payload: float = 0.0,
    duration: float = 30.0,
    gains: Optional[Dict[str, Any]] = None,
) -> ScenarioSpec:
    return parse_scenario({
        'name': name,
        'cable': {'length_m': 2.0, 'mass_kg': cable_mass, 'payload_kg': payload},
        'gains': gains,
        'trajectory': copy.deepcopy(BUILTIN_TRAJECTORIES[name]),
        'sim': {
            'dt': 0.001,
            'control_hz': 500.0,
            'duration_s': duration,
            'log_hz': 120.0,
            'stats_from_s': 5.0,
            'k_taut': 500.0,
        },
    })


# Stiffer loops for the span excursion of the traverse; the default gains lag it
TRAVERSE_GAINS = {'kp': [8.448] * 3, 'kv': [1.9008] * 3, 'kR': 0.04, 'kOmega': 0.00135}

BUILTIN_DESCRIPTIONS = {
    'exp1_flower': 'static lowest point, yaw ramp, oscillating span (7.6 g cable)',
    'exp1_2_rope': 'flower trajectory with a 6.23 g rope',
    'exp1_2_steel': 'flower trajectory with a 14.17 g steel cable',
    'exp1_2_cables': 'flower trajectory with a 56.39 g chain',
    'exp2_traverse': 'constant-altitude traverse with a span excursion on [4pi, 5pi)',
    'exp3_umbrella': 'minimum-snap approach through four waypoints',
    'exp4_transport': 'minimum-snap pick-up and carry with a 30 g object on the cable',
}


def builtin_scenarios() -> Dict[str, ScenarioSpec]:
    """Freshly built documents of every built-in experiment."""
    return {
        'exp1_flower': _builtin('exp1_flower', 0.0076),
        'exp1_2_rope': _builtin('exp1_2_rope', 0.00623),
        'exp1_2_steel': _builtin('exp1_2_steel', 0.01417),
        'exp1_2_cables': _builtin('exp1_2_cables', 0.05639),
        'exp2_traverse': _builtin('exp2_traverse', 0.0076, gains=TRAVERSE_GAINS),
        'exp3_umbrella': _builtin('exp3_umbrella', 0.0076),
        'exp4_transport': _builtin('exp4_transport', 0.0076, payload=0.03),
    }


def get_builtin(name: str) -> ScenarioSpec:
    scenarios = builtin_scenarios()
    if name not in scenarios:
        raise UnknownScenario(f"'{name}' is not one of {sorted(scenarios)}")
    return scenarios[name]


def read_scenario_file(path: Union[str, Path]) -> ScenarioSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise TraceIOError(f"cannot read scenario {path}: {str(e)}") from e

    try:
        if path.suffix.lower() in ('.yaml', '.yml'):
            document = yaml.safe_load(text)
        else:
            document = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ScenarioError(f"cannot parse scenario {path}: {str(e)}") from e

    if not isinstance(document, dict):
        raise ScenarioError(f"scenario {path} is not a mapping")
    return parse_scenario(document)


def load_scenario(name_or_path: Union[str, Path]) -> ScenarioSpec:
    """Built-in name, a scenario file, or a file name inside the scenario directory."""
    key = str(name_or_path)
    if key in BUILTIN_DESCRIPTIONS:
        return get_builtin(key)

    path = Path(key)
    if not path.exists():
        candidate = config.get_paths()['scenario_dir'] / path
        if candidate.exists():
            path = candidate
        elif path.suffix.lower() not in SCENARIO_SUFFIXES:
            raise UnknownScenario(f"'{key}' is neither a built-in scenario nor a file")
    return read_scenario_file(path)


def save_scenario(spec: ScenarioSpec, path: Union[str, Path]) -> Path:
    path = Path(path)
    document = spec.to_document()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if path.suffix.lower() in ('.yaml', '.yml'):
            path.write_text(yaml.safe_dump(document, sort_keys=False), encoding='utf-8')
        else:
            path.write_text(json.dumps(document, indent=2) + '\n', encoding='utf-8')
    except OSError as e:
        raise TraceIOError(f"cannot write scenario {path}: {str(e)}") from e
    logger.info(f"Scenario '{spec.name}' written to {path}")
    return path
