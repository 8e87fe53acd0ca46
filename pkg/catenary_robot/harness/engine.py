# catenary_robot/harness/engine.py
"""Closed-loop scenario runs.

One run advances the coupled system at the integration step, recomputes the
commands at the control rate (zero-order hold in between) and records a
trace row at the logging rate.
"""
import math
from typing import List, Optional

import numpy as np

from catenary_robot.catenary.solver import DEFAULT_TOL
from catenary_robot.control.controller import CatenaryController, VehicleCommand
from catenary_robot.dynamics.cable import CoupledState, lowest_point_from_state
from catenary_robot.dynamics.simulator import step
from catenary_robot.errors import DegenerateGeometry, NumericalDivergence, TautCable
from catenary_robot.harness.metrics import stats_or_empty
from catenary_robot.harness.scenario import ScenarioSpec
from catenary_robot.harness.trace import RunTrace, frame_from_rows
from catenary_robot.trajectory.frames import CatenarySetpoint, CatenaryTrajectory
from catenary_robot.utils.config import config
from catenary_robot.utils.logger import get_logger
from catenary_robot.utils.so3 import roll_pitch_yaw, wrap_angle

logger = get_logger(__name__)


def _ticks(rate_hz: float, dt: float) -> int:
    """Integration steps per period of a rate, at least one."""
    return max(1, int(round(1.0 / (rate_hz * dt))))


def log_steps(duration: float, log_hz: float, dt: float) -> List[int]:
    """Step indices nearest to each logging instant k / log_hz."""
    last_step = int(math.floor(duration / dt + 1e-9))
    count = int(math.floor(duration * log_hz + 1e-9)) + 1
    steps = [min(int(round(k / (log_hz * dt))), last_step) for k in range(count)]
    return steps


class ScenarioEngine:
    """Owns the state of a single run."""

    def __init__(self, spec: ScenarioSpec, tol: float = DEFAULT_TOL):
        self.spec = spec
        self.tol = tol
        self.cable = spec.cable_spec()
        self.params = spec.quad_params()
        self.trajectory: CatenaryTrajectory = spec.build_trajectory()
        self.controller = CatenaryController(
            self.cable,
            self.params,
            gains=spec.controller_gains(),
            tension_mode=spec.modes.tension,
            feedforward=spec.modes.feedforward,
            tension_source=spec.modes.tension_source,
            gravity_sign=spec.modes.gravity_sign,
            k_taut=spec.sim.k_taut,
            tol=tol,
        )
        self.taut_events = 0

    def _measure(self, state: CoupledState, psi_d: float):
        if state.taut:
            return np.full(3, np.nan), math.nan, math.nan
        try:
            lowest = lowest_point_from_state(state, self.tol)
        except (DegenerateGeometry, TautCable) as e:
            logger.debug(f"Lowest point unavailable: {str(e)}")
            return np.full(3, np.nan), math.nan, math.nan
        # Measured yaw kept on the branch of the unwrapped desired yaw
        psi = psi_d + wrap_angle(lowest.psi - psi_d)
        return lowest.x_c, psi, lowest.s

    def _row(
        self,
        t: float,
        state: CoupledState,
        sp: CatenarySetpoint,
        cmd_a: VehicleCommand,
        cmd_b: VehicleCommand,
    ) -> list:
        x_c, psi, span = self._measure(state, sp.psi)
        return [
            t,
            *state.quad_a.x, *state.quad_b.x,
            *x_c, *sp.x_c,
            psi, sp.psi,
            span, sp.s,
            cmd_a.command.f, cmd_b.command.f,
            *roll_pitch_yaw(state.quad_a.R), *roll_pitch_yaw(state.quad_b.R),
            int(state.taut),
        ]

    def run(self) -> RunTrace:
        sim = self.spec.sim
        dt = sim.dt
        last_step = int(math.floor(sim.duration_s / dt + 1e-9))
        control_every = _ticks(sim.control_hz, dt)
        sensing_every: Optional[int] = None if sim.sensing_hz is None else _ticks(sim.sensing_hz, dt)
        pending_logs = log_steps(sim.duration_s, sim.log_hz, dt)

        state = self.controller.initial_state(self.trajectory(0.0), self.spec.initial.offset)
        sensed = state
        was_taut = state.taut
        rows = []
        diverged = False
        message = ''

        logger.info(
            f"Running '{self.spec.name}': {sim.duration_s} s at dt={dt}, "
            f"control every {control_every} steps"
        )

        log_index = 0
        cmd_a = cmd_b = None
        for k in range(last_step + 1):
            t = k * dt
            if sensing_every is None or k % sensing_every == 0:
                sensed = state
            if cmd_a is None or k % control_every == 0:
                cmd_a, cmd_b = self.controller.compute(self.trajectory(t), sensed)

            while log_index < len(pending_logs) and pending_logs[log_index] == k:
                rows.append(self._row(t, state, self.trajectory(t), cmd_a, cmd_b))
                log_index += 1

            if k == last_step:
                break

            try:
                state = step(state, cmd_a.command, cmd_b.command, dt, self.params,
                             sim.k_taut, self.tol)
            except NumericalDivergence as e:
                diverged = True
                message = str(e)
                logger.error(f"Run '{self.spec.name}' diverged at t={t:.3f} s: {message}")
                break

            if state.taut != was_taut:
                self.taut_events += 1
                logger.warning(
                    f"Cable became {'taut' if state.taut else 'slack'} at t={t + dt:.3f} s "
                    f"(separation {state.separation:.4f} m)"
                )
                was_taut = state.taut

        if self.controller.clamp_count:
            logger.warning(
                f"Run '{self.spec.name}': {self.controller.clamp_count} clamped commands"
            )

        trace = RunTrace(
            scenario=self.spec.name,
            frame=frame_from_rows(rows),
            diverged=diverged,
            message=message,
        )
        trace.summary = stats_or_empty(trace, sim.stats_from_s)
        return trace


def run(spec: ScenarioSpec) -> RunTrace:
    """Execute one scenario and return its trace with summary statistics."""
    return ScenarioEngine(spec, tol=config.get_solver_config()['tol']).run()
