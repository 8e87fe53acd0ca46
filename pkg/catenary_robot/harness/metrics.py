# catenary_robot/harness/metrics.py
import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from catenary_robot.errors import EmptyWindow
from catenary_robot.harness.trace import RunTrace
from catenary_robot.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_WINDOW_START = 5.0


@dataclass(frozen=True)
class SummaryStats:
    """Signed-error mean and population standard deviation over a window.

    Errors are measured minus desired. ``empty`` marks a window without
    samples, in which case every statistic is NaN.
    """

    window_start: float
    samples: int
    mu_x: float
    mu_y: float
    mu_z: float
    sigma_x: float
    sigma_y: float
    sigma_z: float
    mu_psi: float
    sigma_psi: float
    mu_s: float
    sigma_s: float
    rms_position: float
    rms_psi: float
    rms_s: float
    empty: bool = False

    @classmethod
    def empty_window(cls, window_start: float) -> 'SummaryStats':
        values = {f.name: math.nan for f in fields(cls)}
        values.update(window_start=window_start, samples=0, empty=True)
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        # NaN is not valid JSON; an empty summary writes nulls
        return {
            k: (None if isinstance(v, float) and math.isnan(v) else v)
            for k, v in asdict(self).items()
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SummaryStats':
        values = {
            f.name: (math.nan if data.get(f.name) is None else data[f.name])
            for f in fields(cls)
        }
        values['samples'] = int(values['samples'])
        values['empty'] = bool(values['empty'])
        return cls(**values)


class TrackingMetrics:
    """Error channels of a trace frame."""

    def position_errors(self, df: pd.DataFrame) -> pd.DataFrame:
        """Signed lowest-point error per axis"""
        return pd.DataFrame({
            axis: df[f'xC_{axis}'] - df[f'xCd_{axis}'] for axis in ('x', 'y', 'z')
        })

    def yaw_error(self, df: pd.DataFrame) -> pd.Series:
        return df['psi'] - df['psi_d']

    def span_error(self, df: pd.DataFrame) -> pd.Series:
        return df['span'] - df['span_d']

    def window(self, df: pd.DataFrame, start: float, end: Optional[float] = None) -> pd.DataFrame:
        """Rows with start <= t (<= end) and a measured lowest point"""
        mask = df['t'] >= start
        if end is not None:
            mask &= df['t'] <= end
        selected = df.loc[mask]
        return selected.dropna(subset=['xC_x', 'xC_y', 'xC_z', 'psi', 'span'])

    def summarize(self, df: pd.DataFrame, start: float) -> SummaryStats:
        selected = self.window(df, start)
        if selected.empty:
            raise EmptyWindow(f"no samples with t >= {start}")

        position = self.position_errors(selected)
        yaw = self.yaw_error(selected)
        span = self.span_error(selected)

        mu = position.mean()
        sigma = position.std(ddof=0)
        return SummaryStats(
            window_start=float(start),
            samples=int(len(selected)),
            mu_x=float(mu['x']),
            mu_y=float(mu['y']),
            mu_z=float(mu['z']),
            sigma_x=float(sigma['x']),
            sigma_y=float(sigma['y']),
            sigma_z=float(sigma['z']),
            mu_psi=float(yaw.mean()),
            sigma_psi=float(yaw.std(ddof=0)),
            mu_s=float(span.mean()),
            sigma_s=float(span.std(ddof=0)),
            rms_position=float(np.sqrt((position ** 2).sum(axis=1).mean())),
            rms_psi=float(np.sqrt((yaw ** 2).mean())),
            rms_s=float(np.sqrt((span ** 2).mean())),
        )


def stats(trace: RunTrace, window_start: float = DEFAULT_WINDOW_START) -> SummaryStats:
    """Summary statistics of a trace over t >= window_start."""
    return TrackingMetrics().summarize(trace.frame, window_start)


def stats_or_empty(trace: RunTrace, window_start: float = DEFAULT_WINDOW_START) -> SummaryStats:
    try:
        return stats(trace, window_start)
    except EmptyWindow as e:
        logger.warning(f"Statistics window is empty: {str(e)}")
        return SummaryStats.empty_window(window_start)
