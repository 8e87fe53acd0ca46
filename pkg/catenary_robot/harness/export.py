# catenary_robot/harness/export.py
"""Trace files (CSV, JSON) and static SVG plots."""
import json
import math
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import matplotlib
import pandas as pd

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

from catenary_robot.errors import ChannelError, TraceIOError  # noqa: E402
from catenary_robot.harness.metrics import SummaryStats  # noqa: E402
from catenary_robot.harness.trace import (  # noqa: E402
    COLUMNS,
    INT_COLUMNS,
    TRACE_SCHEMA_VERSION,
    RunTrace,
    frame_from_rows,
)
from catenary_robot.utils.logger import get_logger  # noqa: E402

logger = get_logger(__name__)

FLOAT_FORMAT = '%.17g'

# Panels per channel group: (measured column, desired column or None)
CHANNEL_GROUPS: Dict[str, List[Tuple[str, Optional[str]]]] = {
    'x_C': [('xC_x', 'xCd_x'), ('xC_y', 'xCd_y'), ('xC_z', 'xCd_z')],
    'span': [('span', 'span_d')],
    'yaw': [('psi', 'psi_d')],
    'thrust': [('fA', None), ('fB', None)],
    'attitude': [
        ('rollA', None), ('pitchA', None), ('yawA', None),
        ('rollB', None), ('pitchB', None), ('yawB', None),
    ],
    'quads': [
        ('xA_x', None), ('xA_y', None), ('xA_z', None),
        ('xB_x', None), ('xB_y', None), ('xB_z', None),
    ],
}


def valid_channels() -> List[str]:
    return list(CHANNEL_GROUPS) + COLUMNS[1:]


def export_csv(trace: RunTrace, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        trace.frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    except OSError as e:
        raise TraceIOError(f"cannot write trace {path}: {str(e)}") from e
    logger.info(f"Trace written to {path} ({len(trace)} rows)")
    return path


def _json_value(column: str, value) -> Union[int, float, None]:
    if column in INT_COLUMNS:
        return int(value)
    value = float(value)
    # Unavailable measurements (taut cable) are null
    return value if math.isfinite(value) else None


def _json_rows(trace: RunTrace) -> List[list]:
    rows = []
    for record in trace.frame.itertuples(index=False):
        rows.append([_json_value(column, value) for column, value in zip(COLUMNS, record)])
    return rows


def export_json(trace: RunTrace, path: Union[str, Path]) -> Path:
    path = Path(path)
    document = {
        'schema_version': TRACE_SCHEMA_VERSION,
        'scenario': trace.scenario,
        'diverged': trace.diverged,
        'message': trace.message,
        'columns': COLUMNS,
        'rows': _json_rows(trace),
        'summary': trace.summary.to_dict() if trace.summary is not None else None,
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(document, allow_nan=False), encoding='utf-8')
    except OSError as e:
        raise TraceIOError(f"cannot write trace {path}: {str(e)}") from e
    logger.info(f"Trace written to {path} ({len(trace)} rows)")
    return path


def export(trace: RunTrace, fmt: str, path: Union[str, Path]) -> Path:
    """Write a trace as 'csv' or 'json'."""
    writers = {'csv': export_csv, 'json': export_json}
    if fmt not in writers:
        raise ValueError(f"unknown trace format '{fmt}', expected csv or json")
    return writers[fmt](trace, path)


def read_trace(path: Union[str, Path]) -> RunTrace:
    """Load a CSV or JSON trace; CSV traces carry no summary."""
    path = Path(path)
    if path.suffix.lower() == '.json':
        return _read_json(path)
    return _read_csv(path)


def _read_csv(path: Path) -> RunTrace:
    try:
        frame = pd.read_csv(path, float_precision='round_trip')
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise TraceIOError(f"cannot read trace {path}: {str(e)}") from e
    if list(frame.columns) != COLUMNS:
        raise TraceIOError(f"{path} does not have the trace columns")
    return RunTrace(scenario=path.stem, frame=frame_from_rows(frame.itertuples(index=False)))


def _read_json(path: Path) -> RunTrace:
    try:
        document = json.loads(path.read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as e:
        raise TraceIOError(f"cannot read trace {path}: {str(e)}") from e
    if document.get('schema_version') != TRACE_SCHEMA_VERSION or document.get('columns') != COLUMNS:
        raise TraceIOError(f"{path} is not a version {TRACE_SCHEMA_VERSION} trace")

    summary = document.get('summary')
    return RunTrace(
        scenario=document.get('scenario', path.stem),
        frame=frame_from_rows(document['rows']),
        summary=SummaryStats.from_dict(summary) if summary is not None else None,
        diverged=bool(document.get('diverged', False)),
        message=document.get('message', ''),
    )


def resolve_channels(channels: Union[str, Iterable[str]]) -> List[Tuple[str, Optional[str]]]:
    """Panels for group names and raw column names."""
    if isinstance(channels, str):
        channels = [c.strip() for c in channels.split(',') if c.strip()]
    channels = list(channels)
    if not channels:
        raise ChannelError(f"no channels given; valid channels: {', '.join(valid_channels())}")

    panels = []
    for name in channels:
        if name in CHANNEL_GROUPS:
            panels.extend(CHANNEL_GROUPS[name])
        elif name in COLUMNS[1:]:
            panels.append((name, None))
        else:
            raise ChannelError(
                f"unknown channel '{name}'; valid channels: {', '.join(valid_channels())}"
            )
    return panels


def plot(trace: RunTrace, channels: Union[str, Iterable[str]], path: Union[str, Path]) -> Path:
    """SVG of the selected channels against time, desired values dashed."""
    panels = resolve_channels(channels)
    path = Path(path)
    frame = trace.frame

    # Fixed ids and no timestamp keep the file a function of the trace
    plt.rcParams['svg.hashsalt'] = 'catenary-robot'
    fig, axes = plt.subplots(len(panels), 1, figsize=(8, 2.2 * len(panels)), sharex=True,
                             squeeze=False)
    for ax, (column, desired) in zip(axes[:, 0], panels):
        ax.plot(frame['t'], frame[column], label=column)
        if desired is not None:
            ax.plot(frame['t'], frame[desired], linestyle='--', label=desired)
        ax.set_ylabel(column)
        ax.grid(True, alpha=0.3)
        ax.legend(loc='upper right', fontsize='small')
    axes[-1, 0].set_xlabel('t [s]')
    fig.suptitle(trace.scenario)
    fig.tight_layout()

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format='svg', metadata={'Date': None})
    except OSError as e:
        raise TraceIOError(f"cannot write plot {path}: {str(e)}") from e
    finally:
        plt.close(fig)
    logger.info(f"Plot written to {path}")
    return path
