# catenary_robot/harness/trace.py
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import pandas as pd

if TYPE_CHECKING:
    from catenary_robot.harness.metrics import SummaryStats

TRACE_SCHEMA_VERSION = 1

# Column contract of CSV and JSON traces, in order
COLUMNS = [
    't',
    'xA_x', 'xA_y', 'xA_z',
    'xB_x', 'xB_y', 'xB_z',
    'xC_x', 'xC_y', 'xC_z',
    'xCd_x', 'xCd_y', 'xCd_z',
    'psi', 'psi_d',
    'span', 'span_d',
    'fA', 'fB',
    'rollA', 'pitchA', 'yawA',
    'rollB', 'pitchB', 'yawB',
    'tautFlag',
]

INT_COLUMNS = ('tautFlag',)


def empty_frame() -> pd.DataFrame:
    return frame_from_rows([])


def frame_from_rows(rows) -> pd.DataFrame:
    """DataFrame in column order with float channels and an integer taut flag."""
    frame = pd.DataFrame(list(rows), columns=COLUMNS)
    dtypes = {c: ('int64' if c in INT_COLUMNS else 'float64') for c in COLUMNS}
    return frame.astype(dtypes)


@dataclass
class RunTrace:
    """Time series of one run plus its summary statistics."""

    scenario: str
    frame: pd.DataFrame
    summary: Optional['SummaryStats'] = None
    diverged: bool = False
    message: str = ''

    def __len__(self) -> int:
        return len(self.frame)

    @property
    def times(self) -> pd.Series:
        return self.frame['t']
