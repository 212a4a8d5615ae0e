"""
CSV and JSON reports for experiment records.

Both formats share the ExperimentRecord field names as column/key names and
render reals with 12 significant digits, so two runs with equal configs
produce byte-identical files.
"""
import io
import json
import os
from typing import Any, Dict, List, Optional

import pandas as pd

from mu_lab.core.constants import CSV_SIGNIFICANT_DIGITS, REPORT_FORMATS, SCHEMA_VERSION
from mu_lab.core.exceptions import ConfigError
from mu_lab.models.models import ExperimentConfig, ExperimentRecord
from mu_lab.utils.logging_config import get_logger

# Set up logging
logger = get_logger(__name__)

FLOAT_FORMAT = f"%.{CSV_SIGNIFICANT_DIGITS}g"


def _round_real(value: Any) -> Any:
    if isinstance(value, float):
        return float(FLOAT_FORMAT % value)
    return value


def render_csv(records: List[ExperimentRecord]) -> str:
    """Header row with the record field names, then one row per record."""
    columns = ExperimentRecord.field_names()
    frame = pd.DataFrame([r.to_dict() for r in records], columns=columns)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    return buffer.getvalue()


def render_json(records: List[ExperimentRecord], experiment: Optional[ExperimentConfig] = None,
                summary: Optional[Dict[str, Any]] = None) -> str:
    """
    JSON document with schema version, config echo, summary and records.

    Args:
        records: Trial records
        experiment: Config echoed under 'meta' (null when not given)
        summary: Optional summary statistics

    Returns:
        The document text, newline terminated
    """
    document = {
        'schema_version': SCHEMA_VERSION,
        'meta': experiment.to_dict() if experiment is not None else None,
        'summary': {k: _round_real(v) for k, v in summary.items()} if summary else None,
        'records': [{k: _round_real(v) for k, v in r.to_dict().items()} for r in records],
    }
    return json.dumps(document, indent=2) + "\n"


def render_report(records: List[ExperimentRecord], fmt: str,
                  experiment: Optional[ExperimentConfig] = None,
                  summary: Optional[Dict[str, Any]] = None) -> str:
    """Render records in `fmt` ('csv' or 'json')."""
    if not records:
        raise ConfigError("cannot report an empty record list")
    if fmt not in REPORT_FORMATS:
        raise ConfigError(f"report format must be one of {REPORT_FORMATS}, got {fmt!r}")
    if fmt == 'csv':
        return render_csv(records)
    return render_json(records, experiment, summary)


def emit_report(records: List[ExperimentRecord], fmt: str, destination: str,
                experiment: Optional[ExperimentConfig] = None,
                summary: Optional[Dict[str, Any]] = None) -> str:
    """
    Write a report file.

    Args:
        records: Nonempty list of trial records
        fmt: 'csv' or 'json'
        destination: Output path; parent directories are created
        experiment: Config echoed in JSON reports
        summary: Summary statistics embedded in JSON reports

    Returns:
        The path written

    Raises:
        OSError: the destination is not writable
    """
    text = render_report(records, fmt, experiment, summary)
    parent = os.path.dirname(os.path.abspath(destination))
    os.makedirs(parent, exist_ok=True)
    with open(destination, 'w', newline='') as f:
        f.write(text)
    logger.info(f"Wrote {len(records)} records as {fmt} to {destination}")
    return destination
