import io
import logging
from contextlib import contextmanager

from catenary_robot.harness import parse_scenario, run
from catenary_robot.utils.logger import get_logger, log_error, log_warning, log_info


@contextmanager
def captured(name):
    target = get_logger(name)
    stream = io.StringIO()
    handler = logging.StreamHandler(stream)
    handler.setLevel(logging.INFO)
    target.addHandler(handler)
    try:
        yield stream
    finally:
        target.removeHandler(handler)


def test_module_loggers_are_cached_and_isolated():
    engine_logger = get_logger("catenary_robot.harness.engine")
    assert engine_logger is get_logger("catenary_robot.harness.engine")
    assert engine_logger is not get_logger("catenary_robot.dynamics.cable")
    assert engine_logger.level == logging.INFO
    assert engine_logger.handlers, "Logger should have at least one handler"
    assert engine_logger.propagate is False


def test_run_reports_start_and_clamped_commands():
    # Thrust limit below the vehicle weight: every command is clamped
    spec = parse_scenario({
        "name": "underpowered",
        "cable": {"length_m": 2.0, "mass_kg": 0.0076},
        "vehicle": {"f_max": 1.0},
        "trajectory": {"type": "hover", "params": {"x_c": [0.0, 0.0, 0.5]}},
        "sim": {"duration_s": 0.02},
    })
    with captured("catenary_robot.harness.engine") as stream:
        run(spec)

    output = stream.getvalue()
    assert "Running 'underpowered'" in output
    assert "clamped commands" in output


def test_logging_helpers_emit_messages():
    with captured("catenary_robot") as stream:
        log_info("trace written")
        log_warning("cable became taut")
        log_error(Exception("state left the valid range"), context="run exp1_flower")

    output = stream.getvalue()
    assert "trace written" in output
    assert "cable became taut" in output
    assert "run exp1_flower" in output
    assert "state left the valid range" in output


def test_file_logging_writes_to_log_dir(monkeypatch, tmp_path):
    monkeypatch.setenv("LOG_TO_FILE", "true")
    monkeypatch.setenv("LOG_DIR", str(tmp_path / "logs"))

    file_logger = get_logger("test_logger_file_output")
    try:
        file_logger.info("written to disk")
        for handler in file_logger.handlers:
            handler.flush()
    finally:
        for handler in list(file_logger.handlers):
            handler.close()
            file_logger.removeHandler(handler)

    log_file = tmp_path / "logs" / "catenary_robot.log"
    assert log_file.exists()
    assert "written to disk" in log_file.read_text(encoding="utf-8")
