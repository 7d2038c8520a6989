"""Episode log files: timestamp-named CSV with a config-snapshot header.

The body is deterministic for a given (config, seed); only the filename
carries the wall clock. The header keeps enough information (full config
plus seed) to re-run and re-render the exact episode later.
"""

from __future__ import annotations

import csv
import io
from datetime import datetime
from pathlib import Path

from .config import Config, ConfigError, parse_config
from .engine import EpisodeLog

CSV_COLUMNS = (
    "t",
    "n_healthy",
    "n_afire",
    "n_burnt",
    "n_ext",
    "n_nonflam",
    "cost",
    "retardant_count",
)


def serialize_log(log: EpisodeLog) -> str:
    """Deterministic log body: '# key: value' header, then CSV records."""
    buf = io.StringIO()
    for key, value in log.config.items():
        buf.write(f"# {key}: {value}\n")
    buf.write(f"# episode_seed: {log.seed}\n")
    buf.write(f"# termination: {log.termination}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in log.records:
        c = rec.census
        writer.writerow(
            [
                rec.t,
                c.n_healthy,
                c.n_afire,
                c.n_burnt,
                c.n_ext,
                c.n_nonflam,
                rec.cost,
                rec.retardant_count,
            ]
        )
    return buf.getvalue()


def write_logfile(log: EpisodeLog, clock=None, directory=".") -> Path:
    """Write the log under YYYYMMDD-HHMMSS.csv, suffixing on collisions."""
    now = datetime.now() if clock is None else clock()
    stem = now.strftime("%Y%m%d-%H%M%S")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{stem}.csv"
    suffix = 0
    while path.exists():
        suffix += 1
        path = directory / f"{stem}-{suffix}.csv"
    path.write_text(serialize_log(log), encoding="utf-8")
    return path


def read_log_header(path) -> tuple[Config, int]:
    """Recover (config, episode seed) from a written log file."""
    config_lines = []
    seed = None
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.startswith("# "):
            break
        key, _, value = line[2:].partition(":")
        key = key.strip()
        if key == "episode_seed":
            seed = int(value.strip())
        elif key != "termination":
            config_lines.append(line[2:])
    if seed is None:
        raise ConfigError(f"{path}: missing '# episode_seed' header line")
    return parse_config("\n".join(config_lines)), seed
