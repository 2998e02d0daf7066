import csv
import io
import math
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from pydantic import BaseModel

from sustain5g import __version__
from sustain5g.config import get_settings
from sustain5g.errors import ConfigFileError
from sustain5g.models.run_models import RunConfig, RunManifest


def load_run_config(path: Optional[str]) -> RunConfig:
    """Parse and validate a JSON configuration file; no path means all defaults."""
    if path is None:
        return RunConfig()
    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigFileError(f"config file not found: {config_path}")
    return RunConfig.model_validate_json(config_path.read_text(encoding="utf-8"))


def format_number(value: Optional[float]) -> str:
    """15 significant digits in scientific notation; empty for missing values."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return f"{value:.14e}"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def model_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


class OutputDirectory:
    """Writes result files under ``--out`` and pairs them with a manifest."""

    def __init__(self, root: Path, command: str, argv: List[str],
                 config_path: Optional[str], seed: Optional[int] = None,
                 run_config: Optional[RunConfig] = None):
        self.root = root
        self.root.mkdir(parents=True, exist_ok=True)
        self.manifest = RunManifest(
            config_path=config_path,
            run_config=run_config,
            settings=get_settings().model_dump(),
            command=command,
            argv=argv,
            seed=seed,
            tool_version=__version__,
        )

    def write(self, name: str, text: str) -> Path:
        path = self.root / name
        path.write_text(text, encoding="utf-8", newline="\n")
        self.manifest.outputs.append(name)
        return path

    def close(self) -> Path:
        path = self.root / "manifest.json"
        path.write_text(model_json(self.manifest), encoding="utf-8", newline="\n")
        return path
