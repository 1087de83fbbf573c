"""Deterministic experiment outputs: CSV, JSON summary, echo, manifest.

Nothing time-dependent is ever written; rerunning the same config and
seed must reproduce every byte.  Floats are formatted with shortest
round-trip repr.
"""

from __future__ import annotations

import hashlib
import json
import subprocess
from pathlib import Path

import yaml

from . import __version__
from .config import config_to_dict
from .experiments import ExperimentConfig, ExperimentResult

CSV_COLUMNS = (
    "experiment",
    "quantity",
    "n",
    "epsilon",
    "estimate",
    "stderr",
    "trials",
    "theory_value",
    "theory_ref",
)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def records_to_csv_text(result: ExperimentResult) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for rec in result.records:
        s = rec.stats
        ref = s.theory_ref.replace(",", ";")
        lines.append(
            ",".join(
                [
                    result.name,
                    rec.quantity,
                    str(rec.n),
                    _fmt(rec.epsilon),
                    _fmt(float(s.estimate)),
                    _fmt(float(s.stderr)),
                    str(s.trials),
                    _fmt(None if s.theory_value is None else float(s.theory_value)),
                    ref,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def version_string() -> str:
    """git-describe style when available, package version otherwise."""
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--tags"],
            cwd=Path(__file__).parent,
            capture_output=True,
            text=True,
            timeout=10,
        )
        if out.returncode == 0 and out.stdout.strip():
            return f"rmtlab-{__version__}+g{out.stdout.strip()}"
    except (OSError, subprocess.SubprocessError):
        pass
    return f"rmtlab-{__version__}"


def summary_dict(result: ExperimentResult, config: ExperimentConfig, seed_info: dict) -> dict:
    return {
        "experiment": result.name,
        "version": version_string(),
        "seed": seed_info,
        "config": config_to_dict(config),
        "fits": {
            key: {
                "slope": fit.slope,
                "intercept": fit.intercept,
                "epsilon_range": list(fit.epsilon_range),
                "r_squared": fit.r_squared,
                "n_points": fit.n_points,
            }
            for key, fit in result.fits.items()
        },
        "notes": list(result.notes),
        "extras": result.extras,
    }


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_outputs(
    result: ExperimentResult,
    config: ExperimentConfig,
    out_dir,
    seed_info: dict | None = None,
    figures: bool = True,
) -> dict[str, str]:
    """Write all artifacts into out_dir; returns the file manifest.

    The manifest maps relative filenames to SHA-256 digests and is itself
    written last as manifest.json.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seed_info = seed_info or {"master_seed": config.master_seed, "overridden": False}

    (out / "records.csv").write_text(records_to_csv_text(result))
    summary = summary_dict(result, config, seed_info)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    (out / "config_echo.yaml").write_text(yaml.safe_dump(config_to_dict(config), sort_keys=True))

    written = ["records.csv", "summary.json", "config_echo.yaml"]
    if figures:
        from .figures import render_figures

        for path in render_figures(result, out):
            written.append(str(Path(path).relative_to(out)))

    manifest = {name: _sha256(out / name) for name in sorted(written)}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest
