"""Access to the committed FCIDUMP fixtures shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .integrals import FixtureMetadata, SpatialIntegrals, load_fcidump, load_metadata

BENCHMARK_FIXTURES = ("h2", "lih", "hf", "beh2", "h2o", "h2s", "nh3")


def data_dir() -> Path:
    return Path(resources.files("wahtor") / "data")


def fixture_paths(name: str) -> tuple[Path, Path]:
    base = data_dir()
    fcidump = base / f"{name}.fcidump"
    metadata = base / f"{name}.json"
    if not fcidump.exists():
        raise FileNotFoundError(f"no committed fixture named {name!r}")
    return fcidump, metadata


def load_fixture(name: str) -> tuple[SpatialIntegrals, FixtureMetadata]:
    fcidump, metadata = fixture_paths(name)
    return load_fcidump(fcidump), load_metadata(metadata)
