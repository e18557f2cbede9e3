from pathlib import Path
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict

# .env file is in arrayeit/ directory (parent of src/)
# Only use if it exists (CI uses environment variables directly)
# Path: core/config.py -> arrayeit -> src -> arrayeit (package root) -> .env
_ENV_FILE = Path(__file__).parent.parent.parent.parent / ".env"
_ENV_FILE = _ENV_FILE if _ENV_FILE.exists() else None


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="ARRAYEIT_",
        env_file=_ENV_FILE,
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Worker threads for grid evaluation (ARRAYEIT_THREADS)
    # None = min(32, cpu count); 1 = serial
    threads: int | None = None

    # Frequencies closer than this (units of Γ) are treated as one emitter
    degeneracy_tol: float = 1e-9

    # Two poles closer than this make the partial-fraction expansion unreliable
    pole_separation_tol: float = 1e-8

    # Dense steady-state / spectrum solves up to this many atoms (4^N unknowns)
    dense_max_atoms: int = 5

    # Sparse steady-state solves beyond dense_max_atoms, up to this many atoms
    max_drive_atoms: int = 8

    # Largest array accepted when building the 2^N drive Hamiltonian
    max_hamiltonian_atoms: int = 12

    # Logging level applied by the CLI
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"


settings = Settings()
