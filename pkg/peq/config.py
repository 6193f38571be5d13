"""
Configuration for peq computations.

Holds the dense-materialization bound, batch worker count and benchmark seed,
and the guard that every dense code path calls before allocating.
"""

from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional
import logging
import os

from .constants import DEFAULT_MAX_ENTRIES, MAX_ENTRIES_ENV
from .errors import CapacityError

logger = logging.getLogger(__name__)


@dataclass
class PEQConfig:
    """Configuration for a peq session.

    Attributes
    ----------
    max_entries : int
        Largest number of scalar entries any dense tensor or matrix may have.
        Protects the dense oracle, ``layer_to_dense`` and ``verify_basis``.
    workers : int
        Thread count for batch application (1 = sequential).
    seed : int or None
        Seed for benchmark inputs (None = non-deterministic).
    """

    max_entries: int = DEFAULT_MAX_ENTRIES
    workers: int = 1
    seed: Optional[int] = None

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, **overrides) -> "PEQConfig":
        """Build a config from ``PEQ_MAX_ENTRIES``; keyword overrides win."""
        environ = os.environ if environ is None else environ
        values: Dict[str, Any] = {}
        raw = environ.get(MAX_ENTRIES_ENV)
        if raw is not None and raw.strip():
            try:
                values["max_entries"] = int(raw)
            except ValueError:
                raise ValueError(f"{MAX_ENTRIES_ENV} must be an integer, got {raw!r}") from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        config = cls(**values)
        config.validate()
        return config

    def validate(self):
        """Validate configuration parameters."""
        if self.max_entries < 1:
            raise ValueError(f"max_entries must be positive, got {self.max_entries}")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")

    def ensure_capacity(self, what: str, entries: int):
        """Raise CapacityError if ``entries`` exceeds ``max_entries``."""
        if entries > self.max_entries:
            raise CapacityError(what, entries, self.max_entries)
        logger.debug(f"{what}: {entries} entries (limit {self.max_entries})")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for logging."""
        return {
            "max_entries": self.max_entries,
            "workers": self.workers,
            "seed": self.seed,
        }


def resolve(config: Optional[PEQConfig]) -> PEQConfig:
    """Return ``config`` or a default one."""
    return PEQConfig() if config is None else config
