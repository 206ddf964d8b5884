from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional


@dataclass(slots=True)
class LimitOptions:
    """Size bounds for the exhaustive routes and enumerations."""

    max_nc_size: int = 14
    max_tuple_degree: int = 8  # n for tuple_state
    max_tuple_length: int = 8  # word length for tuple_state
    max_matrix_degree: int = 8  # n for the matrix route
    max_lemma_k: int = 10  # noncrossing lemma checks
    max_crossing_lemma_k: int = 8  # checks over all set partitions


@dataclass(slots=True)
class LoggingOptions:
    """Logger configuration."""

    level: str = "error"


@dataclass(slots=True)
class OutputOptions:
    """Where and how a report is written."""

    format: str = "json"
    path: Optional[str] = None


@dataclass(slots=True)
class RunConfig:
    """Fully resolved configuration of one command-line run."""

    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    output: OutputOptions = field(default_factory=OutputOptions)
    logging: LoggingOptions = field(default_factory=LoggingOptions)

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


DEFAULT_LIMITS = LimitOptions()

__all__ = ["DEFAULT_LIMITS", "LimitOptions", "LoggingOptions", "OutputOptions", "RunConfig"]
