"""
Runtime Configuration

Defaults for seeds, search budgets, parallelism and console verbosity.
Values come from the environment (optionally a local ``.env`` file) so that
long catalog sweeps can be tuned without touching the command line.
"""

import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


DEFAULT_BUDGET_TEXT = "2,5,10000"


@dataclass(frozen=True)
class Budget:
    """
    Search budget for exploring the symplectic cone.

    Attributes:
        grid_bound: Largest absolute value of a grid coordinate
        support: Largest number of nonzero grid coordinates
        samples: Number of seeded random samples
        pencils: Lines through non-generic points tested for density
        pencil_points: Test points per line
    """

    grid_bound: int = 2
    support: int = 5
    samples: int = 10000
    pencils: int = 5
    pencil_points: int = 12

    def __post_init__(self):
        if self.grid_bound < 0 or self.support < 0 or self.samples < 0:
            raise ValueError(f"budget components must be non-negative: {self.as_text()}")

    @classmethod
    def parse(cls, text: str) -> "Budget":
        """
        Parse a budget written as ``grid-bound,support,samples``.

        ``default`` and ``zero`` are accepted as shorthands.
        """
        cleaned = text.strip().lower()
        if cleaned == "default":
            return cls.default()
        if cleaned in ("zero", "none"):
            return cls.zero()
        parts = [part.strip() for part in cleaned.split(",")]
        if len(parts) != 3:
            raise ValueError(f"budget must look like 'grid-bound,support,samples', got {text!r}")
        try:
            bound, support, samples = (int(part) for part in parts)
        except ValueError:
            raise ValueError(f"budget components must be integers, got {text!r}")
        return cls(bound, support, samples)

    @classmethod
    def default(cls) -> "Budget":
        return cls.parse(DEFAULT_BUDGET_TEXT)

    @classmethod
    def zero(cls) -> "Budget":
        return cls(0, 0, 0, 0, 0)

    @property
    def is_zero(self) -> bool:
        """True when the budget evaluates no cone points at all."""
        return self.samples == 0 and (self.grid_bound == 0 or self.support == 0)

    def covers(self, other: "Budget") -> bool:
        """True when every component is at least as large as ``other``'s."""
        return (
            self.grid_bound >= other.grid_bound
            and self.support >= other.support
            and self.samples >= other.samples
        )

    def as_text(self) -> str:
        return f"{self.grid_bound},{self.support},{self.samples}"


@dataclass(frozen=True)
class Settings:
    """Process-wide defaults resolved from the environment."""

    seed: int
    budget: Budget
    jobs: int
    verbose: bool


def load_settings(environ: Optional[dict] = None) -> Settings:
    """
    Resolve settings from the environment.

    Args:
        environ: Optional mapping used instead of ``os.environ`` (tests)

    Returns:
        Settings record

    Raises:
        ValueError: if a variable holds an unparsable value
    """
    if environ is not None:
        getter = environ.get
    else:
        getter = os.getenv

    def read_int(name: str, default: int) -> int:
        raw = getter(name)
        if raw is None or str(raw).strip() == "":
            return default
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{name} must be an integer, got {raw!r}")

    seed = read_int("NILHARMONIC_SEED", 0)
    if seed < 0:
        raise ValueError(f"NILHARMONIC_SEED must be non-negative, got {seed}")

    budget_text = getter("NILHARMONIC_BUDGET") or DEFAULT_BUDGET_TEXT
    try:
        budget = Budget.parse(budget_text)
    except ValueError as exc:
        raise ValueError(f"NILHARMONIC_BUDGET: {exc}")

    jobs = read_int("NILHARMONIC_JOBS", os.cpu_count() or 1)
    if jobs < 1:
        raise ValueError(f"NILHARMONIC_JOBS must be at least 1, got {jobs}")

    verbose_raw = (getter("NILHARMONIC_VERBOSE") or "").strip().lower()
    verbose = verbose_raw in ("1", "true", "yes", "on")

    return Settings(seed=seed, budget=budget, jobs=jobs, verbose=verbose)
