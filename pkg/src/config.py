"""Size caps and work budgets, with environment-variable fallbacks."""
import os
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional

from .errors import BadParameter

ENV_PREFIX = "GRPGEO_"


@dataclass(frozen=True)
class Config:
    max_order: int = 128          # largest group (and lattice parent) accepted
    max_lattice: int = 50_000     # largest subgroup count enumerated
    max_width: int = 4            # largest |U| for closures and coordinate groups
    budget: int = 1_000_000       # element operations per enumeration
    associativity_cap: int = 256  # exhaustive associativity check up to this order
    jobs: int = 1
    timing: bool = False
    seed: int = 0

    @classmethod
    def from_env(cls, environ: Optional[Dict[str, str]] = None) -> "Config":
        env = os.environ if environ is None else environ
        values: Dict[str, Any] = {}
        for name in ("max_order", "max_lattice", "max_width", "budget", "jobs"):
            raw = env.get(ENV_PREFIX + name.upper())
            if raw is None:
                continue
            try:
                values[name] = int(raw)
            except ValueError:
                raise BadParameter(f"{ENV_PREFIX}{name.upper()}={raw!r} is not an integer")
        return cls(**values).validated()

    def validated(self) -> "Config":
        for name in ("max_order", "max_lattice", "max_width", "budget", "jobs"):
            if getattr(self, name) < 1:
                raise BadParameter(f"{name} must be positive, got {getattr(self, name)}")
        return self

    def replace(self, **changes: Any) -> "Config":
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes).validated()

    def snapshot(self) -> Dict[str, Any]:
        """Report-embedded view; jobs is left out so parallel runs stay byte-identical."""
        data = asdict(self)
        data.pop("jobs")
        return data


def get_config(config: Optional[Config] = None) -> Config:
    return config if config is not None else Config.from_env()
