import json
import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .exceptions import ConfigurationError, SizeGuardError

logger = logging.getLogger(__name__)

GUARD_ENV_VAR = "KLEISLIKIT_GUARD"
DEFAULTS_PATH = Path(__file__).parent / "data" / "defaults.json"


@dataclass(frozen=True)
class EngineConfig:
    """
    Configuration for the enumeration engine.

    Attributes:
    enumeration_guard (int): Largest search space any enumeration may visit. Default is 10**7.
    uniqueness_guard (int): Largest candidate space visited by uniqueness searches
        (factorisations and lifts). Default is 10**5.
    debug_pasting (bool): Re-evaluate every pasting under random re-association. Default is False.
    reassociation_trials (int): Number of random rewrites per debug evaluation. Default is 1000.
    seed (int): Seed for the re-association generator. Default is 0.

    Raises:
    ConfigurationError: If a guard is not positive or reassociation_trials is negative.

    """
    enumeration_guard: int = 10**7
    uniqueness_guard: int = 10**5
    debug_pasting: bool = False
    reassociation_trials: int = 1000
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.enumeration_guard, int) or self.enumeration_guard <= 0:
            raise ConfigurationError("enumeration_guard must be a positive integer")

        if not isinstance(self.uniqueness_guard, int) or self.uniqueness_guard <= 0:
            raise ConfigurationError("uniqueness_guard must be a positive integer")

        if self.reassociation_trials < 0:
            raise ConfigurationError("reassociation_trials must not be negative")

    def check_guard(self, search_space: int, context: str) -> None:
        """Refuse an enumeration whose search space exceeds the guard."""
        logger.debug("%s: search space %d (guard %d)", context, search_space,
                     self.enumeration_guard)
        if search_space > self.enumeration_guard:
            raise SizeGuardError(
                f"{context}: search space {search_space} exceeds guard "
                f"{self.enumeration_guard}",
                search_space=search_space,
                bound=self.enumeration_guard,
                context=context,
            )

    def check_uniqueness_guard(self, search_space: int, context: str) -> None:
        if search_space > self.uniqueness_guard:
            raise SizeGuardError(
                f"{context}: uniqueness search over {search_space} candidates exceeds "
                f"guard {self.uniqueness_guard}",
                search_space=search_space,
                bound=self.uniqueness_guard,
                context=context,
            )


@dataclass
class CorpusConfig:
    """
    Bounds for corpus generation.

    Attributes:
    max_objects (int): Object bound for exhaustive category enumeration. Default is 2.
    max_morphisms (int): Morphism bound (identities included). Default is 5.
    poset_max_size (int): Largest poset whose closure operators are listed. Default is 4.
    twist_order (int): Order of the cyclic 2-cell groups used for twists. Default is 2.
    include_twists (bool): Emit twisted pseudomonads. Default is True.
    max_monads_per_category (int): Optional cap on monads kept per category. Default is None.

    Raises:
    ConfigurationError: If a bound is negative or twist_order is below 2.

    """
    max_objects: int = 2
    max_morphisms: int = 5
    poset_max_size: int = 4
    twist_order: int = 2
    include_twists: bool = True
    max_monads_per_category: Optional[int] = None

    def __post_init__(self):
        if self.max_objects < 0 or self.max_morphisms < 0 or self.poset_max_size < 0:
            raise ConfigurationError("corpus bounds must not be negative")

        if self.twist_order < 2:
            raise ConfigurationError("twist_order must be at least 2")

        if self.max_monads_per_category is not None and self.max_monads_per_category <= 0:
            raise ConfigurationError("max_monads_per_category must be positive")


def _read_json(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, ValueError) as e:
        raise ConfigurationError(f"Cannot read config {path}: {str(e)}")
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config {path} must hold a JSON object")
    return data


def load_config(path: Optional[Union[str, Path]] = None, **overrides: Any) -> EngineConfig:
    """
    Build an EngineConfig from the packaged defaults, an optional user file,
    the KLEISLIKIT_GUARD environment variable and explicit overrides, in that order.

    Args:
        path: Optional JSON file with EngineConfig fields.
        **overrides: Field values that win over every other source; None is ignored.

    Returns:
        EngineConfig: The validated configuration.

    Raises:
        ConfigurationError: On unknown keys, unreadable files or invalid values.
    """
    known = {f.name for f in fields(EngineConfig)}
    values: Dict[str, Any] = _read_json(DEFAULTS_PATH)
    if path is not None:
        values.update(_read_json(path))

    env_guard = os.environ.get(GUARD_ENV_VAR)
    if env_guard:
        try:
            values["enumeration_guard"] = int(env_guard)
        except ValueError:
            raise ConfigurationError(f"{GUARD_ENV_VAR} must be an integer, got {env_guard!r}")

    values.update({k: v for k, v in overrides.items() if v is not None})

    unknown = set(values) - known
    if unknown:
        raise ConfigurationError(f"Unknown config keys: {sorted(unknown)}")
    return EngineConfig(**values)


_current: Optional[EngineConfig] = None


def get_config() -> EngineConfig:
    global _current
    if _current is None:
        _current = load_config()
    return _current


def set_config(config: Optional[EngineConfig]) -> None:
    """Install the process-wide default; None resets to the layered defaults."""
    global _current
    _current = config


def resolve(config: Optional[EngineConfig]) -> EngineConfig:
    return config if config is not None else get_config()


def with_overrides(config: EngineConfig, **changes: Any) -> EngineConfig:
    return replace(config, **changes)
