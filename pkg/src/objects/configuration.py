import json
import math
import os
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import fields
from dataclasses import replace
from typing import Any
from typing import Optional

from simple_logger.logger import get_logger

from src.objects.exceptions import ConfigurationError

CONFIG_ENV_VAR = "INTRANSIC_CONFIG"


@dataclass(frozen=True)
class TrainConfig:
    """
    Hyperparameters of one SGD run.

    ``regularization`` is the shared weight of the three regularizers; ``lambda1``,
    ``lambda2`` and ``lambda3`` override it per term when set.
    """

    learning_rate: float = 0.05
    epochs: int = 500
    regularization: float = 0.0
    lambda1: Optional[float] = None
    lambda2: Optional[float] = None
    lambda3: Optional[float] = None
    seed: int = 0
    patience: int = 20
    eval_fraction: float = 0.1
    dim: int = 2
    init_scale: float = 0.1
    clip_norm: float = 5.0

    def __post_init__(self) -> None:
        if not (self.learning_rate > 0 and math.isfinite(self.learning_rate)):
            raise ConfigurationError(f"learning_rate must be a positive number, got {self.learning_rate}")
        if self.epochs < 1:
            raise ConfigurationError(f"epochs must be at least 1, got {self.epochs}")
        for name, value in zip(("regularization", "lambda1", "lambda2", "lambda3"), self.lambdas_raw):
            if value is not None and not value >= 0:
                raise ConfigurationError(f"{name} must be non-negative, got {value}")
        if self.patience < 1:
            raise ConfigurationError(f"patience must be at least 1, got {self.patience}")
        if not 0.0 <= self.eval_fraction < 1.0:
            raise ConfigurationError(f"eval_fraction must lie in [0, 1), got {self.eval_fraction}")
        if self.dim < 1:
            raise ConfigurationError(f"dim must be at least 1, got {self.dim}")
        if self.init_scale < 0 or self.clip_norm < 0:
            raise ConfigurationError("init_scale and clip_norm must be non-negative")
        if self.seed < 0:
            raise ConfigurationError(f"seed must be non-negative, got {self.seed}")

    @property
    def lambdas_raw(self) -> tuple[Optional[float], ...]:
        return self.regularization, self.lambda1, self.lambda2, self.lambda3

    @property
    def lambdas(self) -> tuple[float, float, float]:
        """Effective ``(lambda1, lambda2, lambda3)``."""
        shared = self.regularization
        return (
            shared if self.lambda1 is None else self.lambda1,
            shared if self.lambda2 is None else self.lambda2,
            shared if self.lambda3 is None else self.lambda3,
        )

    def with_hyperparameters(self, dim: int, regularization: float, seed: Optional[int] = None) -> "TrainConfig":
        """Copy for one grid point. The grid weight becomes the shared weight; per-term overrides still win."""
        return replace(self, dim=dim, regularization=regularization, seed=self.seed if seed is None else seed)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


class Configuration:
    def __init__(
        self,
        config_file_path: Optional[str] = None,
        overrides: Optional[dict[str, Any]] = None,
    ) -> None:
        """
        Builds the TrainConfig used by a command. Values come from the JSON config file,
        then from the JSON in $INTRANSIC_CONFIG, then from explicitly given CLI options.

        Args:
            config_file_path (Optional[str]): Path to a JSON file holding TrainConfig fields.
            overrides (Optional[dict[str, Any]]): Explicit option values; None entries are ignored.
        """
        self.logger = get_logger(__name__)

        self.config_data = self._get_config_data(base_config_file_path=config_file_path)
        self.config_data.update({key: value for key, value in (overrides or {}).items() if value is not None})
        self.train_config = self._get_train_config(config_data=self.config_data)

    def _get_config_data(self, base_config_file_path: Optional[str]) -> dict[str, Any]:
        """
        Reads the base config file and merges the environment variable on top of it.

        Args:
            base_config_file_path (Optional[str]): Path to the base JSON file.

        Returns:
            dict[str, Any]: The merged configuration data.
        """
        base_config_data: dict[str, Any] = {}
        try:
            if base_config_file_path is not None:
                with open(base_config_file_path, encoding="utf-8") as file:
                    base_config_data = json.load(file)
            additional_config_data = json.loads(os.getenv(CONFIG_ENV_VAR) or "{}")
        except OSError as error:
            self.logger.error(f"Unable to read configuration file at {base_config_file_path}: {error}")
            raise ConfigurationError(f"unable to read configuration file {base_config_file_path}") from error
        except json.decoder.JSONDecodeError as error:
            self.logger.error("Configuration contains malformed JSON. Please check for missing or additional commas:")
            self.logger.error(error)
            raise ConfigurationError(f"malformed JSON configuration: {error}") from error

        for source, data in (("configuration file", base_config_data), (f"${CONFIG_ENV_VAR}", additional_config_data)):
            if not isinstance(data, dict):
                raise ConfigurationError(f"{source} must hold a JSON object, got {type(data).__name__}")

        return {**base_config_data, **additional_config_data}

    def _get_train_config(self, config_data: dict[str, Any]) -> TrainConfig:
        known = {field.name for field in fields(TrainConfig)}
        unknown = sorted(set(config_data) - known)
        if unknown:
            raise ConfigurationError(f"unknown configuration keys: {unknown}")
        try:
            return TrainConfig(**config_data)
        except TypeError as error:
            raise ConfigurationError(f"invalid configuration value: {error}") from error
