"""Base models and common types for hymcmc.

This module contains the base pydantic model shared by every config,
persisted record and report in the package.
"""

from typing import Any, List, Tuple

from pydantic import BaseModel as PydanticBaseModel
from pydantic import ConfigDict, ValidationError

from hymcmc.errors import HymcmcConfigurationError

# Coordinate pair in the unit square
Point = Tuple[float, float]


class BaseModel(PydanticBaseModel):
    """Base model for all hymcmc records.

    Unknown keys are rejected so that typos in experiment configs fail loudly
    instead of silently falling back to defaults. Enum fields are stored as
    their string values, which keeps dumps language-portable.
    """

    model_config = ConfigDict(
        validate_by_name=True, validate_by_alias=True,
        use_enum_values=True,
        validate_assignment=True,
        extra="forbid",
        ser_json_inf_nan="constants",
    )

    def to_json(self) -> str:
        """Serialize with aliases and two-space indentation."""
        return self.model_dump_json(by_alias=True, indent=2)


def parse_model(model_cls: Any, data: Any, what: str) -> Any:
    """Validate ``data`` against ``model_cls``.

    Args:
        model_cls: Pydantic model class
        data: Mapping loaded from JSON
        what: Human-readable name used in the error message

    Returns:
        The validated model instance

    Raises:
        HymcmcConfigurationError: When validation fails; details carry the
            pydantic error list
    """
    try:
        return model_cls.model_validate(data)
    except ValidationError as e:
        raise HymcmcConfigurationError(
            f'Invalid {what}',
            details=e.errors(include_url=False)
        )


def points_to_list(points: Any) -> List[Point]:
    """Convert an (k, 2) array-like into a list of coordinate tuples."""
    return [(float(p[0]), float(p[1])) for p in points]


__all__ = ['BaseModel', 'Point', 'parse_model', 'points_to_list']
