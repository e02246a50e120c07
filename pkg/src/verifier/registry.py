from typing import Any, Dict, List, Optional

from ..errors import UnknownCheckError
from .contracts import CheckDefinition, CheckSpec

# Registry storage: name -> definition
_CHECK_REGISTRY: Dict[str, CheckDefinition] = {}


def register_check(definition: CheckDefinition) -> None:
    """
    Registers a check. Re-registering a name overwrites it.
    """
    _CHECK_REGISTRY[definition.name] = definition


def get_check(name: str) -> Optional[CheckDefinition]:
    return _CHECK_REGISTRY.get(name)


def require_check(name: str) -> CheckDefinition:
    definition = _CHECK_REGISTRY.get(name)
    if definition is None:
        raise UnknownCheckError(name, list_checks())
    return definition


def list_checks() -> List[str]:
    """
    Registered check names in registration order.
    """
    return list(_CHECK_REGISTRY)


def default_spec(name: str, **overrides: Any) -> CheckSpec:
    """CheckSpec with the check's own distribution defaults, then `overrides`."""
    definition = require_check(name)
    values = {**definition.defaults, **{k: v for k, v in overrides.items() if v is not None}}
    return CheckSpec(name=name, **values)


def clear_registry() -> None:
    """
    Clears the registry (useful for tests).
    """
    _CHECK_REGISTRY.clear()
