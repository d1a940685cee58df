"""
# Datatypes Decorator

Wraps `@pydantic.dataclasses.dataclass` so that records throughout the package can
make forward type-references, which are all sorted out at the end of import-time.

`qchybrid/__init__.py` imports every module defining a `@datatype`, and then calls

```python
from .datatype import _update_forward_refs

_update_forward_refs()
```

Notes:
* `@datatype` is intended for *intra-package* use only.
* Numpy arrays and the package's own algebra classes are allowed as field types.
"""

from typing import TypeVar, Type

from pydantic import Extra
from pydantic.dataclasses import dataclass

# The list of defined datatypes
datatypes = []

T = TypeVar("T")


class Config:  # Pydantic Model Config
    extra = Extra.forbid
    arbitrary_types_allowed = True


def datatype(cls: Type[T]) -> Type[T]:
    """Register a class as a datatype."""

    # Convert `cls` to a `pydantic.dataclasses.dataclass`,
    # and add it to the list of datatypes
    cls = dataclass(cls, config=Config)
    datatypes.append(cls)
    return cls


def _update_forward_refs():
    """Update all the forward type-references"""
    for tp in datatypes:
        tp.__pydantic_model__.update_forward_refs()
