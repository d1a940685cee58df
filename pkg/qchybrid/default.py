"""
# Default Value Sentinel

Marks "no value given" on `Param` declarations, where `None` is itself a valid default.
"""


class _DefaultMeta(type):
    def __repr__(cls) -> str:
        return "Default"


class Default(metaclass=_DefaultMeta):
    """# Default Value Sentinel
    A singleton: calling it returns the class-object itself."""

    def __new__(cls, *_, **__):
        return Default
