import abc
from typing import Any, Dict


class State(metaclass=abc.ABCMeta):
    """Immutable value object that can be written to JSON."""

    __slots__ = ()

    @abc.abstractmethod
    def as_dict(self) -> Dict[str, Any]:
        """:class:`dict`: Returns the JSON-ready fields of the value."""
        raise NotImplementedError

    def __setattr__(self, name: str, value: Any) -> None:
        if hasattr(self, name):
            raise AttributeError("{0} is immutable".format(type(self).__name__))
        object.__setattr__(self, name, value)

    @classmethod
    def __subclasshook__(cls, C):
        if cls is State:
            for base in C.__mro__:
                if "as_dict" in base.__dict__:
                    return True
            return NotImplemented
        return NotImplemented


class Region(metaclass=abc.ABCMeta): ...


class Pattern(metaclass=abc.ABCMeta): ...
