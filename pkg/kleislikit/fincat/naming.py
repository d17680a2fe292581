"""Deterministic identifiers for derived cells.

Derived constructions (Kleisli categories, algebra categories, free
pseudoalgebras, thunked cells) name their cells by tagging the ids they are
built from, so equal constructions produce byte-identical tables.
"""
from functools import lru_cache, wraps
from typing import Any, Callable, Optional, TypeVar

T = TypeVar("T")


def tag(head: str, *parts: str) -> str:
    return f"{head}[{','.join(parts)}]"


def identity_id(obj: str) -> str:
    return f"id_{obj}"


def named_cache(maxsize: Optional[int] = 256):
    """
    ``lru_cache`` keyed also on the first argument's ``name``. Equal values with
    different names are cached apart.
    """
    def decorate(fn: Callable[..., T]) -> Callable[..., T]:
        @lru_cache(maxsize=maxsize)
        def keyed(name: Any, *args: Any, **kwargs: Any) -> T:
            return fn(*args, **kwargs)

        @wraps(fn)
        def wrapper(*args: Any, **kwargs: Any) -> T:
            return keyed(getattr(args[0], "name", None), *args, **kwargs)

        return wrapper

    return decorate
