"""Finite games with capital payoffs: transforms, equilibria, simulation.

Thin package wrapper around the compiled ``_capgames`` extension.  When the
package is installed as a wheel the extension lives inside this package;
when running against a plain CMake build tree it sits on ``sys.path``
directly, so fall back to a top-level import.
"""

try:
    from ._capgames import *  # noqa: F401,F403
except ImportError:  # pragma: no cover - build-tree layout
    from _capgames import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
