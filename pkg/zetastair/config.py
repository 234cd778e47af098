# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
:term:`configurations` for scans & reports, and utilities on them.

.. note::
    The context-manager functions ``XXX_plugged()`` or ``XXX_enabled()`` do NOT launch
    their code blocks using :meth:`contextvars.Context.run()` in a separate "context",
    so any changes to these or other context-vars will persist
    (unless they are also done within such context-managers)
"""
import os
from contextlib import contextmanager
from contextvars import ContextVar
from functools import partial
from pathlib import Path
from typing import Optional

#: Env-var deciding the default of :func:`is_debug()`.
DEBUG_ENV_VAR = "STAIRCASE_DEBUG"
#: Env-var deciding the default of :func:`get_cache_dir()`.
CACHE_DIR_ENV_VAR = "STAIRCASE_CACHE_DIR"
#: Below this height :func:`.zetaline.z_function()` uses Euler-Maclaurin.
DEFAULT_RS_MIN_HEIGHT = 200.0


def _env_flag(var: str) -> Optional[bool]:
    val = os.environ.get(var)
    return val and (val.lower() not in "0 false off no".split())


_debug: ContextVar[Optional[bool]] = ContextVar(
    "debug", default=_env_flag(DEBUG_ENV_VAR)
)
_workers: ContextVar[Optional[int]] = ContextVar("workers", default=None)
_cache_dir: ContextVar[Optional[Path]] = ContextVar("cache_dir", default=None)
_rs_min_height: ContextVar[Optional[float]] = ContextVar("rs_min_height", default=None)


def _getter(context_var):
    return context_var.get()


def _tristate_set(context_var, enabled):
    return context_var.set(enabled if enabled is None else bool(enabled))


@contextmanager
def _tristate_armed(context_var: ContextVar, enabled=True):
    """Assumes "enabled" if `enabled` flag is None."""
    resetter = context_var.set(enabled if enabled is None else bool(enabled))
    try:
        yield
    finally:
        context_var.reset(resetter)


@contextmanager
def _value_plugged(context_var: ContextVar, value):
    resetter = context_var.set(value)
    try:
        yield
    finally:
        context_var.reset(resetter)


debug_enabled = partial(_tristate_armed, _debug)
"""
Like :func:`set_debug()` as a context-manager, resetting back to old value.

.. seealso:: disclaimer about context-managers at the top of this :mod:`.config` module.
"""
is_debug = partial(_getter, _debug)
"""
Return :func:`.set_debug` or `True` if :envvar:`STAIRCASE_DEBUG` not one of ``0 false off no``.

Affected behavior when debug enabled:

+ :term:`jetsam` logs in ERROR (instead of in DEBUG) all annotations
  (logged from ``zetastair.jetsam.err`` logger);
+ zero scans log every grid refinement they perform.
"""
set_debug = partial(_tristate_set, _debug)
"""
Enable/disable debug-mode.

:return:
    a "reset" token (see :meth:`.ContextVar.set`)
"""


def get_workers() -> int:
    """
    Number of shards scans are split into (default: 1, scanning in-process).

    >>> with workers_plugged(3):
    ...     get_workers()
    3
    """
    n = _workers.get()
    return n if n else 1


def set_workers(n: Optional[int]):
    """
    Set the worker count for sharded scans; `None` restores the in-process default.

    :return:
        a "reset" token (see :meth:`.ContextVar.set`)
    """
    if n is not None and int(n) < 1:
        raise ValueError(f"Workers must be positive, got: {n}")
    return _workers.set(None if n is None else int(n))


workers_plugged = partial(_value_plugged, _workers)
"""Like :func:`set_workers()` as a context-manager, resetting back to old value."""


def get_cache_dir() -> Path:
    """
    Where the zero-cache lives.

    Precedence: :func:`set_cache_dir()` (the CLI flag), then :envvar:`STAIRCASE_CACHE_DIR`,
    then ``~/.cache/zetastair``.
    """
    d = _cache_dir.get()
    if d is None:
        env = os.environ.get(CACHE_DIR_ENV_VAR)
        d = Path(env) if env else Path.home() / ".cache" / "zetastair"
    return Path(d)


def set_cache_dir(path):
    """:return: a "reset" token (see :meth:`.ContextVar.set`)"""
    return _cache_dir.set(None if path is None else Path(path))


cache_dir_plugged = partial(_value_plugged, _cache_dir)
"""Like :func:`set_cache_dir()` as a context-manager, resetting back to old value."""


def get_rs_min_height() -> float:
    """Lowest height where Riemann-Siegel replaces Euler-Maclaurin for ``Z(t)``."""
    h = _rs_min_height.get()
    return DEFAULT_RS_MIN_HEIGHT if h is None else h


def set_rs_min_height(height: Optional[float]):
    """:return: a "reset" token (see :meth:`.ContextVar.set`)"""
    return _rs_min_height.set(None if height is None else float(height))


rs_min_height_plugged = partial(_value_plugged, _rs_min_height)
"""Like :func:`set_rs_min_height()` as a context-manager, resetting back to old value."""
