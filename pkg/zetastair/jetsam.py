# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
""":term:`jetsam` utility for annotating exceptions with salvaged ``locals()``

Scans and recipes run deep inside worker shards and root-finders; when they fail,
the heights, brackets and columns in flight are attached on the exception
(and logged once, at the outermost level).

.. doctest::
    :hide:

    >>> from zetastair.jetsam import *
    >>> __name__ = "zetastair.jetsam"
"""
import logging
from textwrap import indent

log = logging.getLogger(__name__)


class Jetsam(dict):
    """
    The :term:`jetsam` is a dict with items accessed also as attributes.

    >>> j = Jetsam(t_lo=10.0)
    >>> j.t_lo
    10.0
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.__dict__ = self

    def log_salvaged(self, debug=None) -> str:
        """
        Log collected items from the ``zetastair.jetsam.err`` logger.

        :param debug:
            override :func:`.is_debug()`; when true items are logged in ERROR,
            otherwise in DEBUG.
        :return:
            the text logged (empty if nothing salvaged)
        """
        from .config import is_debug

        debug = is_debug() if debug is None else debug
        items = "".join(
            f"  +--{k}:\n{indent(str(v), ' ' * 4)}\n"
            for k, v in self.items()
            if v is not None
        )
        if items:
            level = logging.ERROR if debug else logging.DEBUG
            logging.getLogger(f"{__name__}.err").log(
                level, "Salvaged jetsam:\n%s", items
            )
        return items


def save_jetsam(ex, locs, *salvage_vars: str, annotation="jetsam", **salvage_mappings):
    """
    Annotate exception with salvaged values from locals().

    :param ex:
        the exception to annotate
    :param locs:
        ``locals()`` from the block containing vars to be salvaged
    :param annotation:
        the name of the attribute to attach on the exception
    :param salvage_vars:
        local variable names to save as is in the salvaged annotations dictionary.
    :param salvage_mappings:
        a mapping of destination-annotation-keys --> source-locals-keys;
        if a `source` is callable, the value to salvage is retrieved
        by calling ``value(locs)``.
        They take precedence over `salvage_vars`.

    :return:
        the :class:`Jetsam` annotation, also attached on the exception

    - If the exception is already annotated, any new items are inserted,
      but existing ones are preserved (the innermost frame wins).

    **Example:**

        >>> try:
        ...     t_lo = 10.0
        ...     shard = 3
        ...     raise ArithmeticError("no convergence")
        ... except Exception as ex:
        ...     save_jetsam(ex, locals(), "t_lo", which_shard="shard", missing="nope")
        ...     raise
        Traceback (most recent call last):
        ArithmeticError: no convergence

        >>> import sys
        >>> sys.exc_info()[1].jetsam                # doctest: +SKIP
        {'which_shard': 3, 'missing': None, 't_lo': 10.0}
    """
    assert isinstance(ex, Exception), ("Bad `ex`, not an exception:", ex)
    assert isinstance(locs, dict), ("Bad `locs`, not a dict:", locs)
    assert all(isinstance(i, str) for i in salvage_vars), (
        "Bad `salvage_vars`!",
        salvage_vars,
    )
    assert salvage_vars or salvage_mappings, "No `salvage_mappings` given!"
    assert all(isinstance(v, str) or callable(v) for v in salvage_mappings.values()), (
        "Bad `salvage_mappings`:",
        salvage_mappings,
    )

    for var in salvage_vars:
        if var not in salvage_mappings:
            salvage_mappings[var] = var

    try:
        jetsam = getattr(ex, annotation, None)
        if not isinstance(jetsam, Jetsam):
            jetsam = Jetsam()
            setattr(ex, annotation, jetsam)

        for dst_key, src in salvage_mappings.items():
            try:
                if dst_key not in jetsam:
                    jetsam[dst_key] = src(locs) if callable(src) else locs.get(src)
            except Exception as ex2:
                log.warning(
                    "Suppressed error while salvaging jetsam item (%r, %r): %s(%s)",
                    dst_key,
                    src,
                    type(ex2).__name__,
                    ex2,
                    exc_info=True,
                )

        return jetsam
    except Exception as ex2:
        log.warning(
            "Suppressed error while annotating exception: %r", ex2, exc_info=True
        )
