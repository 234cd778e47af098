# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
:term:`recipe`: derived table columns wired into a dependency graph.

A :class:`Column` computes one named column from the columns it `needs`;
a :class:`Recipe` links columns into a :mod:`networkx` graph of
``need --> column --> name`` edges, and :meth:`Recipe.compute()` evaluates
just the columns the asked outputs depend on, in topological order,
into a :class:`pandas.DataFrame`.

.. doctest::
    :hide:

    >>> from zetastair.recipe import *
    >>> __name__ = "zetastair.recipe"
"""
import logging
from itertools import count
from typing import Callable, Iterable, List, Mapping, Optional

import networkx as nx
import numpy as np
import pandas as pd
from boltons.setutils import IndexedSet as iset

from .base import Items, astuple
from .config import is_debug
from .jetsam import save_jetsam

log = logging.getLogger(__name__)


class Column:
    """
    A named column computed from other columns.

    :param fn:
        called per row with the `needs` values as positional args, or once with
        whole arrays when `vectorized`.
    """

    __slots__ = ("fn", "name", "needs", "vectorized")

    def __init__(self, fn: Callable, name: str, needs: Items = None, vectorized=False):
        if not callable(fn):
            raise TypeError(f"Column {name!r} needs a callable, got: {fn!r}")
        if not isinstance(name, str) or not name:
            raise ValueError(f"Column name must be a non-empty string, got: {name!r}")
        self.fn = fn
        self.name = name
        self.needs = astuple(needs, "needs")
        self.vectorized = bool(vectorized)

    def __repr__(self):
        fn_name = getattr(self.fn, "__name__", type(self.fn).__name__)
        return f"Column({self.name!r}, needs={list(self.needs)}, fn={fn_name!r})"

    def evaluate(self, args: List) -> np.ndarray:
        if self.vectorized:
            return np.asarray(self.fn(*args))
        return np.array([self.fn(*row) for row in zip(*args)])


def column(name: str, needs: Items = None, *, vectorized=False):
    """
    Decorator turning a function into a :class:`Column`.

    >>> @column("doubled", needs="n")
    ... def double(n):
    ...     return 2 * n
    >>> double
    Column('doubled', needs=['n'], fn='double')
    """

    def decorator(fn):
        return Column(fn, name, needs, vectorized=vectorized)

    return decorator


def _format_cycle(cycle) -> str:
    return "\n".join(
        f'  {dst.name} needs "{src}"'
        for src, dst in cycle
        if isinstance(src, str) and isinstance(dst, Column)
    )


class Recipe:
    """
    A graph of :class:`Column` nodes linked through their names.

    .. attribute:: needs

        the columns not computed by any column, to be given as inputs.
    .. attribute:: provides

        the columns computed, in column-insertion order.

    >>> r = Recipe(
    ...     Column(lambda n: n + 1, "m", needs="n"),
    ...     Column(lambda n, m: n * m, "nm", needs=["n", "m"]),
    ... )
    >>> r
    Recipe(needs=['n'], provides=['m', 'nm'])
    >>> r.compute({"n": [1, 2, 3]})
       n  m  nm
    0  1  2   2
    1  2  3   6
    2  3  4  12
    """

    def __init__(self, *columns: Column, name: Optional[str] = None):
        providers = {}
        for col in columns:
            if not isinstance(col, Column):
                raise TypeError(f"Recipe accepts only Columns, got: {col!r}")
            if col.name in providers:
                raise ValueError(
                    f"Column {col.name!r} provided twice:"
                    f" {providers[col.name]} and {col}"
                )
            providers[col.name] = col

        graph = nx.DiGraph()
        for col in columns:
            graph.add_edges_from((need, col) for need in col.needs)
            graph.add_edge(col, col.name)

        self.name = name
        self.graph = graph
        self.columns = columns
        self.provides = iset(c.name for c in columns)
        self.needs = iset(
            n for c in columns for n in c.needs if n not in self.provides
        )
        self._steps = self._topo_sort()

    def __repr__(self):
        name = f"{self.name!r}, " if self.name else ""
        return f"Recipe({name}needs={list(self.needs)}, provides={list(self.provides)})"

    def _topo_sort(self) -> List[Column]:
        """Topo-sort by dependencies, column-insertion order breaking ties; scream on cycles."""
        node_keys = dict(zip(self.graph.nodes, count()))
        try:
            ordered = nx.lexicographical_topological_sort(self.graph, key=node_keys.get)
            return [n for n in ordered if isinstance(n, Column)]
        except nx.NetworkXUnfeasible as ex:
            try:
                cycle = _format_cycle(nx.find_cycle(self.graph))
            except nx.NetworkXNoCycle:
                log.warning("Swallowed error while discovering recipe cycles: %s", ex)
                cycle = ""
            raise ValueError(f"Cyclic column dependencies:\n{cycle}") from ex

    def steps_for(self, outputs: Iterable[str], given: Items = ()) -> List[Column]:
        """
        The columns needed for `outputs`, in evaluation order.

        :param given:
            names already known; their providers (and whatever only they need)
            are pruned
        """
        outputs = iset(outputs)
        unknown = [o for o in outputs if o not in self.graph]
        if unknown:
            raise ValueError(
                f"Unknown outputs {unknown}, recipe provides: {list(self.provides)}"
            )
        given = set(astuple(given, "given"))
        graph = self.graph
        if given:
            graph = nx.restricted_view(graph, [], list(graph.in_edges(given)))
        wanted = set(outputs)
        for o in outputs:
            wanted |= nx.ancestors(graph, o)
        return [c for c in self._steps if c in wanted and c.name not in given]

    def compute(
        self, inputs: Mapping[str, Iterable], outputs: Items = None
    ) -> pd.DataFrame:
        """
        Evaluate the columns needed for `outputs` (default: inputs & all provided).

        :param inputs:
            equally long sequences keyed by column name
        :return:
            a frame with the `outputs` as columns, in the order asked
        :raises ValueError:
            if inputs are missing or of unequal length
        """
        solution = {k: np.asarray(v) for k, v in inputs.items()}
        lengths = {k: len(v) for k, v in solution.items()}
        if len(set(lengths.values())) > 1:
            raise ValueError(f"Input columns of unequal length: {lengths}")

        if outputs is None:
            outputs = iset([*solution, *self.provides])
        else:
            outputs = iset(astuple(outputs, "outputs"))
        steps = self.steps_for(
            (o for o in outputs if o not in solution), list(solution)
        )
        missing = iset(
            n for c in steps for n in c.needs if n not in solution
        ) - self.provides
        if missing:
            raise ValueError(
                f"Recipe needs inputs {list(missing)}, given: {list(solution)}"
            )

        col = None
        try:
            for col in steps:
                solution[col.name] = col.evaluate([solution[n] for n in col.needs])
                if is_debug():
                    log.debug("Computed %s.", col)
        except Exception as ex:
            save_jetsam(ex, locals(), "solution", column="col", recipe=lambda _: self)
            raise

        return pd.DataFrame({o: solution[o] for o in outputs})
