import logging

import numpy as np
import pandas as pd
import pytest

from zetastair.recipe import Column, Recipe, column


@pytest.fixture
def trivial_recipe():
    """level = n, doubled = 2n, total = n + 2n, unused = -n"""
    return Recipe(
        Column(lambda n: float(n), "level", needs="n"),
        Column(lambda n: 2 * n, "doubled", needs="n"),
        Column(lambda a, b: a + b, "total", needs=["level", "doubled"]),
        Column(lambda n: -n, "unused", needs="n"),
        name="trivial",
    )


def test_recipe_repr(trivial_recipe):
    assert repr(trivial_recipe) == (
        "Recipe('trivial', needs=['n'], provides=['level', 'doubled', 'total', 'unused'])"
    )


def test_compute_all(trivial_recipe):
    df = trivial_recipe.compute({"n": [1, 2]})
    assert list(df.columns) == ["n", "level", "doubled", "total", "unused"]
    assert list(df["total"]) == [3.0, 6.0]


def test_compute_prunes_to_asked_outputs(trivial_recipe):
    steps = trivial_recipe.steps_for(["total"])
    assert [c.name for c in steps] == ["level", "doubled", "total"]


def test_compute_keeps_asked_order(trivial_recipe):
    df = trivial_recipe.compute({"n": [3]}, ["total", "n"])
    assert list(df.columns) == ["total", "n"]
    assert df.iloc[0].tolist() == [9.0, 3.0]


def test_given_intermediate_not_recomputed(trivial_recipe):
    df = trivial_recipe.compute({"n": [1], "doubled": [100]}, ["total"])
    assert df["total"].tolist() == [101.0]


def test_vectorized_column():
    r = Recipe(Column(np.cumsum, "running", needs="x", vectorized=True))
    df = r.compute({"x": [1, 2, 3]})
    assert df["running"].tolist() == [1, 3, 6]


def test_column_decorator():
    @column("squared", needs="x")
    def square(x):
        return x * x

    assert isinstance(square, Column)
    assert Recipe(square).compute({"x": [3]})["squared"].tolist() == [9]


def test_column_validation():
    with pytest.raises(TypeError, match="callable"):
        Column(42, "bad")
    with pytest.raises(ValueError, match="non-empty string"):
        Column(abs, "")


def test_duplicate_provider():
    with pytest.raises(ValueError, match="provided twice"):
        Recipe(Column(abs, "a", needs="x"), Column(abs, "a", needs="y"))


def test_not_a_column():
    with pytest.raises(TypeError, match="only Columns"):
        Recipe(abs)


def test_cycle_report():
    with pytest.raises(ValueError, match="Cyclic column dependencies") as excinfo:
        Recipe(Column(abs, "a", needs="b"), Column(abs, "b", needs="a"))
    assert 'needs "' in str(excinfo.value)


def test_unknown_output(trivial_recipe):
    with pytest.raises(ValueError, match="Unknown outputs"):
        trivial_recipe.compute({"n": [1]}, ["nope"])


def test_missing_inputs(trivial_recipe):
    with pytest.raises(ValueError, match=r"needs inputs \['n'\]"):
        trivial_recipe.compute({}, ["total"])


def test_unequal_inputs():
    r = Recipe(Column(lambda a, b: a + b, "c", needs=["a", "b"]))
    with pytest.raises(ValueError, match="unequal length"):
        r.compute({"a": [1, 2], "b": [1]})


def test_failing_column_jetsam(caplog):
    def scream(n):
        raise ArithmeticError("ABC")

    r = Recipe(Column(abs, "ok", needs="n"), Column(scream, "bad", needs="ok"))
    with pytest.raises(ArithmeticError, match="ABC") as excinfo:
        r.compute({"n": [-1]})

    jetsam = excinfo.value.jetsam
    assert jetsam.column.name == "bad"
    assert jetsam.recipe is r
    assert list(jetsam.solution) == ["n", "ok"]
    assert "Suppressed error" not in caplog.text


def test_debug_logs_steps(debug_mode, caplog):
    caplog.set_level(logging.DEBUG, logger="zetastair.recipe")
    Recipe(Column(abs, "a", needs="n")).compute({"n": [-2]})
    assert "Computed Column('a'" in caplog.text


def test_returns_frame(trivial_recipe):
    assert isinstance(trivial_recipe.compute({"n": []}, ["n", "doubled"]), pd.DataFrame)
