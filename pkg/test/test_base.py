import logging

import pytest

from zetastair.base import (
    AmbiguityError,
    ConvergenceError,
    CorruptCacheError,
    DomainError,
    NoSignChangeError,
    PoleError,
    RangeError,
    SetTag,
    StaircaseError,
    SymmetryError,
    astuple,
    check_finite,
    check_int,
)
from zetastair.config import debug_enabled
from zetastair.jetsam import Jetsam, save_jetsam


@pytest.mark.parametrize(
    "err, bases",
    [
        (DomainError, (StaircaseError, ValueError)),
        (PoleError, (DomainError,)),
        (RangeError, (DomainError,)),
        (SymmetryError, (DomainError,)),
        (AmbiguityError, (StaircaseError,)),
        (NoSignChangeError, (StaircaseError, ValueError)),
        (ConvergenceError, (StaircaseError, ArithmeticError)),
        (CorruptCacheError, (StaircaseError,)),
    ],
)
def test_error_hierarchy(err, bases):
    assert all(issubclass(err, b) for b in bases)


def test_ambiguity_is_not_a_domain_error():
    assert not issubclass(AmbiguityError, ValueError)


@pytest.mark.parametrize("tag", ["first", "FIRST", SetTag.FIRST])
def test_set_tag_parse(tag):
    assert SetTag.parse(tag) is SetTag.FIRST


def test_set_tag_bad():
    with pytest.raises(DomainError, match="first"):
        SetTag.parse("third")


@pytest.mark.parametrize("n", [1, 3.0, True])
def test_check_int_ok(n):
    assert check_int(n, "n", 1) == int(n)


@pytest.mark.parametrize("n", [0, 1.5, "a", None, float("inf")])
def test_check_int_bad(n):
    with pytest.raises(DomainError, match="Expected integer n >= 1"):
        check_int(n, "n", 1)


@pytest.mark.parametrize("x", [float("nan"), float("-inf")])
def test_check_finite(x):
    with pytest.raises(DomainError, match="Non-finite t"):
        check_finite(x, "t")


@pytest.mark.parametrize(
    "inp, exp", [(None, ()), ("a", ("a",)), (["a", "b"], ("a", "b")), ((), ())]
)
def test_astuple(inp, exp):
    assert astuple(inp, "needs") == exp


def test_astuple_scalar():
    assert astuple(1, None) == (1,)
    with pytest.raises(ValueError, match="Cannot tuple-ize needs"):
        astuple(1, "needs")


@pytest.mark.parametrize("locs", [None, (), [], [0], "bad"])
def test_jetsam_bad_locals(locs, caplog):
    caplog.set_level(logging.INFO)
    with pytest.raises(AssertionError, match="Bad `locs`") as excinfo:
        try:
            raise Exception()
        except Exception as ex:
            save_jetsam(ex, locs, a="a")
            raise

    assert not hasattr(excinfo.value, "jetsam")
    assert "Suppressed error while annotating exception" not in caplog.text


@pytest.mark.parametrize("keys", [{"k": None}, {"k": ()}, {"k": []}, {"k": [0]}])
def test_jetsam_bad_keys(keys, caplog):
    caplog.set_level(logging.INFO)
    with pytest.raises(AssertionError, match="Bad `salvage_mappings`") as excinfo:
        try:
            raise Exception("ABC")
        except Exception as ex:
            save_jetsam(ex, {}, **keys)

    assert not hasattr(excinfo.value, "jetsam")
    assert "Suppressed error while annotating exception" not in caplog.text


@pytest.mark.parametrize("annotation", [None, (), [], [0], "bad"])
def test_jetsam_bad_existing_annotation(annotation, caplog):
    caplog.set_level(logging.INFO)
    with pytest.raises(Exception, match="ABC") as excinfo:
        try:
            ex = Exception("ABC")
            ex.jetsam = annotation
            raise ex
        except Exception as ex:
            save_jetsam(ex, {}, a="a")
            raise

    assert excinfo.value.jetsam == {"a": None}
    assert "Suppressed error while annotating exception" not in caplog.text


def test_jetsam_dummy_locals(caplog):
    with pytest.raises(Exception, match="ABC") as excinfo:
        try:
            raise Exception("ABC")
        except Exception as ex:
            save_jetsam(ex, {"a": 1}, a="a", bad="bad")
            raise

    assert isinstance(excinfo.value.jetsam, Jetsam)
    assert excinfo.value.jetsam == {"a": 1, "bad": None}
    assert "Suppressed error" not in caplog.text


def _scream(*args, **kwargs):
    raise Exception("ABC")


def _jetsamed_fn(*args, **kwargs):
    b = 1
    try:
        a = 1
        b = 2
        _scream()
    except Exception as ex:
        save_jetsam(ex, locals(), "a", b="b")
        raise


def test_jetsam_locals_simple(caplog):
    with pytest.raises(Exception, match="ABC") as excinfo:
        _jetsamed_fn()
    assert excinfo.value.jetsam == {"a": 1, "b": 2}
    assert "Suppressed error" not in caplog.text


def test_jetsam_nested():
    def inner():
        try:
            a = 0
            fn = "inner"
            _jetsamed_fn()
        except Exception as ex:
            save_jetsam(ex, locals(), fn="fn")
            raise

    def outer():
        try:
            fn = "outer"
            b = 0
            inner()
        except Exception as ex:
            save_jetsam(ex, locals(), fn="fn")
            raise

    with pytest.raises(Exception, match="ABC") as excinfo:
        outer()

    assert excinfo.value.jetsam == {"fn": "inner", "a": 1, "b": 2}


def test_jetsam_callable_mapping():
    with pytest.raises(Exception, match="ABC") as excinfo:
        try:
            shard = (10.0, 20.0)
            raise Exception("ABC")
        except Exception as ex:
            save_jetsam(ex, locals(), width=lambda locs: locs["shard"][1] - locs["shard"][0])
            raise

    assert excinfo.value.jetsam.width == 10.0


def test_jetsam_failing_mapping_is_suppressed(caplog):
    with pytest.raises(Exception, match="ABC") as excinfo:
        try:
            raise Exception("ABC")
        except Exception as ex:
            save_jetsam(ex, {}, boom=lambda locs: 1 / 0)
            raise

    assert "boom" not in excinfo.value.jetsam
    assert "Suppressed error while salvaging jetsam item" in caplog.text


@pytest.mark.parametrize("debug, level", [(False, logging.DEBUG), (True, logging.ERROR)])
def test_jetsam_log_salvaged(debug, level, caplog):
    caplog.set_level(logging.DEBUG)
    jetsam = Jetsam(t_lo=10.0, missing=None)
    with debug_enabled(debug):
        text = jetsam.log_salvaged()

    assert "t_lo" in text and "missing" not in text
    (record,) = [r for r in caplog.records if r.name == "zetastair.jetsam.err"]
    assert record.levelno == level


def test_jetsam_log_nothing(caplog):
    caplog.set_level(logging.DEBUG)
    assert Jetsam(a=None).log_salvaged() == ""
    assert not caplog.records
