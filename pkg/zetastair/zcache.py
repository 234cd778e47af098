# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
"""
The persistent, append-only zero cache.

A text file, so that diffs stay reviewable::

    zcache v1 <t_min> <t_max> <generator-version>
    <index> <height>
    ...

Heights are written with :func:`repr()` (round-trip exact) and records are never
rewritten: extending the range only adds lines before or after the existing ones.
"""
import logging
import os
from pathlib import Path
from typing import List, NamedTuple, Optional

from .base import CorruptCacheError, DomainError
from .config import get_cache_dir
from .zetaline import SCAN_START, TrueZero, _check_height, true_zeros

log = logging.getLogger(__name__)

CACHE_MAGIC = "zcache"
CACHE_VERSION = "v1"
CACHE_FILENAME = "zeros.zcache"
_RECOVERY = "delete the file and re-run `zetastair cache-zeros` to rebuild it."


class ZeroCache(NamedTuple):
    t_min: float
    t_max: float
    generator: str
    records: List[TrueZero]
    #: The record lines exactly as read, so rewrites keep them verbatim.
    lines: List[str]

    def header(self) -> str:
        return f"{CACHE_MAGIC} {CACHE_VERSION} {self.t_min!r} {self.t_max!r} {self.generator}"

    def render(self) -> str:
        return "\n".join([self.header(), *self.lines]) + "\n"


def cache_path(cache_dir=None) -> Path:
    """The cache file inside `cache_dir` (default :func:`.config.get_cache_dir()`)."""
    return Path(cache_dir if cache_dir is not None else get_cache_dir()) / CACHE_FILENAME


def _corrupt(path, why) -> CorruptCacheError:
    return CorruptCacheError(f"Zero cache {path} is corrupt ({why}); {_RECOVERY}")


def parse_cache(text: str, path="<text>") -> ZeroCache:
    """
    Parse & validate cache contents.

    >>> c = parse_cache("zcache v1 10.0 30.0 0.1.0\\n1 14.134725141734695\\n2 21.02203963877155\\n")
    >>> c.t_max, c.records[-1]
    (30.0, TrueZero(index=2, height=21.02203963877155))
    >>> parse_cache("zcache v1 10.0 30.0 0.1.0\\n1 21.0\\n2 14.1\\n")
    Traceback (most recent call last):
    zetastair.base.CorruptCacheError: Zero cache <text> is corrupt (heights not increasing at line 3);
    delete the file and re-run `zetastair cache-zeros` to rebuild it.
    """
    lines = text.splitlines()
    if not lines:
        raise _corrupt(path, "empty")
    head = lines[0].split()
    if len(head) != 5 or head[0] != CACHE_MAGIC:
        raise _corrupt(path, f"bad header {lines[0]!r}")
    if head[1] != CACHE_VERSION:
        raise _corrupt(path, f"unsupported format {head[1]!r}")
    try:
        t_min, t_max = float(head[2]), float(head[3])
    except ValueError:
        raise _corrupt(path, f"bad range in header {lines[0]!r}") from None
    if not t_min <= t_max:
        raise _corrupt(path, f"empty range [{t_min}, {t_max}]")

    records = []
    body = [ln for ln in lines[1:] if ln.strip()]
    for lineno, line in enumerate(body, 2):
        try:
            idx, height = line.split()
            rec = TrueZero(int(idx), float(height))
        except ValueError:
            raise _corrupt(path, f"unparsable line {lineno}: {line!r}") from None
        if records:
            if rec.height <= records[-1].height:
                raise _corrupt(path, f"heights not increasing at line {lineno}")
            if rec.index != records[-1].index + 1:
                raise _corrupt(path, f"indices not contiguous at line {lineno}")
        if not t_min <= rec.height <= t_max:
            raise _corrupt(path, f"height outside header range at line {lineno}")
        records.append(rec)

    return ZeroCache(t_min, t_max, head[4], records, body)


def read_cache(path) -> Optional[ZeroCache]:
    """The cache at `path`, or `None` if the file does not exist."""
    path = Path(path)
    if not path.exists():
        return None
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as ex:
        raise _corrupt(path, f"unreadable: {ex}") from ex
    return parse_cache(text, path)


def _record_line(rec: TrueZero) -> str:
    return f"{rec.index} {rec.height!r}"


def _merge(old: ZeroCache, fresh: List[TrueZero], path) -> List[str]:
    """Old lines verbatim, fresh records outside the old range around them."""
    below = [r for r in fresh if r.height < old.t_min]
    above = [r for r in fresh if r.height > old.t_max]
    if old.records:
        if below and below[-1].index + 1 != old.records[0].index:
            raise _corrupt(path, "new zeros do not join the cached indices")
        if above and above[0].index != old.records[-1].index + 1:
            raise _corrupt(path, "new zeros do not join the cached indices")
    return [
        *(_record_line(r) for r in below),
        *old.lines,
        *(_record_line(r) for r in above),
    ]


def build_cache(t_min: float, t_max: float, path=None) -> ZeroCache:
    """
    Scan the zeros in ``[t_min, t_max]`` and persist them, extending any existing cache.

    Re-running with an already covered range leaves the file byte-identical.

    :raises CorruptCacheError:
        if the existing file fails validation
    """
    from . import __version__

    t_min = max(_check_height(t_min, "t_min"), SCAN_START)
    t_max = _check_height(t_max, "t_max")
    if t_max < t_min:
        raise DomainError(f"Empty cache range [{t_min:g}, {t_max:g}]")
    path = Path(path) if path is not None else cache_path()
    old = read_cache(path)

    if old is not None:
        new_min, new_max = min(old.t_min, t_min), max(old.t_max, t_max)
        if (new_min, new_max) == (old.t_min, old.t_max):
            log.info("Zero cache %s already covers [%s, %s].", path, t_min, t_max)
            return old
        fresh = [z for z in true_zeros(new_max) if z.height >= new_min]
        lines = _merge(old, fresh, path)
        generator = old.generator
    else:
        new_min, new_max = t_min, t_max
        fresh = [z for z in true_zeros(new_max) if z.height >= new_min]
        lines = [_record_line(r) for r in fresh]
        generator = __version__

    cache = parse_cache(
        "\n".join(
            [f"{CACHE_MAGIC} {CACHE_VERSION} {new_min!r} {new_max!r} {generator}", *lines]
        ),
        path,
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(cache.render(), encoding="utf-8")
    os.replace(tmp, path)
    log.info("Wrote %i zeros in [%s, %s] to %s.", len(cache.records), new_min, new_max, path)
    return cache
