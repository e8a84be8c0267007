"""Screen-reader friendly text descriptions for UpSet plots."""

import json

from ._core import (
    UpsetAltError,
    classify_degree,
    classify_set_sizes,
    engine_version,
    fit_distribution,
    humanize_set_name,
    percentile_nearest_rank,
    render_glossary,
)
from . import _core

__all__ = [
    "UpsetAltError",
    "analyze",
    "classify_degree",
    "classify_set_sizes",
    "config_schema",
    "describe",
    "engine_version",
    "fit_distribution",
    "humanize_set_name",
    "percentile_nearest_rank",
    "render_glossary",
]

__version__ = engine_version()


def _text(value):
    if value is None or isinstance(value, str):
        return value
    return json.dumps(value)


def describe(config, data=None, *, data_format="auto", bullets=True, glossary=True, top_k=None):
    """Return a dict with ``short_description``, ``long_description`` and ``warnings``.

    ``config`` and ``data`` may be JSON strings or already-decoded objects. When
    ``data`` is omitted the config document must carry it under ``data``.
    """
    return _core.describe(_text(config), _text(data), data_format, bullets, glossary, top_k)


def analyze(config, data=None, *, data_format="auto"):
    """Return the pattern report behind the descriptions as a dict."""
    return json.loads(_core.analyze(_text(config), _text(data), data_format))


def config_schema():
    return json.loads(_core.config_schema())
