"""Access to the JSON schemas shipped with the package.

Validation itself needs ``jsonschema``, which is only a test dependency.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

NAMES = ("appell", "csv", "decompose", "evolve", "gamma", "ladder", "poly", "relations", "report", "timepoly")


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"no schema named {name!r}")
    text = resources.files("cliflat").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
