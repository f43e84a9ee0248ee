"""Small named ordered semigroups used throughout tests and docs.

T1   one-element semigroup
LZ2  two-element left-zero semigroup (x*y = x), equality order
CH2  two-chain semilattice ({0,1}, min, 0 <= 1)
Z2g  the two-element group, equality order
ZS2  null semigroup with zero (all products z, z <= a)
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import validate

_RAW = {
    "T1": {
        "n": 1,
        "table": [[0]],
        "leq": [[1]],
        "names": ["e"],
    },
    "LZ2": {
        "n": 2,
        "table": [[0, 0], [1, 1]],
        "leq": [[1, 0], [0, 1]],
        "names": ["a", "b"],
    },
    "CH2": {
        "n": 2,
        "table": [[0, 0], [0, 1]],
        "leq": [[1, 1], [0, 1]],
        "names": ["0", "1"],
    },
    "Z2g": {
        "n": 2,
        "table": [[0, 1], [1, 0]],
        "leq": [[1, 0], [0, 1]],
        "names": ["e", "g"],
    },
    "ZS2": {
        "n": 2,
        "table": [[0, 0], [0, 0]],
        "leq": [[1, 1], [0, 1]],
        "names": ["z", "a"],
    },
}

FIXTURE_NAMES = tuple(_RAW)


def fixture(name):
    """A fresh validated instance of the named fixture."""
    raw = _RAW[name]
    return validate(raw["n"], raw["table"], raw["leq"], raw["names"])


def all_fixtures():
    return {name: fixture(name) for name in FIXTURE_NAMES}


def fixture_json(name):
    return json.dumps(_RAW[name], indent=2) + "\n"


def write_fixture_files(directory):
    """Write the catalog as runnable instance files, one per fixture."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in FIXTURE_NAMES:
        p = directory / f"{name}.json"
        p.write_text(fixture_json(name), encoding="utf-8")
        paths.append(p)
    return paths
