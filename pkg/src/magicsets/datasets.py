"""Bundled named structures with published metrics and recipes.

Every entry that ships an assignment is re-verified against the operator
oracle at load time, so a corrupted data file fails loudly rather than
silently feeding tests.  Expected metrics carry a provenance source tag
("published" for table values from the source listings, "derived" otherwise).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .hypergraph import Hypergraph
from .orbits import ms327_hypergraph
from .pauli import MagicAssignment, verify_assignment
from .reduce import ReductionRecipe

#: Load order for verify-dataset style sweeps (parents first, classics last).
NAMES = [
    "HA",
    "HB",
    "HC",
    "HD",
    "MS3-29",
    "MS5-26",
    "MS4-21b",
    "MS3-27b",
    "MS6-35",
    "MS3-27",
    "square",
    "pentagram",
]


@dataclass(frozen=True)
class ExpectedMetric:
    value: object
    source: str  # "published" | "derived"


@dataclass(frozen=True)
class DatasetEntry:
    name: str
    hypergraph: Hypergraph
    assignment: MagicAssignment | None
    recipe: ReductionRecipe | None
    recipe_parent: str | None
    expected: dict[str, ExpectedMetric]


def _from_doc(doc: dict) -> DatasetEntry:
    h = Hypergraph.from_json_dict(doc["hypergraph"])
    assignment = None
    if doc.get("assignment"):
        assignment = MagicAssignment.from_mapping(h, doc["assignment"])
        report = verify_assignment(h, assignment)
        if not report.valid:
            raise ValueError(f"bundled assignment for {doc['name']} fails verification: {report.violations[:3]}")
    recipe = None
    parent = None
    if doc.get("recipe"):
        recipe = ReductionRecipe.from_json_dict(doc["recipe"])
        parent = doc["recipe"]["parent"]
    expected = {k: ExpectedMetric(v["value"], v["source"]) for k, v in doc.get("expected", {}).items()}
    return DatasetEntry(doc["name"], h, assignment, recipe, parent, expected)


def load(name: str) -> DatasetEntry:
    if name == "MS3-27":
        # Generated, not transcribed: the figure gives only the construction.
        return DatasetEntry(
            "MS3-27",
            ms327_hypergraph(),
            None,
            None,
            None,
            {
                "n_qubits": ExpectedMetric(3, "published"),
                "b": ExpectedMetric(21, "published"),
                "Q": ExpectedMetric(27, "published"),
                "epsilon": ExpectedMetric("0.22", "published"),
                "magic": ExpectedMetric(True, "published"),
                "minimal": ExpectedMetric(True, "published"),
            },
        )
    fname = name.lower().replace("-", "_") + ".json"
    path = resources.files("magicsets").joinpath("data", fname)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise KeyError(f"no bundled dataset named {name!r}; known: {NAMES}") from None
    return _from_doc(json.loads(text))


def load_all() -> list[DatasetEntry]:
    return [load(name) for name in NAMES]


__all__ = ["NAMES", "DatasetEntry", "ExpectedMetric", "load", "load_all"]
