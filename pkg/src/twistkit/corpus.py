"""Bundled link corpus: one ``.pd`` and one ``.meta.json`` per entry."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any

from .algebra import LaurentPoly, normalize_unit
from .diagram import LinkDiagram, read_pd, wirtinger
from .fox import GroupPresentation

CORPUS_DIR = Path(__file__).with_name("corpus")

_FIELDS = ("genus", "fibered", "alexander", "splittable")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd_path: Path
    m: int
    genus: int | None
    fibered: bool | None
    alexander: LaurentPoly | None
    splittable: int | None
    provenance: dict[str, str]
    notes: str = ""

    def diagram(self) -> LinkDiagram:
        return read_pd(self.pd_path)

    def presentation(self) -> GroupPresentation:
        return wirtinger(self.diagram())

    @property
    def thurston_norm(self) -> int | None:
        """2g - 2 + m, when the genus is known."""
        return None if self.genus is None else 2 * self.genus - 2 + self.m


def _value(meta: dict[str, Any], key: str, name: str, provenance: dict):
    item = meta.get(key)
    if item is None:
        return None
    if not isinstance(item, dict) or "value" not in item:
        raise CorpusError(f"{name}: field {key!r} must be null or {{value, provenance}}")
    if not item.get("provenance"):
        raise CorpusError(f"{name}: field {key!r} has no provenance note")
    provenance[key] = item["provenance"]
    return item["value"]


def load_entry(meta_path: Path) -> CorpusEntry:
    meta = json.loads(Path(meta_path).read_text(encoding="utf-8"))
    name = meta["name"]
    prov: dict[str, str] = {}
    vals = {key: _value(meta, key, name, prov) for key in _FIELDS}
    alex = vals["alexander"]
    if alex is not None:
        poly = LaurentPoly.parse(alex)
        if normalize_unit(poly) != poly:
            raise CorpusError(f"{name}: classical polynomial {alex!r} is not unit-normalized")
        alex = poly
    entry = CorpusEntry(
        name=name,
        pd_path=Path(meta_path).with_name(meta["pd"]),
        m=int(meta["m"]),
        genus=vals["genus"],
        fibered=vals["fibered"],
        alexander=alex,
        splittable=vals["splittable"],
        provenance=prov,
        notes=meta.get("notes", ""),
    )
    return entry


@lru_cache(maxsize=1)
def load_corpus() -> dict[str, CorpusEntry]:
    entries = {}
    for path in sorted(CORPUS_DIR.glob("*.meta.json")):
        e = load_entry(path)
        entries[e.name] = e
    return entries


def get_entry(name: str) -> CorpusEntry:
    try:
        return load_corpus()[name]
    except KeyError:
        raise CorpusError(f"no corpus entry named {name!r}") from None
