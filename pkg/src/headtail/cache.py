"""Content-addressed on-disk cache for computed polynomials."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .algebra import LaurentPoly
from .diagram import PDCode
from .statesum import ColoredJones, colored_jones


class ResultCache:
    """Stores JSON blobs under ``<root>/<sha256>.json``.

    Keys are built from the diagram's PD text (not its name), the color and
    the engine, so renamed knots share entries.
    """

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(d: PDCode, n: int, engine: str) -> str:
        text = f"{d.text()}|loops={d.loops}|n={n}|engine={engine}"
        return hashlib.sha256(text.encode()).hexdigest()

    def get(self, key: str) -> dict | None:
        path = self.root / f"{key}.json"
        if not path.exists():
            return None
        with open(path) as fh:
            return json.load(fh)

    def put(self, key: str, value: dict) -> None:
        tmp = self.root / f"{key}.json.tmp"
        with open(tmp, "w") as fh:
            json.dump(value, fh)
        os.replace(tmp, self.root / f"{key}.json")


def cached_colored_jones(d: PDCode, n: int, engine: str = "auto",
                         cache: ResultCache | None = None, **caps) -> ColoredJones:
    if cache is None:
        return colored_jones(d, n, engine, **caps)
    key = ResultCache.key(d, n, engine)
    hit = cache.get(key)
    if hit is not None:
        return ColoredJones(d.name, n, LaurentPoly.from_json(hit["unnormalized"]),
                            LaurentPoly.from_json(hit["normalized"]))
    cj = colored_jones(d, n, engine, **caps)
    cache.put(key, {"unnormalized": cj.unnormalized.to_json(),
                    "normalized": cj.normalized.to_json()})
    return cj
