"""Versioned on-disk cache of group data and coinvariant table layouts.

One JSON document per group; key = (type code, field, format version).
Absent or version-mismatched files are regenerated.  The recorded layout
(derivative multi-indices and standard monomials per degree) lets the
coinvariant tables skip their pivot searches on reload; every exact
certification still runs.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

from .coinvariants import CoinvariantBasis
from .groups import ReflectionGroup, build_group

CACHE_VERSION = 2

DEFAULT_ENV = "COXCOV_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(DEFAULT_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "coxcov"


def _scalar_doc(x, field):
    return [str(Fraction(c)) for c in field.coords(x)]


def _scalar_load(doc, field):
    return field.scalar(*[Fraction(c) for c in doc])


def cache_path(cache_dir: Path, code: str) -> Path:
    safe = code.replace("(", "_").replace(")", "")
    return Path(cache_dir) / f"group_{safe}.json"


def save_group(cache_dir: Path, group: ReflectionGroup,
               cb: CoinvariantBasis | None = None) -> Path:
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    f = group.field
    doc = {
        "version": CACHE_VERSION,
        "code": group.code,
        "field": f.name,
        "rank": group.rank,
        "order": group.order,
        "degrees": list(group.degrees),
        "gram": [[_scalar_doc(v, f) for v in row] for row in group.gram],
        "simple_roots": [[_scalar_doc(v, f) for v in a]
                         for a in group.simple_roots],
        "positive_roots": [[_scalar_doc(v, f) for v in a]
                           for a in group.positive_roots],
        "elements": [[[_scalar_doc(v, f) for v in row] for row in m]
                     for m in group.elements],
        "reflections": [[idx, [_scalar_doc(v, f) for v in root]]
                        for idx, root in group.reflections],
        "reflection_classes": group.reflection_classes,
        "invariants": [
            [[list(e), _scalar_doc(c, f)] for e, c in psi.sorted_terms()]
            for psi in group.basic_invariants()],
    }
    if cb is not None:
        doc["tables"] = {
            str(d): {"indices": [list(a) for a in idxs],
                     "monomials": [list(m) for m in monos]}
            for d, (idxs, monos) in cb.recorded_tables().items()}
    path = cache_path(cache_dir, group.code)
    path.write_text(json.dumps(doc, sort_keys=True))
    return path


def load_stack(cache_dir: Path, code: str, allow_long=False):
    """(group, coinvariant basis) from cache when fresh, else rebuilt (and
    the cache file rewritten).  Returns (group, cb, from_cache)."""
    path = cache_path(Path(cache_dir), code)
    recorded = None
    if path.exists():
        try:
            doc = json.loads(path.read_text())
        except (ValueError, OSError):
            doc = None
        if doc and doc.get("version") == CACHE_VERSION and "tables" in doc:
            recorded = {int(d): (([tuple(a) for a in t["indices"]],
                                  [tuple(m) for m in t["monomials"]]))
                        for d, t in doc["tables"].items()}
    group = build_group(code, allow_long=allow_long)
    if recorded is not None:
        try:
            cb = CoinvariantBasis(group, precomputed=recorded)
            return group, cb, True
        except (AssertionError, ValueError, KeyError):
            pass  # stale layout: fall through and regenerate
    cb = CoinvariantBasis(group)
    save_group(Path(cache_dir), group, cb)
    return group, cb, False


def inspect_cache(cache_dir: Path):
    cache_dir = Path(cache_dir)
    out = []
    if not cache_dir.exists():
        return out
    for p in sorted(cache_dir.glob("group_*.json")):
        try:
            doc = json.loads(p.read_text())
            out.append({"file": p.name, "code": doc.get("code"),
                        "version": doc.get("version"),
                        "order": doc.get("order"),
                        "bytes": p.stat().st_size})
        except (ValueError, OSError):
            out.append({"file": p.name, "code": None, "version": None,
                        "order": None, "bytes": p.stat().st_size})
    return out


def purge_cache(cache_dir: Path, code: str | None = None) -> int:
    cache_dir = Path(cache_dir)
    if not cache_dir.exists():
        return 0
    n = 0
    for p in sorted(cache_dir.glob("group_*.json")):
        if code is None or p == cache_path(cache_dir, code):
            p.unlink()
            n += 1
    return n
