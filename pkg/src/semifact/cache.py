"""On-disk cache of factorization sets.

Layout: ``<dir>/<sha256 of the canonical semigroup document>/<element>.jsonl``.
The first line of each file repeats the hash and element; the remaining
lines are exponent vectors.  One writer per directory is assumed.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

from .core import Element, Factorization, FactorizationSet, SemigroupPresentation

log = logging.getLogger(__name__)


def semigroup_hash(sgp: SemigroupPresentation) -> str:
    return hashlib.sha256(sgp.canonical_json().encode("utf-8")).hexdigest()


def _path(root: str | Path, digest: str, element: Element) -> Path:
    name = str(element).replace("|", "_") + ".jsonl"
    return Path(root) / digest / name


def cache_store(root: str | Path, sgp: SemigroupPresentation, fset: FactorizationSet) -> Path:
    digest = semigroup_hash(sgp)
    path = _path(root, digest, fset.element)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps({"sgp": digest, "element": str(fset.element), "count": len(fset)})]
    lines += [json.dumps(list(f.exponents)) for f in fset]
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    os.replace(tmp, path)
    return path


def cache_load(root: str | Path, sgp: SemigroupPresentation, element: Element) -> FactorizationSet | None:
    """Cached set, or None on a miss.  Corrupt or mismatched files count as misses."""
    digest = semigroup_hash(sgp)
    path = _path(root, digest, element)
    if not path.exists():
        return None
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
        head = json.loads(lines[0])
        if head.get("sgp") != digest or head.get("element") != str(element):
            log.warning("cache entry %s belongs to another semigroup or element; ignoring", path)
            return None
        vecs = [tuple(int(x) for x in json.loads(line)) for line in lines[1:] if line]
        if len(vecs) != head.get("count") or any(len(v) != sgp.rank for v in vecs):
            raise ValueError("entry count or dimension mismatch")
        if any(sgp.evaluate(v) != element for v in vecs):
            raise ValueError("cached vector does not evaluate to the element")
    except (ValueError, IndexError, TypeError, AttributeError) as exc:
        log.warning("corrupt cache entry %s (%s); ignoring", path, exc)
        return None
    return FactorizationSet(element, tuple(Factorization(v) for v in sorted(vecs)))


def cached_factorizations(root: str | Path | None, sgp: SemigroupPresentation, element: Element) -> FactorizationSet:
    from .core import factorizations

    if root is None:
        return factorizations(sgp, element)
    hit = cache_load(root, sgp, element)
    if hit is not None:
        return hit
    fset = factorizations(sgp, element)
    cache_store(root, sgp, fset)
    return fset
