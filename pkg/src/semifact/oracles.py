"""Brute-force reference implementations.

These deliberately avoid the production search code: no pruning, no
recurrence tables, no union-find.  They exist so tests can compare two
independent routes to the same number.
"""
from __future__ import annotations

import itertools
from collections import deque

from .core import Element, ElementLike, Factorization, FactorizationSet, SemigroupPresentation
from .errors import NotInSemigroup
from .invariants import OmegaResult, distance


def _coordinate_bound(sgp: SemigroupPresentation, target: Element, i: int) -> int:
    g = sgp.generators[i].free
    return min(target.free[j] // g[j] for j in range(len(g)) if g[j] > 0)


def _value(sgp: SemigroupPresentation, a: tuple[int, ...]) -> Element:
    amb = sgp.ambient
    free = [0] * amb.free_rank
    tors = [0] * len(amb.torsion_orders)
    for k, g in zip(a, sgp.generators):
        for j, x in enumerate(g.free):
            free[j] += k * x
        for j, t in enumerate(g.torsion):
            tors[j] += k * t
    return Element(tuple(free), tuple(t % m for t, m in zip(tors, amb.torsion_orders)))


def naive_factorizations(sgp: SemigroupPresentation, alpha: ElementLike) -> FactorizationSet:
    """Every exponent vector in the bounding box that evaluates to ``alpha``."""
    target = sgp.coerce(alpha)
    box = [range(_coordinate_bound(sgp, target, i) + 1) for i in range(sgp.rank)]
    found = [a for a in itertools.product(*box) if _value(sgp, a) == target]
    return FactorizationSet(target, tuple(Factorization(a) for a in sorted(found)))


def box_size(sgp: SemigroupPresentation, alpha: ElementLike) -> int:
    """Number of vectors :func:`naive_factorizations` would visit."""
    target = sgp.coerce(alpha)
    size = 1
    for i in range(sgp.rank):
        size *= _coordinate_bound(sgp, target, i) + 1
    return size


def catenary_oracle(sgp: SemigroupPresentation, alpha: ElementLike) -> int:
    """Least N for which the graph joining factorizations at distance <= N is connected."""
    z = naive_factorizations(sgp, alpha).vectors()
    if not z:
        raise NotInSemigroup(f"{alpha} is not in {sgp}")
    N = 0
    while True:
        seen = {0}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in range(len(z)):
                if j not in seen and distance(z[i], z[j]) <= N:
                    seen.add(j)
                    queue.append(j)
        if len(seen) == len(z):
            return N
        N += 1


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def bullet_oracle(sgp: SemigroupPresentation, alpha: ElementLike, cap: int) -> OmegaResult:
    """Omega by listing every expression of length <= ``cap`` and keeping the minimal bullets.

    A vector b is a bullet when ``sum b_i g_i - alpha`` lies in the
    semigroup.  The answer is exact once some level has every vector
    dominating an already kept minimal bullet, since then no longer minimal
    bullet can exist.
    """
    target = sgp.coerce(alpha)
    if not naive_factorizations(sgp, target).factorizations:
        raise NotInSemigroup(f"{target} is not in {sgp}")
    if sgp.is_numerical:
        gens = [g.free[0] for g in sgp.generators]
        n = target.free[0]
        top = cap * max(gens)
        member = [False] * (top + 1)
        member[0] = True
        for x in range(1, top + 1):
            member[x] = any(x >= g and member[x - g] for g in gens)

        def is_bullet(b: tuple[int, ...]) -> bool:
            s = sum(k * g for k, g in zip(b, gens)) - n
            return s >= 0 and member[s]
    else:
        def is_bullet(b: tuple[int, ...]) -> bool:
            v = _value(sgp, b)
            if any(x < y for x, y in zip(v.free, target.free)):
                return False
            diff = Element(
                tuple(x - y for x, y in zip(v.free, target.free)),
                tuple((x - y) % m for x, y, m in zip(v.torsion, target.torsion, sgp.ambient.torsion_orders)),
            )
            return bool(naive_factorizations(sgp, diff).factorizations)

    minimal: list[tuple[int, ...]] = []

    def dominates(b: tuple[int, ...], m: tuple[int, ...]) -> bool:
        return all(x >= y for x, y in zip(b, m))

    for level in range(cap + 1):
        closed = True
        for b in _compositions(level, sgp.rank):
            covered = any(dominates(b, m) for m in minimal)
            if covered:
                continue
            if is_bullet(b):
                minimal.append(b)
            else:
                closed = False
        if closed and minimal:
            return OmegaResult(max(sum(m) for m in minimal), True)
    return OmegaResult(max((sum(m) for m in minimal), default=0), False)
