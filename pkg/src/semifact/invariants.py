"""Per-element and per-semigroup factorization invariants.

Single-element queries go through :func:`semifact.core.factorizations`.
Range scans over numerical semigroups use table recurrences instead
(length sets as bitmasks, denumerants, maximum lengths over subsemigroups),
which agree with the enumeration path and are much faster.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .core import (
    Element,
    ElementLike,
    Factorization,
    FactorizationSet,
    SemigroupPresentation,
    contains,
    factorizations,
    membership_table,
)
from .errors import (
    DimensionMismatch,
    EmptyRange,
    EmptySubset,
    NotInSemigroup,
    NotNumerical,
)

INVARIANTS = ("z_count", "lengths", "delta", "max_len", "min_len", "omega", "catenary")


@dataclass(frozen=True)
class LengthSet:
    lengths: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.lengths)

    def __len__(self) -> int:
        return len(self.lengths)

    def __contains__(self, x: object) -> bool:
        return x in self.lengths


@dataclass(frozen=True)
class DeltaSet:
    gaps: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.gaps)

    def __len__(self) -> int:
        return len(self.gaps)

    def __contains__(self, x: object) -> bool:
        return x in self.gaps

    @classmethod
    def of(cls, values: Iterable[int]) -> "DeltaSet":
        return cls(tuple(sorted(set(values))))


@dataclass(frozen=True)
class DeltaCertificate:
    period: int
    start: int
    verified_window: tuple[int, int]
    status: str  # "Verified" or "HorizonTooSmall"
    minimal_period: int | None = None


@dataclass(frozen=True)
class OmegaResult:
    value: int
    exact: bool


def _factorizations_in(sgp: SemigroupPresentation, alpha: ElementLike) -> FactorizationSet:
    z = factorizations(sgp, alpha)
    if not z.factorizations:
        raise NotInSemigroup(f"{z.element} is not in {sgp}")
    return z


def _lengths_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _gaps(lengths: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted({b - a for a, b in zip(lengths, lengths[1:])}))


def length_set(sgp: SemigroupPresentation, alpha: ElementLike) -> LengthSet:
    z = _factorizations_in(sgp, alpha)
    return LengthSet(tuple(sorted({f.length for f in z})))


def delta_of_element(sgp: SemigroupPresentation, alpha: ElementLike) -> DeltaSet:
    return DeltaSet(_gaps(length_set(sgp, alpha).lengths))


def max_length(sgp: SemigroupPresentation, alpha: ElementLike) -> int:
    return length_set(sgp, alpha).lengths[-1]


def min_length(sgp: SemigroupPresentation, alpha: ElementLike) -> int:
    return length_set(sgp, alpha).lengths[0]


def _subset_indices(sgp: SemigroupPresentation, T: Iterable) -> list[int]:
    """Map a subset of generators (given as elements or integers) to sorted indices."""
    wanted = {sgp.coerce(t) for t in T}
    if not wanted:
        raise EmptySubset("generator subset must be nonempty")
    idx = [i for i, g in enumerate(sgp.generators) if g in wanted]
    if len(idx) != len(wanted):
        raise ValueError(f"not all of {sorted(map(str, wanted))} are generators of {sgp}")
    return idx


def apery_set(sgp: SemigroupPresentation, T: Iterable[int]) -> list[int]:
    """``{a in S : a - t not in S for every t in T}`` for a numerical semigroup."""
    nums = sgp.numbers
    idx = _subset_indices(sgp, T)
    ts = [nums[i] for i in idx]
    bound = min(ts) * nums[-1]
    member = membership_table(sgp, bound)
    out = [a for a in range(bound + 1) if member[a] and all(a < t or not member[a - t] for t in ts)]
    # Ap(T) is contained in Ap(min T), which has exactly min T elements
    assert len(out) <= min(ts)
    return out


def max_length_restricted(sgp: SemigroupPresentation, T: Iterable, alpha: ElementLike) -> int | None:
    """Longest factorization of ``alpha`` using only generators in ``T``; None if there is none."""
    sub = sgp.restrict(_subset_indices(sgp, T))
    z = factorizations(sub, sgp.coerce(alpha))
    return max((f.length for f in z), default=None)


def _max_length_table(gens: Sequence[int], N: int) -> list[int]:
    """``M[n]`` = max factorization length of n over ``gens``, -1 when n is not generated."""
    M = [-1] * (N + 1)
    M[0] = 0
    for n in range(1, N + 1):
        best = -1
        for g in gens:
            if g <= n and M[n - g] >= 0 and M[n - g] + 1 > best:
                best = M[n - g] + 1
        M[n] = best
    return M


class _AperyOmega:
    """Omega values via maximum lengths over subsemigroups translated by Apery elements."""

    def __init__(self, sgp: SemigroupPresentation, hi: int):
        nums = sgp.numbers
        self.parts: list[tuple[list[int], list[int]]] = []
        top = hi
        subsets = []
        for size in range(1, len(nums) + 1):
            for idx in itertools.combinations(range(len(nums)), size):
                ap = apery_set(sgp, [nums[i] for i in idx])
                subsets.append((idx, ap))
                top = max(top, hi + max(ap))
        for idx, ap in subsets:
            self.parts.append((ap, _max_length_table([nums[i] for i in idx], top)))

    def __call__(self, n: int) -> int:
        best = 0
        for ap, M in self.parts:
            for beta in ap:
                v = M[n + beta]
                if v > best:
                    best = v
        return best


def omega(sgp: SemigroupPresentation, alpha: ElementLike) -> OmegaResult:
    """Omega-primality of a numerical semigroup element (exact).

    ``omega(0)`` is 0 by convention: the zero vector is its only minimal bullet.
    """
    sgp.numbers
    n = sgp.coerce(alpha).free[0]
    if not contains(sgp, n):
        raise NotInSemigroup(f"{n} is not in {sgp}")
    if n == 0:
        return OmegaResult(0, True)
    return OmegaResult(_AperyOmega(sgp, n)(n), True)


def omega_bounded(sgp: SemigroupPresentation, alpha: ElementLike, cap: int) -> OmegaResult:
    """Minimal-bullet search over expressions of length at most ``cap``.

    Grows the set of non-bullets level by level; a bullet is minimal when
    every one-step reduction of it is a non-bullet.  The search is exact once
    a level has no non-bullets left.
    """
    target = sgp.coerce(alpha)
    if not contains(sgp, target):
        raise NotInSemigroup(f"{target} is not in {sgp}")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    r = sgp.rank
    if target == sgp.ambient.zero():
        return OmegaResult(0, True)

    if sgp.is_numerical:
        nums = sgp.numbers
        n = target.free[0]
        member = membership_table(sgp, cap * nums[-1])

        def is_bullet(v: tuple[int, ...]) -> bool:
            s = sum(a * g for a, g in zip(v, nums)) - n
            return s >= 0 and member[s]
    else:
        def is_bullet(v: tuple[int, ...]) -> bool:
            diff = sgp.ambient.subtract(sgp.evaluate(v), target)
            return diff is not None and contains(sgp, diff)

    zero = (0,) * r
    nonbullets = {zero}
    best = 0
    for level in range(1, cap + 1):
        nxt: set[tuple[int, ...]] = set()
        seen: set[tuple[int, ...]] = set()
        for v in nonbullets:
            for i in range(r):
                w = v[:i] + (v[i] + 1,) + v[i + 1:]
                if w in seen:
                    continue
                seen.add(w)
                if not is_bullet(w):
                    nxt.add(w)
                elif all(w[j] == 0 or (w[:j] + (w[j] - 1,) + w[j + 1:]) in nonbullets for j in range(r)):
                    best = level
        nonbullets = nxt
        if not nonbullets:
            return OmegaResult(best, True)
    return OmegaResult(best, False)


def distance(a: Factorization | Sequence[int], b: Factorization | Sequence[int]) -> int:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise DimensionMismatch(f"factorizations of different dimension: {len(a)} vs {len(b)}")
    common = sum(min(x, y) for x, y in zip(a, b))
    return max(sum(a) - common, sum(b) - common)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.components = n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        self.components -= 1
        return True


def catenary_from_factorizations(vectors: Sequence[Sequence[int]]) -> int:
    """Bottleneck weight of a minimum spanning tree on the distance graph."""
    m = len(vectors)
    if m <= 1:
        return 0
    vecs = [tuple(v) for v in vectors]
    lens = [sum(v) for v in vecs]
    edges = []
    for i in range(m):
        vi, li = vecs[i], lens[i]
        for j in range(i + 1, m):
            common = sum(map(min, vi, vecs[j]))
            edges.append((max(li, lens[j]) - common, i, j))
    edges.sort()
    uf = _UnionFind(m)
    for w, i, j in edges:
        if uf.union(i, j) and uf.components == 1:
            return w
    raise AssertionError("distance graph is complete, so it must connect")


def catenary_degree(sgp: SemigroupPresentation, alpha: ElementLike) -> int:
    return catenary_from_factorizations(_factorizations_in(sgp, alpha).vectors())


# -- numerical tables -------------------------------------------------------


def length_masks(sgp: SemigroupPresentation, N: int) -> list[int]:
    """Bitmask of the length set of every ``n <= N`` (bit l set iff l is a length)."""
    nums = sgp.numbers
    masks = [0] * (N + 1)
    masks[0] = 1
    for n in range(1, N + 1):
        m = 0
        for g in nums:
            if g <= n:
                m |= masks[n - g]
        masks[n] = m << 1
    return masks


def delta_table(sgp: SemigroupPresentation, N: int) -> list[tuple[int, ...] | None]:
    """Delta set of every ``n <= N``; None marks integers outside the semigroup."""
    return [_gaps(_lengths_from_mask(m)) if m else None for m in length_masks(sgp, N)]


def _least_periodic_start(values: Sequence, period: int, lo: int = 0) -> int | None:
    """Least N >= lo with values[n] == values[n + period] for every n in [N, len - period)."""
    last = len(values) - period
    if last <= lo:
        return None
    start = lo
    for n in range(last - 1, lo - 1, -1):
        if values[n] != values[n + period]:
            start = n + 1
            break
    return start


def _minimal_period(values: Sequence, start: int, period: int) -> int:
    for d in sorted(d for d in range(1, period + 1) if period % d == 0):
        if all(values[n] == values[n + d] for n in range(start, len(values) - d)):
            return d
    return period


def delta_of_semigroup(
    sgp: SemigroupPresentation, horizon: int, start_hint: int | None = None
) -> tuple[DeltaSet, DeltaCertificate]:
    """Delta set of a numerical semigroup, with an eventual-periodicity certificate.

    Delta(n) is computed for every ``n <= horizon``.  The start is the least
    N such that Delta(n) == Delta(n + p) throughout the scanned tail, with
    ``p = lcm(n_1, n_r)``; the certificate is Verified when that tail covers
    at least two full periods.  Without ``start_hint`` the start is empirical.
    """
    nums = sgp.numbers
    period = math.lcm(nums[0], nums[-1])
    if start_hint is not None and horizon < start_hint + 2 * period:
        raise ValueError(f"horizon must be >= start_hint + 2*{period}")
    deltas = delta_table(sgp, horizon)
    lo = start_hint or 0
    start = _least_periodic_start(deltas, period, lo)
    if start_hint is not None and start is not None and start > start_hint:
        start = None
    if start is not None and start + 2 * period <= horizon + 1:
        top = start + period
        union = DeltaSet.of(g for d in deltas[: top + 1] if d for g in d)
        cert = DeltaCertificate(
            period, start, (start, start + 2 * period), "Verified",
            _minimal_period(deltas, start, period),
        )
        return union, cert
    union = DeltaSet.of(g for d in deltas if d for g in d)
    s = start if start is not None else horizon + 1
    return union, DeltaCertificate(period, s, (s, s + 2 * period), "HorizonTooSmall")


# -- scans ------------------------------------------------------------------


@dataclass
class ScanRecord:
    element: Element
    z_count: int | None = None
    lengths: tuple[int, ...] | None = None
    delta: tuple[int, ...] | None = None
    max_len: int | None = None
    min_len: int | None = None
    omega: int | None = None
    omega_exact: bool | None = None
    catenary: int | None = None


@dataclass
class ScanTable:
    columns: tuple[str, ...]
    records: list[ScanRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ScanRecord]:
        return iter(self.records)

    def by_element(self) -> dict[Element, ScanRecord]:
        return {rec.element: rec for rec in self.records}

    def column(self, name: str) -> dict[Element, object]:
        return {rec.element: getattr(rec, name) for rec in self.records}


def normalize_selection(selection: Iterable[str]) -> tuple[str, ...]:
    chosen = set(selection)
    unknown = chosen - set(INVARIANTS) - {"omega_exact"}
    if unknown:
        raise ValueError(f"unknown invariants: {sorted(unknown)}")
    cols = []
    for name in INVARIANTS:
        if name in chosen:
            cols.append(name)
            if name == "omega":
                cols.append("omega_exact")
    return tuple(cols)


def _catenary_worker(args: tuple[SemigroupPresentation, Element]) -> int:
    sgp, alpha = args
    return catenary_from_factorizations(factorizations(sgp, alpha).vectors())


def _omega_worker(args: tuple[SemigroupPresentation, Element, int]) -> OmegaResult:
    sgp, alpha, cap = args
    return omega_bounded(sgp, alpha, cap)


def _mapped(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _box_points(sgp: SemigroupPresentation, lower: Sequence[int], upper: Sequence[int]) -> list[Element]:
    """Every ambient element with free part in the box, ordered by coordinate sum then lexicographically."""
    ranges = [range(a, b + 1) for a, b in zip(lower, upper)]
    tors = list(itertools.product(*[range(m) for m in sgp.ambient.torsion_orders]))
    pts = [Element(tuple(p), tuple(t)) for p in itertools.product(*ranges) for t in tors]
    pts.sort(key=lambda e: (sum(e.free), e))
    return pts


def _box_tables(sgp: SemigroupPresentation, upper: Sequence[int], want_count: bool):
    """Length-set masks (and factorization counts) on the box [0, upper] by recurrence."""
    pts = _box_points(sgp, [0] * len(upper), upper)
    masks: dict[Element, int] = {}
    zero = sgp.ambient.zero()
    for p in pts:
        if p == zero:
            masks[p] = 1
            continue
        m = 0
        for g in sgp.generators:
            q = sgp.ambient.subtract(p, g)
            if q is not None:
                m |= masks[q]
        masks[p] = m << 1
    counts: dict[Element, int] | None = None
    if want_count:
        counts = {p: 0 for p in pts}
        counts[zero] = 1
        for g in sgp.generators:
            for p in pts:
                q = sgp.ambient.subtract(p, g)
                if q is not None:
                    counts[p] += counts[q]
    return masks, counts


def scan(
    sgp: SemigroupPresentation,
    lo: int | Sequence[int],
    hi: int | Sequence[int],
    invariants: Iterable[str] = ("z_count",),
    *,
    omega_cap: int = 64,
    workers: int = 1,
) -> ScanTable:
    """Evaluate the selected invariants on every semigroup element in a range or box.

    Numerical semigroups take integer bounds; otherwise ``lo`` and ``hi`` are
    the corners of a coordinate box on the free part.  Rows are in ascending
    element order regardless of ``workers``.
    """
    cols = normalize_selection(invariants)
    numerical = sgp.is_numerical and isinstance(lo, int)
    if numerical:
        if hi < lo or hi < 0:
            raise EmptyRange(f"empty range [{lo}, {hi}]")
        lo = max(lo, 0)
        masks = length_masks(sgp, hi)
        elems = [Element((n,)) for n in range(lo, hi + 1) if masks[n]]
        mask_of = {e: masks[e.free[0]] for e in elems}
        counts = None
        if "z_count" in cols:
            from .core import denumerant_table

            table = denumerant_table(sgp, hi)
            counts = {e: table[e.free[0]] for e in elems}
    else:
        lo = (lo,) if isinstance(lo, int) else tuple(lo)
        hi = (hi,) if isinstance(hi, int) else tuple(hi)
        if len(lo) != sgp.ambient.free_rank or len(hi) != len(lo):
            raise DimensionMismatch("box corners must match the free rank")
        if any(b < a for a, b in zip(lo, hi)) or any(b < 0 for b in hi):
            raise EmptyRange(f"empty box {lo}:{hi}")
        lo = tuple(max(a, 0) for a in lo)
        mask_of_all, counts_all = _box_tables(sgp, hi, "z_count" in cols)
        elems = [
            p for p in _box_points(sgp, lo, hi) if mask_of_all[p]
        ]
        elems.sort()
        mask_of = {e: mask_of_all[e] for e in elems}
        counts = {e: counts_all[e] for e in elems} if counts_all is not None else None

    table = ScanTable(cols)
    recs = [ScanRecord(e) for e in elems]
    for rec in recs:
        lengths = _lengths_from_mask(mask_of[rec.element])
        if counts is not None:
            rec.z_count = counts[rec.element]
        if "lengths" in cols:
            rec.lengths = lengths
        if "delta" in cols:
            rec.delta = _gaps(lengths)
        if "max_len" in cols:
            rec.max_len = lengths[-1]
        if "min_len" in cols:
            rec.min_len = lengths[0]

    if "omega" in cols:
        if numerical:
            top = elems[-1].free[0] if elems else 0
            apery = _AperyOmega(sgp, top)
            for rec in recs:
                n = rec.element.free[0]
                rec.omega, rec.omega_exact = (apery(n), True) if n else (0, True)
        else:
            results = _mapped(_omega_worker, [(sgp, r.element, omega_cap) for r in recs], workers)
            for rec, res in zip(recs, results):
                rec.omega, rec.omega_exact = res.value, res.exact
    if "catenary" in cols:
        values = _mapped(_catenary_worker, [(sgp, r.element) for r in recs], workers)
        for rec, v in zip(recs, values):
            rec.catenary = v
    table.records = recs
    return table
