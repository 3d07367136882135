"""Semigroup data model, membership and factorization enumeration.

A semigroup lives in an ambient group ``N^d (+) T`` where ``T`` is a finite
product of cyclic groups.  Elements carry a free part (nonnegative integers)
and a torsion part (residues).  Numerical semigroups are the special case
``d = 1`` with no torsion, and most entry points accept a bare ``int`` there.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Sequence, Union

from .errors import AmbientMismatch, InvalidSemigroup, NotNumerical


@dataclass(frozen=True)
class AmbientSpec:
    free_rank: int
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 1:
            raise InvalidSemigroup(f"free_rank must be >= 1, got {self.free_rank}")
        for order in self.torsion_orders:
            if order < 2:
                raise InvalidSemigroup(f"torsion orders must be >= 2, got {order}")

    def zero(self) -> "Element":
        return Element((0,) * self.free_rank, (0,) * len(self.torsion_orders))

    def element(self, free: Sequence[int], torsion: Sequence[int] = ()) -> "Element":
        """Build an element, reducing torsion residues modulo their orders."""
        free = tuple(int(x) for x in free)
        torsion = tuple(int(t) for t in torsion) or (0,) * len(self.torsion_orders)
        if len(free) != self.free_rank or len(torsion) != len(self.torsion_orders):
            raise AmbientMismatch(
                f"element ({free}|{torsion}) does not fit ambient rank "
                f"{self.free_rank} with torsion {self.torsion_orders}"
            )
        if any(x < 0 for x in free):
            raise AmbientMismatch(f"free coordinates must be nonnegative: {free}")
        torsion = tuple(t % m for t, m in zip(torsion, self.torsion_orders))
        return Element(free, torsion)

    def add(self, a: "Element", b: "Element") -> "Element":
        return Element(
            tuple(x + y for x, y in zip(a.free, b.free)),
            tuple((x + y) % m for x, y, m in zip(a.torsion, b.torsion, self.torsion_orders)),
        )

    def scale(self, k: int, a: "Element") -> "Element":
        return Element(
            tuple(k * x for x in a.free),
            tuple((k * t) % m for t, m in zip(a.torsion, self.torsion_orders)),
        )

    def subtract(self, a: "Element", b: "Element") -> "Element | None":
        """``a - b`` if the free part stays nonnegative, else None."""
        free = tuple(x - y for x, y in zip(a.free, b.free))
        if any(x < 0 for x in free):
            return None
        return Element(
            free, tuple((x - y) % m for x, y, m in zip(a.torsion, b.torsion, self.torsion_orders))
        )


@dataclass(frozen=True, order=True)
class Element:
    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        text = ",".join(map(str, self.free))
        if self.torsion:
            text += "|" + ",".join(map(str, self.torsion))
        return text


ElementLike = Union[Element, int, Sequence[int]]


@dataclass(frozen=True, order=True)
class Factorization:
    """Exponent vector of a factorization; ``length`` is the number of atoms used."""

    exponents: tuple[int, ...]
    length: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "length", sum(self.exponents))

    def __len__(self) -> int:
        return len(self.exponents)

    def __iter__(self) -> Iterator[int]:
        return iter(self.exponents)

    def __getitem__(self, i: int) -> int:
        return self.exponents[i]


@dataclass(frozen=True)
class FactorizationSet:
    element: Element
    factorizations: tuple[Factorization, ...]

    def __len__(self) -> int:
        return len(self.factorizations)

    def __iter__(self) -> Iterator[Factorization]:
        return iter(self.factorizations)

    def __contains__(self, item: object) -> bool:
        if not isinstance(item, Factorization):
            item = Factorization(tuple(item))  # type: ignore[arg-type]
        return item in self.factorizations

    def vectors(self) -> list[tuple[int, ...]]:
        return [f.exponents for f in self.factorizations]


@dataclass(frozen=True)
class Violation:
    kind: str
    index: int | None = None

    def __str__(self) -> str:
        return self.kind if self.index is None else f"{self.kind}({self.index})"


@dataclass(frozen=True)
class SemigroupPresentation:
    ambient: AmbientSpec
    generators: tuple[Element, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise InvalidSemigroup("a semigroup needs at least one generator")
        d, m = self.ambient.free_rank, len(self.ambient.torsion_orders)
        for g in self.generators:
            if len(g.free) != d or len(g.torsion) != m:
                raise AmbientMismatch(f"generator {g} does not fit the ambient")

    @classmethod
    def numerical(cls, gens: Iterable[int]) -> "SemigroupPresentation":
        return cls(AmbientSpec(1), tuple(Element((int(n),)) for n in gens))

    @classmethod
    def affine(cls, gens: Iterable[Sequence[int]]) -> "SemigroupPresentation":
        gens = [tuple(int(x) for x in g) for g in gens]
        return cls(AmbientSpec(len(gens[0])), tuple(Element(g) for g in gens))

    @property
    def rank(self) -> int:
        """Number of generators (the length of every exponent vector)."""
        return len(self.generators)

    @property
    def is_numerical(self) -> bool:
        return self.ambient.free_rank == 1 and not self.ambient.torsion_orders

    @property
    def numbers(self) -> tuple[int, ...]:
        """Generators as plain integers; only for the one-dimensional torsion-free case."""
        if not self.is_numerical:
            raise NotNumerical("semigroup is not numerical")
        return tuple(g.free[0] for g in self.generators)

    def coerce(self, alpha: ElementLike) -> Element:
        if isinstance(alpha, Element):
            if len(alpha.free) != self.ambient.free_rank or len(alpha.torsion) != len(
                self.ambient.torsion_orders
            ):
                raise AmbientMismatch(f"element {alpha} does not fit the ambient")
            return alpha
        if isinstance(alpha, int):
            return self.ambient.element((alpha,))
        return self.ambient.element(tuple(alpha))

    def evaluate(self, exponents: Sequence[int]) -> Element:
        if len(exponents) != self.rank:
            raise AmbientMismatch(f"expected {self.rank} exponents, got {len(exponents)}")
        total = self.ambient.zero()
        for a, g in zip(exponents, self.generators):
            if a:
                total = self.ambient.add(total, self.ambient.scale(a, g))
        return total

    def restrict(self, indices: Sequence[int]) -> "SemigroupPresentation":
        """Subsemigroup generated by the generators at ``indices`` (0-based)."""
        return SemigroupPresentation(self.ambient, tuple(self.generators[i] for i in indices))

    def to_document(self) -> dict:
        if self.is_numerical:
            return {"numerical": list(self.numbers)}
        doc: dict = {"free_rank": self.ambient.free_rank, "torsion": list(self.ambient.torsion_orders)}
        gens = []
        for g in self.generators:
            entry: dict = {"free": list(g.free)}
            if self.ambient.torsion_orders:
                entry["torsion"] = list(g.torsion)
            gens.append(entry)
        doc["generators"] = gens
        return doc

    def canonical_json(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True, separators=(",", ":"))

    def __str__(self) -> str:
        return "<" + ", ".join(
            str(g.free[0]) if self.is_numerical else f"({g})" for g in self.generators
        ) + ">"


def parse_semigroup(doc: dict) -> SemigroupPresentation:
    """Build a presentation from the JSON document shape; unknown keys are rejected."""
    if not isinstance(doc, dict):
        raise InvalidSemigroup("semigroup document must be a JSON object")
    if "numerical" in doc:
        extra = set(doc) - {"numerical"}
        if extra:
            raise InvalidSemigroup(f"unknown keys: {sorted(extra)}")
        gens = doc["numerical"]
        if not isinstance(gens, list) or not gens or not all(
            isinstance(n, int) and not isinstance(n, bool) and n > 0 for n in gens
        ):
            raise InvalidSemigroup("'numerical' must be a nonempty list of positive integers")
        return SemigroupPresentation.numerical(gens)

    extra = set(doc) - {"free_rank", "torsion", "generators"}
    if extra:
        raise InvalidSemigroup(f"unknown keys: {sorted(extra)}")
    try:
        ambient = AmbientSpec(int(doc["free_rank"]), tuple(int(t) for t in doc.get("torsion", [])))
        raw = doc["generators"]
    except KeyError as exc:
        raise InvalidSemigroup(f"missing key {exc}") from None
    gens = []
    for entry in raw:
        if not isinstance(entry, dict) or set(entry) - {"free", "torsion"}:
            raise InvalidSemigroup(f"bad generator entry: {entry!r}")
        free = tuple(int(x) for x in entry["free"])
        torsion = tuple(int(x) for x in entry.get("torsion", [0] * len(ambient.torsion_orders)))
        if len(free) != ambient.free_rank or len(torsion) != len(ambient.torsion_orders):
            raise AmbientMismatch(f"generator {entry!r} does not fit the ambient")
        if any(x < 0 for x in free):
            raise InvalidSemigroup(f"negative free coordinate in {entry!r}")
        # residues are kept as given so validate() can flag them
        gens.append(Element(free, torsion))
    return SemigroupPresentation(ambient, tuple(gens))


def load_semigroup(doc: dict, *, permissive: bool = False) -> tuple[SemigroupPresentation, list[Violation]]:
    """Parse and validate.  Returns the presentation and the non-fatal warnings.

    Reducedness and torsion-range violations always raise.  Minimality
    violations raise unless ``permissive``; a numerical gcd other than 1 is
    only a warning.
    """
    sgp = parse_semigroup(doc)
    report = validate(sgp)
    fatal = [v for v in report if v.kind in ("NotReduced", "BadTorsionResidue", "NotIncreasing")]
    if not permissive:
        fatal += [v for v in report if v.kind == "NotMinimal"]
    if fatal:
        raise InvalidSemigroup("invalid semigroup: " + ", ".join(map(str, fatal)))
    return sgp, [v for v in report if v not in fatal]


def validate(sgp: SemigroupPresentation) -> list[Violation]:
    """List invariant violations; empty iff the presentation is well formed."""
    report: list[Violation] = []
    orders = sgp.ambient.torsion_orders
    if any(not 0 <= t < m for g in sgp.generators for t, m in zip(g.torsion, orders)):
        report.append(Violation("BadTorsionResidue"))
    if any(not any(g.free) for g in sgp.generators):
        report.append(Violation("NotReduced"))
    if sgp.is_numerical:
        nums = sgp.numbers
        if reduce(math.gcd, nums) != 1:
            report.append(Violation("NumericalGcdNotOne"))
        if any(a >= b for a, b in zip(nums, nums[1:])):
            report.append(Violation("NotIncreasing"))
    if any(v.kind in ("NotReduced", "BadTorsionResidue") for v in report):
        return report
    for i, g in enumerate(sgp.generators):
        others = [j for j in range(sgp.rank) if j != i]
        if others and contains(sgp.restrict(others), g):
            report.append(Violation("NotMinimal", i + 1))
            break
    return report


def _search(sgp: SemigroupPresentation, target: Element) -> Iterator[tuple[int, ...]]:
    """Depth-first solutions of the free-part system, filtered by torsion at the leaves.

    Solutions come out in ascending lexicographic order because each level
    walks its exponent upward.
    """
    gens = [g.free for g in sgp.generators]
    r, dim = len(gens), len(target.free)
    # coordinates still reachable by generators i, i+1, ..., r-1
    reach = [[False] * dim for _ in range(r + 1)]
    for i in range(r - 1, -1, -1):
        reach[i] = [reach[i + 1][j] or gens[i][j] > 0 for j in range(dim)]
    orders = sgp.ambient.torsion_orders
    tors = [g.torsion for g in sgp.generators]
    exps = [0] * r

    def torsion_ok() -> bool:
        for k, m in enumerate(orders):
            if sum(a * t[k] for a, t in zip(exps, tors)) % m != target.torsion[k]:
                return False
        return True

    def rec(i: int, rem: list[int]) -> Iterator[tuple[int, ...]]:
        if any(rem[j] and not reach[i][j] for j in range(dim)):
            return
        if i == r:
            if torsion_ok():
                yield tuple(exps)
            return
        g = gens[i]
        bound = min(rem[j] // g[j] for j in range(dim) if g[j] > 0)
        if i == r - 1:
            # last generator: the exponent is forced
            a = next(rem[j] // g[j] for j in range(dim) if g[j] > 0)
            if all(rem[j] == a * g[j] for j in range(dim)):
                exps[i] = a
                if torsion_ok():
                    yield tuple(exps)
                exps[i] = 0
            return
        for a in range(bound + 1):
            exps[i] = a
            yield from rec(i + 1, [rem[j] - a * g[j] for j in range(dim)])
        exps[i] = 0

    yield from rec(0, list(target.free))


def contains(sgp: SemigroupPresentation, alpha: ElementLike) -> bool:
    target = sgp.coerce(alpha)
    return next(_search(sgp, target), None) is not None


def factorizations(sgp: SemigroupPresentation, alpha: ElementLike) -> FactorizationSet:
    """All factorizations of ``alpha``, in ascending lexicographic order."""
    target = sgp.coerce(alpha)
    return FactorizationSet(target, tuple(Factorization(v) for v in _search(sgp, target)))


def denumerant_table(sgp: SemigroupPresentation, N: int) -> list[int]:
    """``c[n] = |Z(n)|`` for ``0 <= n <= N``, one generator at a time."""
    nums = sgp.numbers
    if N < 0:
        raise ValueError("N must be nonnegative")
    c = [0] * (N + 1)
    c[0] = 1
    for g in nums:
        for n in range(g, N + 1):
            c[n] += c[n - g]
    return c


def membership_table(sgp: SemigroupPresentation, N: int) -> list[bool]:
    nums = sgp.numbers
    member = [False] * (N + 1)
    member[0] = True
    for n in range(1, N + 1):
        member[n] = any(n >= g and member[n - g] for g in nums)
    return member


def frobenius_number(sgp: SemigroupPresentation) -> int:
    """Largest integer outside a numerical semigroup (-1 when it is all of N)."""
    nums = sgp.numbers
    if reduce(math.gcd, nums) != 1:
        raise NotNumerical("gcd of generators is not 1; the complement is infinite")
    # Ap(n_1) via a shortest-path sweep over residues mod n_1
    n1 = nums[0]
    dist = [None] * n1
    dist[0] = 0
    changed = True
    while changed:
        changed = False
        for res in range(n1):
            if dist[res] is None:
                continue
            for g in nums[1:]:
                nxt = (res + g) % n1
                val = dist[res] + g
                if dist[nxt] is None or val < dist[nxt]:
                    dist[nxt] = val
                    changed = True
    return max(dist) - n1  # type: ignore[type-var]
