"""Exact quasipolynomial fitting and polynomial fits on translated cones.

Everything here is exact: interpolation over :class:`fractions.Fraction`
followed by verification against every remaining sample.  A single
mismatch rejects a candidate, there is no tolerance.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from .core import AmbientSpec, Element, ElementLike, SemigroupPresentation, factorizations
from .errors import InsufficientSamples, NoFitWithinBounds

Number = Union[int, Fraction]


# -- exact linear algebra ---------------------------------------------------


def row_reduce(rows: Sequence[Sequence[Number]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (matrix, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows: Sequence[Sequence[Number]]) -> int:
    return len(row_reduce(rows)[1])


def solve_exact(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> list[Fraction] | None:
    """Unique solution of ``A x = b`` or None if the system is inconsistent.

    Raises InsufficientSamples when the solution is not unique.
    """
    n = len(A[0])
    R, pivots = row_reduce([list(row) + [rhs] for row, rhs in zip(A, b)])
    if n in pivots:
        return None
    if len(pivots) < n:
        raise InsufficientSamples(f"system has rank {len(pivots)} < {n} unknowns")
    return [R[i][n] for i in range(n)]


def _interpolate(xs: Sequence[int], ys: Sequence[Number]) -> list[Fraction]:
    """Coefficients (constant first) of the polynomial through the points."""
    k = len(xs) - 1
    sol = solve_exact([[Fraction(x) ** i for i in range(k + 1)] for x in xs], ys)
    assert sol is not None
    return sol


def _poly_at(coeffs: Sequence[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _minimal_cycle(row: Sequence[Fraction]) -> int:
    p = len(row)
    for d in _divisors(p):
        if all(row[i] == row[(i + d) % p] for i in range(p)):
            return d
    return p


# -- quasipolynomials -------------------------------------------------------


@dataclass(frozen=True)
class QuasiPolynomial:
    """``f(n) = sum_i coeffs[i][n mod period] * n**i``."""

    period: int
    degree: int
    coeffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.period < 1 or len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient table does not match period/degree")
        if any(len(row) != self.period for row in self.coeffs):
            raise ValueError("every coefficient row needs one entry per residue")
        if self.degree > 0 and not any(self.coeffs[-1]):
            raise ValueError("leading coefficient row is identically zero")

    def __call__(self, n: int) -> Fraction:
        return qp_eval(self, n)

    def row_periods(self) -> list[int]:
        """Minimal cycle length of each coefficient row (constant term first)."""
        return [_minimal_cycle(row) for row in self.coeffs]

    def leading(self) -> tuple[Fraction, ...]:
        return self.coeffs[-1]

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "coeffs": [[c.numerator, c.denominator] for row in self.coeffs for c in row],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "QuasiPolynomial":
        p, k = int(doc["period"]), int(doc["degree"])
        flat = [Fraction(num, den) for num, den in doc["coeffs"]]
        if len(flat) != p * (k + 1):
            raise ValueError("coeffs length must be period * (degree + 1)")
        return cls(p, k, tuple(tuple(flat[i * p:(i + 1) * p]) for i in range(k + 1)))


def qp_eval(qp: QuasiPolynomial, n: int) -> Fraction:
    c = n % qp.period
    return _poly_at([row[c] for row in qp.coeffs], n)


def _assemble(period: int, degree: int, class_coeffs: Sequence[Sequence[Fraction]]) -> QuasiPolynomial:
    rows = [tuple(class_coeffs[c][i] for c in range(period)) for i in range(degree + 1)]
    while len(rows) > 1 and not any(rows[-1]):
        rows.pop()
    return QuasiPolynomial(period, len(rows) - 1, tuple(rows))


def _by_class(samples: Mapping[int, Number], period: int, start: int) -> list[list[int]]:
    classes: list[list[int]] = [[] for _ in range(period)]
    for n in sorted(samples):
        if n >= start:
            classes[n % period].append(n)
    return classes


def fit_fixed(
    samples: Mapping[int, Number], degree: int, period: int, start: int = 0
) -> QuasiPolynomial | None:
    """Fit a quasipolynomial of the given shape to every sample with ``n >= start``.

    Each residue class is interpolated through its first ``degree + 1``
    points and checked on the rest.  Returns None when some check fails.
    """
    classes = _by_class(samples, period, start)
    short = [c for c, xs in enumerate(classes) if len(xs) < degree + 2]
    if short:
        raise InsufficientSamples(
            f"residue classes {short[:5]} mod {period} have fewer than {degree + 2} samples >= {start}"
        )
    fitted = []
    for xs in classes:
        coeffs = _interpolate(xs[: degree + 1], [samples[x] for x in xs[: degree + 1]])
        if any(_poly_at(coeffs, x) != samples[x] for x in xs[degree + 1:]):
            return None
        fitted.append(coeffs)
    return _assemble(period, degree, fitted)


@dataclass(frozen=True)
class FitReport:
    qp: QuasiPolynomial
    onset: int
    exact_match_count: int
    residual_positions: tuple[int, ...]
    row_periods: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "qp": self.qp.to_json(),
            "onset": self.onset,
            "exact_match_count": self.exact_match_count,
            "residual_positions": list(self.residual_positions),
            "row_periods": list(self.row_periods),
        }


def _tail_fit(samples: Mapping[int, Number], degree: int, period: int, min_tail: int = 0) -> FitReport | None:
    """Interpolate each class through its last points, then extend backward while samples agree."""
    classes = _by_class(samples, period, min(samples))
    fitted = []
    onset = min(samples)
    for xs in classes:
        if len(xs) < degree + 2:
            return None
        tail = xs[-(degree + 1):]
        coeffs = _interpolate(tail, [samples[x] for x in tail])
        for x in reversed(xs[: -(degree + 1)]):
            if _poly_at(coeffs, x) != samples[x]:
                onset = max(onset, x + 1)
                break
        fitted.append(coeffs)
    if max(samples) - onset + 1 < min_tail:
        return None
    for xs in classes:
        if sum(1 for x in xs if x >= onset) < degree + 2:
            return None
    qp = _assemble(period, degree, fitted)
    below = [n for n in samples if n < onset]
    residual = tuple(sorted(n for n in below if qp_eval(qp, n) != samples[n]))
    matched = sum(1 for n in samples if n >= onset)
    return FitReport(qp, onset, matched, residual, tuple(qp.row_periods()))


def fit_search(
    samples: Mapping[int, Number], degree_bound: int, period_bound: int
) -> FitReport:
    """Least degree, then least period dividing ``period_bound``, then least onset.

    A candidate is accepted when every residue class keeps at least
    ``degree + 2`` samples from the onset on, and the agreeing tail spans at
    least ``(degree + 2) * period_bound`` integers.  The second condition
    stops short tails from passing for a low-degree fit by coincidence.
    """
    if not samples:
        raise InsufficientSamples("no samples")
    samples = {int(n): Fraction(v) for n, v in samples.items()}
    for degree in range(degree_bound + 1):
        for period in _divisors(period_bound):
            report = _tail_fit(samples, degree, period, (degree + 2) * period_bound)
            if report is not None:
                return report
    raise NoFitWithinBounds(
        f"no quasipolynomial of degree <= {degree_bound} with period dividing {period_bound} fits"
    )


# -- translated cones -------------------------------------------------------


@dataclass(frozen=True)
class TranslatedCone:
    """``base + N*g_1 + ... + N*g_s`` with linearly independent free parts."""

    base: Element
    generators: tuple[Element, ...]
    ambient: AmbientSpec | None = None

    def __post_init__(self) -> None:
        if self.ambient is None:
            object.__setattr__(
                self, "ambient", AmbientSpec(len(self.base.free), ())
            )
        if self.generators and rank([g.free for g in self.generators]) < len(self.generators):
            raise ValueError("cone generators must be linearly independent")

    @classmethod
    def of(cls, base: Sequence[int], gens: Iterable[Sequence[int]]) -> "TranslatedCone":
        return cls(Element(tuple(base)), tuple(Element(tuple(g)) for g in gens))

    @property
    def dim(self) -> int:
        return len(self.generators)

    def point(self, coords: Sequence[int]) -> Element:
        amb = self.ambient
        p = self.base
        for c, g in zip(coords, self.generators):
            p = amb.add(p, amb.scale(c, g))
        return p

    def to_json(self) -> dict:
        return {"base": list(self.base.free), "generators": [list(g.free) for g in self.generators]}


def cone_coordinates(cone: TranslatedCone, alpha: Element | Sequence[int]) -> tuple[int, ...] | None:
    """Coordinates ``c`` with ``base + sum c_j g_j == alpha``, or None."""
    if not isinstance(alpha, Element):
        alpha = Element(tuple(alpha), cone.base.torsion)
    if cone.dim == 0:
        return () if alpha == cone.base else None
    rhs = [a - b for a, b in zip(alpha.free, cone.base.free)]
    cols = [g.free for g in cone.generators]
    A = [[cols[j][i] for j in range(cone.dim)] for i in range(len(rhs))]
    sol = solve_exact(A, rhs)
    if sol is None or any(x.denominator != 1 or x < 0 for x in sol):
        return None
    coords = tuple(int(x) for x in sol)
    return coords if cone.point(coords) == alpha else None


Poly = dict  # monomial exponent tuple -> Fraction


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = [m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) <= degree]
    out.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
    return out


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


def _poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, Fraction(0)) + c
    return {m: c for m, c in out.items() if c != 0}


def poly_eval(poly: Poly, point: Sequence[Number]) -> Fraction:
    total = Fraction(0)
    for m, c in poly.items():
        term = Fraction(c)
        for x, e in zip(point, m):
            term *= Fraction(x) ** e
        total += term
    return total


def format_poly(poly: Poly, names: Sequence[str]) -> str:
    if not poly:
        return "0"
    parts = []
    for m in sorted(poly, key=lambda m: (-sum(m), m)):
        c = poly[m]
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
        if mono:
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            parts.append(f"{coef}{mono}")
        else:
            parts.append(str(c))
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class ConePolynomial:
    cone: TranslatedCone
    poly: Poly
    ambient_form: Poly | None = None

    def __call__(self, coords: Sequence[int]) -> Fraction:
        return poly_eval(self.poly, coords)

    def to_json(self) -> dict:
        doc = self.cone.to_json()
        doc["poly"] = {
            ",".join(map(str, m)): [c.numerator, c.denominator] for m, c in sorted(self.poly.items())
        }
        if self.ambient_form is not None:
            doc["ambient_form"] = {
                ",".join(map(str, m)): [c.numerator, c.denominator]
                for m, c in sorted(self.ambient_form.items())
            }
        return doc


def _invert(M: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    n = len(M)
    R, pivots = row_reduce([list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)])
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def _to_ambient(cone: TranslatedCone, poly: Poly) -> Poly:
    """Rewrite a polynomial in cone coordinates as a polynomial in ambient free coordinates."""
    d = cone.dim
    G = [[cone.generators[j].free[i] for j in range(d)] for i in range(d)]
    Ginv = _invert(G)
    beta = cone.base.free
    # c_j = sum_k Ginv[j][k] * (x_k - beta_k)
    linear: list[Poly] = []
    for j in range(d):
        p: Poly = {}
        const = Fraction(0)
        for k in range(d):
            if Ginv[j][k]:
                unit = tuple(int(i == k) for i in range(d))
                p[unit] = p.get(unit, Fraction(0)) + Ginv[j][k]
                const -= Ginv[j][k] * beta[k]
        if const:
            p[(0,) * d] = const
        linear.append(p)
    out: Poly = {}
    for m, c in poly.items():
        term: Poly = {(0,) * d: Fraction(c)}
        for j, e in enumerate(m):
            for _ in range(e):
                term = _poly_mul(term, linear[j])
        out = _poly_add(out, term)
    return out


Invariant = Union[str, Callable[[Element], Number]]


def invariant_function(sgp: SemigroupPresentation, invariant: Invariant) -> Callable[[Element], Number]:
    """Resolve an invariant name (``z_count``, ``lengths``, ``max_len``, ...) to a callable."""
    if callable(invariant):
        return invariant
    from . import invariants as inv

    def z_count(e: Element) -> int:
        return len(factorizations(sgp, e))

    table: dict[str, Callable[[Element], Number]] = {
        "z_count": z_count,
        "lengths": lambda e: len(inv.length_set(sgp, e)),
        "max_len": lambda e: inv.max_length(sgp, e),
        "min_len": lambda e: inv.min_length(sgp, e),
        "catenary": lambda e: inv.catenary_degree(sgp, e),
        "omega": lambda e: inv.omega(sgp, e).value,
    }
    try:
        return table[invariant]
    except KeyError:
        raise ValueError(f"unknown invariant {invariant!r}") from None


def cone_fit(
    sgp: SemigroupPresentation,
    cone: TranslatedCone,
    invariant: Invariant,
    degree: int,
    grid: int,
) -> ConePolynomial | None:
    """Polynomial of total degree ``degree`` matching the invariant on the cone grid ``[0, grid]^s``."""
    f = invariant_function(sgp, invariant)
    if cone.ambient != sgp.ambient:
        cone = TranslatedCone(cone.base, cone.generators, sgp.ambient)
    monos = _monomials(cone.dim, degree)
    points = list(itertools.product(range(grid + 1), repeat=cone.dim))
    if len(points) < 2 * len(monos):
        raise InsufficientSamples(
            f"{len(points)} grid points < 2 x {len(monos)} monomials of degree {degree}"
        )
    A = [[math.prod(c ** e for c, e in zip(pt, m)) for m in monos] for pt in points]
    b = [f(cone.point(pt)) for pt in points]
    sol = solve_exact(A, b)
    if sol is None:
        return None
    poly = {m: c for m, c in zip(monos, sol) if c != 0}
    ambient_form = None
    if cone.dim == sgp.ambient.free_rank:
        ambient_form = _to_ambient(cone, poly)
    return ConePolynomial(cone, poly, ambient_form)


# -- rays -------------------------------------------------------------------


@dataclass(frozen=True)
class RayFit:
    report: FitReport
    observed_degree: int
    factorization_rank: int | None = None


def ray_fit(
    sgp: SemigroupPresentation,
    alpha: ElementLike,
    invariant: Invariant,
    degree_bound: int,
    period_bound: int,
    steps: int | None = None,
) -> RayFit:
    """Fit ``k -> invariant(k * alpha)``.

    For ``z_count`` the rank of the union of all factorization sets along
    the ray is reported too; the fitted degree should be one less.
    """
    from .invariants import length_set

    alpha = sgp.coerce(alpha)
    length_set(sgp, alpha)  # raises NotInSemigroup
    if steps is None:
        steps = (degree_bound + 4) * period_bound
    f = invariant_function(sgp, invariant)
    samples: dict[int, Fraction] = {}
    vectors: list[tuple[int, ...]] = []
    for k in range(steps + 1):
        e = sgp.ambient.scale(k, alpha)
        if invariant == "z_count":
            z = factorizations(sgp, e)
            samples[k] = Fraction(len(z))
            vectors.extend(z.vectors())
        else:
            samples[k] = Fraction(f(e))
    report = fit_search(samples, degree_bound, period_bound)
    frank = rank(sorted(set(vectors))) if invariant == "z_count" else None
    return RayFit(report, report.qp.degree, frank)
