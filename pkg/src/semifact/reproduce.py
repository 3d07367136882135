"""Built-in reproduction suite: one check per acceptance criterion.

Each check returns a :class:`CheckResult`; ``sgf verify-paper`` and the
acceptance tests both run exactly this list.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable

from . import invariants as inv
from .core import SemigroupPresentation, contains, denumerant_table, factorizations
from .oracles import box_size, bullet_oracle, catenary_oracle, naive_factorizations
from .quasipoly import TranslatedCone, cone_fit, fit_fixed, fit_search, ray_fit

MCNUGGET = SemigroupPresentation.numerical([6, 9, 20])
FOUR_GEN = SemigroupPresentation.numerical([17, 33, 53, 71])
PLANE_SEVEN = SemigroupPresentation.affine([(1, 1), (1, 5), (2, 5), (3, 5), (5, 1), (5, 2), (5, 3)])
PLANE_THREE = SemigroupPresentation.affine([(2, 1), (1, 1), (1, 2)])


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:>2}. {self.title} ({self.seconds:.1f}s / {self.limit:.0f}s) {self.detail}"


def _element_map(table: inv.ScanTable, column: str) -> dict[int, Fraction]:
    out = {}
    for rec in table:
        v = getattr(rec, column)
        out[rec.element.free[0]] = Fraction(len(v) if isinstance(v, tuple) else v)
    return out


def _tail_start(values: list, period: int) -> int | None:
    """Least N with values[n] == values[n + period] for all scanned n >= N."""
    last = len(values) - period
    for n in range(last - 1, -1, -1):
        if values[n] != values[n + period]:
            return n + 1
    return 0


def check_factorization_count() -> tuple[bool, str]:
    counts = denumerant_table(MCNUGGET, 720)
    report = fit_search({n: counts[n] for n in range(721)}, 2, 180)
    lead = set(report.qp.leading())
    rows = report.row_periods
    ok = (
        report.qp.degree == 2
        and lead == {Fraction(1, 2160)}
        and rows[1] == 6
        and rows[0] == 180
        and report.onset == 0
    )
    return ok, f"degree={report.qp.degree} leading={sorted(map(str, lead))} a1-cycle={rows[1]} a0-cycle={rows[0]} onset={report.onset}"


def _length_counts() -> dict[int, Fraction]:
    return _element_map(inv.scan(MCNUGGET, 0, 500, ["lengths"]), "lengths")


def check_length_count() -> tuple[bool, str]:
    samples = _length_counts()
    report = fit_search(samples, 1, 60)
    slope = set(report.qp.leading())
    fails_at_91 = fit_fixed(samples, 1, report.qp.period, 91) is None and 91 in report.residual_positions
    ok = (
        report.qp.degree == 1
        and slope == {Fraction(7, 60)}
        and 60 % report.qp.period == 0
        and report.onset == 92
        and fails_at_91
        and fit_fixed(samples, 1, report.qp.period, 92) is not None
    )
    return ok, f"slope={sorted(map(str, slope))} period={report.qp.period} onset={report.onset} fails@91={fails_at_91}"


def check_length_leading_coefficient() -> tuple[bool, str]:
    union, _ = inv.delta_of_semigroup(MCNUGGET, 500)
    g = min(union.gaps)
    n1, nr = MCNUGGET.numbers[0], MCNUGGET.numbers[-1]
    predicted = Fraction(nr - n1, g * n1 * nr)
    slope = set(fit_search(_length_counts(), 1, 60).qp.leading())
    ok = g == 1 and predicted == Fraction(7, 60) and slope == {predicted}
    return ok, f"g={g} predicted={predicted} fitted={sorted(map(str, slope))}"


def check_delta_periodicity() -> tuple[bool, str]:
    horizon = 500
    deltas = inv.delta_table(MCNUGGET, horizon)
    has = lambda j: [d is not None and j in d for d in deltas]  # noqa: E731
    ones = has(1)
    start_one = next(n for n in range(horizon, -1, -1) if not ones[n]) + 1
    onsets = {j: _tail_start(has(j), 20) for j in (2, 3, 4)}
    union, cert = inv.delta_of_semigroup(MCNUGGET, horizon)
    whole = _tail_start(deltas, 20)
    ok = (
        start_one == 62
        and onsets == {2: 92, 3: 74, 4: 56}
        and union.gaps == (1, 2, 3, 4)
        and whole == 92
        and cert.status == "Verified"
        and cert.start == 92
        and cert.minimal_period == 20
    )
    return ok, (
        f"1 from {start_one}; onsets {onsets}; Delta={list(union.gaps)}; "
        f"period-20 start {whole}; certificate {cert.status} start={cert.start} min-period={cert.minimal_period}"
    )


def check_four_generator_delta() -> tuple[bool, str]:
    deltas = inv.delta_table(FOUR_GEN, 2000)
    union = sorted({g for d in deltas if d for g in d})
    sixes = [n for n, d in enumerate(deltas) if d and 6 in d]
    ok = union == [2, 4, 6] and sixes == [266, 283, 300]
    return ok, f"Delta={union} six at {sixes}"


def check_affine_delta() -> tuple[bool, str]:
    table = inv.scan(PLANE_SEVEN, (0, 0), (40, 40), ["delta"])
    union = sorted({g for rec in table for g in rec.delta})
    ok = union == [1, 2, 4] and all(3 not in rec.delta for rec in table)
    return ok, f"Delta over box={union} elements={len(table)}"


def check_cone_fits() -> tuple[bool, str]:
    first = cone_fit(PLANE_THREE, TranslatedCone.of((0, 0), [(2, 1), (3, 3)]), "z_count", 1, 6)
    expected = {(1, 0): Fraction(-1, 3), (0, 1): Fraction(2, 3), (0, 0): Fraction(1)}
    ok = first is not None and first.ambient_form == expected
    fitted = 0
    for base in [(0, 0), (1, 1), (2, 2)]:
        for gen in [(2, 1), (1, 2)]:
            cp = cone_fit(PLANE_THREE, TranslatedCone.of(base, [gen, (3, 3)]), "z_count", 1, 6)
            fitted += cp is not None
    ok = ok and fitted == 6
    return ok, f"ambient form matches={first is not None and first.ambient_form == expected} cones fitted={fitted}/6"


def check_max_min_length() -> tuple[bool, str]:
    table = inv.scan(MCNUGGET, 0, 500, ["max_len", "min_len"])
    M = fit_search(_element_map(table, "max_len"), 1, 6)
    m = fit_search(_element_map(table, "min_len"), 1, 20)
    M_ray = ray_fit(MCNUGGET, 6, "max_len", 1, 6)
    m_ray = ray_fit(MCNUGGET, 20, "min_len", 1, 20, steps=60)
    ok = (
        set(M.qp.leading()) == {Fraction(1, 6)}
        and 6 % M.qp.period == 0
        and set(m.qp.leading()) == {Fraction(1, 20)}
        and 20 % m.qp.period == 0
        and set(M_ray.report.qp.leading()) == {Fraction(6, 6)}
        and 6 % M_ray.report.qp.period == 0
        and set(m_ray.report.qp.leading()) == {Fraction(20, 20)}
        and 20 % m_ray.report.qp.period == 0
    )
    return ok, (
        f"M slope {sorted(map(str, set(M.qp.leading())))} period {M.qp.period}; "
        f"m slope {sorted(map(str, set(m.qp.leading())))} period {m.qp.period}; "
        f"ray M(6k) slope {M_ray.report.qp.leading()[0]}, ray m(20k) slope {m_ray.report.qp.leading()[0]}"
    )


def check_omega() -> tuple[bool, str]:
    table = inv.scan(MCNUGGET, 0, 400, ["omega"])
    values = {rec.element.free[0]: rec.omega for rec in table}
    mismatches = [
        n for n in range(1, 201) if n in values and bullet_oracle(MCNUGGET, n, 400).value != values[n]
    ]
    single = [n for n in (6, 60, 200) if inv.omega(MCNUGGET, n).value != values[n]]
    report = fit_search({n: v for n, v in values.items() if n > 0}, 1, 6)
    ok = (
        not mismatches
        and not single
        and set(report.qp.leading()) == {Fraction(1, 6)}
        and report.qp.period == 6
    )
    return ok, (
        f"oracle mismatches={mismatches[:5]} slope={sorted(map(str, set(report.qp.leading())))} "
        f"period={report.qp.period} onset={report.onset}"
    )


def check_catenary() -> tuple[bool, str]:
    mismatches = [
        n for n in range(151)
        if contains(MCNUGGET, n) and inv.catenary_degree(MCNUGGET, n) != catenary_oracle(MCNUGGET, n)
    ]
    horizon, period = 540, 180
    table = inv.scan(MCNUGGET, 0, horizon, ["catenary"])
    values: list = [None] * (horizon + 1)
    for rec in table:
        values[rec.element.free[0]] = rec.catenary
    start = _tail_start(values, period)
    verified = start is not None and start + 2 * period <= horizon + 1
    ok = not mismatches and verified
    return ok, f"oracle mismatches={mismatches[:5]} c(n)=c(n+180) from n={start} verified={verified}"


def random_numerical_semigroup(rng: random.Random, max_gens: int = 4, max_gen: int = 30) -> SemigroupPresentation:
    """Minimally generated numerical semigroup with 2..max_gens generators, each <= max_gen."""
    while True:
        r = rng.randint(2, max_gens)
        cand = sorted(rng.sample(range(2, max_gen + 1), r))
        if reduce(math.gcd, cand) != 1:
            continue
        gens: list[int] = []
        for g in cand:
            if not gens or not contains(SemigroupPresentation.numerical(gens), g):
                gens.append(g)
        if len(gens) >= 2:
            return SemigroupPresentation.numerical(gens)


def property_suite(count: int = 50, seed: int = 20240, max_element: int = 300) -> list[str]:
    """Randomized cross-checks; returns a list of failure descriptions (empty when all pass)."""
    rng = random.Random(seed)
    failures: list[str] = []
    for _ in range(count):
        S = random_numerical_semigroup(rng)
        nums = S.numbers
        members = [n for n in range(max_element + 1) if contains(S, n)]
        masks = inv.length_masks(S, 2 * max_element)
        table = denumerant_table(S, max_element)
        for n in range(max_element + 1):
            if table[n] != len(factorizations(S, n)):
                failures.append(f"{S}: denumerant table differs at {n}")
        for t in nums:
            if len(inv.apery_set(S, [t])) != t:
                failures.append(f"{S}: |Ap({t})| != {t}")
        naive_ok = [n for n in members if box_size(S, n) <= 20000]
        for n in rng.sample(naive_ok, min(6, len(naive_ok))):
            if factorizations(S, n).vectors() != naive_factorizations(S, n).vectors():
                failures.append(f"{S}: factorizations differ from naive at {n}")
        small = [n for n in members if len(factorizations(S, n)) <= 30]
        for n in rng.sample(small, min(6, len(small))):
            if inv.catenary_degree(S, n) != catenary_oracle(S, n):
                failures.append(f"{S}: catenary differs from oracle at {n}")
        light = [n for n in members if 0 < n <= 10 * nums[0]]
        for n in rng.sample(light, min(4, len(light))):
            if inv.omega(S, n) != bullet_oracle(S, n, 40 * nums[-1]):
                failures.append(f"{S}: omega differs from bullet oracle at {n}")
        for _ in range(10):
            a, b = rng.choice(members), rng.choice(members)
            L = lambda x: inv._lengths_from_mask(masks[x])  # noqa: E731
            if L(a + b)[-1] < L(a)[-1] + L(b)[-1] or L(a + b)[0] > L(a)[0] + L(b)[0]:
                failures.append(f"{S}: max/min length additivity fails at {a}+{b}")
            lengths = inv.length_set(S, a).lengths
            if sum(y - x for x, y in zip(lengths, lengths[1:])) != lengths[-1] - lengths[0]:
                failures.append(f"{S}: delta gaps do not telescope at {a}")
            if a + b <= max_element:
                za, zab = factorizations(S, a), factorizations(S, a + b)
                b0 = factorizations(S, b).factorizations[0].exponents
                shifted = {tuple(x + y for x, y in zip(f.exponents, b0)) for f in za}
                if len(zab) < len(za) or not shifted <= set(zab.vectors()):
                    failures.append(f"{S}: translation injection fails for {a}+{b}")
    return failures


def check_properties() -> tuple[bool, str]:
    failures = property_suite()
    return not failures, f"50 random semigroups, failures={failures[:3]}"


CRITERIA: list[tuple[int, str, float, Callable[[], tuple[bool, str]]]] = [
    (1, "<6,9,20> factorization count quasipolynomial", 30, check_factorization_count),
    (2, "<6,9,20> length-set size fit", 30, check_length_count),
    (3, "length-set slope formula", 30, check_length_leading_coefficient),
    (4, "<6,9,20> delta periodicity", 60, check_delta_periodicity),
    (5, "<17,33,53,71> delta set", 120, check_four_generator_delta),
    (6, "affine delta set over [0,40]^2", 60, check_affine_delta),
    (7, "cone fits of |Z| on <(2,1),(1,1),(1,2)>", 30, check_cone_fits),
    (8, "<6,9,20> max/min length slopes", 60, check_max_min_length),
    (9, "<6,9,20> omega", 60, check_omega),
    (10, "<6,9,20> catenary degree", 60, check_catenary),
    (11, "randomized property suite", 120, check_properties),
]


def run_check(number: int) -> CheckResult:
    for num, title, limit, fn in CRITERIA:
        if num == number:
            t0 = time.perf_counter()
            try:
                passed, detail = fn()
            except Exception as exc:  # a crash is a failure, reported not raised
                passed, detail = False, f"error: {exc!r}"
            elapsed = time.perf_counter() - t0
            if elapsed > limit:
                passed, detail = False, detail + f" (exceeded {limit:.0f}s)"
            return CheckResult(num, title, passed, detail, elapsed, limit)
    raise KeyError(number)


def run_all() -> list[CheckResult]:
    return [run_check(num) for num, *_ in CRITERIA]
