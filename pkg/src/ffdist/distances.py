"""Distance sets, pair-counting functions, pinned distances, the
paraboloid lift, and the theorem-style verifiers built on them.

All distance data is computed exactly: the pair kernel enumerates every
(x, y) in E x F through vectorized table lookups, and the transform-based
counting route exists only to be checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import EmptySet, MixedFields, RoundingDivergence
from .field import FieldSpec, encode_points, sub_table
from .fourier import fourier_transform, indicator_grid
from .rng import SplitMix64, derive_seed
from .varieties import (
    Polynomial,
    PointSet,
    diagonal_polynomial,
    evaluate,
    make_polynomial,
    require_same_space,
    value_grid,
)

_PAIR_BLOCK = 1 << 22  # max pairs materialized at once


def _check_triple(P: Polynomial, E: PointSet, F: PointSet):
    require_same_space(P, E, "polynomial and E")
    require_same_space(P, F, "polynomial and F")
    if E.size == 0 or F.size == 0:
        raise EmptySet("E and F must be nonempty")


def _pair_value_blocks(P: Polynomial, E: PointSet, F: PointSet):
    """Yield blocks of P(x - y) encodings, one row per x in E."""
    spec = P.spec
    st = sub_table(spec)
    vg = value_grid(P)
    ce = E.coordinates()
    cf = F.coordinates()
    rows = max(1, _PAIR_BLOCK // max(1, F.size))
    for i in range(0, E.size, rows):
        diff = st[ce[i : i + rows, None, :], cf[None, :, :]]
        yield vg[encode_points(spec, diff)]


# ---------------------------------------------------------------------------
# Distance sets and counting.

def distance_set(P: Polynomial, E: PointSet, F: PointSet) -> set[int]:
    """{P(x - y) : x in E, y in F}, exact over all |E||F| pairs."""
    _check_triple(P, E, F)
    seen: set[int] = set()
    for vals in _pair_value_blocks(P, E, F):
        seen.update(int(t) for t in np.unique(vals))
        if len(seen) == P.spec.q:
            break
    return seen


@dataclass(eq=False)
class CountingHistogram:
    """nu(t) = number of pairs (x, y) in E x F with P(x - y) = t."""

    spec: FieldSpec
    counts: np.ndarray  # int64, length q

    def support(self) -> set[int]:
        return set(int(t) for t in np.nonzero(self.counts)[0])

    def total(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, t: int) -> int:
        return int(self.counts[t])


def counting_function(
    P: Polynomial, E: PointSet, F: PointSet, method: str = "direct"
) -> CountingHistogram:
    """Pair counts per t: exact integers ('direct'), or the transform
    identity nu(t) = q^(2d) * sum_m conj(E^)(m) F^(m) V_t^(m) rounded to
    the nearest integer ('fourier').  Both routes must agree."""
    _check_triple(P, E, F)
    spec, q, d = P.spec, P.spec.q, P.d
    if method == "direct":
        counts = np.zeros(q, dtype=np.int64)
        for vals in _pair_value_blocks(P, E, F):
            counts += np.bincount(vals.ravel(), minlength=q)
        return CountingHistogram(spec, counts)
    if method == "fourier":
        eh = fourier_transform(indicator_grid(spec, d, E.indices)).values
        fh = fourier_transform(indicator_grid(spec, d, F.indices)).values
        weights = np.conj(eh) * fh
        vg = value_grid(P)
        scale = float(q) ** (2 * d)
        counts = np.zeros(q, dtype=np.int64)
        for t in range(q):
            vh = fourier_transform(
                indicator_grid(spec, d, np.nonzero(vg == t)[0])
            ).values
            raw = scale * complex(np.sum(weights * vh))
            nearest = round(raw.real)
            if abs(raw - nearest) > 0.1:
                raise RoundingDivergence(
                    f"transform count nu({t}) = {raw!r} is not near an integer"
                )
            counts[t] = nearest
        return CountingHistogram(spec, counts)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Pinned distances.

@dataclass(eq=False)
class PinnedReport:
    """Per-pin distance counts |{P(x - y) : x in E}| for each y in F."""

    sizes: dict[int, int]  # pin index -> pinned distance count
    threshold: float  # pins must beat this count (rho * q)
    fraction_large: float  # share of pins strictly above the threshold

    def large_pins(self) -> list[int]:
        return sorted(y for y, s in self.sizes.items() if s > self.threshold)


def pinned_distances(
    P: Polynomial, E: PointSet, F: PointSet, rho: float = 0.5
) -> PinnedReport:
    _check_triple(P, E, F)
    spec = P.spec
    st = sub_table(spec)
    vg = value_grid(P)
    ce = E.coordinates()
    sizes: dict[int, int] = {}
    for y, cy in zip(F.indices, F.coordinates()):
        vals = vg[encode_points(spec, st[ce, cy[None, :]])]
        sizes[int(y)] = int(len(np.unique(vals)))
    threshold = rho * spec.q
    large = sum(1 for s in sizes.values() if s > threshold)
    return PinnedReport(
        sizes=sizes, threshold=threshold, fraction_large=large / len(sizes)
    )


# ---------------------------------------------------------------------------
# Paraboloid lift and product-set experiments.

def paraboloid_lift(P: Polynomial) -> Polynomial:
    """H(x, x_{d+1}) = P(x) - x_{d+1}, one dimension up; every fiber of H
    has exactly q^d points."""
    spec, d = P.spec, P.d
    terms = [(c, e + (0,)) for c, e in P.terms]
    terms.append((spec.neg(1), (0,) * d + (1,)))
    return make_polynomial(spec, d + 1, terms)


def product_set(base: PointSet, last: PointSet) -> PointSet:
    """base x last inside F_q^(d+1); last must be one-dimensional."""
    if last.d != 1:
        raise EmptySet("the extra factor must be a subset of F_q (d = 1)")
    if last.spec != base.spec:
        raise MixedFields("product factors live in different fields")
    w = base.spec.q**base.d
    idx = (base.indices[:, None] + w * last.indices[None, :]).ravel()
    return PointSet(base.spec, base.d + 1, idx)


@dataclass(eq=False)
class ProductExperimentReport:
    q: int
    d: int
    poly: str
    size_E_star: int
    size_F_star: int
    hypothesis_ratio: float  # |E*||F*| / (|F_{d+1}| * q^(d+1))
    delta_size: int
    delta_ratio: float  # |Delta_H| / q
    verdict: str  # pass | fail | vacuous
    phase_max_ratio: float | None


def product_set_experiment(
    P: Polynomial,
    E: PointSet,
    E_last: PointSet,
    F: PointSet,
    F_last: PointSet,
    *,
    C: float = 1.0,
    rho: float = 0.5,
    check_condition: bool = True,
) -> ProductExperimentReport:
    """Lifted distance set of product sets E x E_{d+1}, F x F_{d+1}.

    check_condition sweeps the phase sum over every (s != 0, m) and records
    the worst |sum| / q^(d/2); disable it when the sweep is too costly and
    the polynomial is already known to behave.
    """
    from .varieties import phase_sweep  # local import keeps module graph simple

    H = paraboloid_lift(P)
    e_star = product_set(E, E_last)
    f_star = product_set(F, F_last)
    delta = distance_set(H, e_star, f_star)
    q = P.spec.q
    ratio = (e_star.size * f_star.size) / (F_last.size * float(q) ** (P.d + 1))
    if ratio < C:
        verdict = "vacuous"
    else:
        verdict = "pass" if len(delta) >= rho * q else "fail"
    phase_ratio = phase_sweep(P).max_ratio if check_condition else None
    return ProductExperimentReport(
        q=q,
        d=P.d,
        poly=P.text(),
        size_E_star=e_star.size,
        size_F_star=f_star.size,
        hypothesis_ratio=ratio,
        delta_size=len(delta),
        delta_ratio=len(delta) / q,
        verdict=verdict,
        phase_max_ratio=phase_ratio,
    )


# ---------------------------------------------------------------------------
# Theorem-style verifiers.

@dataclass(eq=False)
class FalconerVerdict:
    """|E||F| >= C*q^(d+1) should force |Delta| >= q - |T|."""

    status: str  # pass | fail | vacuous
    delta_size: int
    required: int  # q - |T|
    pair_product: int
    threshold: float  # C * q^(d+1)
    covers_complement: bool  # Delta contains all of F_q minus T
    missing: list[int]  # all absent distances, sorted


def verify_falconer(
    P: Polynomial, E: PointSet, F: PointSet, T, C: float = 1.0
) -> FalconerVerdict:
    _check_triple(P, E, F)
    q, d = P.spec.q, P.d
    delta = distance_set(P, E, F)
    pair_product = E.size * F.size
    threshold = C * float(q) ** (d + 1)
    required = q - len(set(T))
    missing = sorted(set(range(q)) - delta)
    covers = not (set(range(q)) - set(T) - delta)
    if pair_product < threshold:
        status = "vacuous"
    else:
        status = "pass" if len(delta) >= required else "fail"
    return FalconerVerdict(
        status=status,
        delta_size=len(delta),
        required=required,
        pair_product=pair_product,
        threshold=threshold,
        covers_complement=covers,
        missing=missing,
    )


@dataclass(eq=False)
class ErdosVerdict:
    """|E||F| >= C*q^d should force |Delta| on the order of
    min(q, sqrt(|E||F|) / q^((d-1)/2))."""

    status: str  # pass | fail | vacuous
    ratio: float  # |Delta| / bound
    bound: float
    delta_size: int
    hypothesis_met: bool
    unconditional: bool  # A empty, so the size hypothesis is not needed


def verify_erdos(
    P: Polynomial,
    E: PointSet,
    F: PointSet,
    A,
    C: float = 1.0,
    r_min: float = 0.25,
) -> ErdosVerdict:
    _check_triple(P, E, F)
    q, d = P.spec.q, P.d
    delta = distance_set(P, E, F)
    pair_product = E.size * F.size
    bound = min(float(q), math.sqrt(pair_product) / float(q) ** ((d - 1) / 2))
    ratio = len(delta) / bound
    hypothesis_met = pair_product >= C * float(q) ** d
    unconditional = len(set(A)) == 0
    if hypothesis_met or unconditional:
        status = "pass" if ratio >= r_min else "fail"
    else:
        status = "vacuous"
    return ErdosVerdict(
        status=status,
        ratio=ratio,
        bound=bound,
        delta_size=len(delta),
        hypothesis_met=hypothesis_met,
        unconditional=unconditional,
    )


def verify_square_identity(E: PointSet, trials: int = 1000, seed: int = 0) -> bool:
    """For P = sum_j x_j^2, check P(x-y) - P(x'-y) =
    (P(x) - 2*y.x) - (P(x') - 2*y.x') on random triples from E."""
    spec, d = E.spec, E.d
    P = diagonal_polynomial(spec, d, 2)
    two = spec.add(1, 1)
    rng = SplitMix64(derive_seed(seed, 0x5153)) # 'SQ'
    idx = E.indices
    if len(idx) == 0:
        raise EmptySet("need a nonempty sample set")
    coords = E.coordinates()

    def dot(u, v):
        acc = 0
        for uj, vj in zip(u, v):
            acc = spec.add(acc, spec.mul(int(uj), int(vj)))
        return acc

    def shifted(u, y):
        return tuple(spec.sub(int(a), int(b)) for a, b in zip(u, y))

    for _ in range(trials):
        x = coords[rng.below(len(idx))]
        xp = coords[rng.below(len(idx))]
        y = coords[rng.below(len(idx))]
        lhs = spec.sub(evaluate(P, shifted(x, y)), evaluate(P, shifted(xp, y)))
        rhs = spec.sub(
            spec.sub(evaluate(P, tuple(int(c) for c in x)), spec.mul(two, dot(y, x))),
            spec.sub(evaluate(P, tuple(int(c) for c in xp)), spec.mul(two, dot(y, xp))),
        )
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Per-trial experiment record.

@dataclass(eq=False)
class DistanceReport:
    q: int
    d: int
    poly: str
    size_E: int
    size_F: int
    delta_size: int
    histogram: list[int]
    falconer: FalconerVerdict | None
    erdos: ErdosVerdict | None
    seed: int
    zero_in_delta: bool = dc_field(default=False)
