"""Recovering a fan from an affine atlas of character data.

The input describes a variety glued from affine charts that all share one
torus: each chart is a finite set of characters generating its coordinate
monoid, and each pairwise intersection is again such a set.  The pipeline

* computes the cone of each chart (the one-parameter maps extending into
  it, dually: everything pairing nonnegatively with the characters),
* rejects charts that are not normal or whose torus is not dense,
* detects non-separated glueing exactly, by comparing the intersection
  chart's cone with the intersection of the chart cones,
* certifies that each intersection chart is an open subchart through a
  face-localization certificate,

and assembles the validated fan, checking that rebuilding the atlas from
the fan reproduces every chart monoid.
"""

import os
from dataclasses import dataclass
from typing import Optional

from .cone import classify, cone_from_generators, contains, dual, intersect, dot, relative_interior_point
from .errors import (
    CertificateSearchExhausted,
    FaceCertificateMissing,
    InvalidAtlas,
    NonSeparated,
    NotNormal,
    TorusNotDense,
)
from .exact_linalg import hnf_basis, in_lattice
from .fan import Fan, validate_fan
from .monoid import monoid_of
from .variety import build_atlas, face_localization_certificate

DEFAULT_SEARCH_CEILING = 1_000_000


def _search_ceiling():
    raw = os.environ.get("TORFAN_SEARCH_CEILING")
    return int(raw) if raw else DEFAULT_SEARCH_CEILING


@dataclass
class InputAtlas:
    """A finite affine atlas in character form.

    `charts` maps a chart id to its generating characters; `intersections`
    maps a pair of ids to the characters of the intersection chart.  The
    glueing convention is monomial and identity on the shared torus.
    """

    rank: int
    charts: dict
    intersections: dict

    def __post_init__(self):
        charts = {}
        for cid, chars in self.charts.items():
            charts[cid] = tuple(tuple(int(x) for x in ch) for ch in chars)
        self.charts = charts
        inters = {}
        for key, chars in self.intersections.items():
            i, j = tuple(key)
            if i not in charts or j not in charts:
                raise InvalidAtlas(f"intersection {key} references unknown chart ids")
            inters[frozenset((i, j))] = tuple(tuple(int(x) for x in ch) for ch in chars)
        self.intersections = inters


@dataclass
class ReconstructionReport:
    fan: Fan
    cone_per_chart: dict
    certificates: dict
    status: dict


@dataclass(frozen=True)
class NormalityResult:
    normal: bool
    witness: Optional[tuple]


# ---------------------------------------------------------------------------
# exact monoid membership


def monoid_member(gens, target, _budget=None):
    """Decide exactly whether `target` is a nonnegative integer combination
    of `gens`.

    A strictly positive functional on the pointed part of the generated
    cone bounds the coefficients of the generators off the lineality, so
    those are enumerated exactly; the residual lives in a strictly smaller
    lineality sublattice, where either the generators span a subspace (the
    monoid is then the generated lattice, decided by lattice membership)
    or the recursion applies again.
    """
    if _budget is None:
        _budget = [_search_ceiling()]
    gens = [tuple(g) for g in gens if any(g)]
    target = tuple(target)
    if not any(target):
        return True
    if not gens:
        return False
    rank = len(target)
    cone = cone_from_generators(rank, gens)
    if not contains(cone, target):
        return False
    if not cone.rays:
        # the cone is a linear subspace, so some strictly positive integer
        # combination of the generators is zero and the monoid is a group
        return in_lattice(gens, target)
    w = relative_interior_point(dual(cone))
    lin_gens = [g for g in gens if dot(w, g) == 0]
    pos = sorted(
        ((g, dot(w, g)) for g in gens if dot(w, g) > 0), key=lambda t: -t[1]
    )
    total = dot(w, target)

    def rec(idx, remaining, acc):
        _budget[0] -= 1
        if _budget[0] < 0:
            raise CertificateSearchExhausted("monoid membership", _search_ceiling())
        if remaining == 0:
            residual = tuple(t - a for t, a in zip(target, acc))
            return monoid_member(lin_gens, residual, _budget)
        if idx == len(pos):
            return False
        g, weight = pos[idx]
        for c in range(remaining // weight, -1, -1):
            nxt = tuple(a + c * x for a, x in zip(acc, g))
            if rec(idx + 1, remaining - c * weight, nxt):
                return True
        return False

    return rec(0, total, tuple(0 for _ in range(rank)))


# ---------------------------------------------------------------------------
# per-chart computations


def _lattice_is_full(rank, chars):
    basis = hnf_basis(chars)
    if len(basis) != rank:
        return False
    return basis == tuple(
        tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)
    )


def cone_from_characters(rank, chars, chart_id=None):
    """The cone of one-parameter maps extending into the chart.

    Dually: the set of lattice vectors pairing nonnegatively with every
    character.  The characters must generate the full character lattice
    as a group (the torus must be dense in the chart); the result is then
    automatically strongly convex.
    """
    chars = [tuple(int(x) for x in ch) for ch in chars]
    for ch in chars:
        if len(ch) != rank:
            raise ValueError(f"character {ch} does not have length {rank}")
    if not _lattice_is_full(rank, chars):
        raise TorusNotDense(chart_id, chars)
    sigma = dual(cone_from_generators(rank, chars))
    assert classify(sigma).strongly_convex
    return sigma


def normality_check(rank, chars, chart_id=None):
    """Does the character monoid contain every lattice point of its cone?

    Tested on the canonical generators of the saturation; the first one
    missing from the generated monoid is returned as witness.
    """
    sigma = cone_from_characters(rank, chars, chart_id)
    saturated = monoid_of(sigma)
    for g in saturated.generators:
        if not monoid_member(chars, g):
            return NormalityResult(False, g)
    return NormalityResult(True, None)


def affine_case(rank, chars):
    """Reconstruction for a single affine chart: its cone and the fan it
    generates.  The chart monoid structure is then available through the
    monoid layer applied to the cone."""
    result = normality_check(rank, chars, chart_id="chart")
    if not result.normal:
        raise NotNormal("chart", result.witness)
    sigma = cone_from_characters(rank, chars, "chart")
    fan = validate_fan(rank, [sigma], auto_close=True)
    return sigma, fan


# ---------------------------------------------------------------------------
# full pipeline


def reconstruct_fan(atlas):
    """Recover the fan of a separated atlas, certifying every step.

    Raises TorusNotDense, NotNormal, NonSeparated or
    FaceCertificateMissing with the offending chart data; on success the
    report carries the fan, the cone of each chart, face-localization
    certificates for every pair, and status flags including the
    round-trip check that the fan rebuilds the input chart monoids.
    """
    rank = atlas.rank
    ids = sorted(atlas.charts, key=repr)
    cones = {}
    monoids = {}
    for cid in ids:
        chars = atlas.charts[cid]
        result = normality_check(rank, chars, cid)
        if not result.normal:
            raise NotNormal(cid, result.witness)
        cones[cid] = cone_from_characters(rank, chars, cid)
        monoids[cid] = monoid_of(cones[cid])

    certificates = {}
    for a, i in enumerate(ids):
        for j in ids[a + 1 :]:
            key = frozenset((i, j))
            if key not in atlas.intersections:
                raise InvalidAtlas(f"missing intersection data for charts {i!r}, {j!r}")
            chars_ij = atlas.intersections[key]
            for cid in (i, j):
                for ch in atlas.charts[cid]:
                    if not monoid_member(chars_ij, ch):
                        raise InvalidAtlas(
                            f"character {list(ch)} of chart {cid!r} is not in the "
                            f"intersection chart monoid of {i!r}, {j!r}"
                        )
            result = normality_check(rank, chars_ij, (i, j))
            if not result.normal:
                raise NotNormal((i, j), result.witness)
            sigma_ij = cone_from_characters(rank, chars_ij, (i, j))
            meet = intersect(cones[i], cones[j])
            if sigma_ij != meet:
                raise NonSeparated(i, j, sigma_ij, meet)
            cert_i = face_localization_certificate(monoids[i], sigma_ij)
            if cert_i is None:
                raise FaceCertificateMissing(i, j, cones[i], sigma_ij)
            cert_j = face_localization_certificate(monoids[j], sigma_ij)
            if cert_j is None:
                raise FaceCertificateMissing(j, i, cones[j], sigma_ij)
            certificates[(i, j)] = cert_i
            certificates[(j, i)] = cert_j

    fan = validate_fan(rank, list(cones.values()), auto_close=True)

    round_trip = True
    for cid in ids:
        rebuilt = monoids[cid].generators
        chars = atlas.charts[cid]
        if not all(monoid_member(rebuilt, ch) for ch in chars):
            round_trip = False
        if not all(monoid_member(chars, g) for g in rebuilt):
            round_trip = False
    status = {"normal": True, "separated": True, "round_trip": round_trip}
    return ReconstructionReport(fan, cones, certificates, status)


def export_atlas(fan):
    """Write a fan's variety as an InputAtlas over its maximal cones.

    Chart ids are integers in canonical cone order; reconstruct_fan on the
    result returns the fan back.
    """
    atlas = build_atlas(fan)
    maximal = fan.maximal_cones()
    charts = {}
    for idx, c in enumerate(maximal):
        charts[idx] = atlas.charts[c].generators
    intersections = {}
    for a, c in enumerate(maximal):
        for b in range(a + 1, len(maximal)):
            meet = intersect(c, maximal[b])
            intersections[(a, b)] = atlas.charts[meet].generators
    return InputAtlas(rank=fan.rank, charts=charts, intersections=intersections)
