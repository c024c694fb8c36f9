"""Affine chart monoids and their points.

For a strongly convex cone sigma in N, the chart monoid is the set of all
lattice vectors of the dual lattice M pairing nonnegatively with sigma.
Its minimal generating data is a Hilbert basis for the pointed part plus
(when sigma does not span) a pair of opposite bases of the lineality
lattice of the dual cone.

A point of the chart is a multiplicative map from the monoid to the
rationals.  The set of monoid elements a point does not kill is a face of
the dual cone, so a point is stored as that face together with its
(nonzero, rational) values on a lattice basis of the face span.  This
makes the pointwise product of two points structural: intersect the
faces, multiply the values.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cone import (
    Cone,
    classify,
    cone_from_generators,
    contains,
    dot,
    dual,
    intersect,
    span_lattice_basis,
    zero_cone,
    _cone_from_h,
)
from .errors import NotStronglyConvex
from .exact_linalg import complement, lattice_coords, solve_rational, _smith_with_inverses


@dataclass(frozen=True)
class AffineMonoid:
    """The monoid of characters of an affine toric chart.

    `hilbert` is the unique minimal generating set of the pointed part;
    `lineality_gens` lists a basis of the lineality lattice of the dual
    cone together with its negatives.  Together they generate the monoid.
    """

    sigma: Cone
    sigma_dual: Cone
    hilbert: tuple
    lineality_gens: tuple

    @property
    def rank(self):
        return self.sigma.rank

    @property
    def generators(self):
        return self.hilbert + self.lineality_gens


@dataclass(frozen=True)
class ChartPoint:
    """A multiplicative map from a chart monoid to the rationals.

    Evaluates to 0 outside `support_face` and multiplicatively on it,
    with `unit_values` giving the nonzero values on `face_basis`.
    """

    monoid: AffineMonoid
    support_face: Cone
    face_basis: tuple
    unit_values: tuple


# ---------------------------------------------------------------------------
# Hilbert bases


def _triangulate(c):
    """Cover a pointed cone by simplicial subcones spanned by its extreme
    rays: pull from the first ray, recurse into the facets missing it."""
    d = classify(c).dim
    if len(c.rays) == d:
        return [c.rays]
    v = c.rays[0]
    simplices = []
    for u in c.ineqs:
        if dot(u, v) > 0:
            facet = _cone_from_h(c.rank, c.ineqs, c.span_eqs + (u,))
            for s in _triangulate(facet):
                simplices.append(s + (v,))
    return simplices


def _parallelepiped_points(simplex):
    """Lattice points of the half-open fundamental parallelepiped of a
    full-rank simplicial ray tuple, one per residue class."""
    d = len(simplex)
    w_cols = tuple(tuple(simplex[j][i] for j in range(d)) for i in range(d))
    dm, _, _, left_inv, _ = _smith_with_inverses(w_cols)
    diag = [dm[i][i] for i in range(d)]
    points = []
    for y in itertools.product(*[range(k) for k in diag]):
        x = tuple(sum(left_inv[i][j] * y[j] for j in range(d)) for i in range(d))
        t = solve_rational(simplex, x)
        floors = [f.numerator // f.denominator for f in t]
        p = tuple(
            x[i] - sum(floors[j] * simplex[j][i] for j in range(d)) for i in range(d)
        )
        points.append(p)
    return points


def _hilbert_pointed(c):
    """Hilbert basis of (pointed cone c) intersected with the lattice."""
    if c.lineality:
        raise ValueError("cone is not pointed")
    if not c.rays:
        return ()
    if c.span_eqs:
        basis = span_lattice_basis(c)
        sub = cone_from_generators(len(basis), [lattice_coords(basis, r) for r in c.rays])
        return tuple(
            sorted(
                tuple(sum(h[i] * basis[i][j] for i in range(len(basis))) for j in range(c.rank))
                for h in _hilbert_pointed(sub)
            )
        )
    candidates = set(c.rays)
    for simplex in _triangulate(c):
        candidates.update(_parallelepiped_points(simplex))
    candidates.discard(tuple(0 for _ in range(c.rank)))
    out = []
    for g in candidates:
        reducible = False
        for a in candidates:
            if a == g:
                continue
            diff = tuple(x - y for x, y in zip(g, a))
            if any(diff) and contains(c, diff):
                reducible = True
                break
        if not reducible:
            out.append(g)
    return tuple(sorted(out))


def monoid_of(sigma):
    """The chart monoid of a strongly convex cone.

    Rejects cones containing a line; for those no affine chart with a
    dense torus exists.
    """
    if not classify(sigma).strongly_convex:
        raise NotStronglyConvex(sigma)
    sd = dual(sigma)
    lat = sd.lineality
    if not lat:
        hilbert = _hilbert_pointed(sd)
    elif not sd.rays:
        hilbert = ()
    else:
        comp = complement(lat, cols=sigma.rank)
        coords = [lattice_coords(comp, r) for r in sd.rays]
        pointed = cone_from_generators(len(comp), coords)
        hilbert = tuple(
            sorted(
                tuple(sum(h[i] * comp[i][j] for i in range(len(comp))) for j in range(sigma.rank))
                for h in _hilbert_pointed(pointed)
            )
        )
    lineality_gens = []
    for b in lat:
        lineality_gens.append(tuple(b))
        lineality_gens.append(tuple(-x for x in b))
    return AffineMonoid(sigma, sd, hilbert, tuple(lineality_gens))


def monoid_contains(m, u):
    """Is u a character of the chart, i.e. nonnegative on sigma?"""
    u = tuple(u)
    return all(dot(u, r) >= 0 for r in m.sigma.rays) and all(
        dot(u, l) == 0 for l in m.sigma.lineality
    )


# ---------------------------------------------------------------------------
# chart points


def _unit_hom(p, u):
    """Value of the point's multiplicative unit map at u, which must lie
    in the lattice span of the support face."""
    coords = lattice_coords(p.face_basis, u)
    if coords is None:
        raise ValueError(f"{u} is not in the lattice span of the support face")
    value = Fraction(1)
    for base, c in zip(p.unit_values, coords):
        value *= base ** c
    return value


def identity_point(m):
    """The unit of the chart: the point with value 1 on every character."""
    basis = span_lattice_basis(m.sigma_dual)
    return ChartPoint(m, m.sigma_dual, basis, tuple(Fraction(1) for _ in basis))


def torus_point(m, values):
    """The torus point with the given nonzero coordinates.

    `values` are the values on the standard basis of the character
    lattice; the support is the full dual cone.
    """
    values = tuple(Fraction(v) for v in values)
    if len(values) != m.rank:
        raise ValueError("need one value per lattice coordinate")
    if any(v == 0 for v in values):
        raise ValueError("torus point values must be nonzero")
    basis = span_lattice_basis(m.sigma_dual)
    units = []
    for b in basis:
        value = Fraction(1)
        for base, c in zip(values, b):
            value *= base ** c
        units.append(value)
    return ChartPoint(m, m.sigma_dual, basis, tuple(units))


def has_zero(m):
    """The absorbing point of the chart, when one exists.

    A chart has an absorbing point exactly when its cone spans the
    ambient space; the point then kills every nonzero character.
    """
    if not classify(m.sigma).nondegenerate:
        return None
    return ChartPoint(m, zero_cone(m.rank), (), ())


def eval_point(p, u):
    """Evaluate the point at a character u of its chart monoid."""
    u = tuple(u)
    if not monoid_contains(p.monoid, u):
        raise ValueError(f"{u} is not a character of the chart")
    if not contains(p.support_face, u):
        return Fraction(0)
    return _unit_hom(p, u)


def multiply_points(p, q):
    """Pointwise product of two points of the same chart."""
    if p.monoid != q.monoid:
        raise ValueError("points live on different charts")
    face = intersect(p.support_face, q.support_face)
    basis = span_lattice_basis(face)
    units = tuple(_unit_hom(p, b) * _unit_hom(q, b) for b in basis)
    return ChartPoint(p.monoid, face, basis, units)


# ---------------------------------------------------------------------------
# one-parameter subsemigroups


def one_param_extends(m, v):
    """Does the one-parameter map of v extend over 0 into this chart?

    True exactly when v pairs nonnegatively with every generator of the
    monoid; equivalently, when v lies in the chart's cone.
    """
    v = tuple(v)
    return all(dot(u, v) >= 0 for u in m.generators)


def one_param_limit(m, v):
    """The limit point at 0 of the one-parameter map of v.

    Supported on the face of the dual cone orthogonal to v, with value 1
    there (and 0 on every character pairing positively with v).
    """
    v = tuple(v)
    if not one_param_extends(m, v):
        raise ValueError(f"{v} does not define a one-parameter map into this chart")
    sd = m.sigma_dual
    face = _cone_from_h(m.rank, sd.ineqs, sd.span_eqs + (v,))
    basis = span_lattice_basis(face)
    return ChartPoint(m, face, basis, tuple(Fraction(1) for _ in basis))


@dataclass(frozen=True)
class OneParamSubsemigroup:
    """The multiplicative map t -> (u -> t^(u.v)) into a chart.

    Exists (extends over t = 0) exactly when v lies in the chart cone.
    """

    v: tuple
    monoid: AffineMonoid

    def __post_init__(self):
        if not one_param_extends(self.monoid, self.v):
            raise ValueError(f"{self.v} is not in the chart cone")

    def limit(self):
        return one_param_limit(self.monoid, self.v)

    def point_at(self, t):
        t = Fraction(t)
        if t == 0:
            return self.limit()
        return torus_point(self.monoid, tuple(t ** x for x in self.v))
