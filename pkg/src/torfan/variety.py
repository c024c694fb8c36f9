"""The glued variety of a fan, as chart data with machine-checkable certificates.

Every chart is an affine monoid; charts glue along the charts of
intersection cones.  Two global statements about the glued object are
certified constructively:

* separatedness: for each pair of cones, every generator of the
  intersection chart monoid splits as a sum of a character of one chart
  and a character of the other (surjectivity of the diagonal on
  coordinate rings);
* open embedding of a face chart: for a face tau of sigma there is a
  single character f of the sigma chart with tau = sigma meet f-perp such
  that inverting f produces the whole tau chart monoid.

Both certificates are found directly through a separating functional (a
relative-interior point of the appropriate dual region) followed by an
exact minimal shift, and both re-verify by pure vector arithmetic.
"""

from dataclasses import dataclass

from .cone import (
    Cone,
    contains_cone,
    dot,
    dual,
    face_witness,
    intersect,
    is_face,
    negate,
    relative_interior_point,
    span_lattice_basis,
)
from .errors import NotStronglyConvex
from .exact_linalg import primitive
from .monoid import (
    AffineMonoid,
    ChartPoint,
    monoid_contains,
    monoid_of,
    multiply_points,
    _unit_hom,
)


@dataclass(frozen=True)
class MonoidInclusion:
    """The inclusion of chart monoids induced by a cone containment.

    The map is the identity on dual vectors; the tags record which chart
    monoid is the domain and which the codomain.
    """

    domain: Cone
    codomain: Cone

    def apply(self, atlas, u):
        u = tuple(u)
        if not monoid_contains(atlas.charts[self.domain], u):
            raise ValueError(f"{u} is not a character of the domain chart")
        assert monoid_contains(atlas.charts[self.codomain], u)
        return u


@dataclass
class ChartAtlasFromFan:
    fan: object
    charts: dict
    inclusions: dict

    def torus_chart(self):
        from .cone import zero_cone

        return self.charts[zero_cone(self.fan.rank)]


def build_atlas(f):
    """One chart monoid per fan cone, plus all pairwise inclusion data."""
    charts = {c: monoid_of(c) for c in f.cones}
    inclusions = {}
    for sigma in f.cones:
        for tau in f.cones:
            if sigma == tau:
                continue
            meet = intersect(sigma, tau)
            inc = MonoidInclusion(domain=sigma, codomain=meet)
            # hilbert generators of the bigger-cone chart must be characters
            # of the intersection chart
            assert all(monoid_contains(charts[meet], h) for h in charts[sigma].generators)
            inclusions[(sigma, tau)] = inc
    return ChartAtlasFromFan(fan=f, charts=charts, inclusions=inclusions)


# ---------------------------------------------------------------------------
# separating functionals and shifts


def _separating_functional(sigma, tau):
    """An integer u, nonnegative on sigma, nonpositive on tau, vanishing
    exactly on their common face: a relative-interior point of
    dual(sigma) meet -dual(tau)."""
    region = intersect(dual(sigma), negate(dual(tau)))
    return primitive(relative_interior_point(region))


def _min_shift(g, direction, cone):
    """Smallest m >= 0 with g + m*direction nonnegative on the cone's rays."""
    m = 0
    for r in cone.rays:
        d = dot(direction, r)
        if d > 0:
            needed = -dot(g, r)
            if needed > 0:
                m = max(m, (needed + d - 1) // d)
    return m


# ---------------------------------------------------------------------------
# separatedness


@dataclass(frozen=True)
class Decomposition:
    generator: tuple
    in_sigma: tuple
    in_tau: tuple


@dataclass(frozen=True)
class PairCertificate:
    sigma: Cone
    tau: Cone
    decompositions: tuple


@dataclass(frozen=True)
class SeparatednessCertificate:
    pairs: tuple

    def verify(self, atlas):
        """Re-check every decomposition by vector addition and membership,
        independently of how it was produced."""
        for pc in self.pairs:
            meet = intersect(pc.sigma, pc.tau)
            m_sigma = atlas.charts[pc.sigma]
            m_tau = atlas.charts[pc.tau]
            m_meet = atlas.charts[meet]
            gens = set(m_meet.generators)
            for d in pc.decompositions:
                if tuple(a + b for a, b in zip(d.in_sigma, d.in_tau)) != d.generator:
                    return False
                if not monoid_contains(m_sigma, d.in_sigma):
                    return False
                if not monoid_contains(m_tau, d.in_tau):
                    return False
                gens.discard(d.generator)
            if gens:
                return False
        return True


def separatedness_certificate(atlas):
    """Decompose every generator of every intersection chart monoid.

    For each pair of fan cones a separating functional u is nonnegative on
    one cone, nonpositive on the other, and vanishes on the common face;
    shifting a generator by a multiple of u lands it in one chart monoid
    while the compensating multiple of -u lies in the other.  Existence is
    guaranteed for every valid fan, so the construction never searches.
    """
    f = atlas.fan
    pairs = []
    ordered = f.cones
    for i, sigma in enumerate(ordered):
        for tau in ordered[i:]:
            meet = intersect(sigma, tau)
            m_sigma = atlas.charts[sigma]
            m_tau = atlas.charts[tau]
            m_meet = atlas.charts[meet]
            u = _separating_functional(sigma, tau)
            decs = []
            for g in m_meet.generators:
                m = _min_shift(g, u, sigma)
                a = tuple(x + m * y for x, y in zip(g, u))
                b = tuple(-m * y for y in u)
                assert monoid_contains(m_sigma, a) and monoid_contains(m_tau, b)
                decs.append(Decomposition(g, a, b))
            pairs.append(PairCertificate(sigma, tau, tuple(decs)))
    return SeparatednessCertificate(tuple(pairs))


# ---------------------------------------------------------------------------
# chart restriction and multiplication compatibility


def restrict_point(p, target_monoid):
    """Restrict a point to a chart with a bigger cone (fewer characters).

    Precomposition with the inclusion of chart monoids: the support gets
    cut down to its part inside the target dual cone, the unit values
    restrict along the span.
    """
    face = intersect(p.support_face, target_monoid.sigma_dual)
    basis = span_lattice_basis(face)
    units = tuple(_unit_hom(p, b) for b in basis)
    return ChartPoint(target_monoid, face, basis, units)


def chart_multiplication_compatible(atlas, sigma, tau, sample_points):
    """Does restriction to the sigma chart commute with multiplication?

    `tau` must be a face of `sigma`; the sample points live on the tau
    chart.  Checks restrict(p*q) == restrict(p)*restrict(q) for every
    pair of samples, which pins the ring-level compatibility square on
    the characters of the sigma chart.
    """
    if not is_face(tau, sigma):
        raise ValueError("tau is not a face of sigma")
    m_sigma = atlas.charts[sigma]
    m_tau = atlas.charts[tau]
    for p in sample_points:
        if p.monoid != m_tau:
            raise ValueError("sample point does not live on the tau chart")
    for p in sample_points:
        for q in sample_points:
            lhs = restrict_point(multiply_points(p, q), m_sigma)
            rhs = multiply_points(restrict_point(p, m_sigma), restrict_point(q, m_sigma))
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# face localization


@dataclass(frozen=True)
class CoverRepresentation:
    generator: tuple
    in_sigma: tuple
    power: int


@dataclass(frozen=True)
class FaceLocalizationCertificate:
    """A character f of the sigma chart with tau = sigma meet f-perp, plus a
    representation g = s + power * (-f) of every tau chart generator with s
    a sigma chart character: inverting f recovers the whole tau monoid."""

    sigma: Cone
    tau: Cone
    f: tuple
    covers: tuple

    def verify(self, sigma_monoid):
        from .cone import _cone_from_h

        if not monoid_contains(sigma_monoid, self.f):
            return False
        sigma = sigma_monoid.sigma
        cut = _cone_from_h(sigma.rank, sigma.ineqs, sigma.span_eqs + (self.f,))
        if cut != self.tau:
            return False
        tau_monoid = monoid_of(self.tau)
        gens = set(tau_monoid.generators)
        for rep in self.covers:
            expected = tuple(
                s - rep.power * fi for s, fi in zip(rep.in_sigma, self.f)
            )
            if expected != rep.generator or rep.power < 0:
                return False
            if not monoid_contains(sigma_monoid, rep.in_sigma):
                return False
            gens.discard(rep.generator)
        return not gens


def face_localization_certificate(sigma_monoid, tau):
    """Certificate that the tau chart sits inside the sigma chart as the
    nonvanishing locus of a single character, or None.

    Returns None exactly when tau is not a face of sigma; in that case no
    character f of the sigma chart can present the tau chart monoid as
    sigma-characters plus nonnegative multiples of -f.
    """
    sigma = sigma_monoid.sigma
    if tau.rank != sigma.rank or not contains_cone(sigma, tau):
        raise ValueError("tau must be a subcone of sigma")
    if tau.lineality:
        raise NotStronglyConvex(tau)
    if not is_face(tau, sigma):
        return None
    f = face_witness(sigma, tau)
    tau_monoid = monoid_of(tau)
    covers = []
    for g in tau_monoid.generators:
        m = _min_shift(g, f, sigma)
        s = tuple(x + m * y for x, y in zip(g, f))
        assert monoid_contains(sigma_monoid, s)
        covers.append(CoverRepresentation(g, s, m))
    return FaceLocalizationCertificate(sigma, tau, f, tuple(covers))
