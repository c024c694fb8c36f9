"""Fans of strongly convex rational cones and their semigroup criteria.

A fan is a finite, face-closed collection of strongly convex cones whose
pairwise intersections are common faces.  The module provides validation
with structured violation errors, reduction of a fan into the span of its
support, and the exact decision procedures behind the question "does the
glued variety of this fan carry a multiplication extending the torus":
a fan passes exactly when a single cone generates it, and the two failure
diagnostics are a pair of full-dimensional cones after reduction or a
witnessed failure of the support to be closed under addition.
"""

from dataclasses import dataclass
from typing import Optional

from .cone import (
    Cone,
    classify,
    cone_from_generators,
    cone_sort_key,
    contains,
    contains_cone,
    dot,
    face_cones,
    intersect,
    is_face,
    relative_interior_point,
    zero_cone,
    _cone_from_h,
    _dd_cone,
)
from .errors import Condition1Violation, Condition2Violation, NotStronglyConvex
from .exact_linalg import lattice_coords, primitive, saturate


@dataclass(frozen=True)
class Fan:
    """A validated fan: canonical, face-closed cone set of one rank.

    Build through :func:`validate_fan`; the raw constructor does not check
    the fan conditions.
    """

    rank: int
    cones: tuple

    def __iter__(self):
        return iter(self.cones)

    def __len__(self):
        return len(self.cones)

    def __contains__(self, c):
        return c in self.cones

    def maximal_cones(self):
        """Cones that are not proper faces of another fan cone."""
        out = []
        for c in self.cones:
            if not any(co != c and contains_cone(co, c) for co in self.cones):
                out.append(c)
        return tuple(out)


@dataclass(frozen=True)
class SpanReduction:
    """A fan rewritten in coordinates of the sublattice spanned by its support.

    `sub_lattice_basis` is the canonical basis of (span of the fan) meet N;
    `embedding` maps reduced coordinates back to N (rows are the images of
    the reduced basis vectors).
    """

    sub_lattice_basis: tuple
    reduced_fan: Fan
    embedding: tuple
    original_rank: int

    def embed_vector(self, v):
        if not self.embedding:
            return tuple(0 for _ in range(self.original_rank))
        return tuple(
            sum(v[i] * self.embedding[i][j] for i in range(len(self.embedding)))
            for j in range(self.original_rank)
        )

    def embed_cone(self, c):
        return cone_from_generators(
            self.original_rank, [self.embed_vector(r) for r in c.rays]
        )


@dataclass(frozen=True)
class NondegenerateConePair:
    """Two distinct full-dimensional cones of the span-reduced fan; each
    would give its chart an absorbing point, and one semigroup cannot
    have two."""

    first: Cone
    second: Cone


@dataclass(frozen=True)
class AdditionClosureFailure:
    """Integer points v, w of fan cones whose sum leaves the fan support."""

    v: tuple
    w: tuple
    total: tuple


@dataclass(frozen=True)
class SemigroupDecision:
    verdict: bool
    generating_cone: Optional[Cone]
    diagnostics: object = None


def validate_fan(rank, raw_cones, auto_close=True):
    """Check the two fan conditions and return the validated fan.

    With `auto_close` (the default) all faces of the given cones are added
    before checking, so the input only needs to list generating cones.
    Violations raise :class:`NotStronglyConvex`,
    :class:`Condition1Violation` or :class:`Condition2Violation`.
    """
    cones = []
    for c in raw_cones:
        if c.rank != rank:
            raise ValueError(f"cone rank {c.rank} does not match fan rank {rank}")
        if not classify(c).strongly_convex:
            raise NotStronglyConvex(c)
        cones.append(c)
    cone_set = set(cones)
    if auto_close:
        closed = {zero_cone(rank)}
        for c in cone_set:
            closed.update(face_cones(c))
        cone_set = closed
    elif not cone_set:
        cone_set = {zero_cone(rank)}
    else:
        for c in sorted(cone_set, key=cone_sort_key):
            for f in face_cones(c):
                if f not in cone_set:
                    raise Condition1Violation(c, f)
    ordered = sorted(cone_set, key=cone_sort_key)
    for i, sigma in enumerate(ordered):
        for tau in ordered[i + 1 :]:
            meet = intersect(sigma, tau)
            if not (is_face(meet, sigma) and is_face(meet, tau)):
                raise Condition2Violation(sigma, tau, meet)
    return Fan(rank, tuple(ordered))


def is_generated_by_single_cone(f):
    """The unique cone whose faces make up the whole fan, if one exists.

    For a validated fan, a cone containing every other cone automatically
    has them as faces, so containment of generators decides.
    """
    for sigma in sorted(f.cones, key=lambda c: -classify(c).dim):
        if all(contains_cone(sigma, c) for c in f.cones):
            return sigma
    return None


def nondegenerate_cones(f):
    """All full-dimensional cones, in canonical order."""
    return tuple(c for c in f.cones if classify(c).nondegenerate)


def _hyperplanes(f):
    seen = set()
    for c in f.cones:
        for h in c.ineqs + c.span_eqs:
            h = primitive(h)
            lead = next((x for x in h if x), None)
            if lead is None:
                continue
            if lead < 0:
                h = tuple(-x for x in h)
            seen.add(h)
    return sorted(seen)


def _cell_generators(cell):
    gens = list(cell.rays)
    for l in cell.lineality:
        gens.append(l)
        gens.append(tuple(-x for x in l))
    return gens


def _find_uncovered(cell, hyps, cones):
    """A relative-interior point of a piece of `cell` outside every cone,
    or None when `cell` is covered by the union of the cones.

    Splits the cell along the arrangement hyperplanes; once no hyperplane
    separates a cell, every cone membership is constant on its relative
    interior, so one interior point decides.
    """
    for delta in cones:
        if contains_cone(delta, cell):
            return None
    gens = _cell_generators(cell)
    for idx, h in enumerate(hyps):
        vals = [dot(h, g) for g in gens]
        if any(v > 0 for v in vals) and any(v < 0 for v in vals):
            rest = hyps[idx + 1 :]
            neg_h = tuple(-x for x in h)
            res = _find_uncovered(
                _cone_from_h(cell.rank, cell.ineqs + (h,), cell.span_eqs), rest, cones
            )
            if res is not None:
                return res
            return _find_uncovered(
                _cone_from_h(cell.rank, cell.ineqs + (neg_h,), cell.span_eqs), rest, cones
            )
    x = relative_interior_point(cell)
    # cell sits inside no single cone and no hyperplane separates it, so its
    # relative interior misses the union entirely
    assert not any(contains(delta, x) for delta in cones)
    return x


def _decompose_sum(x, sigma, tau):
    """Split x = v + w with v in sigma, w in tau, exactly.

    Works on the homogenisation {(v, t) : v in sigma, t*x - v in tau, t >= 0}
    and rescales a generator with positive t; the returned v + w is the
    corresponding positive integer multiple of x.
    """
    rank = sigma.rank
    ineqs = []
    eqs = []
    for u in sigma.ineqs:
        ineqs.append(tuple(u) + (0,))
    for e in sigma.span_eqs:
        eqs.append(tuple(e) + (0,))
    for u in tau.ineqs:
        ineqs.append(tuple(-a for a in u) + (dot(u, x),))
    for e in tau.span_eqs:
        eqs.append(tuple(-a for a in e) + (dot(e, x),))
    ineqs.append(tuple(0 for _ in range(rank)) + (1,))
    _, rays = _dd_cone(rank + 1, ineqs, eqs)
    vt = next(r for r in rays if r[rank] > 0)
    t = vt[rank]
    v = vt[:rank]
    w = tuple(t * a - b for a, b in zip(x, v))
    return v, w


def union_addition_closed(f):
    """Is the union of all fan cones closed under addition?

    Exact: for every pair of cones the sum cone is split along the
    arrangement of all facet and span hyperplanes of the fan, and each
    undivided cell is decided by one relative-interior point.  On failure
    returns integer witnesses (v, w, v + w) with v, w in fan cones and
    v + w outside the union.
    """
    cones = f.cones
    hyps = _hyperplanes(f)
    for i, sigma in enumerate(cones):
        for tau in cones[i + 1 :]:
            if contains_cone(sigma, tau) or contains_cone(tau, sigma):
                continue
            total = cone_from_generators(f.rank, sigma.rays + tau.rays)
            x = _find_uncovered(total, hyps, cones)
            if x is not None:
                v, w = _decompose_sum(x, sigma, tau)
                return False, AdditionClosureFailure(
                    v, w, tuple(a + b for a, b in zip(v, w))
                )
    return True, None


def span_reduce(f):
    """Rewrite the fan inside the saturated lattice spanned by its support."""
    all_rays = [r for c in f.cones for r in c.rays]
    if not all_rays:
        reduced = Fan(0, (zero_cone(0),))
        return SpanReduction((), reduced, (), f.rank)
    basis = saturate(all_rays, cols=f.rank)
    d = len(basis)
    reduced_cones = []
    for c in f.cones:
        coords = [lattice_coords(basis, r) for r in c.rays]
        reduced_cones.append(cone_from_generators(d, coords))
    reduced = validate_fan(d, reduced_cones, auto_close=True)
    return SpanReduction(basis, reduced, basis, f.rank)


def has_semigroup_structure(f):
    """Decide whether the fan's variety can multiply compatibly with its torus.

    The verdict is exact: true iff (after span reduction) a single cone
    generates the fan.  A negative verdict carries a diagnostic witness,
    either two full-dimensional cones of the reduced fan or an exact
    addition-closure failure; one of the two always exists.
    """
    gen = is_generated_by_single_cone(f)
    if gen is not None:
        return SemigroupDecision(True, gen, None)
    red = span_reduce(f)
    nd = nondegenerate_cones(red.reduced_fan)
    if len(nd) >= 2:
        return SemigroupDecision(False, None, NondegenerateConePair(nd[0], nd[1]))
    closed, failure = union_addition_closed(red.reduced_fan)
    assert not closed, "single-cone test failed but no diagnostic exists"
    return SemigroupDecision(
        False,
        None,
        AdditionClosureFailure(
            red.embed_vector(failure.v),
            red.embed_vector(failure.w),
            red.embed_vector(failure.total),
        ),
    )
