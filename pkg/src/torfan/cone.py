"""Rational polyhedral cones with exact double-description conversion.

A cone is stored in canonical form carrying both representations:

* V-data: `rays` (primitive extreme generators of the pointed part) and
  `lineality` (canonical basis of the largest linear subspace contained
  in the cone),
* H-data: `ineqs` (primitive facet normals) and `span_eqs` (canonical
  basis of the integer normals cutting out the linear span).

A vector belongs to the cone iff it pairs >= 0 with every entry of
`ineqs` and pairs 0 with every entry of `span_eqs`.  Canonicalisation
makes structural equality of `Cone` values coincide with set equality,
so cones can be dict keys and members of sets.

All computations are over exact integers and rationals.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import NamedTuple

from .exact_linalg import (
    complement,
    hnf_basis,
    kernel_basis,
    primitive,
    saturate,
    solve_rational,
)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class Cone:
    """Canonical rational polyhedral cone in a lattice of the given rank.

    Use :func:`cone_from_generators` (or the other module functions) to
    construct values; the constructor itself performs no normalisation.
    """

    rank: int
    rays: tuple
    lineality: tuple
    ineqs: tuple
    span_eqs: tuple

    def __repr__(self):
        parts = [f"rank={self.rank}", f"rays={list(map(list, self.rays))}"]
        if self.lineality:
            parts.append(f"lineality={list(map(list, self.lineality))}")
        return "Cone(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class ConeClass:
    strongly_convex: bool
    nondegenerate: bool
    dim: int


class Face(NamedTuple):
    """A face of a cone together with a witness u in the dual cone
    such that face == cone intersect u-perp."""

    cone: Cone
    witness: tuple


def cone_sort_key(c):
    return (c.rank, c.span_eqs, c.lineality, c.ineqs, c.rays)


# ---------------------------------------------------------------------------
# double description


def _double_description(rank, rows):
    """Extreme generators of {x : row . x >= 0 for every row}.

    Returns (lines, rays): a basis of the lineality space and the extreme
    rays modulo that space, both as raw (non-canonical) integer vectors.
    Incremental insertion with the combinatorial adjacency test; every
    intermediate description is minimal.
    """
    lines = [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)]
    rays = []  # list of [vector, zero-set bitmask over processed constraints]
    nproc = 0
    for a in rows:
        a = tuple(a)
        if not any(a):
            continue
        bit = 1 << nproc
        hit = next((i for i, l in enumerate(lines) if dot(a, l)), None)
        if hit is not None:
            l0 = lines.pop(hit)
            s0 = dot(a, l0)
            if s0 < 0:
                l0 = tuple(-x for x in l0)
                s0 = -s0
            lines = [
                primitive(tuple(s0 * x - dot(a, l) * y for x, y in zip(l, l0)))
                for l in lines
            ]
            full = bit - 1  # former line: pairs 0 with every processed row
            rays = [
                [primitive(tuple(s0 * x - dot(a, r) * y for x, y in zip(r, l0))), m | bit]
                for r, m in rays
            ]
            rays.append([l0, full])
        else:
            pos, neg, zero = [], [], []
            for r, m in rays:
                d = dot(a, r)
                if d > 0:
                    pos.append([r, m])
                elif d < 0:
                    neg.append([r, m])
                else:
                    zero.append([r, m | bit])
            if neg:
                new = pos + zero
                for p, mp in pos:
                    for n, mn in neg:
                        common = mp & mn
                        adjacent = True
                        for r, mr in rays:
                            if r is p or r is n:
                                continue
                            if common & ~mr == 0:
                                adjacent = False
                                break
                        if adjacent:
                            dp, dn = dot(a, p), dot(a, n)
                            combo = primitive(
                                tuple(dp * x - dn * y for x, y in zip(n, p))
                            )
                            new.append([combo, (common | bit)])
                seen = set()
                rays = []
                for r, m in new:
                    if r not in seen:
                        seen.add(r)
                        rays.append([r, m])
            else:
                rays = pos + zero
        nproc += 1
    return [tuple(l) for l in lines], [tuple(r) for r, _ in rays]


def _dd_cone(rank, ineq_rows, eq_rows):
    rows = []
    for e in eq_rows:
        rows.append(tuple(e))
        rows.append(tuple(-x for x in e))
    rows.extend(tuple(r) for r in ineq_rows)
    return _double_description(rank, rows)


# ---------------------------------------------------------------------------
# canonicalisation


def _primitive_rational(vec):
    mult = lcm(*[f.denominator for f in vec]) if vec else 1
    return primitive(tuple(int(f * mult) for f in vec))


def _canonical_pair(rank, raw_lines, raw_rays):
    """Canonical (lattice basis, ray reps) for span(raw_lines)+cone(raw_rays).

    The lattice basis is the HNF basis of the saturated lineality lattice;
    each ray is replaced by the primitive generator of its projection onto
    a complementary sublattice, which is the unique canonical representative
    of the ray modulo the lineality space.
    """
    if raw_lines:
        lat = saturate(raw_lines, cols=rank)
    else:
        lat = ()
    if not raw_rays:
        return lat, ()
    if not lat:
        reps = {primitive(r) for r in raw_rays}
    else:
        comp = complement(lat, cols=rank)
        basis = tuple(comp) + tuple(lat)
        reps = set()
        for r in raw_rays:
            coords = solve_rational(basis, r)
            proj = tuple(
                sum((coords[i] * Fraction(comp[i][j]) for i in range(len(comp))), Fraction(0))
                for j in range(rank)
            )
            rep = _primitive_rational(proj)
            if any(rep):
                reps.add(rep)
    return lat, tuple(sorted(reps))


def _assemble(rank, v_lines, v_rays, h_lines, h_rays):
    lin, rays = _canonical_pair(rank, v_lines, v_rays)
    eqs, ineqs = _canonical_pair(rank, h_lines, h_rays)
    return Cone(rank, rays, lin, ineqs, eqs)


def _cone_from_v(rank, gens, lines):
    d_lines, d_rays = _dd_cone(rank, gens, lines)
    p_lines, p_rays = _dd_cone(rank, d_rays, d_lines)
    return _assemble(rank, p_lines, p_rays, d_lines, d_rays)


def _cone_from_h(rank, ineqs, eqs):
    p_lines, p_rays = _dd_cone(rank, ineqs, eqs)
    d_lines, d_rays = _dd_cone(rank, p_rays, p_lines)
    return _assemble(rank, p_lines, p_rays, d_lines, d_rays)


# ---------------------------------------------------------------------------
# public operations


def cone_from_generators(rank, gens):
    """The cone of all nonnegative real combinations of the generators.

    Redundant generators are dropped; the result is canonical.  An empty
    generator list yields the zero cone.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    for g in gens:
        if len(g) != rank:
            raise ValueError(f"generator {g} does not have length {rank}")
    return _cone_from_v(rank, gens, ())


def zero_cone(rank):
    return cone_from_generators(rank, ())


def cone_from_inequalities(rank, ineqs, eqs=()):
    """The cone {v : u.v >= 0 for u in ineqs, e.v == 0 for e in eqs}."""
    return _cone_from_h(
        rank,
        [tuple(int(x) for x in u) for u in ineqs],
        [tuple(int(x) for x in e) for e in eqs],
    )


@lru_cache(maxsize=None)
def dual(c):
    """The dual cone: all dual vectors pairing >= 0 with every point of c.

    Computed by a fresh double-description round trip, so equality of
    dual(dual(c)) with c exercises the conversion in both directions.
    """
    return _cone_from_v(c.rank, c.ineqs, c.span_eqs)


def intersect(a, b):
    if a.rank != b.rank:
        raise ValueError("cannot intersect cones of different ranks")
    return _cone_from_h(a.rank, a.ineqs + b.ineqs, a.span_eqs + b.span_eqs)


def negate(c):
    """The cone {-v : v in c}; canonical fields flip sign directly."""
    return Cone(
        c.rank,
        tuple(sorted(tuple(-x for x in r) for r in c.rays)),
        c.lineality,
        tuple(sorted(tuple(-x for x in u) for u in c.ineqs)),
        c.span_eqs,
    )


def contains(c, v):
    """Membership test via the H-data."""
    v = tuple(v)
    if len(v) != c.rank:
        raise ValueError("vector length does not match cone rank")
    return all(dot(u, v) >= 0 for u in c.ineqs) and all(
        dot(e, v) == 0 for e in c.span_eqs
    )


def contains_cone(c, other):
    """Is every point of `other` a point of c?  Tested on generators."""
    return all(contains(c, r) for r in other.rays) and all(
        contains(c, l) and contains(c, tuple(-x for x in l)) for l in other.lineality
    )


def classify(c):
    """Strong convexity, nondegeneracy (full-dimensionality) and dimension."""
    return ConeClass(
        strongly_convex=not c.lineality,
        nondegenerate=not c.span_eqs,
        dim=c.rank - len(c.span_eqs),
    )


def relative_interior_point(c):
    """An integer point in the relative interior: the sum of all rays.

    For cones without rays (linear subspaces, including the zero cone)
    the zero vector is returned, which lies in the relative interior of
    a subspace.
    """
    if not c.rays:
        return tuple(0 for _ in range(c.rank))
    return tuple(sum(col) for col in zip(*c.rays))


def span_lattice_basis(c):
    """Canonical basis of (linear span of c) intersected with the lattice."""
    if not c.span_eqs:
        return tuple(tuple(1 if i == j else 0 for j in range(c.rank)) for i in range(c.rank))
    return hnf_basis(kernel_basis(c.span_eqs, cols=c.rank))


def _perp_cone(rank, vecs):
    return _cone_from_h(rank, (), [tuple(v) for v in vecs])


def _dual_face(c, f):
    """The face of dual(c) orthogonal to the face f of c."""
    return intersect(dual(c), _perp_cone(c.rank, f.rays + f.lineality))


def face_witness(c, f):
    """A vector u in dual(c) with c intersect u-perp == f, for f a face of c.

    Returns the primitive relative-interior point of the dual face (the
    zero vector when f == c).  The caller is responsible for f actually
    being a face; combine with :func:`is_face` otherwise.
    """
    if f == c:
        return tuple(0 for _ in range(c.rank))
    return primitive(relative_interior_point(_dual_face(c, f)))


def is_face(f, c):
    """Is f a face of c (a subset of the form c intersect u-perp, u in dual(c))?"""
    if f.rank != c.rank:
        return False
    if f == c:
        return True
    if not contains_cone(c, f):
        return False
    u = face_witness(c, f)
    return _cone_from_h(c.rank, c.ineqs, c.span_eqs + (u,)) == f


@lru_cache(maxsize=None)
def faces(c):
    """All faces of c, each tagged with a dual witness.

    Walks the face lattice downward through facets; includes c itself
    (witness 0) and the minimal face.  Faces come out sorted by
    decreasing dimension, then canonically.
    """
    seen = {c}
    order = [c]
    i = 0
    while i < len(order):
        f = order[i]
        i += 1
        for u in f.ineqs:
            child = _cone_from_h(c.rank, f.ineqs, f.span_eqs + (u,))
            if child not in seen:
                seen.add(child)
                order.append(child)
    order.sort(key=lambda f: (-classify(f).dim,) + cone_sort_key(f))
    return tuple(Face(cone=f, witness=face_witness(c, f)) for f in order)


def face_cones(c):
    return tuple(f.cone for f in faces(c))
