"""Exact-rational convex polytopes in low dimension, with fans.

Polytopes are stored by halfspaces {x : <x, u> >= lam} with primitive
integer normals u and rational offsets lam.  Vertices are enumerated
eagerly at construction by brute force over d-subsets of halfspaces, which
is exact and entirely adequate at this scale (facet counts stay around a
dozen).  Empty and lower-dimensional polytopes are legal values; unbounded
input is rejected at construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional, Sequence

from .errors import NotSimpleError, NotSmoothError, UnboundedPolytopeError
from .linalg import (
    affine_rank,
    dot,
    mat_det,
    mat_inverse,
    mat_mul_vec,
    mat_transpose,
    primitive_vector,
    solve_square,
    vec_sub,
)
from .rationals import format_rational

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class HalfSpace:
    """{x : <x, normal> >= offset} with a primitive integer normal."""

    normal: tuple[int, ...]
    offset: Fraction

    @classmethod
    def of(cls, normal: Sequence, offset) -> "HalfSpace":
        """Build from rational data, rescaling to a primitive normal."""
        fracs = [Fraction(x) for x in normal]
        if all(x == 0 for x in fracs):
            raise ValueError("halfspace normal must be nonzero")
        prim = primitive_vector(fracs)
        # offset scales by the same positive factor as the normal
        for p, f in zip(prim, fracs):
            if f != 0:
                scale = Fraction(p) / f
                break
        return cls(normal=prim, offset=Fraction(offset) * scale)

    def slack(self, point: Sequence) -> Fraction:
        total = 0
        for u, x in zip(self.normal, point):
            if u:
                total += u * x
        return total - self.offset

    def contains(self, point: Sequence) -> bool:
        return self.slack(point) >= 0

    def is_tight(self, point: Sequence) -> bool:
        return self.slack(point) == 0

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": format_rational(self.offset)}


def _feasible(dim: int, constraints: list[tuple[tuple[Fraction, ...], Fraction]]) -> bool:
    """Fourier-Motzkin feasibility for constraints sum(c_i x_i) >= rhs."""
    cons = []
    for coeffs, rhs in constraints:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if all(c == 0 for c in coeffs):
            if rhs > 0:
                return False
            continue
        cons.append((coeffs, Fraction(rhs)))
    for var in range(dim):
        pos = [c for c in cons if c[0][var] > 0]
        neg = [c for c in cons if c[0][var] < 0]
        rest = [c for c in cons if c[0][var] == 0]
        new: dict = {}
        for (cp, bp) in pos:
            for (cn, bn) in neg:
                a, b = cp[var], -cn[var]
                coeffs = tuple(b * x + a * y for x, y in zip(cp, cn))
                rhs = b * bp + a * bn
                if all(c == 0 for c in coeffs):
                    if rhs > 0:
                        return False
                    continue
                prim = primitive_vector(coeffs)
                scale = None
                for p, f in zip(prim, coeffs):
                    if f != 0:
                        scale = Fraction(p) / f
                        break
                key = (prim, rhs * scale)
                new[key] = key
        merged: dict = {}
        for coeffs, rhs in rest + list(new.values()):
            if coeffs in merged:
                merged[coeffs] = max(merged[coeffs], rhs)
            else:
                merged[coeffs] = rhs
        cons = [(c, b) for c, b in merged.items()]
    return all(rhs <= 0 for coeffs, rhs in cons)


def _recession_nonzero(dim: int, halfspaces: Sequence[HalfSpace]) -> bool:
    """Whether {x : <x,u> >= 0 for all normals} contains a nonzero point."""
    base = [(tuple(Fraction(c) for c in h.normal), Fraction(0)) for h in halfspaces]
    for j in range(dim):
        for sign in (1, -1):
            probe = tuple(
                Fraction(sign if k == j else 0) for k in range(dim)
            )
            if _feasible(dim, base + [(probe, Fraction(1))]):
                return True
    return False


class HPolytope:
    """Halfspace intersection with eagerly cached vertex data.

    Immutable after construction; vertices are stored sorted
    lexicographically and `tight_sets[i]` lists the vertex indices on which
    halfspace i is tight, so values are freely shareable across threads.
    """

    __slots__ = ("dim", "halfspaces", "vertices", "tight_sets")

    def __init__(self, dim: int, halfspaces: Iterable[HalfSpace]):
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        hs = tuple(halfspaces)
        for h in hs:
            if len(h.normal) != dim:
                raise ValueError("halfspace dimension mismatch")
        self.dim = dim
        self.halfspaces = hs
        self.vertices = self._enumerate_vertices()
        if not self.vertices:
            constraints = [
                (tuple(Fraction(c) for c in h.normal), h.offset) for h in hs
            ]
            if _feasible(dim, constraints):
                raise UnboundedPolytopeError(
                    "nonempty halfspace system with no vertex (contains a line)"
                )
        elif _recession_nonzero(dim, hs):
            raise UnboundedPolytopeError("halfspace system has a recession direction")
        self.tight_sets = tuple(
            frozenset(
                i for i, v in enumerate(self.vertices) if h.is_tight(v)
            )
            for h in hs
        )

    def _enumerate_vertices(self) -> tuple[Point, ...]:
        hs = self.halfspaces
        if len(hs) < self.dim:
            return ()
        seen: dict[Point, None] = {}
        for subset in itertools.combinations(range(len(hs)), self.dim):
            rows = [hs[i].normal for i in subset]
            rhs = [hs[i].offset for i in subset]
            x = solve_square(rows, rhs)
            if x is None:
                continue
            if all(h.contains(x) for h in hs):
                seen[x] = None
        return tuple(sorted(seen))

    # -- basic queries ---------------------------------------------------

    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, point: Sequence) -> bool:
        return all(h.contains(point) for h in self.halfspaces)

    def affine_dim(self) -> int:
        return affine_rank(self.vertices)

    def is_full_dimensional(self) -> bool:
        return self.affine_dim() == self.dim

    def bounding_box(self) -> tuple[Point, Point]:
        if self.is_empty():
            raise ValueError("empty polytope has no bounding box")
        lo = tuple(min(v[j] for v in self.vertices) for j in range(self.dim))
        hi = tuple(max(v[j] for v in self.vertices) for j in range(self.dim))
        return lo, hi

    # -- facets ----------------------------------------------------------

    def is_facet(self, index: int) -> bool:
        """Whether halfspace `index` is tight on a (d-1)-dimensional face."""
        tight = [self.vertices[i] for i in self.tight_sets[index]]
        return affine_rank(tight) == self.dim - 1

    def facet_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.halfspaces)) if self.is_facet(i))

    def pruned(self) -> "HPolytope":
        """Copy keeping one halfspace per facet; empty input is unchanged.

        The point set is untouched, so the vertex data is reused instead of
        re-enumerated.  Lower-dimensional polytopes have no facets and
        cannot be pruned.
        """
        if self.is_empty():
            return self
        if not self.is_full_dimensional():
            raise ValueError("cannot prune a lower-dimensional polytope to facets")
        kept_indices: list[int] = []
        seen: set[tuple] = set()
        for i in self.facet_indices():
            h = self.halfspaces[i]
            key = (h.normal, h.offset)
            if key not in seen:
                seen.add(key)
                kept_indices.append(i)
        out = object.__new__(HPolytope)
        out.dim = self.dim
        out.halfspaces = tuple(self.halfspaces[i] for i in kept_indices)
        out.vertices = self.vertices
        out.tight_sets = tuple(self.tight_sets[i] for i in kept_indices)
        return out

    # -- geometry ---------------------------------------------------------

    def axis_segment(self, point: Sequence, axis: int) -> Optional[tuple[Fraction, Fraction]]:
        """Parameter interval {t : point + t e_axis in P}, or None if empty."""
        if not 0 <= axis < self.dim:
            raise ValueError(f"axis {axis} out of range")
        point = tuple(Fraction(x) for x in point)
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for h in self.halfspaces:
            coeff = Fraction(h.normal[axis])
            slack = h.slack(point)
            if coeff == 0:
                if slack < 0:
                    return None
            elif coeff > 0:
                bound = -slack / coeff
                lo = bound if lo is None else max(lo, bound)
            else:
                bound = -slack / coeff
                hi = bound if hi is None else min(hi, bound)
        if lo is None or hi is None:
            raise UnboundedPolytopeError("axis line escapes the halfspace system")
        if lo > hi:
            return None
        return (lo, hi)

    def volume(self) -> Fraction:
        """Exact Lebesgue volume; 0 for empty or lower-dimensional sets."""
        if self.affine_dim() < self.dim:
            return Fraction(0)
        total = Fraction(0)
        for simplex in self._triangulate(self.vertices, self.dim):
            base = simplex[0]
            rows = [vec_sub(p, base) for p in simplex[1:]]
            total += abs(mat_det(rows))
        return total / factorial(self.dim)

    def _subfaces(self, points: tuple[Point, ...], face_dim: int):
        """(face_dim - 1)-faces of the face spanned by `points`."""
        out: dict[frozenset, tuple[Point, ...]] = {}
        for h in self.halfspaces:
            tight = tuple(p for p in points if h.is_tight(p))
            if not tight or len(tight) == len(points):
                continue
            if affine_rank(tight) == face_dim - 1:
                out.setdefault(frozenset(tight), tight)
        return out.values()

    def _triangulate(self, points: tuple[Point, ...], face_dim: int):
        if face_dim == 0:
            yield (points[0],)
            return
        apex = min(points)
        for sub in self._subfaces(points, face_dim):
            if apex in sub:
                continue
            for simplex in self._triangulate(tuple(sorted(sub)), face_dim - 1):
                yield (apex,) + simplex

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "halfspaces": [h.to_json() for h in self.halfspaces],
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
        }

    def __repr__(self) -> str:
        return f"HPolytope(dim={self.dim}, facets={len(self.halfspaces)}, vertices={len(self.vertices)})"

    def __eq__(self, other) -> bool:
        """Geometric equality: same dimension and same vertex set."""
        return (
            isinstance(other, HPolytope)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices))


def polytope_from_json(data: dict) -> HPolytope:
    from .rationals import parse_rational

    dim = int(data["dim"])
    hs = [
        HalfSpace(tuple(int(c) for c in entry["normal"]), parse_rational(entry["offset"]))
        for entry in data["halfspaces"]
    ]
    return HPolytope(dim, hs)


# -- unimodular images ------------------------------------------------------


def apply_unimodular(P: HPolytope, matrix: Sequence[Sequence[int]], shift: Sequence) -> HPolytope:
    """Image {Mx + v : x in P} for an integer matrix with det +-1.

    Normals transform by the inverse transpose (still integer and
    primitive for unimodular M); offsets pick up the shift.
    """
    m = [tuple(int(x) for x in row) for row in matrix]
    if abs(mat_det(m)) != 1:
        raise ValueError("matrix is not unimodular")
    shift = tuple(Fraction(x) for x in shift)
    inv = mat_inverse(m)
    inv_t = mat_transpose(inv)
    new_hs = []
    for h in P.halfspaces:
        w = tuple(int(x) for x in mat_mul_vec(inv_t, h.normal))
        new_hs.append(HalfSpace(primitive_vector(w), h.offset + dot(w, shift)))
    return HPolytope(P.dim, new_hs)


# -- fans --------------------------------------------------------------------


@dataclass(frozen=True)
class Fan:
    """Rays (primitive integer vectors) plus maximal cones as ray-index sets."""

    dim: int
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("duplicate rays")
        for cone in self.maximal_cones:
            for i in cone:
                if not 0 <= i < len(self.rays):
                    raise ValueError("cone refers to a missing ray")

    def cone_ray_sets(self) -> frozenset[frozenset[tuple[int, ...]]]:
        return frozenset(
            frozenset(self.rays[i] for i in cone) for cone in self.maximal_cones
        )


def normal_fan(P: HPolytope) -> Fan:
    """Fan of inward facet normals, one maximal cone per vertex.

    Requires a bounded, full-dimensional, simple polytope (each vertex on
    exactly d facets); everything this package feeds it is simple by
    construction, so violations indicate wall input or a bug.
    """
    if not P.is_full_dimensional():
        raise ValueError("normal fan needs a full-dimensional polytope")
    Q = P.pruned()
    facets = list(range(len(Q.halfspaces)))
    cones = []
    for vi in range(len(Q.vertices)):
        touching = [f for f in facets if vi in Q.tight_sets[f]]
        if len(touching) != Q.dim:
            raise NotSimpleError(
                f"vertex {Q.vertices[vi]} lies on {len(touching)} facets in dimension {Q.dim}"
            )
        cones.append(frozenset(touching))
    fan = Fan(
        dim=Q.dim,
        rays=tuple(h.normal for h in Q.halfspaces),
        maximal_cones=tuple(cones),
    )
    if len(fan.maximal_cones) != len(Q.vertices):
        raise AssertionError("cone count does not match vertex count")
    return fan


def support_function(P: HPolytope) -> dict[tuple[int, ...], Fraction]:
    """Facet offsets keyed by primitive inward normal."""
    Q = P.pruned()
    return {h.normal: h.offset for h in Q.halfspaces}


def fan_is_smooth(fan: Fan) -> bool:
    """Every maximal cone is simplicial with generators a lattice basis."""
    for cone in fan.maximal_cones:
        if len(cone) != fan.dim:
            return False
        rows = [fan.rays[i] for i in sorted(cone)]
        if abs(mat_det(rows)) != 1:
            return False
    return True


def fan_is_complete(fan: Fan) -> bool:
    """Wall criterion: every facet of a maximal cone is shared by exactly 2.

    For the simplicial fans produced here (normal fans of bounded
    polytopes and their stellar subdivisions) this characterizes support
    equal to the whole space.
    """
    if fan.dim == 1:
        return set(fan.rays) == {(1,), (-1,)} and len(fan.maximal_cones) == 2
    if len(fan.maximal_cones) < 2:
        return False
    wall_count: dict[frozenset, int] = {}
    for cone in fan.maximal_cones:
        for drop in cone:
            wall = cone - {drop}
            wall_count[wall] = wall_count.get(wall, 0) + 1
    return all(count == 2 for count in wall_count.values())


def fans_equal(a: Fan, b: Fan) -> bool:
    """Equality as sets of rays and sets of cones under the ray matching."""
    if a.dim != b.dim:
        return False
    if set(a.rays) != set(b.rays):
        return False
    return a.cone_ray_sets() == b.cone_ray_sets()


def is_delzant(P: HPolytope) -> bool:
    """Simple and lattice-smooth: facet normals at each vertex a basis."""
    fan = normal_fan(P)
    return fan_is_smooth(fan)


_FANO_CACHE: dict[tuple, bool] = {}


def is_fano(fan: Fan) -> bool:
    """Whether the fan admits the all-offsets -1 (monotone) polytope.

    Builds {x : <x, u> >= -1 for every ray u} and checks that it is
    bounded, that every ray supports a facet, and that its normal fan is
    the input fan again.  Results are cached per fan (fans recur heavily
    across samples in one chamber).  An equivalent test via the dual of
    the monotone polytope (the convex hull of the rays) would make a good
    independent cross-check but is not implemented.
    """
    if not fan_is_smooth(fan):
        raise NotSmoothError("Fano test needs a smooth fan")
    if not fan_is_complete(fan):
        raise ValueError("Fano test needs a complete fan")
    key = (fan.dim, fan.cone_ray_sets())
    if key in _FANO_CACHE:
        return _FANO_CACHE[key]
    result = _is_fano_uncached(fan)
    _FANO_CACHE[key] = result
    return result


def _is_fano_uncached(fan: Fan) -> bool:
    try:
        candidate = HPolytope(
            fan.dim, [HalfSpace(ray, Fraction(-1)) for ray in fan.rays]
        )
    except UnboundedPolytopeError:
        return False
    if candidate.is_empty() or not candidate.is_full_dimensional():
        return False
    pruned = candidate.pruned()
    if set(h.normal for h in pruned.halfspaces) != set(fan.rays):
        return False
    try:
        mon_fan = normal_fan(pruned)
    except NotSimpleError:
        return False
    return fans_equal(mon_fan, fan)


@dataclass(frozen=True)
class BlowupStep:
    """One stellar subdivision: `cone_rays` replaced by cones through `new_ray`."""

    new_ray: tuple[int, ...]
    cone_rays: frozenset[tuple[int, ...]]


def stellar_subdivision(fan: Fan, cone_index: int, new_ray: tuple[int, ...]) -> Fan:
    rays = list(fan.rays)
    if new_ray in rays:
        new_index = rays.index(new_ray)
    else:
        rays.append(new_ray)
        new_index = len(rays) - 1
    target = fan.maximal_cones[cone_index]
    cones = [c for i, c in enumerate(fan.maximal_cones) if i != cone_index]
    for drop in sorted(target):
        cones.append((target - {drop}) | {new_index})
    return Fan(dim=fan.dim, rays=tuple(rays), maximal_cones=tuple(cones))


def blowup_chain(fine: Fan, coarse: Fan) -> Optional[list[BlowupStep]]:
    """Greedy chain of stellar subdivisions turning `coarse` into `fine`.

    Each extra ray of the fine fan must equal the generator sum of some
    maximal cone of the current fan (the combinatorial shadow of blowing
    up a fixed point).  Greedy with no backtracking: in every case this
    package meets, each extra ray matches a unique cone.  Returns None
    when the walk fails or does not land on the fine fan.
    """
    for fan in (fine, coarse):
        if not fan_is_smooth(fan):
            raise NotSmoothError("blowup chain needs smooth fans")
        if not fan_is_complete(fan):
            raise ValueError("blowup chain needs complete fans")
    if not set(coarse.rays) <= set(fine.rays):
        return None
    remaining = [r for r in fine.rays if r not in set(coarse.rays)]
    current = coarse
    steps: list[BlowupStep] = []
    while remaining:
        applied = False
        for ray in remaining:
            target = None
            for ci, cone in enumerate(current.maximal_cones):
                total = tuple(
                    sum(current.rays[i][k] for i in cone) for k in range(current.dim)
                )
                if total == ray:
                    target = ci
                    break
            if target is not None:
                steps.append(
                    BlowupStep(
                        new_ray=ray,
                        cone_rays=frozenset(
                            current.rays[i] for i in current.maximal_cones[target]
                        ),
                    )
                )
                current = stellar_subdivision(current, target, ray)
                remaining.remove(ray)
                applied = True
                break
        if not applied:
            return None
    if not fans_equal(current, fine):
        return None
    return steps


def replay_blowup_chain(coarse: Fan, steps: Sequence[BlowupStep], fine: Fan) -> bool:
    """Re-apply a recorded chain and confirm it reproduces the fine fan."""
    current = coarse
    for step in steps:
        target = None
        for ci, cone in enumerate(current.maximal_cones):
            if frozenset(current.rays[i] for i in cone) == step.cone_rays:
                total = tuple(
                    sum(current.rays[i][k] for i in cone) for k in range(current.dim)
                )
                if total == step.new_ray:
                    target = ci
                    break
        if target is None:
            return False
        current = stellar_subdivision(current, target, step.new_ray)
    return fans_equal(current, fine)
