"""Combinatorial model of triangulated unpunctured surfaces.

A triangulation is a list of triangles, each a cyclically ordered triple of
sides (arcs or boundary segments); the listing order is the counterclockwise
orientation of the triangle in the oriented surface.  Arcs appear in exactly
two side slots, boundary segments in exactly one, and the gluing of the two
slots of an arc reverses direction, so the glued complex is an oriented
surface whose marked points are the corner orbits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .mutation import matrix_rank


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SideRef:
    """A triangle side: an arc ("A", 1..n) or a boundary segment ("B", 1..b)."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ("A", "B") or self.index < 1:
            raise SurfaceError(f"bad side {self.kind}{self.index}")

    @property
    def is_arc(self):
        return self.kind == "A"

    def __str__(self):
        return f"{self.kind}{self.index}"

    @classmethod
    def parse(cls, text):
        text = str(text).strip()
        if text and text[0] in "AB" and text[1:].isdigit():
            return cls(text[0], int(text[1:]))
        raise SurfaceError(f"cannot parse side {text!r}")


def arc(i):
    return SideRef("A", i)


def boundary(i):
    return SideRef("B", i)


@dataclass(frozen=True)
class ArcCrossing:
    """Ordered list of arc indices crossed by an arc, plus (optionally) the
    index of the triangle the arc starts in, which disambiguates crossing
    sequences whose consecutive arcs share two triangles."""

    sequence: tuple
    start_triangle: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))
        if not self.sequence:
            raise SurfaceError("empty crossing sequence")

    def __len__(self):
        return len(self.sequence)


@dataclass(frozen=True)
class LoopCrossing:
    """Nonempty cyclic list of arc indices crossed by an essential loop.
    Rotation-equivalent sequences are identified by canonical rotation."""

    cyclic_sequence: tuple

    def __post_init__(self):
        seq = tuple(self.cyclic_sequence)
        if not seq:
            raise SurfaceError("empty loop crossing sequence")
        rotations = [seq[i:] + seq[:i] for i in range(len(seq))]
        object.__setattr__(self, "cyclic_sequence", min(rotations))

    def __len__(self):
        return len(self.cyclic_sequence)

    def repeated(self, k):
        """The k-fold wrap of this loop (bracelet crossing sequence)."""
        return LoopCrossing(self.cyclic_sequence * k)


@dataclass(frozen=True)
class Triangulation:
    genus: int
    n_arcs: int
    n_boundary: int
    n_marked: int
    triangles: tuple

    def __post_init__(self):
        tris = tuple(tuple(s if isinstance(s, SideRef) else SideRef.parse(s) for s in t) for t in self.triangles)
        object.__setattr__(self, "triangles", tris)

    # -- bookkeeping -------------------------------------------------------

    def arc_slots(self):
        """arc index -> list of (triangle index, position) slots."""
        slots = {}
        for t, tri in enumerate(self.triangles):
            for i, s in enumerate(tri):
                if s.is_arc:
                    slots.setdefault(s.index, []).append((t, i))
        return slots

    def triangles_of_arc(self, a):
        return [t for t, _ in self.arc_slots().get(a, [])]

    def corner_orbits(self):
        """Union-find over triangle corners under the arc gluings.

        Corner (t, k) sits between side k-1 (ending there) and side k
        (starting there); gluing an arc's two slots reverses direction, so
        start of one copy meets end of the other.
        """
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for t, tri in enumerate(self.triangles):
            for k in range(3):
                parent[(t, k)] = (t, k)
        for slots in self.arc_slots().values():
            if len(slots) != 2:
                continue
            (t, i), (u, j) = slots
            union((t, i), (u, (j + 1) % 3))
            union((t, (i + 1) % 3), (u, j))
        orbits = {}
        for c in parent:
            orbits.setdefault(find(c), []).append(c)
        return list(orbits.values())

    def boundary_components(self):
        """Group boundary segments into boundary circles."""
        orbit_of = {}
        for orbit in self.corner_orbits():
            for c in orbit:
                orbit_of[c] = id(orbit)

        segs = {}
        for t, tri in enumerate(self.triangles):
            for i, s in enumerate(tri):
                if not s.is_arc:
                    segs[s.index] = (t, i)
        start_at = {}
        for b, (t, i) in segs.items():
            start_at.setdefault(orbit_of[(t, i)], []).append(b)

        components = []
        seen = set()
        for b in sorted(segs):
            if b in seen:
                continue
            comp = []
            cur = b
            while cur not in seen:
                seen.add(cur)
                comp.append(cur)
                t, i = segs[cur]
                end_orbit = orbit_of[(t, (i + 1) % 3)]
                nxts = [x for x in start_at.get(end_orbit, []) if x not in seen]
                if not nxts:
                    break
                cur = nxts[0]
            components.append(comp)
        return components

    # -- validation ---------------------------------------------------------

    def validate(self):
        """Return the list of violated invariants (empty means valid)."""
        problems = []
        if not self.triangles:
            return ["triangulation has no triangles"]
        counts_a = {}
        counts_b = {}
        for tri in self.triangles:
            if len(tri) != 3:
                problems.append(f"triangle {tri} does not have 3 sides")
                continue
            for s in tri:
                if s.is_arc:
                    if not 1 <= s.index <= self.n_arcs:
                        problems.append(f"arc index {s} out of range")
                    counts_a[s.index] = counts_a.get(s.index, 0) + 1
                else:
                    if not 1 <= s.index <= self.n_boundary:
                        problems.append(f"boundary index {s} out of range")
                    counts_b[s.index] = counts_b.get(s.index, 0) + 1
        for a in range(1, self.n_arcs + 1):
            if counts_a.get(a, 0) != 2:
                problems.append(f"arc {a} used {counts_a.get(a, 0)} times, expected 2")
        for b in range(1, self.n_boundary + 1):
            if counts_b.get(b, 0) != 1:
                problems.append(f"boundary segment {b} used {counts_b.get(b, 0)} times, expected 1")
        if 3 * len(self.triangles) != 2 * self.n_arcs + self.n_boundary:
            problems.append("3*(#triangles) != 2*n_arcs + n_boundary")
        if problems:
            return problems

        orbits = self.corner_orbits()
        if len(orbits) != self.n_marked:
            problems.append(
                f"{len(orbits)} marked points found, declared {self.n_marked}"
            )
        ncomp = len(self.boundary_components())
        expected = 6 * self.genus - 6 + 3 * ncomp + self.n_marked
        if self.n_arcs != expected:
            problems.append(
                f"n_arcs = {self.n_arcs} but genus/boundary data require {expected}"
            )
        if self.n_boundary != self.n_marked:
            problems.append("boundary segment count must equal marked point count")
        return problems

    # -- exchange matrix -----------------------------------------------------

    def exchange_matrix(self):
        """Signed adjacency matrix: b_ij counts triangles where arc j directly
        follows arc i counterclockwise, minus those where it precedes."""
        n = self.n_arcs
        B = [[0] * n for _ in range(n)]
        for tri in self.triangles:
            for k in range(3):
                s, t = tri[k], tri[(k + 1) % 3]
                if s.is_arc and t.is_arc:
                    B[s.index - 1][t.index - 1] += 1
                    B[t.index - 1][s.index - 1] -= 1
        return B

    # -- crossing-sequence walks ----------------------------------------------

    def other_triangle(self, a, t):
        tris = self.triangles_of_arc(a)
        if len(tris) != 2:
            raise SurfaceError(f"arc {a} does not have two triangles")
        if t == tris[0]:
            return tris[1]
        if t == tris[1]:
            return tris[0]
        raise SurfaceError(f"triangle {t} not adjacent to arc {a}")

    def _has_arc(self, t, a):
        return any(s.is_arc and s.index == a for s in self.triangles[t])

    def triangle_walk(self, crossings, start_triangle=None, loop=False):
        """The forced sequence of triangles Delta_0..Delta_d traversed by a
        curve with the given crossing sequence.

        Delta_j and Delta_{j-1} are the two triangles flanking the j-th
        crossed arc, so the walk is determined by its start; validity means
        each forced triangle contains the next crossed arc (cyclically for
        loops, where the walk must also close up).
        """
        crossings = tuple(crossings)
        d = len(crossings)
        pairs = zip(crossings, crossings[1:] + crossings[:1] if loop else crossings[1:])
        if any(a == b for a, b in pairs):
            raise SurfaceError(
                "consecutive crossings of the same arc would need a self-folded triangle"
            )
        starts = (
            [start_triangle]
            if start_triangle is not None
            else [t for t in range(len(self.triangles)) if self._has_arc(t, crossings[0])]
        )
        last_err = None
        for t0 in starts:
            walk = [t0]
            ok = True
            for j in range(d):
                if not self._has_arc(walk[-1], crossings[j]):
                    ok, last_err = False, f"triangle {walk[-1]} misses arc {crossings[j]}"
                    break
                walk.append(self.other_triangle(crossings[j], walk[-1]))
            if not ok:
                continue
            if loop:
                if walk[-1] != walk[0]:
                    last_err = "loop walk does not close up"
                    continue
            return walk
        raise SurfaceError(
            f"invalid crossing sequence {crossings}: {last_err or 'no valid start triangle'}"
        )

    def validates_arc(self, crossing):
        try:
            self.triangle_walk(crossing.sequence, crossing.start_triangle)
            return True
        except SurfaceError:
            return False

    def validates_loop(self, crossing):
        try:
            self.triangle_walk(crossing.cyclic_sequence, loop=True)
            return True
        except SurfaceError:
            return False

    # -- the loop around the boundary ------------------------------------------

    def boundary_loop(self):
        """Crossing sequence of the essential loop isotopic to the boundary.

        Rotating around the single marked point, the loop crosses every
        arc end once, in the fan order determined by the gluings; the walk
        starts at the corner where the boundary segment begins and stops at
        the corner where it ends.
        """
        if self.n_marked != 1 or self.n_boundary != 1:
            raise SurfaceError("boundary_loop requires exactly one marked point")
        slot_of = {}
        for t, tri in enumerate(self.triangles):
            for i, s in enumerate(tri):
                slot_of.setdefault((s.kind, s.index), []).append((t, i))
        (tb, ib) = slot_of[("B", 1)][0]
        crossed = []
        t, k = tb, ib
        while True:
            side = self.triangles[t][(k - 1) % 3]
            if not side.is_arc:
                break
            crossed.append(side.index)
            s1, s2 = slot_of[("A", side.index)]
            t, k = s2 if (s1 == (t, (k - 1) % 3)) else s1
        if len(crossed) != 2 * self.n_arcs:
            raise SurfaceError("boundary loop walk did not visit every arc end")
        return LoopCrossing(tuple(crossed))

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self):
        return {
            "genus": self.genus,
            "n_arcs": self.n_arcs,
            "n_boundary": self.n_boundary,
            "n_marked": self.n_marked,
            "triangles": [[str(s) for s in tri] for tri in self.triangles],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, data):
        return cls(
            genus=int(data["genus"]),
            n_arcs=int(data["n_arcs"]),
            n_boundary=int(data["n_boundary"]),
            n_marked=int(data["n_marked"]),
            triangles=tuple(tuple(SideRef.parse(s) for s in tri) for tri in data["triangles"]),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))


# -- builtin surfaces ---------------------------------------------------------


def _genus_triangle_sets(g):
    """Triangle side sets for the one-marked-point genus-g surface.

    Arcs 1, 2 form the core pair; two ladders of triangles climb from the
    core to the boundary triangle, sharing rung arcs in opposite order:

      arcs:  d_i = 2 + i           (i = 1..2g-2)
             a_i = 2g + i          (i = 1..2g-1)
             b_i = (6g-1) - i      (i = 1..2g-1)
      triangles: {1,2,a_1}, {1,2,b_1},
                 {d_i, a_i, a_{i+1}},             i = 1..2g-2
                 {d_{2g-1-i}, b_i, b_{i+1}},      i = 1..2g-2
                 {B, b_{2g-1}, a_{2g-1}}

    For g = 1 this degenerates to {1,2,3}, {1,2,4}, {B,4,3}; for g = 2 it
    reproduces the triangulation forced by the crossing sequences in the
    genus-2 identity checks.
    """
    if g < 1:
        raise SurfaceError("genus must be >= 1")
    d = [2 + i for i in range(1, 2 * g - 1)]
    a = [2 * g + i for i in range(1, 2 * g)]
    b = [(6 * g - 1) - i for i in range(1, 2 * g)]
    tris = [[arc(1), arc(2), arc(a[0])], [arc(1), arc(2), arc(b[0])]]
    for i in range(2 * g - 2):
        tris.append([arc(d[i]), arc(a[i]), arc(a[i + 1])])
    for i in range(2 * g - 2):
        tris.append([arc(d[2 * g - 3 - i]), arc(b[i]), arc(b[i + 1])])
    tris.append([boundary(1), arc(b[-1]), arc(a[-1])])
    return tris


def _orientation_candidates(tri_sets, genus, n_arcs):
    """All orientation assignments (one bit per triangle: keep or reverse the
    listed cyclic order) that glue to a one-marked-point surface with an
    exchange matrix of maximal rank, in deterministic order."""
    out = []
    m = len(tri_sets)
    for mask in range(1 << m):
        tris = tuple(
            tuple(reversed(t)) if (mask >> i) & 1 else tuple(t)
            for i, t in enumerate(tri_sets)
        )
        T = Triangulation(genus=genus, n_arcs=n_arcs, n_boundary=1, n_marked=1, triangles=tris)
        if len(T.corner_orbits()) != 1:
            continue
        if matrix_rank(T.exchange_matrix()) != n_arcs:
            continue
        out.append(mask)
    return out


def _orientation_mask(g):
    """Orientation pattern validated against the Laurent-polynomial
    identities for g = 1, 2 and the derived coefficient monomial for higher
    genus: the first ladder's triangles and the boundary triangle are
    reversed relative to _genus_triangle_sets, the rest kept (bit i reverses
    triangle i)."""
    mask = 1 << (4 * g - 2)
    for i in range(2, 2 * g):
        mask |= 1 << i
    return mask


def builtin_genus(g):
    """Triangulation of the genus-g surface with one boundary component and
    one marked point (6g-2 arcs, 4g-1 triangles)."""
    tri_sets = _genus_triangle_sets(g)
    n_arcs = 6 * g - 2
    mask = _orientation_mask(g)
    tris = tuple(
        tuple(reversed(t)) if (mask >> i) & 1 else tuple(t)
        for i, t in enumerate(tri_sets)
    )
    T = Triangulation(
        genus=g, n_arcs=n_arcs, n_boundary=1, n_marked=1, triangles=tris
    )
    problems = T.validate()
    if problems:
        raise SurfaceError(f"builtin genus-{g} triangulation invalid: {problems}")
    return T


def builtin_genus1():
    return builtin_genus(1)


def builtin_genus2():
    return builtin_genus(2)


def annulus_fixture():
    """The annulus with one marked point on each boundary circle: the
    smallest surface carrying an essential loop, used as a band-graph test
    fixture (not a builtin one-marked-point surface)."""
    return Triangulation(
        genus=0,
        n_arcs=2,
        n_boundary=2,
        n_marked=2,
        triangles=(
            (arc(1), arc(2), boundary(1)),
            (arc(1), arc(2), boundary(2)),
        ),
    )


__all__ = [
    "SideRef",
    "arc",
    "boundary",
    "ArcCrossing",
    "LoopCrossing",
    "Triangulation",
    "SurfaceError",
    "builtin_genus",
    "builtin_genus1",
    "builtin_genus2",
    "annulus_fixture",
]
