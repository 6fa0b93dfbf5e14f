"""Snake graphs of arcs, band graphs of loops, and the matching expansion.

Construction.  Crossing the arcs t_{i_1}, ..., t_{i_d} in order traverses a
strip of triangles D_0, ..., D_d; tile j is the quadrilateral around the
j-th crossed arc, straightened into a unit square whose conceptual corners
(c1, c2, c3, c4) run counterclockwise with the crossed arc on the diagonal
c1-c3.  The backward triangle D_{j-1} covers sides c1c2, c2c3 and the
forward triangle D_j covers c3c4, c4c1; which of a triangle's two free
sides is the glue edge is read off the triangle's counterclockwise cyclic
order ("turn type").  Each tile is drawn by one of the eight dihedral
placements of the quadrilateral, constrained so that the incoming glue edge
sits on the south or west side and the outgoing glue edge on the north or
east side; the first legal placement in a fixed preference order is taken,
which pins the graph up to a global reflection that perfect-matching
polynomials cannot see.

Band graphs identify the spare glue edge of the last tile with the spare
glue edge of the first tile, matching the corners that touch the diagonals.

Matchings.  All perfect matchings of a snake graph, and exactly the good
matchings of a band graph, are enumerated as the flip closure of the
minimal matching; a tile flips when both its horizontal or both its
vertical edges are matched.  A flip raises the tile's height by one when
the matched pair consists of the sides {c2c3, c4c1} of the conceptual
quadrilateral (the sides adjacent to the glue edges), and lowers it when
it consists of {c1c2, c3c4}; the minimal matching is the unique
flip-source, found by descending from any good matching.  The y-weight of
a matching is the product of y_{i_j} over tiles counted with their
heights.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import LaurentPolynomial
from .surface import SideRef, SurfaceError


class SnakeError(ValueError):
    pass


# The eight placements of the quadrilateral: where each conceptual side
# lands, and where the diagonal corners c1, c3 land.  P* preserve the
# surface orientation, M* reverse it.
_DRAWINGS = {
    "P0": (+1, {"s12": "S", "s23": "E", "s34": "N", "s41": "W"}, ("SW", "NE")),
    "P1": (+1, {"s12": "E", "s23": "N", "s34": "W", "s41": "S"}, ("SE", "NW")),
    "P2": (+1, {"s12": "N", "s23": "W", "s34": "S", "s41": "E"}, ("NE", "SW")),
    "P3": (+1, {"s12": "W", "s23": "S", "s34": "E", "s41": "N"}, ("NW", "SE")),
    "M0": (-1, {"s12": "W", "s23": "N", "s34": "E", "s41": "S"}, ("SW", "NE")),
    "M1": (-1, {"s12": "S", "s23": "W", "s34": "N", "s41": "E"}, ("SE", "NW")),
    "M2": (-1, {"s12": "E", "s23": "S", "s34": "W", "s41": "N"}, ("NE", "SW")),
    "M3": (-1, {"s12": "N", "s23": "E", "s34": "S", "s41": "W"}, ("NW", "SE")),
}

_PREF = ("P2", "P3", "P0", "P1", "M1", "M0", "M2", "M3")

_CORNER_OFFSETS = {"SW": (0, 0), "SE": (1, 0), "NE": (1, 1), "NW": (0, 1)}
_EDGE_CORNERS = {"S": ("SW", "SE"), "E": ("SE", "NE"), "N": ("NW", "NE"), "W": ("SW", "NW")}


@dataclass(frozen=True)
class Tile:
    position: int  # 1-based index along the snake
    grid: tuple  # drawing coordinates of the SW corner
    diagonal: int  # crossed arc index
    labels: tuple  # (("S", SideRef), ("E", ...), ("N", ...), ("W", ...))
    sign: int  # +1 orientation-preserving drawing, -1 reversed

    @property
    def edge_labels(self):
        return dict(self.labels)


@dataclass(frozen=True)
class PerfectMatching:
    edges: frozenset  # edge indices into the owning graph


@dataclass(frozen=True)
class MatchingWeight:
    x_exps: tuple
    y_exps: tuple


class _Edge:
    __slots__ = ("index", "label", "segments", "tiles", "vertices")

    def __init__(self, index, label):
        self.index = index
        self.label = label
        self.segments = []  # geometric instances ((x1,y1),(x2,y2))
        self.tiles = []  # (tile index, direction)
        self.vertices = None  # canonical endpoints, set later

    def __repr__(self):
        return f"_Edge({self.index}, {self.label}, tiles={self.tiles})"


def _slot_of(tri, a):
    for i, s in enumerate(tri):
        if s.is_arc and s.index == a:
            return i
    raise SnakeError(f"arc {a} not a side of triangle {tri}")


def _turn(tri, entry, exit_):
    """Turn type of a triangle crossed from arc `entry` to arc `exit_`:
    "R" when the ccw cyclic order is (entry, exit, third), "L" when it is
    (entry, third, exit).  Returns (type, third side)."""
    i = _slot_of(tri, entry)
    nxt, prv = tri[(i + 1) % 3], tri[(i + 2) % 3]
    if nxt.is_arc and nxt.index == exit_:
        return "R", prv
    if prv.is_arc and prv.index == exit_:
        return "L", nxt
    raise SnakeError(f"triangle {tri} does not link arcs {entry} -> {exit_}")


def _end_sides(tri, a):
    """The two free sides of a terminal triangle, in ccw order after arc a."""
    i = _slot_of(tri, a)
    return tri[(i + 1) % 3], tri[(i + 2) % 3]


class _TileSpec:
    """Side content of one tile before a drawing is chosen."""

    __slots__ = ("diag", "slots", "sin_slot", "sout_slot")

    def __init__(self, diag, slots, sin_slot, sout_slot):
        self.diag = diag
        self.slots = slots  # {"s12": SideRef, ...}
        self.sin_slot = sin_slot  # slot holding the incoming glue edge, or None
        self.sout_slot = sout_slot  # slot holding the outgoing glue edge, or None


def _tile_specs(T, crossings, walk, loop):
    d = len(crossings)
    specs = []
    for j in range(d):
        tri_b = T.triangles[walk[j]]
        tri_f = T.triangles[walk[j + 1]]
        slots = {}
        if not loop and j == 0:
            slots["s12"], slots["s23"] = _end_sides(tri_b, crossings[0])
            sin_slot = None
        else:
            prev = crossings[(j - 1) % d]
            t, sigma = _turn(tri_b, prev, crossings[j])
            if t == "R":
                slots["s12"], slots["s23"] = sigma, SideRef("A", prev)
                sin_slot = "s12"
            else:
                slots["s12"], slots["s23"] = SideRef("A", prev), sigma
                sin_slot = "s23"
        if not loop and j == d - 1:
            slots["s34"], slots["s41"] = _end_sides(tri_f, crossings[j])
            sout_slot = None
        else:
            nxt = crossings[(j + 1) % d]
            t, sigma = _turn(tri_f, crossings[j], nxt)
            if t == "R":
                slots["s34"], slots["s41"] = SideRef("A", nxt), sigma
                sout_slot = "s41"
            else:
                slots["s34"], slots["s41"] = sigma, SideRef("A", nxt)
                sout_slot = "s34"
        specs.append(_TileSpec(crossings[j], slots, sin_slot, sout_slot))
    return specs


def _choose_drawing(spec, in_dir):
    """First legal placement in preference order.  `in_dir` is the direction
    the previous tile was left in ("N" means this tile sits north of it), or
    None when unconstrained."""
    for name in _PREF:
        _, pos, _ = _DRAWINGS[name]
        if spec.sin_slot is not None and in_dir is not None:
            if pos[spec.sin_slot] != ("S" if in_dir == "N" else "W"):
                continue
        if spec.sout_slot is not None and pos[spec.sout_slot] not in ("N", "E"):
            continue
        return name
    raise SnakeError("no legal tile drawing (inconsistent glue constraints)")


def _choose_band_start(spec, want_in_dir):
    for name in _PREF:
        _, pos, _ = _DRAWINGS[name]
        if pos[spec.sin_slot] != ("S" if want_in_dir == "N" else "W"):
            continue
        if pos[spec.sout_slot] not in ("N", "E"):
            continue
        return name
    raise SnakeError("no legal band start drawing")


def _lay_out(specs, loop):
    """Choose drawings and grid positions for all tiles; returns
    (drawings, grids, glue_dirs) where glue_dirs[j] joins tile j to j+1
    (cyclically for bands, whose last entry is the wrap)."""
    d = len(specs)

    def walk_from(first_drawing):
        drawings = [first_drawing]
        grids = [(0, 0)]
        dirs = []
        for j in range(1, d):
            _, pos, _ = _DRAWINGS[drawings[-1]]
            out = pos[specs[j - 1].sout_slot]
            x, y = grids[-1]
            grids.append((x + 1, y) if out == "E" else (x, y + 1))
            dirs.append(out)
            drawings.append(_choose_drawing(specs[j], in_dir=out))
        if specs[-1].sout_slot is not None:
            _, pos, _ = _DRAWINGS[drawings[-1]]
            dirs.append(pos[specs[-1].sout_slot])
        return drawings, grids, dirs

    if not loop:
        first = _choose_drawing(specs[0], in_dir=None)
        return walk_from(first)

    # The first tile's incoming side dictates the wrap direction the last
    # tile must produce; flipping the choice mirrors the whole layout.
    for want in ("E", "N"):
        try:
            first = _choose_band_start(specs[0], want_in_dir=want)
        except SnakeError:
            continue
        drawings, grids, dirs = walk_from(first)
        if dirs[-1] == want:
            return drawings, grids, dirs
    raise SnakeError("band drawing does not close up (odd turn parity)")


class MatchingGraph:
    """The labeled graph underlying a snake or band graph, with the tile
    structure needed for flip enumeration."""

    def __init__(self, n_arcs, crossings, tiles, wrap=None):
        self.n_arcs = n_arcs
        self.crossings = tuple(crossings)
        self.tiles = tiles  # list of Tile
        self.wrap = wrap  # None or (first_dir, last_dir)
        self._build()

    # -- construction ------------------------------------------------------

    def _corner(self, tile, name):
        ox, oy = _CORNER_OFFSETS[name]
        return (tile.grid[0] + ox, tile.grid[1] + oy)

    def _build(self):
        # vertex union-find (identifications come only from the band wrap)
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        d = len(self.tiles)
        seg_edge = {}
        edges = []

        def add_segment(tile_idx, direction):
            tile = self.tiles[tile_idx]
            c1, c2 = _EDGE_CORNERS[direction]
            p1, p2 = self._corner(tile, c1), self._corner(tile, c2)
            seg = (min(p1, p2), max(p1, p2))
            label = tile.edge_labels[direction]
            if seg in seg_edge:
                e = seg_edge[seg]
                if e.label != label:
                    raise SnakeError(
                        f"glue label mismatch at {seg}: {e.label} vs {label}"
                    )
            else:
                e = _Edge(len(edges), label)
                e.segments.append(seg)
                edges.append(e)
                seg_edge[seg] = e
            e.tiles.append((tile_idx, direction))
            return e

        tile_edges = []
        for jj in range(d):
            tile_edges.append({dr: add_segment(jj, dr) for dr in "SENW"})

        if self.wrap is not None:
            first_dir, last_dir = self.wrap
            e_first = tile_edges[0][first_dir]
            e_last = tile_edges[d - 1][last_dir]
            if e_first.label != e_last.label:
                raise SnakeError(
                    f"band wrap labels differ: {e_first.label} vs {e_last.label}"
                )
            if e_first is not e_last:
                # match the corners touching the tiles' diagonals
                def split(tile_idx, direction):
                    tile = self.tiles[tile_idx]
                    name = next(
                        n for n in _EDGE_CORNERS[direction] if n in tile._diag_corners
                    )
                    other = next(
                        n for n in _EDGE_CORNERS[direction] if n != name
                    )
                    return self._corner(tile, name), self._corner(tile, other)

                dg1, ot1 = split(0, first_dir)
                dg2, ot2 = split(d - 1, last_dir)
                union(dg1, dg2)
                union(ot1, ot2)
                e_last.segments.extend(e_first.segments)
                e_last.tiles.extend(e_first.tiles)
                # drop e_first from the edge list
                for seg in e_first.segments:
                    seg_edge[seg] = e_last
                edges.pop(e_first.index)
                for i, e in enumerate(edges):
                    e.index = i
                tile_edges[0][first_dir] = e_last

        for e in edges:
            vs = set()
            for p1, p2 in e.segments:
                vs.add(find(p1))
                vs.add(find(p2))
            if len(vs) != 2:
                raise SnakeError("degenerate edge after band identification")
            e.vertices = frozenset(vs)

        self.edges = edges
        self.tile_edges = [
            {dr: e.index for dr, e in te.items()} for te in tile_edges
        ]
        self.vertices = sorted({v for e in edges for v in e.vertices})
        if len(self.vertices) % 2:
            raise SnakeError("odd vertex count; no perfect matchings exist")

        # flip masks and flip orientation per tile
        self.hor_mask = []
        self.ver_mask = []
        self.up_from_hor = []
        for jj in range(d):
            te = self.tile_edges[jj]
            if len({te["S"], te["N"], te["E"], te["W"]}) != 4:
                raise SnakeError("tile with identified sides is unsupported")
            self.hor_mask.append((1 << te["S"]) | (1 << te["N"]))
            self.ver_mask.append((1 << te["E"]) | (1 << te["W"]))
            self.up_from_hor.append(not self.tiles[jj]._hor_is_a)

        self.edge_weight = [
            e.label.index if e.label.is_arc else 0 for e in edges
        ]
        self._vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._edge_vmask = [
            (1 << self._vertex_index[a]) | (1 << self._vertex_index[b])
            for e in edges
            for a, b in [tuple(e.vertices)]
        ]

    # -- basic matching utilities -------------------------------------------

    def is_perfect(self, mask):
        cover = 0
        m = mask
        while m:
            b = m & -m
            i = b.bit_length() - 1
            vm = self._edge_vmask[i]
            if cover & vm:
                return False
            cover |= vm
            m ^= b
        return cover == (1 << len(self.vertices)) - 1

    def boundary_edges(self):
        return [e.index for e in self.edges if len(e.tiles) == 1]

    def flips(self, mask):
        """(tile index, flipped mask, up?) for every flippable tile.

        A flip raises the height exactly when the matched pair consists of
        the tile sides next to the incoming and outgoing glue edges (the
        pair {c2c3, c4c1} of the conceptual quadrilateral); this is
        drawing-independent and is pinned by the coefficient identities of
        the verification suite.
        """
        out = []
        for jj in range(len(self.tiles)):
            h, v = self.hor_mask[jj], self.ver_mask[jj]
            if mask & h == h:
                out.append((jj, mask ^ (h | v), self.up_from_hor[jj]))
            elif mask & v == v:
                out.append((jj, mask ^ (h | v), not self.up_from_hor[jj]))
        return out

    def descend_to_minimal(self, mask):
        """Follow down-flips to the unique source of the flip order."""
        while True:
            down = [m for _, m, up in self.flips(mask) if not up]
            if not down:
                return mask
            mask = down[0]

    # -- enumeration ----------------------------------------------------------

    def enumerate_masks(self):
        """All flip-reachable matchings from the minimal one, with their
        per-arc height vectors (y-exponents), deterministically ordered.

        For small graphs every rediscovery is checked for height
        consistency, which certifies that the parity rule for flip
        directions is globally coherent on this graph.
        """
        m0 = self.minimal_mask()
        zero = (0,) * self.n_arcs
        check = len(self.tiles) <= 20
        seen = {m0: zero} if check else {m0}
        out = [(m0, zero)]
        frontier = [(m0, zero)]
        while frontier:
            nxt = []
            for mask, hv in frontier:
                for jj, child, up in self.flips(mask):
                    arc_i = self.tiles[jj].diagonal - 1
                    if child in seen:
                        if check:
                            ch = list(hv)
                            ch[arc_i] += 1 if up else -1
                            if tuple(ch) != seen[child]:
                                raise SnakeError("inconsistent flip heights")
                        continue
                    ch = list(hv)
                    ch[arc_i] += 1 if up else -1
                    if ch[arc_i] < 0:
                        raise SnakeError(
                            "negative height: minimal matching is not minimal"
                        )
                    ch = tuple(ch)
                    if check:
                        seen[child] = ch
                    else:
                        seen.add(child)
                    nxt.append((child, ch))
                    out.append((child, ch))
            frontier = nxt
        out.sort(key=lambda t: (t[1], t[0]))
        return out

    def minimal_mask(self):
        if not hasattr(self, "_minimal_mask"):
            self._minimal_mask = self.descend_to_minimal(self._seed_mask())
        return self._minimal_mask

    def _seed_mask(self):
        raise NotImplementedError

    # -- weights ----------------------------------------------------------------

    def mask_x_exps(self, mask):
        xe = [0] * self.n_arcs
        m = mask
        while m:
            b = m & -m
            i = b.bit_length() - 1
            w = self.edge_weight[i]
            if w:
                xe[w - 1] += 1
            m ^= b
        return tuple(xe)

    def matching_from_mask(self, mask):
        return PerfectMatching(
            frozenset(i for i in range(len(self.edges)) if mask >> i & 1)
        )

    def mask_from_matching(self, pm):
        mask = 0
        for i in pm.edges:
            mask |= 1 << i
        return mask


def _alternating_boundary_matchings(graph):
    """The two perfect matchings supported on the boundary cycle of an
    open (snake-shaped) graph."""
    boundary = graph.boundary_edges()
    incident = {}
    for i in boundary:
        for v in graph.edges[i].vertices:
            incident.setdefault(v, []).append(i)
    if any(len(es) != 2 for es in incident.values()) or len(incident) != len(
        graph.vertices
    ):
        raise SnakeError("boundary of the graph is not a single cycle")
    start = boundary[0]
    cycle = [start]
    v = min(graph.edges[start].vertices)
    while True:
        nxt = [e for e in incident[v] if e != cycle[-1]]
        e = nxt[0]
        if e == start:
            break
        cycle.append(e)
        v = next(u for u in graph.edges[e].vertices if u != v)
    if len(cycle) % 2:
        raise SnakeError("odd boundary cycle")
    a = sum(1 << e for e in cycle[0::2])
    b = sum(1 << e for e in cycle[1::2])
    return a, b


class SnakeGraph(MatchingGraph):
    """Ordered tiles of an arc's crossing sequence, glued north or east."""

    def __init__(self, T, crossing, walk, tiles, glue_dirs):
        self.triangulation = T
        self.walk = tuple(walk)
        self.glue_dirs = tuple(glue_dirs)
        super().__init__(T.n_arcs, crossing, tiles, wrap=None)

    def _seed_mask(self):
        a, b = _alternating_boundary_matchings(self)
        s_edge = self.tile_edges[0]["S"]
        return a if a >> s_edge & 1 else b

    def to_debug_dict(self):
        return {
            "kind": "snake",
            "crossings": list(self.crossings),
            "glue_dirs": list(self.glue_dirs),
            "tiles": [
                {
                    "position": t.position,
                    "grid": list(t.grid),
                    "diagonal": t.diagonal,
                    "sign": t.sign,
                    "labels": {dr: str(s) for dr, s in t.labels},
                }
                for t in self.tiles
            ],
        }

    def to_debug_json(self):
        return json.dumps(self.to_debug_dict(), indent=2)


class BandGraph(MatchingGraph):
    """Snake graph of one loop period with first and last tiles glued."""

    def __init__(self, T, crossing, walk, tiles, glue_dirs, wrap):
        self.triangulation = T
        self.walk = tuple(walk)
        self.glue_dirs = tuple(glue_dirs)
        super().__init__(T.n_arcs, crossing, tiles, wrap=wrap)

    @property
    def base_tiles(self):
        return self.tiles

    def _cut_graph(self):
        return MatchingGraphCut(self)

    def _seed_mask(self):
        cut = self._cut_graph()
        alt_a, alt_b = _alternating_boundary_matchings(cut)
        s_edge = cut.tile_edges[0]["S"]
        order = (alt_a, alt_b) if alt_a >> s_edge & 1 else (alt_b, alt_a)
        wrap_idx = self.tile_edges[0][self.wrap[0]]
        for cut_mask in order:
            image = 0
            for i in range(len(cut.edges)):
                if cut_mask >> i & 1:
                    image |= 1 << cut.band_edge[i]
            for candidate in (image, image & ~(1 << wrap_idx)):
                if self.is_perfect(candidate):
                    return candidate
        raise SnakeError("could not transport a minimal matching to the band")

    def to_debug_dict(self):
        first_dir, last_dir = self.wrap
        return {
            "kind": "band",
            "crossings": list(self.crossings),
            "glue_dirs": list(self.glue_dirs),
            "wrap": {
                "first_tile_edge": first_dir,
                "last_tile_edge": last_dir,
                "label": str(self.edges[self.tile_edges[0][first_dir]].label),
            },
            "tiles": [
                {
                    "position": t.position,
                    "grid": list(t.grid),
                    "diagonal": t.diagonal,
                    "sign": t.sign,
                    "labels": {dr: str(s) for dr, s in t.labels},
                }
                for t in self.tiles
            ],
        }

    def to_debug_json(self):
        return json.dumps(self.to_debug_dict(), indent=2)


class MatchingGraphCut(MatchingGraph):
    """The band graph with its wrap identification cut open (used only to
    seed the flip closure)."""

    def __init__(self, band):
        self.band = band
        super().__init__(band.n_arcs, band.crossings, band.tiles, wrap=None)
        # map cut edges to band edges via shared geometric segments
        seg_to_band = {}
        for e in band.edges:
            for seg in e.segments:
                seg_to_band[seg] = e.index
        self.band_edge = [seg_to_band[e.segments[0]] for e in self.edges]

    def _seed_mask(self):  # pragma: no cover - not used
        raise SnakeError("cut graphs are internal")


def _make_tiles(specs, drawings, grids):
    tiles = []
    for j, (spec, name, grid) in enumerate(zip(specs, drawings, grids)):
        sign, pos, diag_corners = _DRAWINGS[name]
        slot_at = {p: s for s, p in pos.items()}
        labels = tuple((dr, spec.slots[slot_at[dr]]) for dr in "SENW")
        tile = Tile(
            position=j + 1, grid=grid, diagonal=spec.diag, labels=labels, sign=sign
        )
        object.__setattr__(tile, "_diag_corners", diag_corners)
        # does the horizontal edge pair carry the conceptual sides {s12, s34}?
        object.__setattr__(tile, "_hor_is_a", {pos["s12"], pos["s34"]} == {"S", "N"})
        tiles.append(tile)
    return tiles


def build_snake(T, crossing):
    """Snake graph of an arc: one tile per crossing."""
    seq = tuple(crossing.sequence)
    walk = T.triangle_walk(seq, crossing.start_triangle)
    specs = _tile_specs(T, seq, walk, loop=False)
    drawings, grids, dirs = _lay_out(specs, loop=False)
    tiles = _make_tiles(specs, drawings, grids)
    return SnakeGraph(T, seq, walk, tiles, dirs)


def build_band(T, loop, start_triangle=None):
    """Band graph of an essential loop: one period of tiles, glued up."""
    seq = tuple(loop.cyclic_sequence)
    if len(seq) < 2:
        raise SnakeError("band graphs need at least two tiles")
    starts = (
        [start_triangle]
        if start_triangle is not None
        else [t for t in range(len(T.triangles)) if T._has_arc(t, seq[0])]
    )
    walk = None
    for t0 in starts:
        try:
            walk = T.triangle_walk(seq, t0, loop=True)
            break
        except SurfaceError:
            continue
    if walk is None:
        raise SnakeError(f"loop {seq} does not validate against the triangulation")
    specs = _tile_specs(T, seq, walk, loop=True)
    drawings, grids, dirs = _lay_out(specs, loop=True)
    tiles = _make_tiles(specs, drawings, grids)
    _, pos0, _ = _DRAWINGS[drawings[0]]
    wrap = (pos0[specs[0].sin_slot], dirs[-1])
    return BandGraph(T, seq, walk, tiles, dirs[:-1], wrap)


def trim_to_band(S):
    """Delete the first and last tiles of a snake graph with equal first and
    last diagonals, and glue the freed edges into a band graph."""
    seq = S.crossings
    if len(seq) < 3:
        raise SnakeError("trimming needs at least three tiles")
    if seq[0] != seq[-1]:
        raise SnakeError("first and last diagonals differ; trimmed ends cannot glue")
    from .surface import LoopCrossing

    inner = seq[1:-1]
    lc = LoopCrossing(inner)
    # canonical rotation may shift the sequence; shift the start triangle too
    r = next(
        r for r in range(len(inner)) if inner[r:] + inner[:r] == lc.cyclic_sequence
    )
    return build_band(S.triangulation, lc, start_triangle=S.walk[1 + r])


def minimal_matching(G):
    """The unique flip-source matching (y-weight 1)."""
    return G.matching_from_mask(G.minimal_mask())


def enumerate_matchings(G):
    """All perfect matchings of a snake graph, or all good matchings of a
    band graph, as (PerfectMatching, MatchingWeight) pairs."""
    out = []
    for mask, hv in G.enumerate_masks():
        out.append(
            (G.matching_from_mask(mask), MatchingWeight(G.mask_x_exps(mask), hv))
        )
    return out


def all_matchings_bruteforce(G):
    """Independent oracle: every perfect matching, by exhaustive recursion
    over vertices (no flip structure involved)."""
    n_v = len(G.vertices)
    incident = [[] for _ in range(n_v)]
    vidx = {v: i for i, v in enumerate(G.vertices)}
    for e in G.edges:
        a, b = tuple(e.vertices)
        incident[vidx[a]].append((e.index, vidx[b]))
        incident[vidx[b]].append((e.index, vidx[a]))
    results = []

    def rec(covered, mask):
        if covered == (1 << n_v) - 1:
            results.append(mask)
            return
        v = next(i for i in range(n_v) if not covered >> i & 1)
        for ei, u in incident[v]:
            if not covered >> u & 1:
                rec(covered | (1 << v) | (1 << u), mask | (1 << ei))

    rec(0, 0)
    return sorted(results)


def expand(S, coeffs="principal"):
    """Matching expansion of a snake graph: the Laurent polynomial
    sum_P x(P) y(P) / (x_{i_1} ... x_{i_d})."""
    return _expansion(S, coeffs)


def expand_band(Bd, coeffs="principal"):
    """Matching expansion of a band graph over its good matchings."""
    return _expansion(Bd, coeffs)


def _expansion(G, coeffs):
    if coeffs not in ("principal", "trivial"):
        raise ValueError("coeffs must be 'principal' or 'trivial'")
    n = G.n_arcs
    ny = n if coeffs == "principal" else 0
    denom = [0] * n
    for a in G.crossings:
        denom[a - 1] += 1
    terms = {}
    for mask, hv in G.enumerate_masks():
        xe = G.mask_x_exps(mask)
        key = tuple(x - d for x, d in zip(xe, denom))
        key = key + (hv if coeffs == "principal" else ())
        terms[key] = terms.get(key, 0) + 1
    return LaurentPolynomial(n, ny, terms)


__all__ = [
    "Tile",
    "SnakeGraph",
    "BandGraph",
    "PerfectMatching",
    "MatchingWeight",
    "SnakeError",
    "build_snake",
    "build_band",
    "trim_to_band",
    "minimal_matching",
    "enumerate_matchings",
    "all_matchings_bruteforce",
    "expand",
    "expand_band",
]
