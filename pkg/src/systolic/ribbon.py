"""Cubic ribbon graphs: rotation systems, faces, genus, girth, serialization.

A graph on V vertices has 3V slots, three per vertex in the fixed cyclic
order slot0 -> slot1 -> slot2 -> slot0.  Edges pair slots: the pairing is a
fixed-point-free partial involution.  Loops (two slots of one vertex paired
together) and multiple edges are allowed.

Turn convention, fixed module-wide: a walk arriving at a vertex through
slot s and leaving through the cyclic successor of s turns L; leaving
through the predecessor turns R.  The mirrored choice would map every cycle
word w to star(w), which preserves traces, so nothing downstream depends on
the chirality; reversing a closed walk realizes exactly that star duality.

Faces are the orbits of dart -> successor(pair(dart)), i.e. the closed
walks that always turn L; on the surface obtained by gluing one ideal
triangle per vertex they are the cusps.  Queries here treat the graph as
immutable and are safe under concurrent reads; mutation happens only while
a construction is being assembled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "slot",
    "vertex_of",
    "succ",
    "pred",
    "turn_letter",
    "CubicRibbonGraph",
    "faces",
    "ComponentSurface",
    "genus_closed",
    "girth",
    "beineke_harary_lower_bound",
    "CrgParseError",
    "serialize",
    "deserialize",
]


def slot(v: int, i: int) -> int:
    """Flat id of slot i (0..2) at vertex v."""
    if not 0 <= i < 3:
        raise ValueError(f"slot index {i} outside 0..2")
    if v < 0:
        raise ValueError(f"negative vertex {v}")
    return 3 * v + i


def vertex_of(s: int) -> int:
    return s // 3


def succ(s: int) -> int:
    """Cyclic successor of a slot within its vertex."""
    return s - s % 3 + (s % 3 + 1) % 3


def pred(s: int) -> int:
    """Cyclic predecessor of a slot within its vertex."""
    return s - s % 3 + (s % 3 + 2) % 3


def turn_letter(arrival: int, exit_slot: int) -> str:
    """Letter of the turn that enters a vertex at ``arrival`` and leaves at
    ``exit_slot``; exiting by the same slot (backtracking) is not a turn."""
    if vertex_of(arrival) != vertex_of(exit_slot):
        raise ValueError(f"slots {arrival} and {exit_slot} are not at the same vertex")
    if exit_slot == succ(arrival):
        return "L"
    if exit_slot == pred(arrival):
        return "R"
    raise ValueError(f"exit {exit_slot} backtracks the arrival {arrival}")


class CubicRibbonGraph:
    """Vertices with three cyclically ordered slots and a partial slot pairing.

    Edges added with ``seed=True`` are protected: they can never be removed,
    which is what lets a completion distinguish its original circuits from
    the edges it added later.
    """

    __slots__ = ("_pair", "_seed")

    def __init__(self, num_vertices: int):
        if num_vertices < 0:
            raise ValueError(f"negative vertex count {num_vertices}")
        self._pair = [-1] * (3 * num_vertices)
        self._seed = [False] * (3 * num_vertices)

    # -- basic queries ----------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self._pair) // 3

    @property
    def num_slots(self) -> int:
        return len(self._pair)

    def _check_slot(self, s: int) -> None:
        if not 0 <= s < len(self._pair):
            raise ValueError(f"slot {s} outside 0..{len(self._pair) - 1}")

    def pair(self, s: int) -> int | None:
        """Partner slot, or None when the slot is free."""
        self._check_slot(s)
        p = self._pair[s]
        return None if p < 0 else p

    def pair_table(self) -> list[int]:
        """Raw pairing array (-1 marks a free slot); callers must not mutate."""
        return self._pair

    def is_free(self, s: int) -> bool:
        return self.pair(s) is None

    def is_seed_slot(self, s: int) -> bool:
        self._check_slot(s)
        return self._seed[s]

    def degree(self, v: int) -> int:
        base = slot(v, 0)
        self._check_slot(base)
        return sum(1 for i in range(3) if self._pair[base + i] >= 0)

    def is_complete(self) -> bool:
        return all(p >= 0 for p in self._pair)

    def free_slots(self) -> list[int]:
        return [s for s, p in enumerate(self._pair) if p < 0]

    def free_slots_of(self, v: int) -> list[int]:
        base = slot(v, 0)
        self._check_slot(base)
        return [base + i for i in range(3) if self._pair[base + i] < 0]

    def degree2_vertices(self) -> list[int]:
        return [v for v in range(self.num_vertices) if self.degree(v) == 2]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (low slot, high slot), sorted."""
        return sorted((s, p) for s, p in enumerate(self._pair) if p > s)

    def seed_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.edges() if self._seed[e[0]]]

    def num_edges(self) -> int:
        return sum(1 for p in self._pair if p >= 0) // 2

    # -- mutation ----------------------------------------------------------

    def add_edge(self, s1: int, s2: int, *, seed: bool = False) -> None:
        self._check_slot(s1)
        self._check_slot(s2)
        if s1 == s2:
            raise ValueError(f"slot {s1} cannot pair with itself")
        if self._pair[s1] >= 0:
            raise ValueError(f"slot {s1} is already paired with {self._pair[s1]}")
        if self._pair[s2] >= 0:
            raise ValueError(f"slot {s2} is already paired with {self._pair[s2]}")
        self._pair[s1] = s2
        self._pair[s2] = s1
        self._seed[s1] = self._seed[s2] = seed

    def remove_edge(self, s1: int, s2: int) -> None:
        self._check_slot(s1)
        self._check_slot(s2)
        if self._pair[s1] != s2:
            raise ValueError(f"slots {s1} and {s2} are not paired")
        if self._seed[s1]:
            raise ValueError(f"edge {s1}-{s2} is a seed edge and cannot be removed")
        self._pair[s1] = self._pair[s2] = -1

    # -- structure ----------------------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, sorted by first vertex."""
        n = self.num_vertices
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, p in enumerate(self._pair):
            if p >= 0:
                a, b = find(s // 3), find(p // 3)
                if a != b:
                    parent[a] = b
        groups: dict[int, list[int]] = {}
        for v in range(n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def copy(self) -> "CubicRibbonGraph":
        g = CubicRibbonGraph(self.num_vertices)
        g._pair = list(self._pair)
        g._seed = list(self._seed)
        return g

    def relabeled(self, perm: list[int]) -> "CubicRibbonGraph":
        """New graph with vertex v renamed perm[v]; slot indices ride along."""
        n = self.num_vertices
        if sorted(perm) != list(range(n)):
            raise ValueError("perm is not a permutation of the vertices")
        g = CubicRibbonGraph(n)
        move = lambda s: 3 * perm[s // 3] + s % 3
        for s, p in enumerate(self._pair):
            if p >= 0:
                g._pair[move(s)] = move(p)
                g._seed[move(s)] = self._seed[s]
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubicRibbonGraph):
            return NotImplemented
        return self._pair == other._pair and self._seed == other._seed

    def __repr__(self) -> str:
        return f"CubicRibbonGraph(V={self.num_vertices}, E={self.num_edges()})"


def _require_complete(g: CubicRibbonGraph) -> None:
    if not g.is_complete():
        raise ValueError("graph is not 3-regular: free slots remain")


def faces(g: CubicRibbonGraph) -> list[tuple[int, ...]]:
    """Left-turn cycles as dart orbits (a dart is its origin slot).

    The face permutation is dart -> succ(pair(dart)); its orbits partition
    the 3V darts, so face lengths always sum to 3V.  Each orbit is returned
    starting at its least dart, orbits sorted by that dart.
    """
    _require_complete(g)
    pair = g.pair_table()
    n = len(pair)
    seen = [False] * n
    out: list[tuple[int, ...]] = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = succ(pair[d])
        out.append(tuple(orbit))
    return out


@dataclass(frozen=True)
class ComponentSurface:
    """Topology of the surface carried by one connected component."""

    vertices: tuple[int, ...]
    genus: int
    cusp_lengths: tuple[int, ...]

    @property
    def num_cusps(self) -> int:
        return len(self.cusp_lengths)


def genus_closed(g: CubicRibbonGraph) -> list[ComponentSurface]:
    """Per-component genus and cusp data of the glued surface.

    The triangulated surface of a component with V vertices has V triangles,
    3V/2 edges and one point per face of the ribbon structure, so its Euler
    characteristic is (#faces) - V/2 and the genus is (2 - chi) / 2.
    """
    _require_complete(g)
    comps = g.components()
    comp_index = {}
    for idx, vs in enumerate(comps):
        for v in vs:
            comp_index[v] = idx
    face_lengths: list[list[int]] = [[] for _ in comps]
    for face in faces(g):
        face_lengths[comp_index[vertex_of(face[0])]].append(len(face))
    out = []
    for vs, lengths in zip(comps, face_lengths):
        if len(vs) % 2:
            raise ValueError(f"component {vs[0]} has odd vertex count {len(vs)}")
        chi = len(lengths) - len(vs) // 2
        if (2 - chi) % 2:
            raise ValueError(f"component {vs[0]} has odd Euler defect (chi={chi})")
        out.append(
            ComponentSurface(
                vertices=tuple(vs),
                genus=(2 - chi) // 2,
                cusp_lengths=tuple(sorted(lengths)),
            )
        )
    return out


def girth(g: CubicRibbonGraph, vertices: list[int] | None = None) -> int | None:
    """Length of the shortest cycle of the underlying multigraph, or None.

    A loop gives 1 and a parallel pair gives 2; beyond that the graph is
    simple and a truncated breadth-first search from every vertex finds the
    shortest cycle.  ``vertices`` restricts the search to one component.
    """
    allowed = None if vertices is None else set(vertices)
    adj: dict[int, list[tuple[int, int]]] = {}
    pair_count: dict[tuple[int, int], int] = {}
    edge_id = 0
    for s, p in sorted((s, p) for s, p in enumerate(g.pair_table()) if p > s):
        u, v = s // 3, p // 3
        if allowed is not None and (u not in allowed or v not in allowed):
            continue
        if u == v:
            return 1
        pair_count[(min(u, v), max(u, v))] = pair_count.get((min(u, v), max(u, v)), 0) + 1
        adj.setdefault(u, []).append((v, edge_id))
        adj.setdefault(v, []).append((u, edge_id))
        edge_id += 1
    if any(c >= 2 for c in pair_count.values()):
        return 2
    best: int | None = None
    for src in adj:
        dist = {src: 0}
        via = {src: -1}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                if best is not None and 2 * dist[u] >= best:
                    continue
                for w, eid in adj[u]:
                    if eid == via[u]:
                        continue
                    if w in dist:
                        cand = dist[u] + dist[w] + 1
                        if best is None or cand < best:
                            best = cand
                    else:
                        dist[w] = dist[u] + 1
                        via[w] = eid
                        nxt.append(w)
            frontier = nxt
    return best


def beineke_harary_lower_bound(p: int, q: int, h: int) -> Fraction:
    """Exact genus lower bound 1 + (1/2)(1 - 2/h)q - p/2 for a connected
    graph with p vertices, q edges and girth h embedded in a surface."""
    if h < 1:
        raise ValueError(f"girth {h} must be at least 1")
    if p < 1 or q < 1:
        raise ValueError(f"need p >= 1 and q >= 1, got p={p}, q={q}")
    return 1 + Fraction(1, 2) * (1 - Fraction(2, h)) * q - Fraction(p, 2)


# -- text serialization ---------------------------------------------------


class CrgParseError(ValueError):
    """Malformed .crg text; carries the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def _slot_token(s: int) -> str:
    return f"{s // 3}.{s % 3}"


def serialize(g: CubicRibbonGraph) -> str:
    """Canonical .crg text: header, vertex count, one line per vertex with
    its three slot targets in cyclic order, then a SEED section when seed
    edges exist.  The output is byte-exact for equal graphs."""
    lines = ["CRG 1", str(g.num_vertices)]
    pair = g.pair_table()
    for v in range(g.num_vertices):
        tokens = []
        for i in range(3):
            p = pair[3 * v + i]
            tokens.append("-" if p < 0 else _slot_token(p))
        lines.append(f"{v}: {tokens[0]} {tokens[1]} {tokens[2]}")
    seeds = g.seed_edges()
    if seeds:
        lines.append("SEED")
        for a, b in seeds:
            lines.append(f"{_slot_token(a)}-{_slot_token(b)}")
    return "\n".join(lines) + "\n"


def _parse_slot(token: str, num_vertices: int, lineno: int) -> int:
    parts = token.split(".")
    if len(parts) != 2:
        raise CrgParseError(f"bad slot token {token!r} (expected v.s)", lineno)
    try:
        v, i = int(parts[0]), int(parts[1])
    except ValueError:
        raise CrgParseError(f"non-numeric slot token {token!r}", lineno) from None
    if not 0 <= i < 3:
        raise CrgParseError(f"slot index {i} outside 0..2 in {token!r}", lineno)
    if not 0 <= v < num_vertices:
        raise CrgParseError(f"vertex {v} outside 0..{num_vertices - 1} in {token!r}", lineno)
    return 3 * v + i


def deserialize(text: str) -> CubicRibbonGraph:
    """Parse .crg text, validating the involution and the seed section."""
    if not text.isascii():
        raise CrgParseError("file is not pure ASCII")
    if "\r" in text:
        raise CrgParseError("carriage returns found; .crg files use LF line endings")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != "CRG 1":
        raise CrgParseError("missing 'CRG 1' header", 1)
    if len(lines) < 2:
        raise CrgParseError("missing vertex count", 2)
    try:
        num_vertices = int(lines[1])
    except ValueError:
        raise CrgParseError(f"bad vertex count {lines[1]!r}", 2) from None
    if num_vertices < 0:
        raise CrgParseError(f"negative vertex count {num_vertices}", 2)
    if len(lines) < 2 + num_vertices:
        raise CrgParseError(f"expected {num_vertices} vertex lines, found {len(lines) - 2}", len(lines))

    claimed = [-1] * (3 * num_vertices)
    for v in range(num_vertices):
        lineno = 3 + v
        line = lines[2 + v]
        tokens = line.split()
        if len(tokens) != 4 or tokens[0] != f"{v}:":
            raise CrgParseError(f"expected '{v}: t0 t1 t2', got {line!r}", lineno)
        for i, token in enumerate(tokens[1:]):
            if token == "-":
                continue
            s = 3 * v + i
            t = _parse_slot(token, num_vertices, lineno)
            if t == s:
                raise CrgParseError(f"slot {_slot_token(s)} pairs with itself", lineno)
            claimed[s] = t

    for s, t in enumerate(claimed):
        if t < 0:
            continue
        if claimed[t] != s:
            raise CrgParseError(
                f"slot {_slot_token(s)} pairs {_slot_token(t)} but "
                f"{_slot_token(t)} does not pair back (slot paired twice or left free)"
            )
    if sum(1 for t in claimed if t >= 0) % 2:
        raise CrgParseError("odd number of paired slots")

    g = CubicRibbonGraph(num_vertices)
    for s, t in enumerate(claimed):
        if 0 <= t and s < t:
            g.add_edge(s, t)

    rest = lines[2 + num_vertices:]
    if rest:
        lineno = 3 + num_vertices
        if rest[0] != "SEED":
            raise CrgParseError(f"unexpected content {rest[0]!r} (expected SEED or end of file)", lineno)
        seen: set[tuple[int, int]] = set()
        for offset, line in enumerate(rest[1:]):
            lineno = 4 + num_vertices + offset
            halves = line.split("-")
            if len(halves) != 2:
                raise CrgParseError(f"bad seed edge {line!r} (expected u.s-v.t)", lineno)
            a = _parse_slot(halves[0], num_vertices, lineno)
            b = _parse_slot(halves[1], num_vertices, lineno)
            if claimed[a] != b:
                raise CrgParseError(f"seed edge {line!r} is not an edge of the graph", lineno)
            key = (min(a, b), max(a, b))
            if key in seen:
                raise CrgParseError(f"duplicate seed edge {line!r}", lineno)
            seen.add(key)
            g._seed[a] = g._seed[b] = True
    return g
