"""Seeding and greedy completion of trace-floor-certified cubic graphs.

The input is a disjoint union of oriented circuits, one per planted word
plus uniform padding circuits, each vertex carrying one free slot.  The
completion repeatedly adds an edge between two free slots while keeping the
invariant that every cycle either has trace at least k or is a left-turn
cycle with at least k edges:

* Case 1: if some ordered pair of degree-2 vertices (x, y) has no forbidden
  path from x to y, their free slots are joined.  A new cycle through the
  new edge is a path from x plus one closing turn, so a non-forbidden path
  (trace or length at least k - 1) closes to trace or length at least k.
* Case 2: otherwise every degree-2 vertex lies in every forbidden set, so
  the vertices outside F(x) and F(y) all have degree 3 and each owns exactly
  one non-seed edge.  Some partner w' across such an edge avoids the
  intersection of the two forbidden sets; removing ww' and joining x to w'
  and y to w adds a net edge without creating a short cycle.

A forbidden path starts at the free slot of its degree-2 source: its word
counts the turn at the source and at every interior vertex but not at the
endpoint, so closing an edge appends exactly one letter.  Paths are
forbidden when they have at most k - 2 edges and trace at most k - 2 or
exactly 2 (the pure letter-power runs; for k >= 4 the first condition
already covers them).

Everything is deterministic: vertices are scanned in ascending id, the
random seed only shuffles which ids the padding circuits receive, so equal
seeds reproduce equal graphs byte for byte.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from . import census, ribbon, scanner, words
from .ribbon import CubicRibbonGraph

__all__ = [
    "SeedSpecError",
    "HypothesisError",
    "Plant",
    "SeedSpec",
    "word_for_trace",
    "padding_word",
    "parity_word",
    "seed_size_bound",
    "forbidden_set_bound",
    "make_seed",
    "ForbiddenReach",
    "forbidden_reach",
    "complete",
    "BuildReport",
    "build",
]


class SeedSpecError(ValueError):
    """The requested seed is not realizable as specified."""


class HypothesisError(ValueError):
    """A seed graph handed to the completion violates its preconditions."""


def word_for_trace(t: int) -> str:
    """L^(t-2) R, the canonical circuit word with trace exactly t."""
    if t < 3:
        raise ValueError(f"trace {t} is below 3")
    return "L" * (t - 2) + "R"


def padding_word(k: int) -> str:
    """Bulk padding circuit: trace k on k - 1 vertices."""
    return word_for_trace(k)


def parity_word(k: int) -> str:
    """Parity-fixing circuit: L^(k-2) R R, trace 2k - 2 on k vertices."""
    return "L" * (k - 2) + "RR"


def seed_size_bound(k: int, sieve: census.DivisorSieve | None = None) -> int:
    """Least admissible vertex count, 2 N(k-2) + 4k - 4 (N(1) is empty)."""
    return 2 * census.N_of(max(k - 2, 2), sieve) + 4 * k - 4


def forbidden_set_bound(k: int, sieve: census.DivisorSieve | None = None) -> int:
    """Cap N(k-2) + 2k - 3 on the size of any forbidden set."""
    return census.N_of(max(k - 2, 2), sieve) + 2 * k - 3


@dataclass(frozen=True)
class Plant:
    word: str
    multiplicity: int


@dataclass(frozen=True)
class SeedSpec:
    """Everything needed to lay out a seed: floor k, planted circuits,
    target size (None means the smallest realizable), and determinism knobs."""

    k: int
    plants: tuple[Plant, ...] = ()
    size: int | None = None
    rng_seed: int = 0
    strict_seed_trace: bool = False

    def validate(self, sieve: census.DivisorSieve | None = None) -> None:
        if not isinstance(self.k, int) or self.k < 3:
            raise SeedSpecError(f"floor k={self.k!r} must be an integer >= 3")
        if not isinstance(self.rng_seed, int) or not 0 <= self.rng_seed < 2**64:
            raise SeedSpecError(f"rng_seed {self.rng_seed!r} must fit in 64 bits")
        planted_vertices = 0
        for plant in self.plants:
            words.check_word(plant.word)
            if not plant.word:
                raise SeedSpecError("planted words must be non-empty")
            if not isinstance(plant.multiplicity, int) or plant.multiplicity < 1:
                raise SeedSpecError(f"multiplicity {plant.multiplicity!r} must be a positive integer")
            self._check_plant_word(plant.word)
            planted_vertices += plant.multiplicity * len(plant.word)
        bound = seed_size_bound(self.k, sieve)
        if planted_vertices > bound:
            raise SeedSpecError(
                f"planted circuits need {planted_vertices} vertices, above the "
                f"admissible budget 2*N({self.k - 2}) + 4*{self.k} - 4 = {bound}"
            )
        if self.size is not None:
            if self.size % 2:
                raise SeedSpecError(f"size {self.size} must be even")
            if self.size < bound:
                raise SeedSpecError(f"size {self.size} is below the least admissible count {bound}")

    def _check_plant_word(self, word: str) -> None:
        t = words.trace_of(word)
        if t >= self.k:
            return
        if not self.strict_seed_trace and words.is_letter_power(word) and len(word) >= self.k:
            # a letter-power circuit of k or more edges is a legal cusp cycle
            return
        raise SeedSpecError(
            f"planted word {word!r} has trace {t}, below the floor {self.k}"
            + ("" if self.strict_seed_trace else f", and is not a letter power of length >= {self.k}")
        )

    def planted_vertices(self) -> int:
        return sum(p.multiplicity * len(p.word) for p in self.plants)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "plants": [{"word": p.word, "multiplicity": p.multiplicity} for p in self.plants],
            "size": "min" if self.size is None else self.size,
            "rng_seed": self.rng_seed,
            "strict_seed_trace": self.strict_seed_trace,
        }


def _resolve_layout(spec: SeedSpec, sieve: census.DivisorSieve | None = None) -> tuple[int, int, bool]:
    """Choose (total size, bulk padding circuits, parity circuit?).

    Padding uses circuits of k - 1 vertices plus at most one of k vertices,
    so the residue of size - planted modulo k - 1 decides realizability; the
    minimum search scans even sizes upward from the admissible bound.
    """
    k = spec.k
    planted = spec.planted_vertices()
    bound = seed_size_bound(k, sieve)

    def split(size: int) -> tuple[int, bool] | None:
        r = size - planted
        if r < 0:
            return None
        if r % (k - 1) == 0:
            return r // (k - 1), False
        if r >= k and (r - k) % (k - 1) == 0:
            return (r - k) // (k - 1), True
        return None

    if spec.size is not None:
        got = split(spec.size)
        if got is None:
            raise SeedSpecError(
                f"size {spec.size} is not reachable: plants occupy {planted} vertices and "
                f"padding adds circuits of {k - 1} vertices plus at most one of {k}"
            )
        return spec.size, got[0], got[1]

    size = max(bound, planted)
    if size % 2:
        size += 1
    while size <= bound + 4 * k + 4:
        got = split(size)
        if got is not None:
            return size, got[0], got[1]
        size += 2
    raise SeedSpecError("no realizable size found near the admissible bound")  # pragma: no cover


def _install_circuit(g: CubicRibbonGraph, ids: list[int], word: str) -> None:
    """Wire one oriented circuit over fresh vertices, letter i at ids[i].

    An L vertex is entered at slot 0 and left at slot 1 (the successor), an
    R vertex entered at slot 0 and left at slot 2; this is the least
    (arrival, departure) routing and leaves one free slot everywhere.
    """
    n = len(word)
    assert n == len(ids) and n >= 2
    routing = {"L": (0, 1), "R": (0, 2)}
    for i, letter in enumerate(word):
        _, depart = routing[letter]
        arrive_next, _ = routing[word[(i + 1) % n]]
        g.add_edge(
            ribbon.slot(ids[i], depart),
            ribbon.slot(ids[(i + 1) % n], arrive_next),
            seed=True,
        )


def make_seed(spec: SeedSpec, sieve: census.DivisorSieve | None = None) -> CubicRibbonGraph:
    """Disjoint oriented circuits realizing the spec: one circuit per planted
    copy (consecutive low ids, in order), padding circuits on the remaining
    ids, which are shuffled by the spec's rng seed."""
    spec.validate(sieve)
    size, n_padding, use_parity = _resolve_layout(spec, sieve)
    g = CubicRibbonGraph(size)

    cursor = 0
    for plant in spec.plants:
        for _ in range(plant.multiplicity):
            ids = list(range(cursor, cursor + len(plant.word)))
            _install_circuit(g, ids, plant.word)
            cursor += len(plant.word)

    padding_ids = list(range(cursor, size))
    random.Random(spec.rng_seed).shuffle(padding_ids)
    offset = 0
    for word in [padding_word(spec.k)] * n_padding + ([parity_word(spec.k)] if use_parity else []):
        _install_circuit(g, padding_ids[offset : offset + len(word)], word)
        offset += len(word)
    assert offset == len(padding_ids)
    return g


@dataclass(frozen=True)
class ForbiddenReach:
    """Endpoints of forbidden paths out of the free slot of one vertex."""

    source: int
    k: int
    members: frozenset[int]
    witnesses: dict[int, str]  # one witness word per member

    def __contains__(self, vertex: int) -> bool:
        return vertex in self.members

    def __len__(self) -> int:
        return len(self.members)


def forbidden_reach(g: CubicRibbonGraph, x: int, k: int) -> ForbiddenReach:
    """Depth-first search for every vertex reachable by a forbidden path.

    States carry the arrival slot and the exact word matrix.  The first
    letter is the turn out of x's free slot; a state is abandoned once its
    trace can no longer stay at 2 or within k - 2 (appending letters never
    lowers a trace), once it exceeds k - 2 edges, or when it meets a free
    slot.  The source itself is always a member, by the trivial path.
    """
    if g.degree(x) != 2:
        raise ValueError(f"vertex {x} has degree {g.degree(x)}, expected 2")
    if k < 3:
        raise ValueError(f"floor {k} is below 3")
    free = g.free_slots_of(x)[0]
    members: dict[int, str] = {x: ""}
    max_len = k - 2
    pair = g.pair_table()

    def admissible(trace: int) -> bool:
        return trace <= k - 2 or trace == 2

    # stack entries: (arrival slot, a, b, c, d, word)
    stack: list[tuple[int, int, int, int, int, str]] = []
    if max_len >= 1:
        for exit_slot, mat, letter in (
            (ribbon.succ(free), (1, 1, 0, 1), "L"),
            (ribbon.pred(free), (1, 0, 1, 1), "R"),
        ):
            target = pair[exit_slot]
            assert target >= 0  # both non-free slots of a degree-2 vertex are paired
            stack.append((target, *mat, letter))
    while stack:
        t, a, b, c, d, word = stack.pop()
        y = t // 3
        if y not in members:
            members[y] = word
        if len(word) == max_len:
            continue
        for e, na, nb, nc, nd, letter in (
            (ribbon.succ(t), a, a + b, c, c + d, "L"),
            (ribbon.pred(t), a + b, b, c + d, d, "R"),
        ):
            if pair[e] < 0:
                continue
            if not admissible(na + nd):
                continue
            stack.append((pair[e], na, nb, nc, nd, word + letter))
    return ForbiddenReach(source=x, k=k, members=frozenset(members), witnesses=members)


def _circuit_word(g: CubicRibbonGraph, start: int) -> str:
    """Word read around the circuit through a degree-2 vertex."""
    paired = [s for s in (ribbon.slot(start, i) for i in range(3)) if not g.is_free(s)]
    assert len(paired) == 2
    first = paired[0]
    letters = []
    dart = first
    pair = g.pair_table()
    while True:
        t = pair[dart]
        others = [s for s in (ribbon.succ(t), ribbon.pred(t)) if pair[s] >= 0]
        assert len(others) == 1, "circuit vertices must have degree 2"
        letters.append(ribbon.turn_letter(t, others[0]))
        dart = others[0]
        if dart == first:
            return "".join(letters)


def _validate_seed_graph(g: CubicRibbonGraph, k: int, strict: bool,
                         sieve: census.DivisorSieve | None = None) -> None:
    n = g.num_vertices
    if n % 2:
        raise HypothesisError(f"seed has an odd vertex count {n}")
    bound = seed_size_bound(k, sieve)
    if n < bound:
        raise HypothesisError(f"seed has {n} vertices, below the admissible bound {bound}")
    for v in range(n):
        if g.degree(v) != 2:
            raise HypothesisError(f"vertex {v} has degree {g.degree(v)}; a seed is 2-regular")
    if g.edges() != g.seed_edges():
        raise HypothesisError("seed contains edges not flagged as seed edges")
    seen: set[int] = set()
    for comp in g.components():
        v = comp[0]
        if v in seen:
            continue
        seen.update(comp)
        word = _circuit_word(g, v)
        t = words.trace_of(word)
        if t >= k:
            continue
        if not strict and words.is_letter_power(word) and len(word) >= k:
            continue
        raise HypothesisError(
            f"circuit through vertex {v} carries {word!r} with trace {t}, below the floor {k}"
        )


@dataclass
class _CompletionStats:
    iterations: int = 0
    case1: int = 0
    case2: int = 0
    max_forbidden_set: int = 0


def _state_dump(g: CubicRibbonGraph, note: str) -> str:
    return f"{note}\ndegree-2 vertices: {g.degree2_vertices()}\n{ribbon.serialize(g)}"


def _non_seed_edge(g: CubicRibbonGraph, v: int) -> tuple[int, int]:
    """The unique non-seed edge at a degree-3 vertex, as (slot at v, partner slot)."""
    out = [
        (s, g.pair(s))
        for s in (ribbon.slot(v, i) for i in range(3))
        if not g.is_free(s) and not g.is_seed_slot(s)
    ]
    assert len(out) == 1, _state_dump(g, f"vertex {v} has {len(out)} non-seed edges, expected 1")
    return out[0]


def _run_completion(
    g: CubicRibbonGraph,
    k: int,
    *,
    strict_seed_trace: bool = False,
    slow_checks: bool = False,
    sieve: census.DivisorSieve | None = None,
) -> tuple[CubicRibbonGraph, _CompletionStats]:
    _validate_seed_graph(g, k, strict_seed_trace, sieve)
    work = g.copy()
    stats = _CompletionStats()
    while True:
        deg2 = work.degree2_vertices()
        if not deg2:
            break
        assert len(deg2) % 2 == 0, _state_dump(work, "odd number of degree-2 vertices")
        edges_before = work.num_edges()
        reaches: dict[int, ForbiddenReach] = {}

        def reach(v: int) -> ForbiddenReach:
            if v not in reaches:
                reaches[v] = forbidden_reach(work, v, k)
                stats.max_forbidden_set = max(stats.max_forbidden_set, len(reaches[v]))
            return reaches[v]

        pair_found = None
        for x in deg2:
            fx = reach(x)
            for y in deg2:
                if y != x and y not in fx:
                    pair_found = (x, y)
                    break
            if pair_found:
                break

        if pair_found:
            x, y = pair_found
            work.add_edge(work.free_slots_of(x)[0], work.free_slots_of(y)[0])
            stats.case1 += 1
        else:
            # Case 2: every ordered degree-2 pair is mutually forbidden.
            x, y = deg2[0], deg2[1]
            fx, fy = reaches[x], reaches[y]
            union = fx.members | fy.members
            inter = fx.members & fy.members
            outside = [v for v in range(work.num_vertices) if v not in union]
            for v in outside:
                assert work.degree(v) == 3, _state_dump(
                    work, f"degree-2 vertex {v} escaped both forbidden sets"
                )
            partners = sorted({_non_seed_edge(work, v)[1] // 3 for v in outside})
            candidates = [v for v in partners if v not in inter]
            assert candidates, _state_dump(work, "no swap partner outside the intersection")
            w_prime = candidates[0]
            slot_wp, slot_w = _non_seed_edge(work, w_prime)
            w = slot_w // 3
            assert w in outside, _state_dump(work, f"swap partner {w_prime} not paired into the outside set")
            if w_prime not in fx:
                first, second = x, y
            else:
                assert w_prime not in fy
                first, second = y, x
            work.remove_edge(slot_wp, slot_w)
            work.add_edge(work.free_slots_of(first)[0], slot_wp)
            work.add_edge(work.free_slots_of(second)[0], slot_w)
            stats.case2 += 1

        stats.iterations += 1
        assert work.num_edges() == edges_before + 1, _state_dump(work, "iteration did not add one edge")
        if slow_checks:
            bad = scanner.scan_partial(work, k)
            assert not bad, _state_dump(
                work, f"floor violated after iteration {stats.iterations}: {bad[:3]}"
            )
    assert work.is_complete()
    return work, stats


def complete(
    g: CubicRibbonGraph,
    k: int,
    rng_seed: int = 0,
    *,
    strict_seed_trace: bool = False,
    slow_checks: bool = False,
) -> CubicRibbonGraph:
    """Complete a circuit seed to a 3-regular graph preserving the floor k.

    The input graph is left untouched.  ``rng_seed`` is accepted for
    interface stability but the completion itself is fully deterministic;
    randomness only enters when the seed graph is laid out.
    """
    del rng_seed
    done, _ = _run_completion(
        g, k, strict_seed_trace=strict_seed_trace, slow_checks=slow_checks
    )
    return done


@dataclass(frozen=True)
class BuildReport:
    spec: SeedSpec
    iterations: int
    case1: int
    case2: int
    max_forbidden_set: int
    vertices: int
    edges: int
    output_sha: str

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec.to_json_dict(),
            "iterations": self.iterations,
            "case1": self.case1,
            "case2": self.case2,
            "max_forbidden_set": self.max_forbidden_set,
            "vertices": self.vertices,
            "edges": self.edges,
            "output_sha": self.output_sha,
        }


def build(spec: SeedSpec, *, slow_checks: bool = False) -> tuple[CubicRibbonGraph, BuildReport]:
    """Lay out the seed for a spec and complete it; returns graph and report."""
    sieve = census.DivisorSieve(max(4, spec.k * spec.k))
    seed = make_seed(spec, sieve)
    done, stats = _run_completion(
        seed, spec.k, strict_seed_trace=spec.strict_seed_trace,
        slow_checks=slow_checks, sieve=sieve,
    )
    sha = hashlib.sha256(ribbon.serialize(done).encode("ascii")).hexdigest()
    report = BuildReport(
        spec=spec,
        iterations=stats.iterations,
        case1=stats.case1,
        case2=stats.case2,
        max_forbidden_set=stats.max_forbidden_set,
        vertices=done.num_vertices,
        edges=done.num_edges(),
        output_sha=sha,
    )
    return done, report
