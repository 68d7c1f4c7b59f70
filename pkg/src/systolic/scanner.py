"""Enumeration of low-trace cycle classes and surface certification.

A cycle is a closed non-backtracking walk: at each vertex the walk leaves
through the cyclic successor (an L turn) or predecessor (an R turn) of the
slot it arrived on, so a walk is a sequence of darts and each step carries a
letter.  Cycle classes are identified up to rotation and reversal of the
dart sequence; two vertex-disjoint cycles carrying the same word therefore
count separately, which is what planted-multiplicity accounting needs.

The search over walks prunes on two exact facts: appending a letter never
lowers the trace, and a word that is not a pure letter power has trace at
least its length plus one.  Pure letter powers (the faces and their
reversals) are peripheral and excluded from results; words that are proper
powers are excluded as well, since their geodesics are iterates of shorter
ones.  Free homotopy between distinct graph cycles is not quotiented, so
multiplicities are upper bounds for geodesic multiplicities.

Scans read a frozen graph; the optional thread pool partitions starting
darts and merges per-class results whose values are canonical, so output
never depends on the thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import ribbon, words
from .ribbon import CubicRibbonGraph

__all__ = [
    "CycleClass",
    "walk_word",
    "canonical_walk",
    "low_trace_cycles",
    "scan_partial",
    "SystoleResult",
    "systole",
    "bottom_spectrum",
    "CertificationResult",
    "certify",
    "SurfaceReport",
    "report",
]


@dataclass(frozen=True)
class CycleClass:
    """All cycle classes carrying one word class, with a concrete witness."""

    word: str  # canonical representative of the word class
    trace: int
    length: float  # hyperbolic length 2*arccosh(trace/2)
    multiplicity: int  # number of distinct cycle classes carrying the word
    witness: tuple[int, ...]  # canonical dart sequence of one of them

    def sort_key(self):
        return (self.trace, self.word, self.witness)


def walk_word(g: CubicRibbonGraph, darts: tuple[int, ...]) -> str:
    """Word read along a closed dart sequence (letter i is the turn into
    dart i+1, wrapping at the end)."""
    if not darts:
        raise ValueError("empty walk")
    pair = g.pair_table()
    letters = []
    for i, d in enumerate(darts):
        t = pair[d]
        if t < 0:
            raise ValueError(f"dart {d} has no edge")
        letters.append(ribbon.turn_letter(t, darts[(i + 1) % len(darts)]))
    return "".join(letters)


def canonical_walk(darts: tuple[int, ...], g: CubicRibbonGraph) -> tuple[int, ...]:
    """Least rotation of the dart sequence or of its reversal.

    Reversing a walk flips every dart to its partner and reverses the order.
    """
    pair = g.pair_table()
    n = len(darts)
    flipped = tuple(pair[d] for d in reversed(darts))
    best = None
    for seq in (darts, flipped):
        for i in range(n):
            cand = seq[i:] + seq[:i]
            if best is None or cand < best:
                best = cand
    return best


def _is_proper_power(word: str) -> bool:
    n = len(word)
    for p in range(1, n):
        if n % p == 0 and word == word[:p] * (n // p):
            return True
    return False


def _enumerate_raw(
    g: CubicRibbonGraph,
    max_trace: int,
    max_len: int,
    starts: list[int] | None = None,
    trace_prune: bool = True,
) -> dict[tuple[int, ...], str]:
    """All closed-walk classes with word trace <= max_trace and <= max_len
    darts, as {canonical dart sequence: canonical word}.

    Starting darts are tried in ascending order and a branch is cut once it
    would step onto a dart below the start, so each walk is generated from
    its least dart only.  Branches also end at free slots, which makes the
    same engine usable on partial graphs.
    """
    pair = g.pair_table()
    n_slots = len(pair)
    succ = [ribbon.succ(s) for s in range(n_slots)]
    pred = [ribbon.pred(s) for s in range(n_slots)]
    found: dict[tuple[int, ...], str] = {}
    if max_len < 1:
        return found

    dart_stack: list[int] = []
    letter_stack: list[str] = []

    def explore(d0: int, last: int, a: int, b: int, c: int, d: int) -> None:
        t = pair[last]
        for e, na, nb, nc, nd, letter in (
            (succ[t], a, a + b, c, c + d, "L"),
            (pred[t], a + b, b, c + d, d, "R"),
        ):
            tr = na + nd
            if e == d0:
                if tr <= max_trace:
                    canon = canonical_walk(tuple(dart_stack), g)
                    if canon not in found:
                        found[canon] = words.canonical("".join(letter_stack) + letter)
            if e < d0 or pair[e] < 0 or len(dart_stack) >= max_len:
                continue
            if trace_prune:
                if tr > max_trace:
                    continue
                # a non-letter-power at the bound can only close above it
                if tr == max_trace and nb > 0 and nc > 0:
                    continue
            dart_stack.append(e)
            letter_stack.append(letter)
            explore(d0, e, na, nb, nc, nd)
            dart_stack.pop()
            letter_stack.pop()

    for d0 in (range(n_slots) if starts is None else starts):
        if pair[d0] < 0:
            continue
        dart_stack.append(d0)
        explore(d0, d0, 1, 0, 0, 1)
        dart_stack.pop()
    return found


def _enumerate(
    g: CubicRibbonGraph,
    max_trace: int,
    max_len: int,
    threads: int = 1,
    trace_prune: bool = True,
) -> dict[tuple[int, ...], str]:
    if threads <= 1:
        return _enumerate_raw(g, max_trace, max_len, trace_prune=trace_prune)
    all_starts = list(range(g.num_slots))
    chunks = [all_starts[i::threads] for i in range(threads)]
    merged: dict[tuple[int, ...], str] = {}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(
            lambda c: _enumerate_raw(g, max_trace, max_len, starts=c, trace_prune=trace_prune),
            chunks,
        ):
            merged.update(part)
    return merged


def _group_classes(raw: dict[tuple[int, ...], str]) -> list[CycleClass]:
    by_word: dict[str, list[tuple[int, ...]]] = {}
    for canon_darts, word in raw.items():
        if words.is_letter_power(word) or _is_proper_power(word):
            continue
        by_word.setdefault(word, []).append(canon_darts)
    out = []
    for word, walks in by_word.items():
        t = words.trace_of(word)
        out.append(
            CycleClass(
                word=word,
                trace=t,
                length=words.geodesic_length(t),
                multiplicity=len(walks),
                witness=min(walks),
            )
        )
    out.sort(key=CycleClass.sort_key)
    return out


def low_trace_cycles(
    g: CubicRibbonGraph,
    bound: int,
    *,
    threads: int = 1,
    trace_prune: bool = True,
) -> list[CycleClass]:
    """All cycle classes with word trace <= bound, letter powers excluded.

    A non-letter-power word of trace t has at most t - 1 letters, so walks
    longer than bound - 1 darts never qualify and the search depth is capped
    there.  ``trace_prune`` only controls the mid-walk cutoff; disabling it
    changes running time, never results.
    """
    if not g.is_complete():
        raise ValueError("graph is not 3-regular: scan the completed graph")
    if bound < 3:
        raise ValueError(f"bound {bound} is below 3, the least essential trace")
    raw = _enumerate(g, bound, bound - 1, threads=threads, trace_prune=trace_prune)
    return _group_classes(raw)


def scan_partial(g: CubicRibbonGraph, k: int) -> list[CycleClass]:
    """Cycle classes of a (possibly partial) graph violating the floor k:
    either trace below k and not a letter power, or a letter-power cycle
    with fewer than k edges.  Free slots simply end branches."""
    if k < 3:
        raise ValueError(f"floor {k} is below 3")
    raw = _enumerate(g, k - 1, k - 1)
    violations = []
    for canon_darts, word in raw.items():
        if words.is_letter_power(word):
            if len(word) >= k:
                continue
        t = words.trace_of(word)
        violations.append(
            CycleClass(
                word=word,
                trace=t,
                length=words.geodesic_length(t),
                multiplicity=1,
                witness=canon_darts,
            )
        )
    violations.sort(key=CycleClass.sort_key)
    return violations


@dataclass(frozen=True)
class SystoleResult:
    trace: int
    length: float
    witness: CycleClass


def _essential_trace_cap(g: CubicRibbonGraph) -> int:
    """Trace of one concrete essential cycle, found by walking alternating
    turns until a (dart, next-turn) state repeats.  The repeat period is at
    least 2, so the extracted cycle mixes both letters and its trace is an
    upper bound for the systole trace; it certifies that iterative deepening
    terminates."""
    pair = g.pair_table()
    seen: dict[tuple[int, str], int] = {}
    trail: list[int] = []
    dart = 0
    letter = "L"
    while (dart, letter) not in seen:
        seen[(dart, letter)] = len(trail)
        trail.append(dart)
        t = pair[dart]
        dart = ribbon.succ(t) if letter == "L" else ribbon.pred(t)
        letter = "R" if letter == "L" else "L"
    start = seen[(dart, letter)]
    cycle = tuple(trail[start:])
    return words.trace_of(walk_word(g, cycle))


def systole(g: CubicRibbonGraph, *, threads: int = 1) -> SystoleResult:
    """Shortest essential cycle class, by iterative deepening on the trace.

    Letter-power classes are peripheral (cusp cycles and their reversals);
    everything else has trace at least 3, so essential means trace >= 3 and
    the deepening starts there.
    """
    if not g.is_complete():
        raise ValueError("graph is not 3-regular")
    if g.num_vertices == 0:
        # the one complete graph whose every class is peripheral (vacuously)
        raise ValueError("graph has no cycles, so no essential class exists")
    cap = _essential_trace_cap(g)
    for bound in range(3, cap + 1):
        found = low_trace_cycles(g, bound, threads=threads)
        if found:
            best = found[0]
            return SystoleResult(trace=best.trace, length=best.length, witness=best)
    raise RuntimeError("internal error: essential cycle bound exceeded without a find")


def bottom_spectrum(
    g: CubicRibbonGraph, bound: int, *, threads: int = 1
) -> list[tuple[int, int]]:
    """Multiset of (trace, multiplicity) over all classes with trace <= bound."""
    spectrum: dict[int, int] = {}
    for cls in low_trace_cycles(g, bound, threads=threads):
        spectrum[cls.trace] = spectrum.get(cls.trace, 0) + cls.multiplicity
    return sorted(spectrum.items())


@dataclass(frozen=True)
class CertificationResult:
    passed: bool
    floor: int
    short_cycles: tuple[CycleClass, ...]
    short_faces: tuple[tuple[int, ...], ...]

    def findings(self) -> list[str]:
        out = []
        for cls in self.short_cycles:
            out.append(
                f"cycle class of trace {cls.trace} below floor {self.floor}: "
                f"word {cls.word}, witness darts {list(cls.witness)}"
            )
        for face in self.short_faces:
            out.append(
                f"face with {len(face)} edges (needs >= {self.floor}): "
                f"darts {list(face)}"
            )
        return out


def certify(g: CubicRibbonGraph, k: int, *, threads: int = 1) -> CertificationResult:
    """Pass iff no essential cycle class has trace below k and every face
    has at least k edges.  For k = 3 the trace condition is vacuous, since
    essential classes start at trace 3."""
    if not g.is_complete():
        raise ValueError("graph is not 3-regular")
    if k < 3:
        raise ValueError(f"floor {k} is below 3")
    short_cycles = tuple(low_trace_cycles(g, k - 1, threads=threads)) if k >= 4 else ()
    short_faces = tuple(f for f in ribbon.faces(g) if len(f) < k)
    return CertificationResult(
        passed=not short_cycles and not short_faces,
        floor=k,
        short_cycles=short_cycles,
        short_faces=short_faces,
    )


@dataclass(frozen=True)
class SurfaceReport:
    vertices: int
    edges: int
    components: tuple[ribbon.ComponentSurface, ...]
    genus_sum: int
    girth: int
    systole_trace: int
    systole_length: float
    systole_word: str
    spectrum: tuple[tuple[int, int], ...]
    bh_bound: Fraction
    bh_ok: bool
    log_genus: float | None
    log_log_genus: float | None
    systole_gap: float | None

    def to_json_dict(self) -> dict:
        return {
            "components": [
                {"genus": c.genus, "cusps": list(c.cusp_lengths)} for c in self.components
            ],
            "girth": self.girth,
            "systole": {
                "trace": self.systole_trace,
                "length": self.systole_length,
                "word": self.systole_word,
            },
            "spectrum": [{"trace": t, "mult": m} for t, m in self.spectrum],
            "beineke_harary": {
                "bound": float(self.bh_bound),
                "genus": self.genus_sum,
                "ok": self.bh_ok,
            },
            "asymptotics": {
                "log_genus": self.log_genus,
                "log_log_genus": self.log_log_genus,
                "systole_gap": self.systole_gap,
            },
        }

    def to_text(self) -> str:
        lines = [
            f"vertices: {self.vertices}",
            f"edges: {self.edges}",
            f"components: {len(self.components)}",
        ]
        for i, c in enumerate(self.components):
            cusps = " ".join(str(x) for x in c.cusp_lengths)
            lines.append(f"  component {i}: genus {c.genus}, cusps {c.num_cusps} (lengths {cusps})")
        lines.append(f"genus sum: {self.genus_sum}")
        lines.append(f"girth: {self.girth}")
        lines.append(
            f"systole: trace {self.systole_trace}, length {self.systole_length:.12g}, "
            f"word {self.systole_word}"
        )
        spect = " ".join(f"{t}x{m}" for t, m in self.spectrum)
        lines.append(f"spectrum: {spect if spect else '(empty)'}")
        verdict = "ok" if self.bh_ok else "VIOLATED"
        lines.append(f"beineke-harary: bound {self.bh_bound} <= genus {self.genus_sum}: {verdict}")
        if self.log_genus is not None:
            lines.append(
                f"log(genus) = {self.log_genus:.12g}, "
                f"log log(genus) = {self.log_log_genus:.12g}, "
                f"gap log(g) - log log(g) - systole = {self.systole_gap:.12g}"
            )
        return "\n".join(lines) + "\n"


def report(
    g: CubicRibbonGraph,
    *,
    spectrum_max: int | None = None,
    threads: int = 1,
) -> SurfaceReport:
    """Full surface report: topology, girth, systole, bottom spectrum, and
    the exact genus bound check (summed per component on disconnected input).

    Lengths are those of the cusped surface; the compactified surface's
    lengths converge to them as the cusp neighbourhoods grow, but no
    quantitative correction is applied here.
    """
    if g.num_vertices == 0:
        raise ValueError("nothing to report on an empty graph")
    comps = ribbon.genus_closed(g)
    genus_sum = sum(c.genus for c in comps)
    g_girth = ribbon.girth(g)
    assert g_girth is not None  # non-empty complete cubic graphs contain cycles
    sys_res = systole(g, threads=threads)
    bound = max(spectrum_max or 0, sys_res.trace)
    spectrum = tuple(bottom_spectrum(g, bound, threads=threads))
    bh_bound = Fraction(0)
    for c in comps:
        p = len(c.vertices)
        q = 3 * p // 2
        h = ribbon.girth(g, vertices=list(c.vertices))
        bh_bound += ribbon.beineke_harary_lower_bound(p, q, h)
    log_genus = log_log_genus = systole_gap = None
    if genus_sum >= 2:
        log_genus = math.log(genus_sum)
        log_log_genus = math.log(log_genus)
        systole_gap = log_genus - log_log_genus - sys_res.length
    return SurfaceReport(
        vertices=g.num_vertices,
        edges=g.num_edges(),
        components=tuple(comps),
        genus_sum=genus_sum,
        girth=g_girth,
        systole_trace=sys_res.trace,
        systole_length=sys_res.length,
        systole_word=sys_res.witness.word,
        spectrum=spectrum,
        bh_bound=bh_bound,
        bh_ok=bh_bound <= genus_sum,
        log_genus=log_genus,
        log_log_genus=log_log_genus,
        systole_gap=systole_gap,
    )
