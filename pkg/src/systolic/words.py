"""Exact algebra of words over the turn alphabet {L, R}.

A word denotes the product of the generator matrices

    L = [[1, 1], [0, 1]]        R = [[1, 0], [1, 1]]

taken in reading order; the empty word is the identity.  Every such product
is a determinant-1 integer matrix with non-negative entries, and conversely
every such matrix factors uniquely over the two generators, which is what
``word_of_matrix`` exploits.

Two words are equivalent when one is a cyclic rotation of the other or of
its ``star`` (read backwards with L and R interchanged).  Rotation is a
trace-preserving conjugation and ``star`` is transposition, so the trace,
and hence the hyperbolic length 2*arccosh(trace/2), is well defined on
equivalence classes.

All trace decisions are made on exact integers; floating point enters only
in ``geodesic_length``, which is presentation-layer by design.  Everything
here is pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "GOLDEN_RATIO",
    "UniMat",
    "L_MAT",
    "R_MAT",
    "check_word",
    "matrix_of",
    "trace_of",
    "geodesic_length",
    "star",
    "rotations",
    "equivalence_class",
    "equivalent",
    "canonical",
    "word_of_matrix",
    "insert_letter",
    "insertion_trace",
    "is_letter_power",
    "lucas",
    "fibonacci",
    "phi_power_floor",
    "phi_trace_ceiling",
    "log_phi_ceil",
]

#: (1 + sqrt 5) / 2, the growth base of the maximal trace at a given length.
GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0

_STAR = str.maketrans("LR", "RL")


def check_word(word: str) -> None:
    """Reject anything that is not a string over the letters L and R."""
    if not isinstance(word, str):
        raise ValueError(f"word must be a string, got {type(word).__name__}")
    for i, ch in enumerate(word):
        if ch != "L" and ch != "R":
            raise ValueError(f"invalid letter {ch!r} at position {i}: words use only L and R")


@dataclass(frozen=True)
class UniMat:
    """Determinant-1 integer matrix with non-negative entries.

    Entries are exact Python integers of unbounded magnitude, so traces of
    very long words never overflow or wrap.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"matrix entry {name}={v!r} is not an integer")
            if v < 0:
                raise ValueError(f"matrix entry {name}={v} is negative")
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"matrix {self.as_tuple()} does not have determinant 1")

    @staticmethod
    def identity() -> "UniMat":
        return UniMat(1, 0, 0, 1)

    @staticmethod
    def parse(text: str) -> "UniMat":
        """Parse the external "a,b,c,d" row-major comma list."""
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"expected 4 comma-separated entries, got {len(parts)}")
        try:
            a, b, c, d = (int(p.strip()) for p in parts)
        except ValueError:
            raise ValueError(f"matrix entries must be integers: {text!r}") from None
        return UniMat(a, b, c, d)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "UniMat") -> "UniMat":
        return UniMat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c},{self.d}"


L_MAT = UniMat(1, 1, 0, 1)
R_MAT = UniMat(1, 0, 1, 1)


def matrix_of(word: str) -> UniMat:
    """Product of the generator matrices along ``word``; empty gives identity."""
    check_word(word)
    a, b, c, d = 1, 0, 0, 1
    for ch in word:
        if ch == "L":
            a, b, c, d = a, a + b, c, c + d
        else:
            a, b, c, d = a + b, b, c + d, d
    return UniMat(a, b, c, d)


def trace_of(word: str) -> int:
    """Trace of matrix_of(word), computed without building the matrix object."""
    check_word(word)
    a, b, c, d = 1, 0, 0, 1
    for ch in word:
        if ch == "L":
            a, b, c, d = a, a + b, c, c + d
        else:
            a, b, c, d = a + b, b, c + d, d
    return a + d


def geodesic_length(trace: int) -> float:
    """Hyperbolic length 2*arccosh(trace/2) of the geodesic with this trace.

    Traces come in as exact integers; the returned float is for reporting
    only and never feeds back into a comparison.
    """
    if trace < 2:
        raise ValueError(f"trace {trace} is below 2; no geodesic length is defined")
    if trace == 2:
        return 0.0
    if trace > 2**53:
        # 2*arccosh(t/2) = 2*ln(t) up to an error below double resolution here.
        return 2.0 * math.log(trace)
    return 2.0 * math.acosh(trace / 2.0)


def star(word: str) -> str:
    """Reverse the word and interchange L and R (matrix transposition)."""
    check_word(word)
    return word[::-1].translate(_STAR)


def rotations(word: str) -> list[str]:
    """All cyclic rotations; the empty word has itself as its only rotation."""
    check_word(word)
    if not word:
        return [""]
    return [word[i:] + word[:i] for i in range(len(word))]


def equivalence_class(word: str) -> set[str]:
    """Rotations of the word together with rotations of its star."""
    return set(rotations(word)) | set(rotations(star(word)))


def _is_rotation(w: str, v: str) -> bool:
    return len(w) == len(v) and (not w or v in w + w)


def equivalent(w: str, v: str) -> bool:
    """True iff v is a cyclic rotation of w or of star(w)."""
    check_word(w)
    check_word(v)
    return _is_rotation(w, v) or _is_rotation(star(w), v)


def canonical(word: str) -> str:
    """Lexicographically least member (L < R) of the word's equivalence class.

    Constant on equivalence classes, so it doubles as a class identifier.
    """
    return min(equivalence_class(word))


def is_letter_power(word: str) -> bool:
    """True iff the word is equivalent to a power of L (all letters equal).

    The class of L^m is exactly {L^m, R^m}; the empty word is L^0.
    """
    check_word(word)
    return len(set(word)) <= 1


def word_of_matrix(mat: UniMat) -> str:
    """Unique word whose matrix is ``mat``.

    Peels generators from the left: while the trace exceeds 2, exactly one
    of L^-1 * M and R^-1 * M stays non-negative, which picks the next
    letter; the trace-2 remainder is a pure power of L or of R.
    """
    if not isinstance(mat, UniMat):
        raise ValueError(f"expected a UniMat, got {type(mat).__name__}")
    a, b, c, d = mat.as_tuple()
    out: list[str] = []
    while a + d > 2:
        if a > c and b >= d:
            out.append("L")
            a, b = a - c, b - d
        else:
            # the only other consistent case: c >= a and d > b
            assert c >= a and d > b, (a, b, c, d)
            out.append("R")
            c, d = c - a, d - b
    if c == 0:
        out.append("L" * b)
    else:
        out.append("R" * c)
    return "".join(out)


def insert_letter(word: str, position: int, letter: str) -> str:
    """Insert one letter; the trace of the result is never below the input's."""
    check_word(word)
    check_word(letter)
    if len(letter) != 1:
        raise ValueError(f"expected a single letter, got {letter!r}")
    if not 0 <= position <= len(word):
        raise ValueError(f"position {position} outside [0, {len(word)}]")
    return word[:position] + letter + word[position:]


def insertion_trace(word: str, position: int, letter: str) -> tuple[int, int]:
    """Traces (before, after) for an insertion; handy for monotonicity checks."""
    return trace_of(word), trace_of(insert_letter(word, position, letter))


def lucas(n: int) -> int:
    """Lucas number: 2, 1, 3, 4, 7, 11, ..."""
    if n < 0:
        raise ValueError("negative index")
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci(n: int) -> int:
    if n < 0:
        raise ValueError("negative index")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def phi_power_floor(n: int) -> int:
    """Exact floor of GOLDEN_RATIO**n.

    phi^n = lucas(n) - (-1/phi)^n and the correction lies in (-1, 1), so the
    floor is lucas(n) - 1 for even n >= 2 and lucas(n) for odd n.
    """
    if n < 0:
        raise ValueError("negative exponent")
    if n == 0:
        return 1
    ln = lucas(n)
    return ln - 1 if n % 2 == 0 else ln


def phi_trace_ceiling(n: int) -> int:
    """Largest integer trace a word of n letters can have: floor(phi^n) + 1."""
    return phi_power_floor(n) + 1


def log_phi_ceil(m: int) -> int:
    """Smallest h >= 0 with GOLDEN_RATIO**h >= m, for an integer m >= 1.

    Computed with exact integer arithmetic through ``phi_power_floor``
    (phi^h is irrational for h >= 1, so floor comparison is equivalent).
    """
    if m < 1:
        raise ValueError(f"m={m} must be at least 1")
    if m == 1:
        return 0
    h = 1
    while phi_power_floor(h) < m:
        h += 1
    return h
