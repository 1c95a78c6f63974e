"""Words in Free<a,b,c>, the two-square groupoid alphabet, and itineraries.

Letters are signed integers (1=a, 2=b, 3=c; negatives are inverses), words
are stored fully reduced.  Conjugacy of cyclically reduced words is tested
with the doubling trick.  Itineraries of alternating vertical/horizontal
segments between the two intersection squares translate to groupoid words
over q1..q4 and then, after contracting the tree edge q2 (so q1 -> a,
q2 -> 1, q3 -> c, q4 -> c^{-1} b), to reduced words in a, b, c.
"""

from __future__ import annotations

from dataclasses import dataclass

A_, B_, C_ = 1, 2, 3
_NAMES = {1: "a", 2: "b", 3: "c"}
_VALUES = {v: k for k, v in _NAMES.items()}


@dataclass(frozen=True)
class Word:
    """Reduced word in Free<a,b,c> as a tuple of signed letters."""

    letters: tuple[int, ...]

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) > 3:
                raise ValueError(f"invalid letter {x}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self):
        return format_word(self)


def _reduce(letters) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def reduce(word: Word) -> Word:
    """Free reduction (already maintained as an invariant of Word)."""
    return Word(word.letters)


def cyclic_reduce(word: Word) -> Word:
    """Strip inverse pairs from the two ends until the word is cyclically reduced."""
    letters = list(word.letters)
    while len(letters) >= 2 and letters[0] == -letters[-1]:
        letters = letters[1:-1]
    return Word(tuple(letters))


def rotations(word: Word) -> list[Word]:
    w = word.letters
    return [Word(w[i:] + w[:i]) for i in range(max(len(w), 1))]


def conjugate_eq(w1: Word, w2: Word) -> bool:
    """Conjugacy in the free group: cyclic reductions are rotations of each
    other, tested via the doubling trick (u is a rotation of v iff |u| = |v|
    and u occurs in v.v)."""
    u = cyclic_reduce(w1).letters
    v = cyclic_reduce(w2).letters
    if len(u) != len(v):
        return False
    if not u:
        return True
    doubled = v + v
    n = len(u)
    return any(doubled[i : i + n] == u for i in range(len(v)))


def parse_word(text: str) -> Word:
    """Parse `a^3 b^-2 c` style notation over {a,b,c} or {q1..q4}.

    Groupoid words are validated for composability (a loop based at the
    square A) and returned as their image in Free<a,b,c>.
    """
    tokens = text.replace("*", " ").split()
    tokens = [t for t in tokens if t != "1"]  # "1" denotes the identity
    if not tokens:
        return Word(())
    if any(t.lstrip().startswith("q") for t in tokens):
        return _parse_groupoid(tokens)
    letters: list[int] = []
    for tok in tokens:
        name, exp = _split_caret(tok)
        if name not in _VALUES:
            raise ValueError(f"unknown letter {name!r}")
        base = _VALUES[name]
        letters.extend([base if exp > 0 else -base] * abs(exp))
    return Word(tuple(letters))


def _split_caret(tok: str) -> tuple[str, int]:
    if "^" in tok:
        name, _, pow_s = tok.partition("^")
        try:
            exp = int(pow_s)
        except ValueError as e:
            raise ValueError(f"bad exponent in {tok!r}") from e
    else:
        name, exp = tok, 1
    if exp == 0:
        return name, 0
    return name, exp


# groupoid edges: q1, q3 go A -> B; q2, q4 go B -> A.
_EDGE_ENDS = {"q1": ("A", "B"), "q2": ("B", "A"), "q3": ("A", "B"), "q4": ("B", "A")}
# contracting the tree edge q2: q1 -> a, q2 -> 1, q3 -> c, q4 -> c^-1 b
_EDGE_IMAGE = {
    "q1": (A_,),
    "q2": (),
    "q3": (C_,),
    "q4": (-C_, B_),
}


def _parse_groupoid(tokens: list[str]) -> Word:
    at = "A"
    letters: list[int] = []
    for tok in tokens:
        name, exp = _split_caret(tok)
        if exp == 0:
            continue
        if name in _VALUES:  # a, b are loops at A; c = q3 q2 is a loop at A
            if at != "A":
                raise ValueError(f"loop letter {name!r} used away from the square A")
            base = _VALUES[name]
            letters.extend([base if exp > 0 else -base] * abs(exp))
            continue
        if name not in _EDGE_ENDS:
            raise ValueError(f"unknown letter {name!r}")
        src, dst = _EDGE_ENDS[name]
        image = _EDGE_IMAGE[name]
        for _ in range(abs(exp)):
            if exp > 0:
                if at != src:
                    raise ValueError(f"edge {name} not composable at {at}")
                letters.extend(image)
                at = dst
            else:
                if at != dst:
                    raise ValueError(f"edge {name}^-1 not composable at {at}")
                letters.extend(-x for x in reversed(image))
                at = src
    if at != "A":
        raise ValueError("groupoid word is not a loop at A")
    return Word(tuple(letters))


def format_word(word: Word) -> str:
    if not word.letters:
        return "1"
    parts = []
    i = 0
    letters = word.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        run = j - i
        name = _NAMES[abs(letters[i])]
        exp = run if letters[i] > 0 else -run
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return " ".join(parts)


# -- itineraries ---------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """One flow segment: which annulus, endpoints, and the winding count.

    For segments between distinct squares and for B -> B returns, the table
    exponent is winding - 1, so those need winding >= 1; the A -> A loops use
    the winding itself and admit winding 0.
    """

    flow: str  # "V" or "H"
    src: str  # "A" or "B"
    dst: str
    winding: int

    def __post_init__(self):
        if self.flow not in ("V", "H"):
            raise ValueError(f"flow must be V or H, got {self.flow!r}")
        if self.src not in ("A", "B") or self.dst not in ("A", "B"):
            raise ValueError("segment endpoints must be A or B")
        if self.winding < 0:
            raise ValueError("winding must be >= 0")
        if (self.src, self.dst) != ("A", "A") and self.winding < 1:
            raise ValueError("crossing segments need winding >= 1")


@dataclass(frozen=True)
class Itinerary:
    segments: tuple[Segment, ...]

    def __post_init__(self):
        segs = self.segments
        for s1, s2 in zip(segs, segs[1:]):
            if s1.dst != s2.src:
                raise ValueError(f"segments {s1} and {s2} do not chain")
            if s1.flow == s2.flow:
                raise ValueError("itinerary must alternate V and H flows")

    def is_loop_at_a(self) -> bool:
        if not self.segments:
            return True
        return self.segments[0].src == "A" and self.segments[-1].dst == "A"


def _segment_tokens(segment: Segment) -> list[str]:
    """Groupoid letters of one flow segment, from the trajectory-type table."""
    loop = "a" if segment.flow == "V" else "b"
    into, back = ("q1", "q2") if segment.flow == "V" else ("q3", "q4")
    w = segment.winding
    key = (segment.src, segment.dst)
    if key == ("A", "A"):
        return [loop] * w
    if key == ("A", "B"):
        return [loop] * (w - 1) + [into]
    if key == ("B", "A"):
        return [back] + [loop] * (w - 1)
    return [back] + [loop] * (w - 1) + [into]  # B -> B


def itinerary_to_word(itinerary: Itinerary) -> Word:
    """Reduced a,b,c word of a loop itinerary based at A."""
    if not itinerary.is_loop_at_a():
        raise ValueError("itinerary must be a loop based at A")
    tokens: list[str] = []
    for seg in itinerary.segments:
        tokens.extend(_segment_tokens(seg))
    if not tokens:
        return Word(())
    return _parse_groupoid(tokens)


def canonical_itinerary(windings_v, windings_h) -> Itinerary:
    """The 2p-segment itinerary V:A->A(m_1), H:A->A(n_1), ..., whose word is
    a^{m_1} b^{n_1} ... a^{m_p} b^{n_p}."""
    if len(windings_v) != len(windings_h):
        raise ValueError("need equally many vertical and horizontal windings")
    segments = []
    for m, n in zip(windings_v, windings_h):
        segments.append(Segment("V", "A", "A", m))
        segments.append(Segment("H", "A", "A", n))
    return Itinerary(tuple(segments))


def alpha_word(windings_v, windings_h) -> Word:
    """a^{m_1} b^{n_1} ... a^{m_p} b^{n_p} directly (oracle for the itinerary route)."""
    letters: list[int] = []
    for m, n in zip(windings_v, windings_h):
        letters.extend([A_] * m)
        letters.extend([B_] * n)
    return Word(tuple(letters))


def self_intersection(m: int, n: int) -> int:
    """Self-intersection count m*n + (m-1)*(n-1) of the (m, n) class."""
    if m < 1 or n < 1:
        raise ValueError("winding exponents must be >= 1")
    return m * n + (m - 1) * (n - 1)
