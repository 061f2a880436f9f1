"""Knot presentations: braid words, Morse event lists for long knots, writhe
normalization, singular words and their resolutions, and a small table of
named knots given by standard braid presentations.

A long knot diagram is an ordered event list scanned top to bottom. At any
moment there is a row of parallel strand lanes; an event is one of

    ("cap", lane, orient)    a local maximum creating lanes lane, lane+1
    ("cup", lane, orient)    a local minimum joining lanes lane, lane+1
    ("cross", lane, sign)    lanes lane, lane+1 cross (sign = +1 or -1)

orient = +1 means the created/joined pair reads (downward, upward) from left
to right; -1 the reverse. Crossings only ever happen between two downward
lanes; the constructors below guarantee that. The diagram starts and ends
with exactly one open downward strand.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotAKnot, UnknownKnot

__all__ = [
    "BraidWord",
    "SingularBraidWord",
    "LongKnotDiagram",
    "KnotCombination",
    "closure_to_long",
    "normalize_writhe",
    "resolve_singular",
    "knot_table",
    "parse_braid",
    "KNOT_TABLE_NAMES",
]


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group on `strands` strands.

    Letters are nonzero integers: i stands for the positive generator
    crossing lanes i-1 and i, -i for its inverse.
    """

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("need at least one strand")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"letter {x} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def permutation(self) -> tuple:
        """Where each top strand position ends up at the bottom."""
        perm = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def closure_components(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for i in range(self.strands):
            if not seen[i]:
                count += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        return count

    def is_knot_closure(self) -> bool:
        return self.closure_components() == 1

    def free_reduce(self) -> "BraidWord":
        """Cancel adjacent inverse pairs until none remain."""
        stack = []
        for x in self.letters:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        return BraidWord(self.strands, tuple(stack))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def as_text(self) -> str:
        return " ".join(str(x) for x in self.letters)

    def __repr__(self):
        return f"BraidWord({self.strands}, {self.as_text()!r})"


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse whitespace-separated signed generator indices.

    '1 1 1' is the cube of the first generator; '-2' the inverse of the
    second. The strand count defaults to max |i| + 1 (at least 1).
    """
    parts = text.split()
    letters = tuple(int(p) for p in parts)
    inferred = max((abs(x) for x in letters), default=0) + 1
    s = strands if strands is not None else inferred
    if s < inferred:
        raise ValueError(f"strand count {s} too small for word {text!r}")
    return BraidWord(s, letters)


@dataclass(frozen=True)
class SingularBraidWord:
    """A braid word with a set of marked letter positions (double points).

    At a marked position the letter's sign is ignored; resolving the word
    replaces each mark by both signs.
    """

    braid: BraidWord
    marks: frozenset = frozenset()

    def __post_init__(self):
        marks = frozenset(int(i) for i in self.marks)
        for i in marks:
            if not 0 <= i < len(self.braid.letters):
                raise ValueError(f"mark position {i} out of range")
        object.__setattr__(self, "marks", marks)

    @property
    def double_points(self) -> int:
        return len(self.marks)


class KnotCombination:
    """A formal integer combination of braid words (free abelian group of
    knots presented by braids). Keys are freely reduced words; zero
    coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for braid, coeff in dict(terms).items():
                braid = braid.free_reduce()
                c = clean.get(braid, 0) + int(coeff)
                if c:
                    clean[braid] = c
                elif braid in clean:
                    del clean[braid]
        self.terms = clean

    def __add__(self, other: "KnotCombination") -> "KnotCombination":
        out = dict(self.terms)
        for braid, c in other.terms.items():
            v = out.get(braid, 0) + c
            if v:
                out[braid] = v
            else:
                out.pop(braid, None)
        result = KnotCombination()
        result.terms = out
        return result

    def scale(self, k: int) -> "KnotCombination":
        result = KnotCombination()
        if k:
            result.terms = {b: c * k for b, c in self.terms.items()}
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, KnotCombination) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def to_json_list(self) -> list:
        entries = sorted(
            self.terms.items(), key=lambda kv: (kv[0].strands, kv[0].letters)
        )
        return [{"braid": b.as_text(), "coeff": str(c)} for b, c in entries]

    @classmethod
    def from_json_list(cls, data) -> "KnotCombination":
        return cls(
            {parse_braid(entry["braid"]): int(entry["coeff"]) for entry in data}
        )

    def __repr__(self):
        return f"KnotCombination({self.terms!r})"


@dataclass(frozen=True)
class LongKnotDiagram:
    """A validated Morse event list for a one-one tangle (long knot)."""

    events: tuple
    writhe: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(tuple(e) for e in self.events))
        self._validate()

    def _validate(self):
        # +1 = downward, -1 = upward
        lanes = [1]
        w = 0
        for kind, lane, arg in self.events:
            if kind == "cap":
                if not 0 <= lane <= len(lanes):
                    raise ValueError(f"cap lane {lane} out of range")
                pair = [1, -1] if arg == 1 else [-1, 1]
                lanes[lane:lane] = pair
            elif kind == "cup":
                if not 0 <= lane < len(lanes) - 1:
                    raise ValueError(f"cup lane {lane} out of range")
                expect = (1, -1) if arg == 1 else (-1, 1)
                if (lanes[lane], lanes[lane + 1]) != expect:
                    raise ValueError("cup orientation mismatch")
                del lanes[lane : lane + 2]
            elif kind == "cross":
                if arg not in (1, -1):
                    raise ValueError("crossing sign must be +1 or -1")
                if not 0 <= lane < len(lanes) - 1:
                    raise ValueError(f"crossing lane {lane} out of range")
                if lanes[lane] != 1 or lanes[lane + 1] != 1:
                    raise ValueError("crossings must join two downward lanes")
                w += arg
            else:
                raise ValueError(f"unknown event kind {kind!r}")
        if lanes != [1]:
            raise ValueError("diagram must end with the single open strand")
        if w != self.writhe:
            raise ValueError(f"declared writhe {self.writhe} but events sum to {w}")

    def __len__(self):
        return len(self.events)


def closure_to_long(b: BraidWord) -> LongKnotDiagram:
    """Open the closure of a braid into a long knot.

    Strand 1 is cut open; strands 2..s close around the right side through
    nested return arcs (caps above the braid, cups below). The innermost
    return arc is closed as soon as no remaining letter touches its strand
    (sliding each minimum up past unrelated crossings), which keeps the
    number of concurrently open lanes low. The writhe equals the algebraic
    letter sum of the braid.
    """
    if not b.is_knot_closure():
        raise NotAKnot(
            f"closure of {b.as_text()!r} on {b.strands} strands has "
            f"{b.closure_components()} components"
        )
    events = []
    s = b.strands
    letters = b.letters
    # Return arc for strand k sits outside the arc for strand k+1, so its cap
    # comes first; after all caps the lanes read
    #   strand_1 .. strand_s, return_s, .., return_2.
    for k in range(2, s + 1):
        events.append(("cap", k - 1, 1))
    # suffix_max[p] = largest generator index used at position >= p
    suffix_max = [0] * (len(letters) + 1)
    for p in range(len(letters) - 1, -1, -1):
        suffix_max[p] = max(suffix_max[p + 1], abs(letters[p]))
    active = s
    while active >= 2 and suffix_max[0] < active - 1:
        events.append(("cup", active - 1, 1))
        active -= 1
    for pos, x in enumerate(letters):
        events.append(("cross", abs(x) - 1, 1 if x > 0 else -1))
        while active >= 2 and suffix_max[pos + 1] < active - 1:
            events.append(("cup", active - 1, 1))
            active -= 1
    while active >= 2:
        events.append(("cup", active - 1, 1))
        active -= 1
    return LongKnotDiagram(tuple(events), b.writhe())


def normalize_writhe(d: LongKnotDiagram) -> LongKnotDiagram:
    """Append |writhe| curls of the opposite sign so the result has writhe 0.

    Each curl is a cap-crossing-cup triple on the open strand; the underlying
    knot is unchanged.
    """
    w = d.writhe
    if w == 0:
        return d
    sign = -1 if w > 0 else 1
    events = list(d.events)
    for _ in range(abs(w)):
        events.append(("cap", 1, 1))
        events.append(("cross", 0, sign))
        events.append(("cup", 1, 1))
    return LongKnotDiagram(tuple(events), 0)


def resolve_singular(sb: SingularBraidWord) -> KnotCombination:
    """Resolve every marked double point into (positive) - (negative).

    With d marks the result has 2^d signed terms before cancellation; the
    coefficient of a resolution is the product of its chosen signs.
    """
    base = sb.braid
    marks = sorted(sb.marks)
    # All resolutions share one permutation, so one closure check suffices.
    if not base.is_knot_closure():
        raise NotAKnot("singular word does not close to a knot")
    terms = {}
    for bits in range(1 << len(marks)):
        letters = list(base.letters)
        coeff = 1
        for pos_index, pos in enumerate(marks):
            choose_positive = not (bits >> pos_index) & 1
            gen = abs(letters[pos])
            letters[pos] = gen if choose_positive else -gen
            coeff *= 1 if choose_positive else -1
        braid = BraidWord(base.strands, tuple(letters)).free_reduce()
        terms[braid] = terms.get(braid, 0) + coeff
    return KnotCombination(terms)


_KNOT_TABLE = {
    "unknot": (1, ()),
    "trefoil": (2, (1, 1, 1)),
    "figure8": (3, (1, -2, 1, -2)),
    "5_1": (2, (1, 1, 1, 1, 1)),
    "5_2": (3, (1, 1, 1, 2, -1, 2)),
    # cyclic rotation of (1, 1, 2, -1, -3, 2, -3): same closure, and the
    # fourth strand is finished early, which the sweep exploits
    "6_1": (4, (-3, 2, -3, 1, 1, 2, -1)),
    "6_2": (3, (1, 1, 1, -2, 1, -2)),
    "6_3": (3, (1, 1, -2, 1, -2, -2)),
    "7_1": (2, (1, 1, 1, 1, 1, 1, 1)),
}

KNOT_TABLE_NAMES = tuple(_KNOT_TABLE)


def knot_table(name: str) -> BraidWord:
    """Standard braid presentation for a named knot."""
    try:
        strands, letters = _KNOT_TABLE[name]
    except KeyError:
        raise UnknownKnot(f"no table entry for {name!r}") from None
    return BraidWord(strands, letters)
