"""Braid words, their closures, and Markov moves.

A braid on ``n`` strands is stored as a tuple of ``(index, sign)`` letters,
``1 <= index <= n - 1``, ``sign`` in ``{+1, -1}``.  Text form is a list of
whitespace-separated nonzero integers: ``k`` stands for sigma_k and ``-k`` for
its inverse, e.g. ``"1 -2 1 -2"`` is the figure-eight knot.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BraidMoveError, BraidParseError

Letter = tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidParseError(f"strand count must be >= 1, got {self.strands}")
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        for index, sign in letters:
            if not 1 <= index <= self.strands - 1:
                raise BraidParseError(
                    f"generator index {index} out of range for {self.strands} strands")
            if sign not in (1, -1):
                raise BraidParseError(f"letter sign must be +1 or -1, got {sign}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(str(sign * index) for index, sign in self.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise BraidMoveError(
                f"cannot multiply braids on {self.strands} and {other.strands} strands")
        return BraidWord(self.strands, self.letters + other.letters)

    @classmethod
    def identity(cls, strands: int) -> BraidWord:
        return cls(strands, ())


@dataclass(frozen=True)
class StrandPermutation:
    """Permutation of strand positions, 1-based: ``images[p - 1]`` is where ``p`` goes."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    def __call__(self, p: int) -> int:
        return self.images[p - 1]

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cycle = []
            p = start
            while p not in seen:
                seen.add(p)
                cycle.append(p)
                p = self(p)
            out.append(tuple(cycle))
        return out

    @property
    def components(self) -> int:
        return len(self.cycles())


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``"1 -2 1 -2"``-style text.

    Without ``strands`` the count is inferred as ``max|k| + 1`` (1 for the
    empty word); pass it explicitly to add idle strands.
    """
    letters = []
    for token in text.split():
        try:
            k = int(token)
        except ValueError:
            raise BraidParseError(f"non-integer token {token!r}") from None
        if k == 0:
            raise BraidParseError("zero is not a braid generator")
        letters.append((abs(k), 1 if k > 0 else -1))
    needed = max((i for i, _ in letters), default=0) + 1
    if strands is None:
        strands = needed
    elif strands < needed:
        raise BraidParseError(
            f"generator index {needed - 1} out of range for {strands} strands")
    return BraidWord(strands, tuple(letters))


def format_braid(b: BraidWord) -> str:
    return str(b)


def writhe(b: BraidWord) -> int:
    return sum(sign for _, sign in b.letters)


def closure_permutation(b: BraidWord) -> StrandPermutation:
    """Strand permutation of the word; its cycles are the closure's components."""
    # position -> strand currently sitting there, followed crossing by crossing
    images = list(range(1, b.strands + 1))
    for index, _ in b.letters:
        images[index - 1], images[index] = images[index], images[index - 1]
    # images[p] is the strand ending at position p + 1; invert to get start -> end
    perm = [0] * b.strands
    for end, start in enumerate(images, start=1):
        perm[start - 1] = end
    return StrandPermutation(tuple(perm))


def components(b: BraidWord) -> int:
    return closure_permutation(b).components


def conjugate(b: BraidWord, a: BraidWord) -> BraidWord:
    """Return the word ``a^-1 b a``."""
    if a.strands != b.strands:
        raise BraidMoveError(
            f"conjugator has {a.strands} strands, braid has {b.strands}")
    return a.inverse() * b * a


def stabilize(b: BraidWord, sign: int) -> BraidWord:
    if sign not in (1, -1):
        raise BraidMoveError(f"stabilization sign must be +1 or -1, got {sign}")
    return BraidWord(b.strands + 1, b.letters + ((b.strands, sign),))


def can_destabilize(b: BraidWord) -> bool:
    n = b.strands
    if n < 2 or not b.letters or b.letters[-1][0] != n - 1:
        return False
    return all(i != n - 1 for i, _ in b.letters[:-1])


def destabilize(b: BraidWord) -> BraidWord:
    if not can_destabilize(b):
        raise BraidMoveError(
            f"word {str(b)!r} on {b.strands} strands does not end in a removable "
            f"sigma_{b.strands - 1}^(+-1)")
    return BraidWord(b.strands - 1, b.letters[:-1])


def random_markov_walk(b: BraidWord, moves: int, seed: int,
                       max_strands: int | None = None) -> BraidWord:
    """Apply ``moves`` random Markov moves, reproducibly for a fixed seed.

    Each step is a conjugation by a random generator, a stabilization, or a
    destabilization when the tail of the word allows one.  Stabilizations stop
    at ``max_strands`` (default: two more than the input) so the state-sum cost
    stays bounded.
    """
    if moves < 0:
        raise ValueError("moves must be >= 0")
    if max_strands is None:
        max_strands = b.strands + 2
    rng = random.Random(seed)
    for _ in range(moves):
        options = []
        if b.strands >= 2:
            options.append("conjugate")
        if b.strands < max_strands:
            options.append("stabilize")
        if can_destabilize(b):
            options.append("destabilize")
        if not options:
            break
        move = rng.choice(options)
        if move == "conjugate":
            index = rng.randint(1, b.strands - 1)
            a = BraidWord(b.strands, ((index, rng.choice((1, -1))),))
            b = conjugate(b, a)
        elif move == "stabilize":
            b = stabilize(b, rng.choice((1, -1)))
        else:
            b = destabilize(b)
    return b


def random_braid(rng: random.Random, max_strands: int = 4, max_letters: int = 8) -> BraidWord:
    strands = rng.randint(2, max_strands)
    length = rng.randint(1, max_letters)
    letters = tuple((rng.randint(1, strands - 1), rng.choice((1, -1))) for _ in range(length))
    return BraidWord(strands, letters)


FIGURE_EIGHT = BraidWord(3, ((1, 1), (2, -1), (1, 1), (2, -1)))
TREFOIL = BraidWord(2, ((1, 1), (1, 1), (1, 1)))
