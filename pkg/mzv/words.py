"""
Words over the alphabet {x_0, x_1, x_2, ...}, the shuffle product and
deconcatenation, and the encodings between words and compositions.

A word is a tuple of letter indices; index 0 is x_0.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from fractions import Fraction
from typing import Any

from mzv.errors import DomainError
from mzv.hcore import Composition, LinearCombination, accumulate_into, memo

type Word = tuple[int, ...]

EMPTY_WORD: Word = ()


def as_word(letters: Iterable[int]) -> Word:
    word = tuple(letters)
    for letter in word:
        if isinstance(letter, bool) or not isinstance(letter, int) or letter < 0:
            raise DomainError(f"Letter indices must be integers >= 0: {word}")
    return word


def word_text(w: Word) -> str:
    return "".join(f"x{letter}" for letter in w) if w else "𝟏"


class WordVector(LinearCombination[Word]):
    __slots__ = ()

    @classmethod
    def _check_key(cls, key: Word) -> None:
        as_word(key)

    @staticmethod
    def sort_key(key: Word) -> Any:
        return (len(key), key)

    @staticmethod
    def key_text(key: Word) -> str:
        return word_text(key)


class WordTensorVector(LinearCombination[tuple[Word, Word]]):
    __slots__ = ()

    @staticmethod
    def sort_key(key: tuple[Word, Word]) -> Any:
        return ((len(key[0]), key[0]), (len(key[1]), key[1]))

    @staticmethod
    def key_text(key: tuple[Word, Word]) -> str:
        return word_text(key[0]) + "⊗" + word_text(key[1])


class WordTripleTensor(LinearCombination[tuple[Word, Word, Word]]):
    __slots__ = ()

    @staticmethod
    def key_text(key: tuple[Word, ...]) -> str:
        return "⊗".join(word_text(part) for part in key)


# ---------------------------------------------------------------------------
# Shuffle and deconcatenation
# ---------------------------------------------------------------------------


@memo()
def _shuffle_counts(u: Word, w: Word) -> tuple[tuple[Word, int], ...]:
    # recursion on the last letters: (ua ⧢ wb) = (u ⧢ wb)a + (ua ⧢ w)b
    if not u:
        return ((w, 1),)
    if not w:
        return ((u, 1),)
    counts: defaultdict[Word, int] = defaultdict(int)
    for word, n in _shuffle_counts(u[:-1], w):
        counts[(*word, u[-1])] += n
    for word, n in _shuffle_counts(u, w[:-1]):
        counts[(*word, w[-1])] += n
    return tuple(counts.items())


def shuffle(u: Word, w: Word) -> WordVector:
    return WordVector._from_dict(
        {word: Fraction(n) for word, n in _shuffle_counts(u, w)}
    )


def shuffle_vectors(a: WordVector, b: WordVector) -> WordVector:
    return accumulate_into(
        WordVector,
        (
            (word, ca * cb * n)
            for u, ca in a._terms.items()
            for w, cb in b._terms.items()
            for word, n in _shuffle_counts(u, w)
        ),
    )


def deconcat(w: Word) -> WordTensorVector:
    return accumulate_into(
        WordTensorVector, (((w[:i], w[i:]), 1) for i in range(len(w) + 1))
    )


# ---------------------------------------------------------------------------
# Encodings ρ and ψ, word locality
# ---------------------------------------------------------------------------


def rho(s: Composition) -> Word:
    """[s_1,...,s_k] ↦ x_0^{s_1−1}x_1 ⋯ x_0^{s_k−1}x_1."""
    return tuple(letter for entry in s for letter in (*([0] * (entry - 1)), 1))


def rho_inv(w: Word) -> Composition:
    if w and w[-1] != 1:
        raise DomainError(f"{word_text(w)} does not end in x1")
    entries: list[int] = []
    run = 0
    for letter in w:
        if letter == 0:
            run += 1
        elif letter == 1:
            entries.append(run + 1)
            run = 0
        else:
            raise DomainError(f"{word_text(w)} uses letters outside {{x0, x1}}")
    return tuple(entries)


def is_w1(w: Word) -> bool:
    """Empty, or ends in a positive letter with no positive index repeated."""
    if not w:
        return True
    positives = [letter for letter in w if letter > 0]
    return w[-1] > 0 and len(set(positives)) == len(positives)


def _require_w1(w: Word) -> None:
    if not is_w1(w):
        raise DomainError(f"{word_text(w)} is not in W_1")


def positive_indices(w: Word) -> frozenset[int]:
    return frozenset(letter for letter in w if letter > 0)


def psi(w: Word) -> Word:
    _require_w1(w)
    return tuple(min(letter, 1) for letter in w)


def word_local(u: Word, w: Word) -> bool:
    _require_w1(u)
    _require_w1(w)
    return positive_indices(u).isdisjoint(positive_indices(w))
