"""
The quasi-shuffle (stuffle) product, admissibility and the extended double
shuffle generators [s]∗[t] − [s]⧢̃[t].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from itertools import combinations, pairwise

from loguru import logger

from mzv.errors import DomainError
from mzv.hcore import (
    UNIT,
    Composition,
    HVector,
    accumulate_into,
    as_composition,
    compositions_of,
    memo,
    sort_key,
)
from mzv.hopf import hshuffle


def is_admissible(s: Composition) -> bool:
    return not s or s[0] >= 2


@memo()
def _stuffle_basis(s: Composition, t: Composition) -> HVector:
    if not s:
        return HVector.basis(t)
    if not t:
        return HVector.basis(s)
    (a, *u), (b, *v) = s, t
    u, v = tuple(u), tuple(v)
    pieces = [((a, *w), c) for w, c in _stuffle_basis(u, t)._terms.items()]
    pieces += [((b, *w), c) for w, c in _stuffle_basis(s, v)._terms.items()]
    pieces += [((a + b, *w), c) for w, c in _stuffle_basis(u, v)._terms.items()]
    return accumulate_into(HVector, pieces)


def stuffle(a: HVector, b: HVector) -> HVector:
    """[a,u]∗[b,v] = [a, u∗[b,v]] + [b, [a,u]∗v] + [a+b, u∗v], bilinear."""
    return accumulate_into(
        HVector,
        (
            (w, ca * cb * c)
            for s, ca in a._terms.items()
            for t, cb in b._terms.items()
            for w, c in _stuffle_basis(s, t)._terms.items()
        ),
    )


# ---------------------------------------------------------------------------
# Antipode of the quasi-shuffle Hopf algebra
# ---------------------------------------------------------------------------


@memo()
def _stuffle_antipode_basis(s: Composition) -> HVector:
    if not s:
        return HVector.basis(UNIT)
    result = -HVector.basis(s)
    for j in range(1, len(s)):
        result = result - stuffle(
            _stuffle_antipode_basis(s[:j]), HVector.basis(s[j:])
        )
    return result


def stuffle_antipode(v: HVector | Composition) -> HVector:
    """Antipode for ∗ with deconcatenation, by the connected graded recursion."""
    if isinstance(v, HVector):
        return v.apply(_stuffle_antipode_basis)
    return _stuffle_antipode_basis(as_composition(v))


def coarsenings(s: Composition) -> list[Composition]:
    """Every composition obtained by summing runs of adjacent entries."""
    cuts = range(1, len(s))
    found = []
    for n in range(len(s)):
        for kept in combinations(cuts, n):
            bounds = (0, *kept, len(s))
            found.append(tuple(sum(s[lo:hi]) for lo, hi in pairwise(bounds)))
    return found


def coarsening_antipode(s: Composition) -> HVector:
    """(−1)^k Σ over coarsenings of the reversed composition."""
    s = as_composition(s)
    sign = -1 if len(s) % 2 else 1
    return accumulate_into(
        HVector, ((c, sign) for c in coarsenings(tuple(reversed(s))))
    )


# ---------------------------------------------------------------------------
# Extended double shuffle generators
# ---------------------------------------------------------------------------


class GeneratorKind(StrEnum):
    GENERAL = "general"
    LEADING_ONE = "leading-one"


@dataclass(frozen=True, slots=True)
class EDSGenerator:
    kind: GeneratorKind
    sources: tuple[Composition, Composition]
    value: HVector

    @property
    def weight(self) -> int:
        return sum(self.sources[0]) + sum(self.sources[1])


def _difference(s: Composition, t: Composition) -> HVector:
    a, b = HVector.basis(s), HVector.basis(t)
    return stuffle(a, b) - hshuffle(a, b)


def _admissible_nonunit(max_weight: int) -> list[Composition]:
    return [
        s
        for w in range(2, max_weight + 1)
        for s in compositions_of(w)
        if is_admissible(s)
    ]


def eds_generators(max_weight: int) -> list[EDSGenerator]:
    if max_weight < 3:
        raise DomainError("eds_generators needs max_weight >= 3")
    candidates = _admissible_nonunit(max_weight)
    pairs = [
        (GeneratorKind.GENERAL, s, t)
        for s in candidates
        for t in candidates
        if sort_key(s) <= sort_key(t) and sum(s) + sum(t) <= max_weight
    ]
    pairs += [
        (GeneratorKind.LEADING_ONE, (1,), t)
        for t in candidates
        if 1 + sum(t) <= max_weight
    ]
    pairs.sort(key=lambda p: (sum(p[1]) + sum(p[2]), sort_key(p[1]), sort_key(p[2])))

    generators: list[EDSGenerator] = []
    seen: set[HVector] = set()
    for kind, s, t in pairs:
        value = _difference(s, t)
        if not value or value in seen:
            continue
        seen.add(value)
        generators.append(EDSGenerator(kind, (s, t), value))
    logger.info(
        "{} EDS generators up to weight {} from {} source pairs",
        len(generators),
        max_weight,
        len(pairs),
    )
    return generators
