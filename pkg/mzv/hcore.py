"""
Compositions, exact sparse linear combinations and the operator families
δ_i and ∂̂_i on the composition algebra.

A composition is a plain tuple of positive integers; the empty tuple is the
unit. Vectors are immutable and canonical: zero coefficients are never stored.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Self

from mzv.errors import DomainError

type Composition = tuple[int, ...]
type Scalar = Fraction | int

UNIT: Composition = ()

# every operator memo table, emptied together by clear_caches()
_MEMO_TABLES: list[Any] = []


def memo(maxsize: int | None = None) -> Callable[[Callable[..., Any]], Any]:
    """`functools.lru_cache` registered with `clear_caches`."""

    def decorate(fn: Callable[..., Any]) -> Any:
        cached = lru_cache(maxsize=maxsize)(fn)
        _MEMO_TABLES.append(cached)
        return cached

    return decorate


def clear_caches() -> None:
    """Empty the memo tables; a long-lived process calls this between jobs."""
    for table in _MEMO_TABLES:
        table.cache_clear()


def as_composition(entries: Iterable[int]) -> Composition:
    comp = tuple(entries)
    for entry in comp:
        if isinstance(entry, bool) or not isinstance(entry, int) or entry < 1:
            raise DomainError(f"Composition entries must be integers >= 1: {comp}")
    return comp


def weight(s: Composition) -> int:
    return sum(s)


def depth(s: Composition) -> int:
    return len(s)


def sort_key(s: Composition) -> tuple[int, int, Composition]:
    """Canonical order: weight, then depth, then lexicographic entries."""
    return (sum(s), len(s), s)


def composition_text(s: Composition) -> str:
    return "[" + ",".join(map(str, s)) + "]"


def compositions_of(total: int) -> list[Composition]:
    """All compositions of a given weight, in canonical order."""
    if total < 0:
        return []
    found: list[Composition] = []

    def _extend(prefix: Composition, remaining: int) -> None:
        if remaining == 0:
            found.append(prefix)
            return
        for first in range(1, remaining + 1):
            _extend((*prefix, first), remaining - first)

    _extend((), total)
    return sorted(found, key=sort_key)


def compositions_up_to(max_weight: int) -> list[Composition]:
    return [s for w in range(max_weight + 1) for s in compositions_of(w)]


def _accumulate(acc: dict, key: Any, coeff: Scalar) -> None:
    total = acc.get(key, 0) + coeff
    if total:
        acc[key] = Fraction(total)
    else:
        acc.pop(key, None)


def format_scalar(value: Fraction, *, leading: bool) -> str:
    """Compact coefficient prefix: omitted for ±1, integer when q = 1."""
    sign = "-" if value < 0 else ("" if leading else "+")
    magnitude = abs(value)
    if magnitude == 1:
        return sign
    if magnitude.denominator == 1:
        return f"{sign}{magnitude.numerator}"
    return f"{sign}{magnitude.numerator}/{magnitude.denominator}"


# ---------------------------------------------------------------------------
# Sparse linear combinations
# ---------------------------------------------------------------------------


class LinearCombination[K]:
    """Finite ℚ-linear combination of hashable basis keys."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, Scalar] | Iterable[tuple[K, Scalar]] = ()):
        acc: dict[K, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            if isinstance(coeff, float):
                raise TypeError("coefficients must be exact rationals")
            self._check_key(key)
            _accumulate(acc, key, coeff)
        self._terms = acc

    @classmethod
    def _from_dict(cls, acc: dict[K, Fraction]) -> Self:
        vector = cls.__new__(cls)
        vector._terms = acc
        return vector

    @classmethod
    def _check_key(cls, key: K) -> None:
        pass

    @classmethod
    def basis(cls, key: K, coeff: Scalar = 1) -> Self:
        return cls(((key, coeff),))

    @classmethod
    def zero(cls) -> Self:
        return cls._from_dict({})

    @staticmethod
    def sort_key(key: K) -> Any:
        return key

    @staticmethod
    def key_text(key: K) -> str:
        return str(key)

    # -- access --------------------------------------------------------------

    def items(self) -> list[tuple[K, Fraction]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: self.sort_key(kv[0]))

    def keys(self) -> list[K]:
        return [key for key, _ in self.items()]

    def coeff(self, key: K) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator[tuple[K, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, key: object) -> bool:
        return key in self._terms

    # -- arithmetic ----------------------------------------------------------

    def _same_kind(self, other: object) -> LinearCombination[K]:
        if not isinstance(other, LinearCombination) or type(other) is not type(self):
            raise TypeError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        return other

    def __add__(self, other: LinearCombination[K]) -> Self:
        other = self._same_kind(other)
        acc = dict(self._terms)
        for key, coeff in other._terms.items():
            _accumulate(acc, key, coeff)
        return self._from_dict(acc)

    def __sub__(self, other: LinearCombination[K]) -> Self:
        return self + (-self._same_kind(other))

    def __neg__(self) -> Self:
        return self._from_dict({key: -c for key, c in self._terms.items()})

    def __mul__(self, scalar: Scalar) -> Self:
        if isinstance(scalar, LinearCombination) or isinstance(scalar, float):
            return NotImplemented
        if not scalar:
            return self.zero()
        return self._from_dict({key: c * scalar for key, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> Self:
        return self * (1 / Fraction(scalar))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        return type(other) is type(self) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self._terms.items())))

    # -- linear maps ---------------------------------------------------------

    def apply[R: LinearCombination](
        self, f: Callable[[K], R], into: type[R] | None = None
    ) -> R:
        """Linear extension of a map defined on basis keys."""
        acc: dict = {}
        for key, coeff in self._terms.items():
            for image_key, image_coeff in f(key)._terms.items():
                _accumulate(acc, image_key, coeff * image_coeff)
        return (into or type(self))._from_dict(acc)

    def to_text(self, key_text: Callable[[K], str] | None = None) -> str:
        if not self._terms:
            return "0"
        render = key_text or self.key_text
        parts = [
            format_scalar(coeff, leading=index == 0) + render(key)
            for index, (key, coeff) in enumerate(self.items())
        ]
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()!r})"


def accumulate_into[R: LinearCombination](
    into: type[R], pieces: Iterable[tuple[Any, Scalar]]
) -> R:
    """Build a vector from possibly repeated (key, coeff) pairs."""
    acc: dict = {}
    for key, coeff in pieces:
        _accumulate(acc, key, coeff)
    return into._from_dict(acc)


class HVector(LinearCombination[Composition]):
    """Element of the composition algebra."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key: Composition) -> None:
        as_composition(key)

    @staticmethod
    def sort_key(key: Composition) -> Any:
        return sort_key(key)

    @staticmethod
    def key_text(key: Composition) -> str:
        return composition_text(key)


class HTensorVector(LinearCombination[tuple[Composition, Composition]]):
    """Element of the tensor square of the composition algebra."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key: tuple[Composition, Composition]) -> None:
        left, right = key
        as_composition(left)
        as_composition(right)

    @staticmethod
    def sort_key(key: tuple[Composition, Composition]) -> Any:
        return (sort_key(key[0]), sort_key(key[1]))

    @staticmethod
    def key_text(key: tuple[Composition, Composition]) -> str:
        return composition_text(key[0]) + "⊗" + composition_text(key[1])


class HTripleTensor(LinearCombination[tuple[Composition, Composition, Composition]]):
    __slots__ = ()

    @staticmethod
    def sort_key(key: tuple[Composition, ...]) -> Any:
        return tuple(sort_key(part) for part in key)

    @staticmethod
    def key_text(key: tuple[Composition, ...]) -> str:
        return "⊗".join(composition_text(part) for part in key)


def hvec(*terms: Composition | tuple[Scalar, Composition]) -> HVector:
    """Shorthand: hvec((1, 2), (2, (2, 1))) is [1,2] + 2[2,1]."""
    pieces: list[tuple[Composition, Scalar]] = []
    for term in terms:
        if len(term) == 2 and isinstance(term[1], tuple):
            coeff, comp = term
            pieces.append((as_composition(comp), coeff))  # type: ignore[arg-type]
        else:
            pieces.append((as_composition(term), 1))  # type: ignore[arg-type]
    return HVector(pieces)


def tensor(a: HVector, b: HVector) -> HTensorVector:
    return accumulate_into(
        HTensorVector,
        ((left, right), ca * cb)
        for left, ca in a._terms.items()
        for right, cb in b._terms.items()
    )


# ---------------------------------------------------------------------------
# Operator families
# ---------------------------------------------------------------------------


def _raise_entry(s: Composition, j: int) -> Composition:
    """s with its j-th entry (1-based) increased by one."""
    return (*s[: j - 1], s[j - 1] + 1, *s[j:])


def _delta_basis(i: int, s: Composition) -> HVector:
    if i < 1 or i > len(s):
        return HVector.zero()
    return accumulate_into(
        HVector, ((_raise_entry(s, j), s[j - 1]) for j in range(1, i + 1))
    )


def _dhat_basis(i: int, s: Composition) -> HVector:
    k = len(s)
    if 1 <= i <= k:
        return HVector._from_dict({_raise_entry(s, i): Fraction(s[i - 1])})
    if i == k + 1:
        return -_delta_basis(k, s)
    return HVector.zero()


def delta(i: int, v: HVector) -> HVector:
    """δ_i: raise each of the first i entries in turn, weighted by the entry."""
    return v.apply(lambda s: _delta_basis(i, s))


def dhat(i: int, v: HVector) -> HVector:
    """∂̂_i = δ_i − δ_{i−1}."""
    return v.apply(lambda s: _dhat_basis(i, s))


def build_via_dhat(s: Composition) -> HVector:
    """Rebuild [s] from [1^k] by Π ∂̂_i^{s_i−1}/(s_i−1)!."""
    s = as_composition(s)
    if not s:
        raise DomainError("build_via_dhat needs a nonempty composition")
    v = HVector.basis((1,) * len(s))
    for i in range(len(s), 0, -1):
        for _ in range(s[i - 1] - 1):
            v = dhat(i, v)
        v = v / factorial(s[i - 1] - 1)
    return v


def grade(v: HVector) -> dict[int, HVector]:
    buckets: dict[int, dict[Composition, Fraction]] = {}
    for s, coeff in v._terms.items():
        buckets.setdefault(weight(s), {})[s] = coeff
    return {w: HVector._from_dict(buckets[w]) for w in sorted(buckets)}
