"""
Chen fractions and their locality Hopf algebra.

⟨s_1..s_k ; x_{i_1}..x_{i_k}⟩ denotes
    1 / ((x_{i_1}+⋯+x_{i_k})^{s_1} (x_{i_2}+⋯+x_{i_k})^{s_2} ⋯ x_{i_k}^{s_k}).

Products exist only for local pairs (disjoint variables) and are computed by
transporting the shuffle product along φ. `partial(m, ·)` is −∂/∂x_m written
in the Chen basis.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import partial as bind
from math import factorial
from typing import Any

from loguru import logger

from mzv.checks import CHEN_CHECKS, CheckName
from mzv.errors import DomainError, LocalityViolation, MissingVariable, PoleError
from mzv.hcore import (
    Composition,
    LinearCombination,
    Scalar,
    accumulate_into,
    as_composition,
    composition_text,
    compositions_of,
    memo,
)
from mzv.runner import Check, first_failure, run_checks
from mzv.schemas import CheckResult, VerificationReport
from mzv.words import Word, is_w1, shuffle, word_text

# Random oracle points are drawn from 1..ORACLE_MAX so no denominator vanishes.
ORACLE_MAX = 97
ORACLE_POINTS = 20


@dataclass(frozen=True, slots=True)
class ChenFraction:
    exponents: tuple[int, ...] = ()
    variables: tuple[int, ...] = ()
    _weight: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        exponents, variables = tuple(self.exponents), tuple(self.variables)
        if len(exponents) != len(variables):
            raise DomainError("Chen fraction needs one variable per exponent")
        as_composition(exponents)
        for v in variables:
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise DomainError(f"Variable indices must be integers >= 1: {v!r}")
        if len(set(variables)) != len(variables):
            raise DomainError(f"Variable indices must be distinct: {variables}")
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "_weight", sum(exponents))

    @classmethod
    def _unchecked(
        cls, exponents: Composition, variables: tuple[int, ...]
    ) -> ChenFraction:
        f = object.__new__(cls)
        object.__setattr__(f, "exponents", exponents)
        object.__setattr__(f, "variables", variables)
        object.__setattr__(f, "_weight", sum(exponents))
        return f

    @property
    def weight(self) -> int:
        return self._weight

    @property
    def depth(self) -> int:
        return len(self.exponents)

    def sort_key(self) -> tuple:
        # variables compare from the innermost one, which every factor contains
        return (
            self._weight,
            len(self.exponents),
            self.exponents,
            self.variables[::-1],
        )

    def __str__(self) -> str:
        return (
            f"<{composition_text(self.exponents)};"
            f"({','.join(map(str, self.variables))})>"
        )


ONE = ChenFraction()


class FracVector(LinearCombination[ChenFraction]):
    __slots__ = ()

    @classmethod
    def _check_key(cls, key: ChenFraction) -> None:
        if not isinstance(key, ChenFraction):
            raise DomainError(f"Not a Chen fraction: {key!r}")

    @staticmethod
    def sort_key(key: ChenFraction) -> Any:
        return key.sort_key()

    @staticmethod
    def key_text(key: ChenFraction) -> str:
        return str(key)


class FracTensorVector(LinearCombination[tuple[ChenFraction, ChenFraction]]):
    __slots__ = ()

    @staticmethod
    def sort_key(key: tuple[ChenFraction, ChenFraction]) -> Any:
        return (key[0].sort_key(), key[1].sort_key())

    @staticmethod
    def key_text(key: tuple[ChenFraction, ChenFraction]) -> str:
        return f"{key[0]}⊗{key[1]}"


class FracTripleTensor(LinearCombination[tuple[ChenFraction, ...]]):
    __slots__ = ()

    @staticmethod
    def sort_key(key: tuple[ChenFraction, ...]) -> Any:
        return tuple(part.sort_key() for part in key)

    @staticmethod
    def key_text(key: tuple[ChenFraction, ...]) -> str:
        return "⊗".join(map(str, key))


type FracLike = ChenFraction | FracVector


def as_frac_vector(f: FracLike) -> FracVector:
    return FracVector.basis(f) if isinstance(f, ChenFraction) else f


# ---------------------------------------------------------------------------
# Locality and the product
# ---------------------------------------------------------------------------


def frac_local(f: FracLike, g: FracLike) -> bool:
    if isinstance(f, ChenFraction) and isinstance(g, ChenFraction):
        return set(f.variables).isdisjoint(g.variables)
    return all(
        frac_local(a, b)
        for a in as_frac_vector(f)._terms
        for b in as_frac_vector(g)._terms
    )


def phi(f: ChenFraction) -> Word:
    """⟨s; x_{i_1}..x_{i_k}⟩ ↦ x_0^{s_1−1}x_{i_1} ⋯ x_0^{s_k−1}x_{i_k}."""
    return tuple(
        letter
        for e, v in zip(f.exponents, f.variables, strict=True)
        for letter in (*([0] * (e - 1)), v)
    )


def phi_inv(w: Word) -> ChenFraction:
    if not is_w1(w):
        raise DomainError(f"{word_text(w)} is not in W_1")
    exponents: list[int] = []
    variables: list[int] = []
    run = 0
    for letter in w:
        if letter == 0:
            run += 1
        else:
            exponents.append(run + 1)
            variables.append(letter)
            run = 0
    return ChenFraction._unchecked(tuple(exponents), tuple(variables))


def mul_local(f: FracLike, g: FracLike) -> FracVector:
    a, b = as_frac_vector(f), as_frac_vector(g)
    for fa in a._terms:
        for gb in b._terms:
            if not frac_local(fa, gb):
                raise LocalityViolation(f"{fa} and {gb} share a variable")
    return accumulate_into(
        FracVector,
        (
            (phi_inv(word), ca * cb * n)
            for fa, ca in a._terms.items()
            for gb, cb in b._terms.items()
            for word, n in shuffle(phi(fa), phi(gb))._terms.items()
        ),
    )


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------


def _raised(f: ChenFraction, j: int) -> ChenFraction:
    e = f.exponents
    return ChenFraction._unchecked((*e[: j - 1], e[j - 1] + 1, *e[j:]), f.variables)


def _partial_basis(m: int, f: ChenFraction) -> FracVector:
    if m < 1 or m not in f.variables:
        return FracVector.zero()
    position = f.variables.index(m) + 1
    return accumulate_into(
        FracVector,
        ((_raised(f, j), f.exponents[j - 1]) for j in range(1, position + 1)),
    )


def _d_basis(i: int, j: int, f: ChenFraction) -> FracVector:
    return _partial_basis(i, f) - _partial_basis(j, f)


def partial(m: int, f: FracLike) -> FracVector:
    return as_frac_vector(f).apply(lambda g: _partial_basis(m, g))


def d_op(i: int, j: int, f: FracLike) -> FracVector:
    """d_{i,j} = ∂_i − ∂_j with ∂_0 = 0."""
    return as_frac_vector(f).apply(lambda g: _d_basis(i, j, g))


def build_frac_via_d(s: Composition, variables: Iterable[int]) -> FracVector:
    s, variables = as_composition(s), tuple(variables)
    if len(s) != len(variables):
        raise DomainError("one variable per composition entry is required")
    v = FracVector.basis(ChenFraction((1,) * len(s), variables))
    for j in range(len(s), 0, -1):
        previous = variables[j - 2] if j > 1 else 0
        for _ in range(s[j - 1] - 1):
            v = d_op(variables[j - 1], previous, v)
        v = v / factorial(s[j - 1] - 1)
    return v


# ---------------------------------------------------------------------------
# Coproduct, counit, grading
# ---------------------------------------------------------------------------


class ReductionOrder(StrEnum):
    LARGEST = "largest"
    SMALLEST = "smallest"


def _coderivation_step(
    t: FracTensorVector, op: Callable[[ChenFraction], FracVector]
) -> FracTensorVector:
    """(id⊗op + op⊗id) applied termwise."""
    pieces: list[tuple[tuple[ChenFraction, ChenFraction], Scalar]] = []
    for (left, right), c in t._terms.items():
        pieces.extend(((left, r), c * cr) for r, cr in op(right)._terms.items())
        pieces.extend(((lf, right), c * cl) for lf, cl in op(left)._terms.items())
    return accumulate_into(FracTensorVector, pieces)


def _deconcatenate_ones(k: int) -> FracTensorVector:
    ones = ChenFraction._unchecked
    return FracTensorVector._from_dict(
        {
            (
                ones((1,) * j, tuple(range(1, j + 1))),
                ones((1,) * (k - j), tuple(range(j + 1, k + 1))),
            ): Fraction(1)
            for j in range(k + 1)
        }
    )


@memo()
def _normalized_coproduct(
    exponents: Composition, order: ReductionOrder
) -> FracTensorVector:
    """Δ^ch on the variables x_1..x_k."""
    k = len(exponents)
    logger.debug("Δ^ch cache miss for {} ({} first)", list(exponents), order)
    if all(e == 1 for e in exponents):
        return _deconcatenate_ones(k)
    positions = [j for j in range(1, k + 1) if exponents[j - 1] >= 2]
    j = positions[-1] if order == ReductionOrder.LARGEST else positions[0]
    lowered = (*exponents[: j - 1], exponents[j - 1] - 1, *exponents[j:])
    step = _coderivation_step(
        _normalized_coproduct(lowered, order), lambda g: _d_basis(j, j - 1, g)
    )
    return step / (exponents[j - 1] - 1)


def _relabel(f: ChenFraction, variables: tuple[int, ...]) -> ChenFraction:
    return ChenFraction._unchecked(
        f.exponents, tuple(variables[v - 1] for v in f.variables)
    )


def chen_coproduct(
    f: FracLike, order: ReductionOrder = ReductionOrder.LARGEST
) -> FracTensorVector:
    if isinstance(f, FracVector):
        return f.apply(lambda g: chen_coproduct(g, order), into=FracTensorVector)
    normalized = _normalized_coproduct(f.exponents, order)
    return FracTensorVector._from_dict(
        {
            (_relabel(left, f.variables), _relabel(right, f.variables)): c
            for (left, right), c in normalized._terms.items()
        }
    )


def counit_frac(v: FracLike) -> Fraction:
    return as_frac_vector(v).coeff(ONE)


def grade_frac(v: FracVector) -> dict[int, FracVector]:
    buckets: dict[int, dict[ChenFraction, Fraction]] = {}
    for f, c in v._terms.items():
        buckets.setdefault(f.weight, {})[f] = c
    return {w: FracVector._from_dict(buckets[w]) for w in sorted(buckets)}


# ---------------------------------------------------------------------------
# Evaluation at rational points
# ---------------------------------------------------------------------------


def eval_fraction(f: ChenFraction, assignment: Mapping[int, Scalar]) -> Fraction:
    result = Fraction(1)
    tail = Fraction(0)
    for e, v in reversed(list(zip(f.exponents, f.variables, strict=True))):
        if v not in assignment:
            raise MissingVariable(v)
        tail += Fraction(assignment[v])
        if tail == 0:
            raise PoleError(f"{f} has a pole at the given point")
        result /= tail**e
    return result


def eval_vector(v: FracLike, assignment: Mapping[int, Scalar]) -> Fraction:
    return sum(
        (c * eval_fraction(f, assignment) for f, c in as_frac_vector(v)._terms.items()),
        Fraction(0),
    )


def random_assignment(variables: Iterable[int], rng: random.Random) -> dict[int, int]:
    return {v: rng.randint(1, ORACLE_MAX) for v in sorted(set(variables))}


# ---------------------------------------------------------------------------
# Verification suite
# ---------------------------------------------------------------------------

# Coassociativity is exhausted up to this depth; pair checks cap each factor.
COASSOC_MAX_DEPTH = 3
PAIR_FACTOR_WEIGHT = 4


def spread_fraction(s: Composition) -> ChenFraction:
    """⟨s; x_{2k},…,x_4,x_2⟩: non-trivial labels exercise relabelling."""
    k = len(s)
    return ChenFraction._unchecked(s, tuple(2 * (k - i) for i in range(k)))


def fractions_of(total: int, max_depth: int | None = None) -> list[ChenFraction]:
    return [
        spread_fraction(s)
        for s in compositions_of(total)
        if max_depth is None or len(s) <= max_depth
    ]


def local_pairs(
    total: int, factor_weight: int = PAIR_FACTOR_WEIGHT
) -> list[tuple[ChenFraction, ChenFraction]]:
    """Pairs on odd (descending) and even (ascending) variables."""
    pairs = []
    for wf in range(total + 1):
        wg = total - wf
        if wf > factor_weight or wg > factor_weight:
            continue
        for s in compositions_of(wf):
            odd = tuple(2 * (len(s) - i) - 1 for i in range(len(s)))
            f = ChenFraction._unchecked(s, odd)
            for t in compositions_of(wg):
                even = tuple(2 * (i + 1) for i in range(len(t)))
                g = ChenFraction._unchecked(t, even)
                pairs.append((f, g))
    return pairs


def _pair_text(pair: tuple[ChenFraction, ChenFraction]) -> str:
    return f"{pair[0]}, {pair[1]}"


def _expand_left(t: FracTensorVector) -> FracTripleTensor:
    return accumulate_into(
        FracTripleTensor,
        (
            ((a, b, right), c * cab)
            for (left, right), c in t._terms.items()
            for (a, b), cab in chen_coproduct(left)._terms.items()
        ),
    )


def _expand_right(t: FracTensorVector) -> FracTripleTensor:
    return accumulate_into(
        FracTripleTensor,
        (
            ((left, a, b), c * cab)
            for (left, right), c in t._terms.items()
            for (a, b), cab in chen_coproduct(right)._terms.items()
        ),
    )


def tensor_mul_local(s: FracTensorVector, t: FracTensorVector) -> FracTensorVector:
    """Componentwise locality product (l1⊗r1)·(l2⊗r2) = l1l2⊗r1r2."""
    pieces = []
    for (l1, r1), c1 in s._terms.items():
        for (l2, r2), c2 in t._terms.items():
            lefts, rights = mul_local(l1, l2), mul_local(r1, r2)
            pieces.extend(
                ((lf, rt), c1 * c2 * a * b)
                for lf, a in lefts._terms.items()
                for rt, b in rights._terms.items()
            )
    return accumulate_into(FracTensorVector, pieces)


def _coassociative(f: ChenFraction) -> bool:
    t = chen_coproduct(f)
    return _expand_left(t) == _expand_right(t)


def _counital(f: ChenFraction) -> bool:
    t = chen_coproduct(f)
    left = accumulate_into(
        FracVector, ((r, c) for (lf, r), c in t._terms.items() if lf == ONE)
    )
    right = accumulate_into(
        FracVector, ((lf, c) for (lf, r), c in t._terms.items() if r == ONE)
    )
    return left == FracVector.basis(f) == right


def _graded(f: ChenFraction) -> bool:
    return all(
        lf.weight + r.weight == f.weight for lf, r in chen_coproduct(f)._terms
    )


def _local_terms(f: ChenFraction) -> bool:
    allowed = set(f.variables)
    return all(
        set(lf.variables) | set(r.variables) <= allowed and frac_local(lf, r)
        for lf, r in chen_coproduct(f)._terms
    )


def _variables_and_a_fresh_one(f: ChenFraction) -> list[int]:
    return [*f.variables, max(f.variables, default=0) + 1]


def _coderivation(f: ChenFraction) -> bool:
    t = chen_coproduct(f)
    return all(
        chen_coproduct(partial(m, f))
        == _coderivation_step(t, lambda g, m=m: _partial_basis(m, g))
        for m in _variables_and_a_fresh_one(f)
    )


def _derivations_commute(f: ChenFraction) -> bool:
    return all(
        partial(m, partial(n, f)) == partial(n, partial(m, f))
        for m in f.variables
        for n in f.variables
    )


def _homomorphism(pair: tuple[ChenFraction, ChenFraction]) -> bool:
    f, g = pair
    return chen_coproduct(mul_local(f, g)) == tensor_mul_local(
        chen_coproduct(f), chen_coproduct(g)
    )


def _leibniz(pair: tuple[ChenFraction, ChenFraction]) -> bool:
    f, g = pair
    product = mul_local(f, g)
    return all(
        partial(m, product) == mul_local(partial(m, f), g) + mul_local(f, partial(m, g))
        for m in (*f.variables, *g.variables)
    )


def _product_oracle(
    pair: tuple[ChenFraction, ChenFraction], rng: random.Random
) -> bool:
    f, g = pair
    product = mul_local(f, g)
    for _ in range(ORACLE_POINTS):
        point = random_assignment((*f.variables, *g.variables), rng)
        expected = eval_fraction(f, point) * eval_fraction(g, point)
        if eval_vector(product, point) != expected:
            return False
    return True


def _order_independent(f: ChenFraction) -> bool:
    return chen_coproduct(f, ReductionOrder.SMALLEST) == chen_coproduct(f)


def _chen_check(name: CheckName, weight: int, seed: int) -> CheckResult:
    fractions = bind(fractions_of, weight)
    match name:
        case CheckName.CHEN_COASSOC:
            return first_failure(
                name, weight, fractions(COASSOC_MAX_DEPTH), _coassociative
            )
        case CheckName.CHEN_COUNIT:
            return first_failure(name, weight, fractions(), _counital)
        case CheckName.CHEN_GRADING:
            return first_failure(name, weight, fractions(), _graded)
        case CheckName.CHEN_LOCALITY:
            return first_failure(name, weight, fractions(), _local_terms)
        case CheckName.CHEN_CODERIVATION:
            return first_failure(name, weight, fractions(), _coderivation)
        case CheckName.CHEN_COMMUTING:
            return first_failure(name, weight, fractions(), _derivations_commute)
        case CheckName.CHEN_WELL_DEFINED:
            return first_failure(name, weight, fractions(), _order_independent)
        case CheckName.CHEN_HOMOMORPHISM:
            return first_failure(
                name, weight, local_pairs(weight), _homomorphism, _pair_text
            )
        case CheckName.CHEN_LEIBNIZ:
            return first_failure(
                name, weight, local_pairs(weight), _leibniz, _pair_text
            )
        case CheckName.CHEN_PRODUCT_ORACLE:
            rng = random.Random(seed * 1009 + weight)
            return first_failure(
                name,
                weight,
                local_pairs(weight),
                lambda pair: _product_oracle(pair, rng),
                _pair_text,
            )
    raise DomainError(f"{name} is not a Chen fraction check")


def check_chen(max_weight: int, *, seed: int = 0, jobs: int = 1) -> VerificationReport:
    """Run the locality Hopf algebra suite on Chen fractions up to max_weight."""
    if max_weight < 1:
        raise DomainError("max_weight must be >= 1")
    checks: list[Check] = [
        bind(_chen_check, name, w, seed)
        for name in CHEN_CHECKS
        for w in range(max_weight + 1)
    ]
    report = VerificationReport(results=run_checks(checks, jobs), seed=seed)
    logger.info(
        "Chen suite up to weight {}: {} checks, {} failed",
        max_weight,
        len(report.results),
        len(report.failures),
    )
    return report
