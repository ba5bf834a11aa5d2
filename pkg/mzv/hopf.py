"""
The shuffle Hopf algebra on compositions.

The shuffle product is pulled back from words along ρ. The coproduct Δ̃ is
built recursively: deconcatenation on [1^k], then one shifted step
(id ⊗̌ ∂̂_j + ∂̂_j ⊗ id) per unit raised at position j.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import partial as bind
from itertools import permutations
from math import comb

from loguru import logger

from mzv.chenfrac import (
    ChenFraction,
    FracTensorVector,
    FracVector,
    chen_coproduct,
    partial,
    phi,
    spread_fraction,
)
from mzv.checks import HOPF_CHECKS, CheckName
from mzv.errors import DomainError
from mzv.hcore import (
    UNIT,
    Composition,
    HTensorVector,
    HTripleTensor,
    HVector,
    Scalar,
    accumulate_into,
    as_composition,
    build_via_dhat,
    composition_text,
    compositions_of,
    delta,
    dhat,
    memo,
)
from mzv.runner import Check, first_failure, run_checks
from mzv.schemas import CheckResult, VerificationReport
from mzv.words import psi, rho, rho_inv, shuffle

type IndexedOperator = Callable[[int, HVector], HVector]

# Every reduction order is enumerated up to this weight; above it only the two
# extreme orders are compared.
EXHAUSTIVE_ORDER_WEIGHT = 7


# ---------------------------------------------------------------------------
# Shuffle product
# ---------------------------------------------------------------------------


@memo()
def _hshuffle_basis(s: Composition, t: Composition) -> HVector:
    return HVector._from_dict(
        {rho_inv(w): c for w, c in shuffle(rho(s), rho(t))._terms.items()}
    )


def hshuffle(a: HVector, b: HVector) -> HVector:
    """ρ⁻¹(ρa ⧢ ρb), bilinear."""
    return accumulate_into(
        HVector,
        (
            (u, ca * cb * c)
            for s, ca in a._terms.items()
            for t, cb in b._terms.items()
            for u, c in _hshuffle_basis(s, t)._terms.items()
        ),
    )


def euler_depth1(s: int, t: int) -> HVector:
    """
    Closed form of [s]⧢̃[t]:

        Σ_{i=0}^{t−1} C(s+i−1, i)[s+i, t−i]
      + Σ_{j=0}^{s−1} C(t+j−1, j)[t+j, s−j]

    i.e. Σ_{a+b=s+t} (C(a−1, s−1) + C(a−1, t−1)) [a, b]. Each sum runs over the
    length of the *other* argument; bounding i by s−1 instead produces entries
    t−i ≤ 0 whenever s > t.
    """
    if s < 1 or t < 1:
        raise DomainError("euler_depth1 needs positive arguments")
    pieces = [((s + i, t - i), comb(s + i - 1, i)) for i in range(t)]
    pieces += [((t + j, s - j), comb(t + j - 1, j)) for j in range(s)]
    return accumulate_into(HVector, pieces)


# ---------------------------------------------------------------------------
# Shifted tensors and the recursive coproduct
# ---------------------------------------------------------------------------


def _identity_family(_: int, v: HVector) -> HVector:
    return v


@dataclass(frozen=True)
class ShiftedTensorOperator:
    """
    (A ⊗̌ f_i) on basis tensors: [s]⊗[t] ↦ A[s] ⊗ f_{i−dep(s)}[t].

    `left=None` is the identity.
    """

    index: int
    family: IndexedOperator
    left: Callable[[HVector], HVector] | None = None

    def __call__(self, t: HTensorVector) -> HTensorVector:
        pieces: list[tuple[tuple[Composition, Composition], Scalar]] = []
        for (s, u), c in t._terms.items():
            lefts = self.left(HVector.basis(s)) if self.left else HVector.basis(s)
            if not lefts:
                continue
            rights = self.family(self.index - len(s), HVector.basis(u))
            pieces.extend(
                ((ls, ru), c * cl * cr)
                for ls, cl in lefts._terms.items()
                for ru, cr in rights._terms.items()
            )
        return accumulate_into(HTensorVector, pieces)


def shifted_step(
    i: int, t: HTensorVector, family: IndexedOperator | None = None
) -> HTensorVector:
    """(id ⊗̌ f_i + f_i ⊗ id) with f = ∂̂ unless another family is given."""
    family = family or dhat
    shifted = ShiftedTensorOperator(i, family)
    plain = ShiftedTensorOperator(i, _identity_family, left=bind(family, i))
    return shifted(t) + plain(t)


def _deconcatenate_ones(k: int) -> HTensorVector:
    return HTensorVector._from_dict(
        {((1,) * j, (1,) * (k - j)): Fraction(1) for j in range(k + 1)}
    )


@memo()
def _coproduct_basis(s: Composition) -> HTensorVector:
    if all(e == 1 for e in s):
        return _deconcatenate_ones(len(s))
    j = max(p for p in range(1, len(s) + 1) if s[p - 1] >= 2)
    logger.debug("Δ̃ cache miss for {}, reducing at position {}", list(s), j)
    lowered = (*s[: j - 1], s[j - 1] - 1, *s[j:])
    return shifted_step(j, _coproduct_basis(lowered)) / (s[j - 1] - 1)


def coproduct(x: Composition | HVector) -> HTensorVector:
    if isinstance(x, HVector):
        return x.apply(_coproduct_basis, into=HTensorVector)
    return _coproduct_basis(as_composition(x))


def _reduction_orders(s: Composition) -> list[tuple[int, ...]]:
    raises = [p for p in range(1, len(s) + 1) for _ in range(s[p - 1] - 1)]
    if sum(s) <= EXHAUSTIVE_ORDER_WEIGHT:
        return sorted(set(permutations(raises)))
    return [tuple(raises), tuple(reversed(raises))]


def _coproduct_along(k: int, order: Iterable[int]) -> HTensorVector:
    current = [1] * k
    t = _deconcatenate_ones(k)
    for j in order:
        t = shifted_step(j, t) / current[j - 1]
        current[j - 1] += 1
    return t


def check_order_independence(s: Composition) -> bool:
    s = as_composition(s)
    results = [_coproduct_along(len(s), order) for order in _reduction_orders(s)]
    return all(r == results[0] for r in results[1:])


def deconcatenation(s: Composition) -> HTensorVector:
    """Naive deconcatenation of compositions; not a ⧢̃-algebra morphism."""
    return accumulate_into(
        HTensorVector, (((s[:i], s[i:]), 1) for i in range(len(s) + 1))
    )


# ---------------------------------------------------------------------------
# Descent from Chen fractions
# ---------------------------------------------------------------------------


def pi(f: ChenFraction) -> Composition:
    """π = ρ⁻¹ ∘ ψ ∘ φ."""
    return rho_inv(psi(phi(f)))


def pi_vector(v: FracVector) -> HVector:
    return accumulate_into(HVector, ((pi(f), c) for f, c in v._terms.items()))


def pi_tensor(t: FracTensorVector) -> HTensorVector:
    return accumulate_into(
        HTensorVector, (((pi(a), pi(b)), c) for (a, b), c in t._terms.items())
    )


def descended_coproduct(
    s: Composition, variables: Sequence[int] | None = None
) -> HTensorVector:
    s = as_composition(s)
    chosen = tuple(variables) if variables is not None else tuple(range(1, len(s) + 1))
    return pi_tensor(chen_coproduct(ChenFraction(s, chosen)))


# ---------------------------------------------------------------------------
# Counit and antipode
# ---------------------------------------------------------------------------


def counit(v: HVector) -> Fraction:
    return v.coeff(UNIT)


def _reduced_coproduct(s: Composition) -> HTensorVector:
    trivial = HTensorVector([((s, UNIT), 1), ((UNIT, s), 1)])
    reduced = coproduct(s) - trivial
    if any(not left or not right for left, right in reduced._terms):
        raise AssertionError(f"reduced coproduct of {s} has a unit factor")
    return reduced


@memo()
def _antipode_basis(s: Composition) -> HVector:
    if not s:
        return HVector.basis(UNIT)
    result = -HVector.basis(s)
    for (left, right), c in _reduced_coproduct(s)._terms.items():
        result = result - c * hshuffle(_antipode_basis(left), HVector.basis(right))
    return result


def antipode(v: HVector | Composition) -> HVector:
    if isinstance(v, HVector):
        return v.apply(_antipode_basis)
    return _antipode_basis(as_composition(v))


def convolve(
    f: Callable[[HVector], HVector], g: Callable[[HVector], HVector], s: Composition
) -> HVector:
    """(f ⋆ g)(s) = ⧢̃ ∘ (f⊗g) ∘ Δ̃(s)."""
    result = HVector.zero()
    for (left, right), c in coproduct(s)._terms.items():
        result = result + c * hshuffle(f(HVector.basis(left)), g(HVector.basis(right)))
    return result


# ---------------------------------------------------------------------------
# Verification suite
# ---------------------------------------------------------------------------

OPERATOR_INDICES = range(-1, 8)


def _expand_left(t: HTensorVector) -> HTripleTensor:
    return accumulate_into(
        HTripleTensor,
        (
            ((a, b, right), c * cab)
            for (left, right), c in t._terms.items()
            for (a, b), cab in coproduct(left)._terms.items()
        ),
    )


def _expand_right(t: HTensorVector) -> HTripleTensor:
    return accumulate_into(
        HTripleTensor,
        (
            ((left, a, b), c * cab)
            for (left, right), c in t._terms.items()
            for (a, b), cab in coproduct(right)._terms.items()
        ),
    )


def tensor_hshuffle(a: HTensorVector, b: HTensorVector) -> HTensorVector:
    """Componentwise product (l1⊗r1)·(l2⊗r2) = l1⧢̃l2 ⊗ r1⧢̃r2."""
    pieces = []
    for (l1, r1), c1 in a._terms.items():
        for (l2, r2), c2 in b._terms.items():
            lefts, rights = _hshuffle_basis(l1, l2), _hshuffle_basis(r1, r2)
            pieces.extend(
                ((lf, rt), c1 * c2 * x * y)
                for lf, x in lefts._terms.items()
                for rt, y in rights._terms.items()
            )
    return accumulate_into(HTensorVector, pieces)


def _operator_identities(s: Composition) -> bool:
    v = HVector.basis(s)
    indices = range(OPERATOR_INDICES.start, max(OPERATOR_INDICES.stop, len(s) + 3))
    for i in indices:
        if dhat(i, v) != delta(i, v) - delta(i - 1, v):
            return False
        partial_sum = HVector.zero()
        for j in range(1, i + 1):
            partial_sum = partial_sum + dhat(j, v)
        if delta(i, v) != partial_sum:
            return False
        for j in indices:
            if delta(i, delta(j, v)) != delta(j, delta(i, v)):
                return False
            if dhat(i, dhat(j, v)) != dhat(j, dhat(i, v)):
                return False
    return not s or build_via_dhat(s) == v


def _coassociative(s: Composition) -> bool:
    t = coproduct(s)
    return _expand_left(t) == _expand_right(t)


def _counital(s: Composition) -> bool:
    t = coproduct(s)
    left = accumulate_into(
        HVector, ((r, c) for (lf, r), c in t._terms.items() if not lf)
    )
    right = accumulate_into(
        HVector, ((lf, c) for (lf, r), c in t._terms.items() if not r)
    )
    return left == HVector.basis(s) == right


def _graded(s: Composition) -> bool:
    return all(sum(lf) + sum(r) == sum(s) for lf, r in coproduct(s)._terms)


def _pairs_of(total: int) -> list[tuple[Composition, Composition]]:
    return [
        (s, t)
        for ws in range(total + 1)
        for s in compositions_of(ws)
        for t in compositions_of(total - ws)
    ]


def _morphism(pair: tuple[Composition, Composition]) -> bool:
    s, t = pair
    return coproduct(_hshuffle_basis(s, t)) == tensor_hshuffle(
        coproduct(s), coproduct(t)
    )


def _coderivation(s: Composition) -> bool:
    t, v = coproduct(s), HVector.basis(s)
    for i in range(1, max(len(s) + 2, 7)):
        if coproduct(dhat(i, v)) != shifted_step(i, t):
            return False
        if coproduct(delta(i, v)) != shifted_step(i, t, family=delta):
            return False
    return True


def _antipode_identities(s: Composition) -> bool:
    unit = HVector.basis(UNIT) if not s else HVector.zero()
    return (
        convolve(antipode, lambda v: v, s) == unit
        and convolve(lambda v: v, antipode, s) == unit
    )


def _descends(s: Composition) -> bool:
    return coproduct(s) == descended_coproduct(s)


def _intertwines(s: Composition) -> bool:
    f = spread_fraction(s)
    return all(
        pi_vector(partial(f.variables[i - 1], f)) == delta(i, HVector.basis(s))
        for i in range(1, len(s) + 1)
    )


def _hopf_check(name: CheckName, weight: int) -> CheckResult:
    comps = compositions_of(weight)
    cases: dict[CheckName, Callable[[Composition], bool]] = {
        CheckName.OPERATORS: _operator_identities,
        CheckName.WELL_DEFINED: check_order_independence,
        CheckName.COASSOC: _coassociative,
        CheckName.COUNIT: _counital,
        CheckName.GRADING: _graded,
        CheckName.CODERIVATION: _coderivation,
        CheckName.ANTIPODE: _antipode_identities,
        CheckName.DESCENT: _descends,
        CheckName.INTERTWINING: _intertwines,
    }
    if name == CheckName.MORPHISM:
        return first_failure(
            name,
            weight,
            _pairs_of(weight),
            _morphism,
            lambda p: f"{composition_text(p[0])}, {composition_text(p[1])}",
        )
    if name not in cases:
        raise DomainError(f"{name} is not a composition Hopf algebra check")
    return first_failure(name, weight, comps, cases[name], composition_text)


def check_hopf(max_weight: int, *, jobs: int = 1) -> VerificationReport:
    """Exhaustively check the Hopf algebra axioms on compositions up to max_weight."""
    if max_weight < 1:
        raise DomainError("max_weight must be >= 1")
    checks: list[Check] = [
        bind(_hopf_check, name, w)
        for name in HOPF_CHECKS
        for w in range(max_weight + 1)
    ]
    report = VerificationReport(results=run_checks(checks, jobs))
    logger.info(
        "Hopf suite up to weight {}: {} checks, {} failed",
        max_weight,
        len(report.results),
        len(report.failures),
    )
    return report
