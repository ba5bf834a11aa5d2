from enum import StrEnum


class CheckName(StrEnum):
    # Shuffle Hopf algebra on compositions
    OPERATORS = "operators"  # δ/∂̂ identities and the generator formula
    WELL_DEFINED = "well_defined"  # Δ̃ independent of the reduction order
    COASSOC = "coassoc"
    COUNIT = "counit"
    GRADING = "grading"
    MORPHISM = "morphism"  # Δ̃ is a ⧢̃-algebra morphism
    CODERIVATION = "coderivation"  # shifted coderivation for ∂̂_i and δ_i
    ANTIPODE = "antipode"
    DESCENT = "descent"  # Δ̃ = (π⊗π)Δ^ch
    INTERTWINING = "intertwining"  # π∂ = δπ

    # Chen fraction locality Hopf algebra
    CHEN_COASSOC = "chen_coassoc"
    CHEN_COUNIT = "chen_counit"
    CHEN_GRADING = "chen_grading"
    CHEN_LOCALITY = "chen_locality"
    CHEN_CODERIVATION = "chen_coderivation"
    CHEN_HOMOMORPHISM = "chen_homomorphism"
    CHEN_LEIBNIZ = "chen_leibniz"
    CHEN_COMMUTING = "chen_commuting"
    CHEN_PRODUCT_ORACLE = "chen_product_oracle"
    CHEN_WELL_DEFINED = "chen_well_defined"


HOPF_CHECKS: tuple[CheckName, ...] = tuple(
    c for c in CheckName if not c.startswith("chen_")
)
CHEN_CHECKS: tuple[CheckName, ...] = tuple(
    c for c in CheckName if c.startswith("chen_")
)


CHECK_DESCRIPTIONS: dict[str, str] = {
    CheckName.OPERATORS: "δ, ∂̂ commute; δ_i = Σ_{j≤i} ∂̂_j; [s] rebuilt.",
    CheckName.WELL_DEFINED: "Δ̃ agrees along every reduction order.",
    CheckName.COASSOC: "(id⊗Δ̃)Δ̃ = (Δ̃⊗id)Δ̃.",
    CheckName.COUNIT: "(ε⊗id)Δ̃ = id = (id⊗ε)Δ̃.",
    CheckName.GRADING: "Every tensor term of Δ̃ splits the weight.",
    CheckName.MORPHISM: "Δ̃(a⧢̃b) = Δ̃(a)·Δ̃(b) with componentwise ⧢̃.",
    CheckName.CODERIVATION: "Δ̃∂̂_i, Δ̃δ_i obey the shifted coderivation rule.",
    CheckName.ANTIPODE: "S⋆id = id⋆S = unit∘counit.",
    CheckName.DESCENT: "Δ̃ equals the coproduct descended from Chen fractions.",
    CheckName.INTERTWINING: "π∘∂_{x_i} = δ_i∘π on Chen fractions.",
    CheckName.CHEN_COASSOC: "Δ^ch is coassociative.",
    CheckName.CHEN_COUNIT: "(ε⊗id)Δ^ch = id = (id⊗ε)Δ^ch.",
    CheckName.CHEN_GRADING: "Every tensor term of Δ^ch splits the weight.",
    CheckName.CHEN_LOCALITY: "Δ^ch stays inside the fraction's variables.",
    CheckName.CHEN_CODERIVATION: "Δ^ch∂_m = (id⊗∂_m + ∂_m⊗id)Δ^ch.",
    CheckName.CHEN_HOMOMORPHISM: "Δ^ch(f·g) = Δ^ch(f)·Δ^ch(g) on local pairs.",
    CheckName.CHEN_LEIBNIZ: "∂_m(f·g) = ∂_m(f)·g + f·∂_m(g) on local pairs.",
    CheckName.CHEN_COMMUTING: "∂_m∂_n = ∂_n∂_m.",
    CheckName.CHEN_PRODUCT_ORACLE: "Locality product equals the pointwise product.",
    CheckName.CHEN_WELL_DEFINED: "Δ^ch agrees for either reduction order.",
}
