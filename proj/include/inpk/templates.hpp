#pragma once

#include "inpk/formula.hpp"
#include "inpk/proof.hpp"
#include "inpk/semantics.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace inpk {

/// Theorem schemas of the I^nP^k system that come with a fixed derivation.
enum class TemplateId {
    Identity,            ///< φ → φ
    StarOfStar,          ///< (φ*)*
    CircOfStar,          ///< (φ*)°
    StarOfClassical,     ///< (©φ)*
    CircOfClassical,     ///< (©φ)°
    ClassicalIntro,      ///< φ → ©φ
    ClassicalElim,       ///< ©φ → φ
    StrongToWeakNeg,     ///< φ* → (∼φ → ¬φ)
    NegContrapositive,   ///< φ* → [ψ° → ((¬φ → ¬ψ) → (ψ → φ))]
    Contrapositive,      ///< φ* → [ψ° → ((φ → ψ) → (¬ψ → ¬φ))]
    ClassicalReductio,   ///< (∼φ → ∼ψ) → ((∼φ → ©ψ) → ©φ)
    StrongReductio,      ///< (∼φ → ∼ψ) → ((∼φ → ψ) → φ)
    OrIntroLeft,         ///< φ → φ ∨ ψ
    OrIntroRight,        ///< ψ → φ ∨ ψ
    AndElimLeft,         ///< φ ∧ ψ → φ
    AndElimRight,        ///< φ ∧ ψ → ψ
    OrElim,              ///< (φ → θ) → ((ψ → θ) → (φ ∨ ψ → θ))
    AndIntro,            ///< φ → (ψ → φ ∧ ψ)
    AndToOr,             ///< φ ∧ ψ → φ ∨ ψ
    StarIntro,           ///< φ → φ*
    CircExplosion,       ///< φ° → (¬φ → (φ → ψ))
    CircOfCirc,          ///< (φ°)°
    NegStarToCirc,       ///< ¬(φ*) → φ°
    StrongNegToCirc,     ///< ∼φ → φ°
    NegOrElim,           ///< φ* → (¬(φ ∨ ψ) → ¬φ)
    NegImpIntro,         ///< ψ° → (φ → (¬ψ → ¬(φ → ψ)))
    StarOfNegImp,        ///< (¬(φ → ψ))*
    CircOfNegImp,        ///< (¬(φ → ψ))°
    CircOfNegStar,       ///< (¬(φ*))°
    NegStarExplosion,    ///< ¬(φ*) → (φ → ψ)
};

struct TemplateInfo {
    TemplateId id;
    std::string_view name;
    std::vector<std::string> metavariables;
};

std::span<const TemplateInfo> all_templates();
const TemplateInfo& template_info(TemplateId id);
/// Throws std::invalid_argument for unknown names.
TemplateId parse_template_id(std::string_view name);

class TemplateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Statement of the template with its metavariables replaced per `subst`.
Formula template_statement(TemplateId id, const Substitution& subst);

/// Hypothesis-free proof of template_statement(id, subst) in the logic `params`.
/// Throws TemplateError when a metavariable is unbound.
Proof derive_template(TemplateId id, const Substitution& subst, const LogicParams& params);

/// Emits a derivation of the instance into `b` and returns its line.
ProofBuilder::Ref use_template(ProofBuilder& b, TemplateId id, const Substitution& subst);

/// For f = ¬^q(a → b): derivations of f* and f° from Ax3/Ax4 and q uses of
/// Ax11/Ax12. Throws TemplateError for other shapes. Every tautology has this
/// shape.
ProofBuilder::Ref derive_star_of_implicative(ProofBuilder& b, const Formula& f);
ProofBuilder::Ref derive_circ_of_implicative(ProofBuilder& b, const Formula& f);

/// From a line holding base°, derives (¬^steps base)° by Ax12.
ProofBuilder::Ref climb_circ(ProofBuilder& b, ProofBuilder::Ref line, const Formula& base, std::size_t steps);
/// From a line holding base*, derives (¬^steps base)* by Ax11.
ProofBuilder::Ref climb_star(ProofBuilder& b, ProofBuilder::Ref line, const Formula& base, std::size_t steps);

}  // namespace inpk
