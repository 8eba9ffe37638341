#pragma once

#include "inpk/formula.hpp"
#include "inpk/semantics.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace inpk {

/// Axiom schemas Ax1..Ax12 of the I^nP^k Hilbert system. Bx3 is the third
/// axiom of the classical {¬,→} system and is only admitted when checking
/// against AxiomSystem::Classical.
enum class AxiomId { Ax1 = 1, Ax2, Ax3, Ax4, Ax5, Ax6, Ax7, Ax8, Ax9, Ax10, Ax11, Ax12, Bx3 };

enum class AxiomSystem { InPk, Classical };

std::string to_string(AxiomId id);
/// "Ax1".."Ax12"; throws std::invalid_argument otherwise.
AxiomId parse_axiom_id(std::string_view text);

/// Metavariable names used in schema patterns.
inline constexpr std::string_view kPhi = "phi";
inline constexpr std::string_view kPsi = "psi";
inline constexpr std::string_view kTheta = "theta";

/// Map from metavariable to its instance.
using Substitution = std::map<std::string, Formula, std::less<>>;

/// Schema pattern over the metavariable atoms phi/psi/theta, fully expanded.
/// Ax5 and Ax6 depend on (n,k).
Formula axiom_pattern(AxiomId id, const LogicParams& params);
/// Metavariables occurring in the pattern, in phi/psi/theta order.
std::vector<std::string> axiom_metavariables(AxiomId id);

Formula instantiate(const Formula& pattern, const Substitution& subst);

/// One-way matching of `f` against the schema pattern.
std::optional<Substitution> match_axiom(const Formula& f, AxiomId id, const LogicParams& params);

struct AxiomJust {
    AxiomId schema;
    Substitution subst;
};
struct HypJust {
    std::size_t index;
};
/// Modus ponens: `major` proves minor → this, `minor` proves minor. Both are
/// 0-based line indices.
struct MpJust {
    std::size_t major;
    std::size_t minor;
};

using Justification = std::variant<AxiomJust, HypJust, MpJust>;

struct ProofLine {
    Formula formula;
    Justification just;
};

struct Proof {
    LogicParams params;
    std::vector<Formula> hypotheses;
    std::vector<ProofLine> lines;

    const Formula& conclusion() const { return lines.back().formula; }
};

struct CheckResult {
    bool accepted = true;
    std::size_t line = 0;  ///< 1-based; meaningful when rejected
    std::string reason;
};

CheckResult check(const Proof& proof, AxiomSystem system = AxiomSystem::InPk);

class ProofError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incremental proof construction. Lines are deduplicated by formula, so a
/// formula is derived at most once; finish() keeps only the lines the chosen
/// conclusion depends on.
class ProofBuilder {
public:
    using Ref = std::size_t;

    ProofBuilder(LogicParams params, std::vector<Formula> hypotheses, AxiomSystem system = AxiomSystem::InPk);

    const LogicParams& params() const noexcept { return params_; }
    const std::vector<Formula>& hypotheses() const noexcept { return hypotheses_; }
    const Formula& formula(Ref r) const { return lines_[r].formula; }
    std::size_t size() const noexcept { return lines_.size(); }

    /// Line for hypothesis `f`; throws ProofError when f is not a hypothesis.
    Ref hyp(const Formula& f);
    Ref axiom(AxiomId id, Substitution subst);
    /// `major` must be minor → X; yields X.
    Ref mp(Ref major, Ref minor);
    /// Chained modus ponens: major, then each minor in turn.
    Ref mp(Ref major, std::initializer_list<Ref> minors);
    /// Replays `sub` here. Its hypotheses must all be hypotheses of this
    /// builder, except those supplied through `cuts` (hypothesis formula ->
    /// line already in this builder).
    Ref include(const Proof& sub, const std::unordered_map<Formula, Ref>& cuts = {});
    /// Line already holding `f`, if any.
    std::optional<Ref> find(const Formula& f) const;

    /// Proof whose last line is `conclusion`; unused lines are dropped.
    Proof finish(Ref conclusion) const;

private:
    Ref push(Formula f, Justification j);

    LogicParams params_;
    std::vector<Formula> hypotheses_;
    AxiomSystem system_;
    std::vector<ProofLine> lines_;
    std::unordered_map<Formula, Ref> index_;
};

/// Deduction theorem: from a checking proof of Γ, φ ⊢ ψ (φ = hypotheses[discharge])
/// builds a checking proof of Γ ⊢ φ → ψ. Throws ProofError when the input
/// does not check or the index is out of range.
Proof deduction_transform(const Proof& proof, std::size_t discharge);

/// Same transformation without re-checking the input; the input must check.
Proof discharge_hypothesis(const Proof& proof, std::size_t discharge, AxiomSystem system = AxiomSystem::InPk);
/// Discharges the first hypothesis equal to `f`.
Proof discharge_hypothesis(const Proof& proof, const Formula& f, AxiomSystem system = AxiomSystem::InPk);

/// Proof with the hypothesis list widened to `hypotheses` (a superset of the
/// formulas actually used).
Proof weaken(const Proof& proof, std::vector<Formula> hypotheses);

/// Cut: hypothesis `f` of `proof` is replaced by the derivation `lemma`.
/// The result's hypotheses are proof's minus f plus lemma's (no duplicates).
Proof cut(const Proof& proof, const Formula& f, const Proof& lemma);

/// Renames atoms simultaneously in every formula and substitution of the proof.
Proof substitute_proof(const Proof& proof, const Substitution& atom_map);

/// Hilbert-level combinators working on lines of a builder. Each emits only
/// Ax1/Ax2 instances and modus ponens.
namespace glue {

using Ref = ProofBuilder::Ref;

/// ⊢ f → f
Ref refl(ProofBuilder& b, const Formula& f);
/// From line X, yields a → X (Ax1).
Ref lift(ProofBuilder& b, Ref line, const Formula& a);
/// From a → (x → y) and a → x, yields a → y (Ax2).
Ref mp_under(ProofBuilder& b, Ref major, Ref minor);
/// From φ → ψ and ψ → θ, yields φ → θ.
Ref trans(ProofBuilder& b, Ref first, Ref second);
/// From φ → (ψ → θ), yields ψ → (φ → θ).
Ref perm(ProofBuilder& b, Ref premise);
/// From (φ → ψ) → θ, yields ψ → θ.
Ref red(ProofBuilder& b, Ref premise);

}  // namespace glue

// Secondary rules. Inputs must check; outputs keep the inputs' hypotheses.

/// φ → (ψ → θ)  /  ψ → (φ → θ)
Proof rule_perm(const Proof& premise);
/// φ → ψ, ψ → θ  /  φ → θ
Proof rule_trans(const Proof& first, const Proof& second);
/// (φ → ψ) → θ  /  ψ → θ
Proof rule_red(const Proof& premise);

}  // namespace inpk
