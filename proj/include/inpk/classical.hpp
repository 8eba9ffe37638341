#pragma once

#include "inpk/formula.hpp"
#include "inpk/proof.hpp"
#include "inpk/semantics.hpp"

#include <optional>
#include <stdexcept>

namespace inpk {

class NotClassicalTautology : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Replaces every ¬ by strong negation ∼.
Formula strong_translation(const Formula& f);

/// Inverse of strong_translation: the formula whose translation is `f`, or
/// nothing when `f` contains a ¬ that is not the head of a ∼.
std::optional<Formula> strong_preimage(const Formula& f);

/// Hilbert proof of a two-valued tautology from Ax1, Ax2, Bx3 and modus ponens
/// (the classical Kalmár construction). Check it with AxiomSystem::Classical.
/// Throws NotClassicalTautology when `f` is refuted in the (0,0) matrix.
Proof classical_kalmar(const Formula& f);

/// Maps a classical proof into the logic `params` by rewriting ¬ as ∼ line by
/// line; Bx3 lines become derivations of (∼φ→∼ψ)→((∼φ→ψ)→φ).
Proof translate_classical_proof(const Proof& classical, const LogicParams& params);

/// Proof in the logic `params` of a formula that is the ∼-translation of a
/// classical tautology. Throws NotClassicalTautology otherwise.
Proof classical_prove(const LogicParams& params, const Formula& f);

}  // namespace inpk
