#pragma once

#include "inpk/formula.hpp"
#include "inpk/proof.hpp"
#include "inpk/semantics.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace inpk {

class NotTautology : public std::invalid_argument {
public:
    NotTautology(const std::string& what, Valuation counterexample)
        : std::invalid_argument(what), counterexample_(std::move(counterexample))
    {
    }
    const Valuation& counterexample() const noexcept { return counterexample_; }

private:
    Valuation counterexample_;
};

struct AtomContext {
    std::string atom;
    TruthValue value;
    std::vector<Formula> q_set;
};

struct DeltaContext {
    LogicParams params;
    Valuation valuation;
    std::vector<AtomContext> contexts;

    /// Union of the q-sets in atom order.
    std::vector<Formula> delta() const;
};

/// f itself when v(f) is designated, ¬^{r+1} f when v(f) = F_r.
Formula phi_v(const LogicParams& params, const Formula& f, const Valuation& v);

/// The hypotheses recording that `alpha` takes `value`:
///   F_0: ∼α, α*
///   F_r: ¬(α*), ¬((¬α)*), …, ¬((¬^{r-1}α)*), (¬^r α)*
///   T_0: ©α, α°
///   T_i: ¬α∧α, ¬²α∧¬α, …, ¬^i α∧¬^{i-1}α, (¬^i α)°
/// Throws RangeError when the value is outside the carrier.
std::vector<Formula> build_q_set(const LogicParams& params, const Formula& alpha, TruthValue value);

/// Contexts for the atoms of f (first-occurrence order) under v.
DeltaContext build_delta(const LogicParams& params, const Formula& f, const Valuation& v);

/// Proof of Δ_f^v ⊢ f^v. Its hypothesis list is exactly build_delta(...).delta().
Proof lemma1_derive(const LogicParams& params, const Formula& f, const Valuation& v);

/// Hypothesis blocks for the case split on ψ, in branch order: F_1..F_n,
/// T_1..T_k, F_0, T_0. Block j is build_q_set of the matching value.
std::vector<std::vector<Formula>> case_blocks(const LogicParams& params, const Formula& psi);

/// Merges the n+k+2 branch proofs Δ ∪ block_j ⊢ θ into Δ ⊢ θ. `theta_star` and
/// `theta_circ` are hypothesis-free proofs of θ* and θ°. The result's hypothesis
/// list is `delta`. Throws ProofError when a branch does not fit its slot.
Proof lemma2_combine(const LogicParams& params, const std::vector<Formula>& delta, const Formula& psi,
                     const Formula& theta, const std::vector<Proof>& branch_proofs, const Proof& theta_star,
                     const Proof& theta_circ);

struct ProveStats {
    std::size_t valuations = 0;
    /// Number of classes merged in each elimination round, first atom first.
    std::vector<std::size_t> classes_per_round;
};

using TraceSink = std::function<void(const std::string&)>;

/// Hypothesis-free proof of a tautology of the logic, built valuation by
/// valuation and merged one atom at a time. The result is checked before it is
/// returned. Throws NotTautology with a counterexample otherwise.
Proof complete_prove(const LogicParams& params, const Formula& f, ProveStats* stats = nullptr,
                     const TraceSink& trace = {});

}  // namespace inpk
