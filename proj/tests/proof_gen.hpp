// Random checking proofs with hypotheses, for deduction-theorem tests.
#pragma once

#include "inpk/proof.hpp"
#include "oracle.hpp"

#include <random>

namespace oracle {

inline inpk::Substitution random_subst(std::mt19937& rng, inpk::AxiomId id, std::size_t max_c,
                                       const std::vector<Formula>& atoms)
{
    inpk::Substitution s;
    for (const auto& v : inpk::axiom_metavariables(id)) s.emplace(v, random_formula_upto(rng, max_c, atoms));
    return s;
}

// Mixes hypotheses, axiom instances, Ax1 lifts of earlier lines and every
// modus ponens that happens to apply. Ends on a random line.
inline inpk::Proof random_proof(std::mt19937& rng, const LogicParams& params, std::size_t hyp_count,
                                std::size_t steps, const std::vector<Formula>& atoms)
{
    using namespace inpk;
    std::vector<Formula> hyps;
    for (std::size_t i = 0; i < hyp_count; ++i) hyps.push_back(random_formula_upto(rng, 3, atoms));
    // Some hypotheses are implications between earlier ones so that MP fires.
    if (hyp_count >= 2) hyps[1] = imp(hyps[0], random_formula_upto(rng, 2, atoms));

    Proof proof{params, hyps, {}};
    auto push = [&](Formula f, Justification j) { proof.lines.push_back({std::move(f), std::move(j)}); };
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    for (std::size_t s = 0; s < steps; ++s) {
        int move = std::uniform_int_distribution<int>(0, 3)(rng);
        if (proof.lines.empty() || move == 0) {
            if (!hyps.empty() && pick(2) == 0) {
                std::size_t h = pick(hyps.size());
                push(hyps[h], HypJust{h});
            } else {
                AxiomId id = pick(2) == 0 ? AxiomId::Ax1 : static_cast<AxiomId>(1 + pick(12));
                auto sub = random_subst(rng, id, 2, atoms);
                push(instantiate(axiom_pattern(id, params), sub), AxiomJust{id, sub});
            }
        } else if (move == 1) {
            std::size_t i = pick(proof.lines.size());
            Formula x = proof.lines[i].formula;
            Formula y = random_formula_upto(rng, 2, atoms);
            Substitution sub{{"phi", x}, {"psi", y}};
            push(instantiate(axiom_pattern(AxiomId::Ax1, params), sub), AxiomJust{AxiomId::Ax1, sub});
            push(imp(y, x), MpJust{proof.lines.size() - 1, i});
        } else {
            std::vector<std::pair<std::size_t, std::size_t>> options;
            for (std::size_t a = 0; a < proof.lines.size(); ++a) {
                const Formula& f = proof.lines[a].formula;
                if (!f.is_imp()) continue;
                for (std::size_t b = 0; b < proof.lines.size(); ++b) {
                    if (proof.lines[b].formula == f.antecedent()) options.emplace_back(a, b);
                }
            }
            if (options.empty()) continue;
            auto [a, b] = options[pick(options.size())];
            push(proof.lines[a].formula.consequent(), MpJust{a, b});
        }
    }
    if (proof.lines.empty()) {
        Substitution sub{{"phi", atoms[0]}, {"psi", atoms[0]}};
        push(instantiate(axiom_pattern(AxiomId::Ax1, params), sub), AxiomJust{AxiomId::Ax1, sub});
    }
    // Finish on a random line so the conclusion varies.
    std::size_t last = pick(proof.lines.size());
    proof.lines.push_back(proof.lines[last]);
    return proof;
}

}  // namespace oracle
