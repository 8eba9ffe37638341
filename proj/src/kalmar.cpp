#include "inpk/kalmar.hpp"

#include "inpk/syntax.hpp"
#include "inpk/templates.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace inpk {

namespace {

using Ref = ProofBuilder::Ref;
using TI = TemplateId;

Substitution sub(const Formula& a) { return {{"phi", a}}; }
Substitution sub(const Formula& a, const Formula& b) { return {{"phi", a}, {"psi", b}}; }
Substitution sub(const Formula& a, const Formula& b, const Formula& c)
{
    return {{"phi", a}, {"psi", b}, {"theta", c}};
}

Ref T(ProofBuilder& b, TemplateId id, const Substitution& s) { return use_template(b, id, s); }

// (A ∧ B)° and (A ∧ B)*: A ∧ B is ¬©(A → ∼B).
Ref circ_of_land(ProofBuilder& b, const Formula& a, const Formula& c)
{
    const Formula inner = imp(a, strong_neg(c));
    Ref base = T(b, TI::CircOfClassical, sub(inner));
    return climb_circ(b, base, classicalize(inner), 1);
}

Ref star_of_land(ProofBuilder& b, const Formula& a, const Formula& c)
{
    const Formula inner = imp(a, strong_neg(c));
    Ref base = T(b, TI::StarOfClassical, sub(inner));
    return climb_star(b, base, classicalize(inner), 1);
}

class Lemma1 {
public:
    Lemma1(const LogicParams& params, const Valuation& v, ProofBuilder& b) : params_(params), v_(v), b_(b) {}

    Ref derive(const Formula& f)
    {
        if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
        Ref r = derive_uncached(f);
        memo_.emplace(f.id(), r);
        return r;
    }

private:
    TruthValue value(const Formula& f) { return eval(params_, f, v_); }

    // ψ = ¬^q α with α an atom; any other shape is a bug in the dispatch.
    std::size_t atom_core(const Formula& f, Formula& alpha)
    {
        std::size_t q = leading_negations(f, &alpha);
        if (!alpha.is_atom())
            throw std::logic_error("expected an iterated negation of an atom: " + render(f));
        return q;
    }

    Ref derive_uncached(const Formula& f)
    {
        switch (f.kind()) {
            case Formula::Kind::Atom: return derive_atom(f);
            case Formula::Kind::Neg: return derive_neg(f);
            case Formula::Kind::Imp: return derive_imp(f);
        }
        throw std::logic_error("unreachable");
    }

    Ref derive_atom(const Formula& a)
    {
        TruthValue val = value(a);
        if (val == TruthValue::F(0)) {
            Ref s = T(b_, TI::StrongToWeakNeg, sub(a));
            return b_.mp(s, {b_.hyp(star(a)), b_.hyp(strong_neg(a))});
        }
        if (!val.is_true()) {
            const unsigned r = val.index;
            const Formula top = neg_n(r, a);
            Ref e = T(b_, TI::NegOrElim, sub(top, neg_n(r - 1, a)));
            return b_.mp(e, {b_.hyp(star(top)), b_.hyp(neg(star(neg_n(r - 1, a))))});
        }
        if (val.index > 0) {
            Ref e = T(b_, TI::AndElimRight, sub(neg(a), a));
            return b_.mp(e, b_.hyp(land(neg(a), a)));
        }
        return b_.mp(b_.hyp(classicalize(a)), glue::refl(b_, a));
    }

    Ref derive_neg(const Formula& f)
    {
        const Formula& psi = f.body();
        TruthValue val = value(psi);
        if (!val.is_true()) return derive(psi);  // ψ^v already has the right number of ¬
        if (val.index > 0) {
            Formula alpha = psi;
            std::size_t q = atom_core(psi, alpha);
            Ref e = T(b_, TI::AndElimLeft, sub(neg_n(q + 1, alpha), neg_n(q, alpha)));
            return b_.mp(e, b_.hyp(land(neg_n(q + 1, alpha), neg_n(q, alpha))));
        }
        Ref c = circ_of_classical_valued(psi, false);
        Ref a10 = b_.axiom(AxiomId::Ax10, sub(psi));
        return b_.mp(a10, {c, derive(psi)});
    }

    // ψ° for ψ of value T0 or F0. The two value cases start the climb from
    // different hypotheses when the core atom sits at F_r.
    Ref circ_of_classical_valued(const Formula& psi, bool false_case)
    {
        Formula core = psi;
        std::size_t q = leading_negations(psi, &core);
        if (core.is_imp()) return derive_circ_of_implicative(b_, psi);

        const Formula& alpha = core;
        TruthValue av = value(alpha);
        if (av == TruthValue::F(0)) {
            Ref s = b_.mp(T(b_, TI::StrongNegToCirc, sub(alpha)), b_.hyp(strong_neg(alpha)));
            return climb_circ(b_, s, alpha, q);
        }
        if (!av.is_true()) {
            std::size_t j = false_case ? av.index - 1 : 0;
            const Formula base = neg_n(j, alpha);
            Ref s = b_.mp(T(b_, TI::NegStarToCirc, sub(base)), b_.hyp(neg(star(base))));
            return climb_circ(b_, s, base, q - j);
        }
        const Formula base = neg_n(av.index, alpha);
        return climb_circ(b_, b_.hyp(circ(base)), base, q - av.index);
    }

    Ref derive_imp(const Formula& f)
    {
        const Formula& psi = f.antecedent();
        const Formula& theta = f.consequent();
        TruthValue vp = value(psi);
        TruthValue vt = value(theta);

        if (vp == TruthValue::F(0)) {
            Ref c = circ_of_classical_valued(psi, true);
            Ref e = T(b_, TI::CircExplosion, sub(psi, theta));
            return b_.mp(e, {c, derive(psi)});
        }
        if (!vp.is_true()) {
            Formula alpha = psi;
            atom_core(psi, alpha);
            Ref e = T(b_, TI::NegStarExplosion, sub(psi, theta));
            return b_.mp(e, b_.hyp(neg(star(psi))));
        }
        if (vt.is_true()) return glue::lift(b_, derive(theta), psi);

        const Formula pt = imp(psi, theta);
        if (vt.index > 0) {
            Formula alpha = theta;
            atom_core(theta, alpha);
            Ref swapped = glue::perm(b_, glue::refl(b_, pt));
            Ref to_theta = b_.mp(swapped, derive(psi));
            Ref to_star = glue::trans(b_, to_theta, T(b_, TI::StarIntro, sub(theta)));
            Ref s = b_.axiom(AxiomId::Ax3, sub(psi, theta));
            Ref c = T(b_, TI::CircOfStar, sub(theta));
            Ref d = T(b_, TI::Contrapositive, sub(pt, star(theta)));
            return b_.mp(d, {s, c, to_star, b_.hyp(neg(star(theta)))});
        }
        Ref c = circ_of_classical_valued(theta, true);
        Ref e = T(b_, TI::NegImpIntro, sub(psi, theta));
        return b_.mp(e, {c, derive(psi), derive(theta)});
    }

    const LogicParams& params_;
    const Valuation& v_;
    ProofBuilder& b_;
    std::unordered_map<const void*, Ref> memo_;
};

// ---- merging ---------------------------------------------------------------

class Merger {
public:
    Merger(const LogicParams& params, const std::vector<Formula>& delta, const Formula& theta,
           const Proof& theta_star, const Proof& theta_circ)
        : params_(params), delta_(delta), theta_(theta), theta_star_(theta_star), theta_circ_(theta_circ)
    {
    }

    ProofBuilder builder(const std::vector<Formula>& extra) const
    {
        std::vector<Formula> hyps = delta_;
        hyps.insert(hyps.end(), extra.begin(), extra.end());
        return ProofBuilder(params_, std::move(hyps));
    }

    Ref theta_star(ProofBuilder& b) const { return b.include(theta_star_); }
    Ref theta_circ(ProofBuilder& b) const { return b.include(theta_circ_); }

    // From a proof over Δ ∪ extra, the proof of Δ ∪ (extra \ {h}) ⊢ h → θ.
    Proof discharge(const Proof& p, const Formula& h) const { return discharge_hypothesis(p, h); }

    // ¬θ → ¬X from ⊢ X* and a line X → θ.
    Ref contrapose(ProofBuilder& b, const Formula& x, Ref x_star, Ref x_to_theta) const
    {
        Ref d = T(b, TI::Contrapositive, sub(x, theta_));
        return b.mp(d, {x_star, theta_circ(b), x_to_theta});
    }

    // θ from ¬θ → X and ¬θ → ¬X, given ⊢ (¬X ∧ X)° and ⊢ X°.
    Ref refute_neg_theta(ProofBuilder& b, const Formula& x, Ref to_x, Ref to_not_x, Ref land_circ,
                         Ref x_circ) const
    {
        const Formula nt = neg(theta_);
        const Formula both = land(neg(x), x);
        Ref intro = glue::lift(b, T(b, TI::AndIntro, sub(neg(x), x)), nt);
        Ref step = glue::mp_under(b, intro, to_not_x);
        Ref to_both = glue::mp_under(b, step, to_x);
        Ref nt_star = b.mp(b.axiom(AxiomId::Ax11, sub(theta_)), theta_star(b));
        Ref d = T(b, TI::Contrapositive, sub(nt, both));
        Ref nnt = b.mp(d, {nt_star, land_circ, to_both, x_circ});
        return b.mp(b.axiom(AxiomId::Ax9, sub(theta_)), {theta_star(b), nnt});
    }

    const LogicParams& params_;
    const std::vector<Formula>& delta_;
    const Formula& theta_;
    const Proof& theta_star_;
    const Proof& theta_circ_;
};

void require_branch(const Proof& p, const Formula& theta, const std::vector<Formula>& allowed, std::size_t slot)
{
    const std::string where = "branch " + std::to_string(slot + 1) + ": ";
    if (p.lines.empty() || !(p.conclusion() == theta))
        throw ProofError(where + "conclusion is not " + render(theta));
    for (const auto& h : p.hypotheses) {
        if (std::find(allowed.begin(), allowed.end(), h) == allowed.end())
            throw ProofError(where + "unexpected hypothesis " + render(h));
    }
    if (auto r = check(p); !r.accepted)
        throw ProofError(where + "rejected at line " + std::to_string(r.line) + ": " + r.reason);
}

std::vector<Formula> concat(const std::vector<Formula>& a, const std::vector<Formula>& b)
{
    std::vector<Formula> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

std::vector<Formula> DeltaContext::delta() const
{
    std::vector<Formula> out;
    for (const auto& c : contexts) out.insert(out.end(), c.q_set.begin(), c.q_set.end());
    return out;
}

Formula phi_v(const LogicParams& params, const Formula& f, const Valuation& v)
{
    TruthValue val = eval(params, f, v);
    return val.is_true() ? f : neg_n(val.index + 1, f);
}

std::vector<Formula> build_q_set(const LogicParams& params, const Formula& alpha, TruthValue value)
{
    if (!in_range(params, value))
        throw RangeError("truth value " + to_string(value) + " is outside the carrier of (" +
                         std::to_string(params.n) + "," + std::to_string(params.k) + ")");
    std::vector<Formula> out;
    if (!value.is_true()) {
        if (value.index == 0) return {strong_neg(alpha), star(alpha)};
        for (unsigned j = 0; j < value.index; ++j) out.push_back(neg(star(neg_n(j, alpha))));
        out.push_back(star(neg_n(value.index, alpha)));
        return out;
    }
    if (value.index == 0) return {classicalize(alpha), circ(alpha)};
    for (unsigned j = 1; j <= value.index; ++j) out.push_back(land(neg_n(j, alpha), neg_n(j - 1, alpha)));
    out.push_back(circ(neg_n(value.index, alpha)));
    return out;
}

DeltaContext build_delta(const LogicParams& params, const Formula& f, const Valuation& v)
{
    DeltaContext ctx{params, v, {}};
    for (const auto& name : atoms(f)) {
        TruthValue val = v.at(name);
        ctx.contexts.push_back({name, val, build_q_set(params, atom(name), val)});
    }
    return ctx;
}

Proof lemma1_derive(const LogicParams& params, const Formula& f, const Valuation& v)
{
    DeltaContext ctx = build_delta(params, f, v);
    ProofBuilder b(params, ctx.delta());
    Lemma1 lemma(params, v, b);
    return b.finish(lemma.derive(f));
}

std::vector<std::vector<Formula>> case_blocks(const LogicParams& params, const Formula& psi)
{
    std::vector<std::vector<Formula>> blocks;
    for (unsigned r = 1; r <= params.n; ++r) blocks.push_back(build_q_set(params, psi, TruthValue::F(r)));
    for (unsigned i = 1; i <= params.k; ++i) blocks.push_back(build_q_set(params, psi, TruthValue::T(i)));
    blocks.push_back(build_q_set(params, psi, TruthValue::F(0)));
    blocks.push_back(build_q_set(params, psi, TruthValue::T(0)));
    return blocks;
}

Proof lemma2_combine(const LogicParams& params, const std::vector<Formula>& delta, const Formula& psi,
                     const Formula& theta, const std::vector<Proof>& branch_proofs, const Proof& theta_star,
                     const Proof& theta_circ)
{
    const unsigned n = params.n;
    const unsigned k = params.k;
    const auto blocks = case_blocks(params, psi);
    if (branch_proofs.size() != blocks.size())
        throw ProofError("expected " + std::to_string(blocks.size()) + " branch proofs, got " +
                         std::to_string(branch_proofs.size()));
    for (std::size_t j = 0; j < blocks.size(); ++j)
        require_branch(branch_proofs[j], theta, concat(delta, blocks[j]), j);
    if (!theta_star.hypotheses.empty() || !(theta_star.conclusion() == star(theta)))
        throw ProofError("theta_star must be a hypothesis-free proof of " + render(star(theta)));
    if (!theta_circ.hypotheses.empty() || !(theta_circ.conclusion() == circ(theta)))
        throw ProofError("theta_circ must be a hypothesis-free proof of " + render(circ(theta)));

    Merger m(params, delta, theta, theta_star, theta_circ);
    auto S = [&](unsigned j) { return star(neg_n(j, psi)); };
    auto N = [&](unsigned j) { return neg(star(neg_n(j, psi))); };
    auto C = [&](unsigned i) { return land(neg_n(i, psi), neg_n(i - 1, psi)); };
    auto O = [&](unsigned i) { return circ(neg_n(i, psi)); };
    auto prefix = [](const std::vector<Formula>& block, std::size_t count) {
        return std::vector<Formula>(block.begin(), block.begin() + static_cast<std::ptrdiff_t>(count));
    };
    const Formula strong = strong_neg(psi);
    const Formula classical = classicalize(psi);

    // (I): Δ, ∼ψ ⊢ θ.
    Proof part_one;
    {
        const std::vector<Formula>& last = blocks[n + k];  // ∼ψ, ψ*
        if (n == 0) {
            ProofBuilder b = m.builder({strong});
            Ref ax5 = b.axiom(AxiomId::Ax5, sub(psi));
            part_one = b.finish(b.include(branch_proofs[n + k], {{S(0), ax5}}));
        } else {
            // J_n: Δ, N_0..N_{n-1} ⊢ θ, the last S cut by Ax5.
            Proof ladder;
            {
                ProofBuilder b = m.builder(prefix(blocks[n - 1], n));
                Ref ax5 = b.axiom(AxiomId::Ax5, sub(psi));
                ladder = b.finish(b.include(branch_proofs[n - 1], {{S(n), ax5}}));
            }
            for (unsigned j = n; j >= 2; --j) {
                // Δ, N_0..N_{j-2}, S_{j-1} ⊢ θ and Δ, N_0..N_{j-1} ⊢ θ.
                const std::vector<Formula> common = prefix(blocks[j - 2], j - 1);
                Proof with_s = weaken(branch_proofs[j - 2], concat(delta, blocks[j - 2]));
                Proof s_to_theta = m.discharge(with_s, S(j - 1));
                Proof n_to_theta = m.discharge(ladder, N(j - 1));

                ProofBuilder b = m.builder(common);
                const Formula base = neg_n(j - 1, psi);
                Ref s_star = T(b, TI::StarOfStar, sub(base));
                Ref n_star = b.mp(b.axiom(AxiomId::Ax11, sub(S(j - 1))), s_star);
                Ref to_n = m.contrapose(b, S(j - 1), s_star, b.include(s_to_theta));
                Ref to_not_n = m.contrapose(b, N(j - 1), n_star, b.include(n_to_theta));
                Ref land_circ = circ_of_land(b, neg(N(j - 1)), N(j - 1));
                Ref n_circ = T(b, TI::CircOfNegStar, sub(base));
                ladder = b.finish(m.refute_neg_theta(b, N(j - 1), to_n, to_not_n, land_circ, n_circ));
            }
            // Merge Δ, ¬(ψ*) ⊢ θ with Δ, ∼ψ, ψ* ⊢ θ.
            Proof n0_to_theta = m.discharge(ladder, N(0));
            Proof s0_to_theta = m.discharge(weaken(branch_proofs[n + k], concat(delta, last)), S(0));
            ProofBuilder b = m.builder({strong});
            Ref e = T(b, TI::OrElim, sub(N(0), S(0), theta));
            Ref ss = T(b, TI::StarOfStar, sub(psi));
            part_one = b.finish(b.mp(e, {b.include(n0_to_theta), b.include(s0_to_theta), ss}));
        }
    }

    // (II): Δ, ©ψ ⊢ θ.
    Proof part_two;
    {
        const std::vector<Formula>& last = blocks[n + k + 1];  // ©ψ, ψ°
        if (k == 0) {
            ProofBuilder b = m.builder({classical});
            Ref ax6 = b.axiom(AxiomId::Ax6, sub(psi));
            part_two = b.finish(b.include(branch_proofs[n + k + 1], {{O(0), ax6}}));
        } else {
            // K_k: Δ, C_1..C_k ⊢ θ, O_k cut by Ax6.
            Proof ladder;
            {
                ProofBuilder b = m.builder(prefix(blocks[n + k - 1], k));
                Ref ax6 = b.axiom(AxiomId::Ax6, sub(psi));
                ladder = b.finish(b.include(branch_proofs[n + k - 1], {{O(k), ax6}}));
            }
            for (unsigned i = k; i >= 2; --i) {
                // O_{i-1} is ¬C_i, so the split is on C_i.
                const std::vector<Formula> common = prefix(blocks[n + i - 2], i - 1);
                Proof with_o = weaken(branch_proofs[n + i - 2], concat(delta, blocks[n + i - 2]));
                Proof not_c_to_theta = m.discharge(with_o, O(i - 1));
                Proof c_to_theta = m.discharge(ladder, C(i));

                ProofBuilder b = m.builder(common);
                Ref e = T(b, TI::OrElim, sub(neg(C(i)), C(i), theta));
                Ref c_star = star_of_land(b, neg_n(i, psi), neg_n(i - 1, psi));
                ladder = b.finish(b.mp(e, {b.include(not_c_to_theta), b.include(c_to_theta), c_star}));
            }
            // Δ ⊢ C_1 → θ and Δ, ©ψ ⊢ ψ° → θ; C_1 = ¬ψ∧ψ and ψ° = ¬C_1.
            Proof c1_to_theta = m.discharge(ladder, C(1));
            Proof o_to_theta = m.discharge(weaken(branch_proofs[n + k + 1], concat(delta, last)), O(0));
            ProofBuilder b = m.builder({classical});
            Ref c1_star = star_of_land(b, neg(psi), psi);
            Ref to_o = m.contrapose(b, C(1), c1_star, b.include(c1_to_theta));
            Ref o_star = climb_star(b, c1_star, C(1), 1);
            Ref to_not_o = m.contrapose(b, O(0), o_star, b.include(o_to_theta));
            Ref land_circ = circ_of_land(b, neg(O(0)), O(0));
            Ref o_circ = T(b, TI::CircOfCirc, sub(psi));
            part_two = b.finish(m.refute_neg_theta(b, O(0), to_o, to_not_o, land_circ, o_circ));
        }
    }

    ProofBuilder b = m.builder({});
    Ref e = T(b, TI::OrElim, sub(strong, classical, theta));
    Ref one = b.include(m.discharge(part_one, strong));
    Ref two = b.include(m.discharge(part_two, classical));
    Ref sc = T(b, TI::StarOfClassical, sub(psi));
    return b.finish(b.mp(e, {one, two, sc}));
}

Proof complete_prove(const LogicParams& params, const Formula& f, ProveStats* stats, const TraceSink& trace)
{
    if (auto verdict = is_tautology(params, f); !verdict.valid()) {
        throw NotTautology("not a tautology of (" + std::to_string(params.n) + "," + std::to_string(params.k) +
                               "): counterexample " + to_string(*verdict.counterexample),
                           *verdict.counterexample);
    }
    const std::vector<std::string> names = atoms(f);
    const std::size_t m = names.size();
    const std::size_t base = params.carrier_size();

    Proof fstar;
    Proof fcirc;
    {
        ProofBuilder b(params, {});
        fstar = b.finish(derive_star_of_implicative(b, f));
    }
    {
        ProofBuilder b(params, {});
        fcirc = b.finish(derive_circ_of_implicative(b, f));
    }

    // Keyed by the value codes of the atoms not yet eliminated.
    std::map<std::vector<std::size_t>, Proof> layer;
    std::size_t valuations = 0;
    enumerate_valuations(params, names, [&](const Valuation& v) {
        std::vector<std::size_t> key;
        for (const auto& name : names) key.push_back(value_code(params, v.at(name)));
        layer.emplace(std::move(key), lemma1_derive(params, f, v));
        ++valuations;
        return true;
    });
    if (stats) {
        stats->valuations = valuations;
        stats->classes_per_round.clear();
    }

    // Branch order of lemma2_combine: F_1..F_n, T_1..T_k, F_0, T_0.
    std::vector<TruthValue> order;
    for (unsigned r = 1; r <= params.n; ++r) order.push_back(TruthValue::F(r));
    for (unsigned i = 1; i <= params.k; ++i) order.push_back(TruthValue::T(i));
    order.push_back(TruthValue::F(0));
    order.push_back(TruthValue::T(0));

    for (std::size_t round = 0; round < m; ++round) {
        const Formula alpha = atom(names[round]);
        std::map<std::vector<std::size_t>, Proof> next;
        std::size_t class_id = 0;
        for (const auto& [key, proof] : layer) {
            if (key.front() != 0) continue;  // visit each class once, at its F0 member
            std::vector<std::size_t> rest(key.begin() + 1, key.end());

            std::vector<Formula> delta;
            for (std::size_t a = 0; a < rest.size(); ++a) {
                auto q = build_q_set(params, atom(names[round + 1 + a]), value_from_code(params, rest[a]));
                delta.insert(delta.end(), q.begin(), q.end());
            }
            std::vector<Proof> branches;
            for (TruthValue val : order) {
                std::vector<std::size_t> member = key;
                member.front() = value_code(params, val);
                branches.push_back(layer.at(member));
            }
            Proof merged = lemma2_combine(params, delta, alpha, f, branches, fstar, fcirc);
            if (trace) {
                trace("eliminate " + names[round] + " class " + std::to_string(class_id) + " lines " +
                      std::to_string(merged.lines.size()));
            }
            next.emplace(std::move(rest), std::move(merged));
            ++class_id;
        }
        std::size_t expected = 1;
        for (std::size_t i = round + 1; i < m; ++i) expected *= base;
        if (class_id != expected)
            throw std::logic_error("class count " + std::to_string(class_id) + " differs from " +
                                   std::to_string(expected));
        if (stats) stats->classes_per_round.push_back(class_id);
        layer = std::move(next);
    }

    Proof result = layer.begin()->second;
    if (auto r = check(result); !r.accepted || !result.hypotheses.empty() || !(result.conclusion() == f))
        throw std::logic_error("synthesized proof failed verification at line " + std::to_string(r.line) + ": " +
                               r.reason);
    return result;
}

}  // namespace inpk
