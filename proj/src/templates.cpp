#include "inpk/templates.hpp"

#include "inpk/classical.hpp"
#include "inpk/syntax.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace inpk {

namespace {

using Ref = ProofBuilder::Ref;

const std::vector<TemplateInfo>& registry()
{
    using T = TemplateId;
    static const std::vector<TemplateInfo> infos{
        {T::Identity, "identity", {"phi"}},
        {T::StarOfStar, "star_of_star", {"phi"}},
        {T::CircOfStar, "circ_of_star", {"phi"}},
        {T::StarOfClassical, "star_of_classical", {"phi"}},
        {T::CircOfClassical, "circ_of_classical", {"phi"}},
        {T::ClassicalIntro, "classical_intro", {"phi"}},
        {T::ClassicalElim, "classical_elim", {"phi"}},
        {T::StrongToWeakNeg, "strong_to_weak_neg", {"phi"}},
        {T::NegContrapositive, "neg_contrapositive", {"phi", "psi"}},
        {T::Contrapositive, "contrapositive", {"phi", "psi"}},
        {T::ClassicalReductio, "classical_reductio", {"phi", "psi"}},
        {T::StrongReductio, "strong_reductio", {"phi", "psi"}},
        {T::OrIntroLeft, "or_intro_left", {"phi", "psi"}},
        {T::OrIntroRight, "or_intro_right", {"phi", "psi"}},
        {T::AndElimLeft, "and_elim_left", {"phi", "psi"}},
        {T::AndElimRight, "and_elim_right", {"phi", "psi"}},
        {T::OrElim, "or_elim", {"phi", "psi", "theta"}},
        {T::AndIntro, "and_intro", {"phi", "psi"}},
        {T::AndToOr, "and_to_or", {"phi", "psi"}},
        {T::StarIntro, "star_intro", {"phi"}},
        {T::CircExplosion, "circ_explosion", {"phi", "psi"}},
        {T::CircOfCirc, "circ_of_circ", {"phi"}},
        {T::NegStarToCirc, "neg_star_to_circ", {"phi"}},
        {T::StrongNegToCirc, "strong_neg_to_circ", {"phi"}},
        {T::NegOrElim, "neg_or_elim", {"phi", "psi"}},
        {T::NegImpIntro, "neg_imp_intro", {"phi", "psi"}},
        {T::StarOfNegImp, "star_of_neg_imp", {"phi", "psi"}},
        {T::CircOfNegImp, "circ_of_neg_imp", {"phi", "psi"}},
        {T::CircOfNegStar, "circ_of_neg_star", {"phi"}},
        {T::NegStarExplosion, "neg_star_explosion", {"phi", "psi"}},
    };
    return infos;
}

Substitution sub(const Formula& a) { return {{"phi", a}}; }
Substitution sub(const Formula& a, const Formula& b) { return {{"phi", a}, {"psi", b}}; }

Formula statement_over(TemplateId id, const Formula& P, const Formula& Q, const Formula& R)
{
    using T = TemplateId;
    switch (id) {
        case T::Identity: return imp(P, P);
        case T::StarOfStar: return star(star(P));
        case T::CircOfStar: return circ(star(P));
        case T::StarOfClassical: return star(classicalize(P));
        case T::CircOfClassical: return circ(classicalize(P));
        case T::ClassicalIntro: return imp(P, classicalize(P));
        case T::ClassicalElim: return imp(classicalize(P), P);
        case T::StrongToWeakNeg: return imp(star(P), imp(strong_neg(P), neg(P)));
        case T::NegContrapositive:
            return imp(star(P), imp(circ(Q), imp(imp(neg(P), neg(Q)), imp(Q, P))));
        case T::Contrapositive:
            return imp(star(P), imp(circ(Q), imp(imp(P, Q), imp(neg(Q), neg(P)))));
        case T::ClassicalReductio:
            return imp(imp(strong_neg(P), strong_neg(Q)),
                       imp(imp(strong_neg(P), classicalize(Q)), classicalize(P)));
        case T::StrongReductio:
            return imp(imp(strong_neg(P), strong_neg(Q)), imp(imp(strong_neg(P), Q), P));
        case T::OrIntroLeft: return imp(P, lor(P, Q));
        case T::OrIntroRight: return imp(Q, lor(P, Q));
        case T::AndElimLeft: return imp(land(P, Q), P);
        case T::AndElimRight: return imp(land(P, Q), Q);
        case T::OrElim: return imp(imp(P, R), imp(imp(Q, R), imp(lor(P, Q), R)));
        case T::AndIntro: return imp(P, imp(Q, land(P, Q)));
        case T::AndToOr: return imp(land(P, Q), lor(P, Q));
        case T::StarIntro: return imp(P, star(P));
        case T::CircExplosion: return imp(circ(P), imp(neg(P), imp(P, Q)));
        case T::CircOfCirc: return circ(circ(P));
        case T::NegStarToCirc: return imp(neg(star(P)), circ(P));
        case T::StrongNegToCirc: return imp(strong_neg(P), circ(P));
        case T::NegOrElim: return imp(star(P), imp(neg(lor(P, Q)), neg(P)));
        case T::NegImpIntro: return imp(circ(Q), imp(P, imp(neg(Q), neg(imp(P, Q)))));
        case T::StarOfNegImp: return star(neg(imp(P, Q)));
        case T::CircOfNegImp: return circ(neg(imp(P, Q)));
        case T::CircOfNegStar: return circ(neg(star(P)));
        case T::NegStarExplosion: return imp(neg(star(P)), imp(P, Q));
    }
    throw TemplateError("unknown template");
}

// Discharges every hypothesis, last first.
Proof discharge_all(Proof p)
{
    while (!p.hypotheses.empty()) p = discharge_hypothesis(p, p.hypotheses.size() - 1);
    return p;
}

Ref T(ProofBuilder& b, TemplateId id, Substitution s) { return use_template(b, id, s); }

Proof build_schematic(TemplateId id, const LogicParams& params)
{
    using TI = TemplateId;
    const Formula P = atom("phi");
    const Formula Q = atom("psi");
    const Formula R = atom("theta");
    const Formula notP = neg(P);

    switch (id) {
        case TI::Identity: {
            ProofBuilder b(params, {});
            return b.finish(glue::refl(b, P));
        }
        case TI::StarOfStar:
        case TI::CircOfStar: {
            ProofBuilder b(params, {});
            AxiomId ax = id == TI::StarOfStar ? AxiomId::Ax3 : AxiomId::Ax4;
            return b.finish(b.axiom(ax, sub(strong_neg(notP), P)));
        }
        case TI::StarOfClassical:
        case TI::CircOfClassical: {
            ProofBuilder b(params, {});
            AxiomId ax = id == TI::StarOfClassical ? AxiomId::Ax3 : AxiomId::Ax4;
            return b.finish(b.axiom(ax, sub(imp(P, P), P)));
        }
        case TI::ClassicalIntro: {
            ProofBuilder b(params, {});
            return b.finish(b.axiom(AxiomId::Ax1, sub(P, imp(P, P))));
        }
        case TI::ClassicalElim: {
            ProofBuilder b(params, {classicalize(P)});
            Ref h = b.hyp(classicalize(P));
            return discharge_all(b.finish(b.mp(h, glue::refl(b, P))));
        }
        case TI::StrongToWeakNeg: {
            ProofBuilder b(params, {star(P)});
            Ref h = b.hyp(star(P));
            Ref c = T(b, TI::CircOfClassical, sub(P));
            Ref a8 = b.axiom(AxiomId::Ax8, sub(P, classicalize(P)));
            Ref m = b.mp(a8, {h, c});
            Ref swapped = glue::perm(b, m);
            Ref m2 = b.mp(swapped, T(b, TI::ClassicalIntro, sub(P)));
            Ref a1 = b.axiom(AxiomId::Ax1, sub(strong_neg(P), P));
            return discharge_all(b.finish(glue::trans(b, a1, m2)));
        }
        case TI::NegContrapositive: {
            ProofBuilder b(params, {star(P), circ(Q), imp(notP, neg(Q)), Q});
            Ref a1 = b.axiom(AxiomId::Ax1, sub(Q, notP));
            Ref m6 = b.mp(a1, b.hyp(Q));
            Ref a7 = b.axiom(AxiomId::Ax7, sub(P, Q));
            Ref m8 = b.mp(a7, {b.hyp(star(P)), b.hyp(circ(Q))});
            Ref m10 = b.mp(m8, {b.hyp(imp(notP, neg(Q))), m6});
            return discharge_all(b.finish(m10));
        }
        case TI::Contrapositive: {
            ProofBuilder b(params, {star(P), circ(Q), imp(P, Q), neg(Q)});
            Ref a8 = b.axiom(AxiomId::Ax8, sub(P, Q));
            Ref m = b.mp(a8, {b.hyp(star(P)), b.hyp(circ(Q))});
            Ref a1 = b.axiom(AxiomId::Ax1, sub(neg(Q), P));
            Ref m2 = b.mp(a1, b.hyp(neg(Q)));
            return discharge_all(b.finish(b.mp(m, {m2, b.hyp(imp(P, Q))})));
        }
        case TI::ClassicalReductio: {
            ProofBuilder b(params, {});
            Ref s = T(b, TI::StarOfClassical, sub(P));
            Ref c = T(b, TI::CircOfClassical, sub(Q));
            Ref a7 = b.axiom(AxiomId::Ax7, sub(classicalize(P), classicalize(Q)));
            return b.finish(b.mp(a7, {s, c}));
        }
        case TI::StrongReductio: {
            ProofBuilder b(params, {imp(strong_neg(P), strong_neg(Q)), imp(strong_neg(P), Q)});
            Ref h1 = b.hyp(imp(strong_neg(P), strong_neg(Q)));
            Ref h2 = b.hyp(imp(strong_neg(P), Q));
            Ref t = glue::trans(b, h2, T(b, TI::ClassicalIntro, sub(Q)));
            Ref m = b.mp(T(b, TI::ClassicalReductio, sub(P, Q)), {h1, t});
            return discharge_all(b.finish(b.mp(T(b, TI::ClassicalElim, sub(P)), m)));
        }
        case TI::OrIntroLeft:
        case TI::OrIntroRight:
        case TI::AndElimLeft:
        case TI::AndElimRight:
        case TI::OrElim:
        case TI::AndIntro:
        case TI::AndToOr: return classical_prove(params, statement_over(id, P, Q, R));
        case TI::StarIntro: {
            ProofBuilder b(params, {});
            return b.finish(T(b, TI::OrIntroRight, sub(notP, P)));
        }
        case TI::CircExplosion: {
            ProofBuilder b(params, {circ(P), notP});
            Ref h0 = b.hyp(circ(P));
            Ref h1 = b.hyp(notP);
            const Formula np_q = imp(notP, Q);
            Ref s = b.axiom(AxiomId::Ax3, sub(notP, Q));
            Ref c = T(b, TI::NegContrapositive, sub(np_q, P));
            Ref m5 = b.mp(c, {s, h0});
            Ref a1 = b.axiom(AxiomId::Ax1, sub(notP, neg(np_q)));
            Ref m7 = b.mp(a1, h1);
            Ref m8 = b.mp(m5, m7);
            Ref p9 = glue::perm(b, m8);
            return discharge_all(b.finish(b.mp(p9, h1)));
        }
        case TI::CircOfCirc: {
            ProofBuilder b(params, {});
            const Formula inner = imp(notP, strong_neg(P));
            Ref c1 = T(b, TI::CircOfClassical, sub(inner));
            Ref m2 = b.mp(b.axiom(AxiomId::Ax12, sub(classicalize(inner))), c1);
            return b.finish(b.mp(b.axiom(AxiomId::Ax12, sub(land(notP, P))), m2));
        }
        case TI::NegStarToCirc: {
            ProofBuilder b(params, {});
            const Formula inner = imp(notP, strong_neg(P));
            Ref c1 = T(b, TI::CircOfStar, sub(P));
            Ref s2 = T(b, TI::StarOfClassical, sub(inner));
            Ref s3 = b.mp(b.axiom(AxiomId::Ax11, sub(classicalize(inner))), s2);
            Ref d = T(b, TI::Contrapositive, sub(land(notP, P), star(P)));
            Ref m5 = b.mp(d, {s3, c1});
            return b.finish(b.mp(m5, T(b, TI::AndToOr, sub(notP, P))));
        }
        case TI::StrongNegToCirc: {
            ProofBuilder b(params, {});
            const Formula inner = imp(notP, strong_neg(P));
            Ref d = T(b, TI::Contrapositive, sub(land(notP, P), classicalize(P)));
            Ref b2 = T(b, TI::AndElimRight, sub(notP, P));
            Ref t4 = glue::trans(b, b2, T(b, TI::ClassicalIntro, sub(P)));
            Ref c5 = T(b, TI::CircOfClassical, sub(P));
            Ref s6 = T(b, TI::StarOfClassical, sub(inner));
            Ref s8 = b.mp(b.axiom(AxiomId::Ax11, sub(classicalize(inner))), s6);
            return b.finish(b.mp(d, {s8, c5, t4}));
        }
        case TI::NegOrElim: {
            ProofBuilder b(params, {star(P)});
            Ref c2 = b.axiom(AxiomId::Ax4, sub(strong_neg(P), Q));
            Ref d = T(b, TI::Contrapositive, sub(P, lor(P, Q)));
            Ref m4 = b.mp(d, {b.hyp(star(P)), c2});
            return discharge_all(b.finish(b.mp(m4, T(b, TI::OrIntroLeft, sub(P, Q)))));
        }
        case TI::NegImpIntro: {
            ProofBuilder b(params, {circ(Q)});
            const Formula pq = imp(P, Q);
            Ref s = b.axiom(AxiomId::Ax3, sub(P, Q));
            Ref d = T(b, TI::Contrapositive, sub(pq, Q));
            Ref m4 = b.mp(d, {s, b.hyp(circ(Q))});
            Ref p6 = glue::perm(b, glue::refl(b, pq));
            return discharge_all(b.finish(glue::trans(b, p6, m4)));
        }
        case TI::StarOfNegImp: {
            ProofBuilder b(params, {});
            Ref s = b.axiom(AxiomId::Ax3, sub(P, Q));
            return b.finish(b.mp(b.axiom(AxiomId::Ax11, sub(imp(P, Q))), s));
        }
        case TI::CircOfNegImp: {
            ProofBuilder b(params, {});
            Ref c = b.axiom(AxiomId::Ax4, sub(P, Q));
            return b.finish(b.mp(b.axiom(AxiomId::Ax12, sub(imp(P, Q))), c));
        }
        case TI::CircOfNegStar: {
            ProofBuilder b(params, {});
            return b.finish(T(b, TI::CircOfNegImp, sub(strong_neg(notP), P)));
        }
        case TI::NegStarExplosion: {
            ProofBuilder b(params, {neg(star(P)), P});
            Ref m4 = b.mp(T(b, TI::StarIntro, sub(P)), b.hyp(P));
            Ref c5 = T(b, TI::CircOfStar, sub(P));
            Ref b6 = T(b, TI::CircExplosion, sub(star(P), Q));
            return discharge_all(b.finish(b.mp(b6, {c5, b.hyp(neg(star(P))), m4})));
        }
    }
    throw TemplateError("unknown template");
}

// No template derivation uses Ax5 or Ax6, so one schematic proof serves every
// (n,k); it is built in (0,0) and replayed into the caller's builder.
const Proof& schematic(TemplateId id)
{
    static std::recursive_mutex mutex;
    static std::map<TemplateId, Proof> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, build_schematic(id, LogicParams{0, 0})).first;
    return it->second;
}

Substitution restrict_to(const TemplateInfo& info, const Substitution& subst)
{
    Substitution out;
    for (const auto& var : info.metavariables) {
        auto it = subst.find(var);
        if (it == subst.end())
            throw TemplateError("template " + std::string(info.name) + ": metavariable " + var + " is unbound");
        out.emplace(var, it->second);
    }
    return out;
}

}  // namespace

std::span<const TemplateInfo> all_templates() { return registry(); }

const TemplateInfo& template_info(TemplateId id)
{
    for (const auto& info : registry()) {
        if (info.id == id) return info;
    }
    throw TemplateError("unknown template");
}

TemplateId parse_template_id(std::string_view name)
{
    for (const auto& info : registry()) {
        if (info.name == name) return info.id;
    }
    throw TemplateError("unknown template '" + std::string(name) + "'");
}

Formula template_statement(TemplateId id, const Substitution& subst)
{
    Substitution s = restrict_to(template_info(id), subst);
    auto get = [&](const char* v) { return s.contains(v) ? s.at(v) : atom(v); };
    return statement_over(id, get("phi"), get("psi"), get("theta"));
}

namespace {

// Instances recur across the valuations of one synthesis, so recent ones are
// kept. The key holds the bound formulas, which keeps their node ids valid.
struct InstanceKey {
    TemplateId id;
    std::vector<Formula> args;
    friend bool operator==(const InstanceKey&, const InstanceKey&) = default;
};

struct InstanceKeyHash {
    std::size_t operator()(const InstanceKey& k) const noexcept
    {
        std::size_t h = static_cast<std::size_t>(k.id);
        for (const auto& f : k.args) h = h * 1000003u ^ std::hash<const void*>{}(f.id());
        return h;
    }
};

std::shared_ptr<const Proof> instance(TemplateId id, const Substitution& s)
{
    static std::mutex mutex;
    static std::unordered_map<InstanceKey, std::shared_ptr<const Proof>, InstanceKeyHash> cache;
    constexpr std::size_t kCapacity = 8192;

    InstanceKey key{id, {}};
    for (const auto& [name, f] : s) key.args.push_back(f);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto proof = std::make_shared<const Proof>(substitute_proof(schematic(id), s));
    std::lock_guard lock(mutex);
    if (cache.size() >= kCapacity) cache.clear();
    cache.emplace(std::move(key), proof);
    return proof;
}

}  // namespace

ProofBuilder::Ref use_template(ProofBuilder& b, TemplateId id, const Substitution& subst)
{
    Substitution s = restrict_to(template_info(id), subst);
    if (auto known = b.find(template_statement(id, s))) return *known;
    return b.include(*instance(id, s));
}

Proof derive_template(TemplateId id, const Substitution& subst, const LogicParams& params)
{
    ProofBuilder b(params, {});
    return b.finish(use_template(b, id, subst));
}

ProofBuilder::Ref climb_star(ProofBuilder& b, ProofBuilder::Ref line, const Formula& base, std::size_t steps)
{
    Formula cur = base;
    for (std::size_t i = 0; i < steps; ++i) {
        line = b.mp(b.axiom(AxiomId::Ax11, sub(cur)), line);
        cur = neg(cur);
    }
    return line;
}

ProofBuilder::Ref climb_circ(ProofBuilder& b, ProofBuilder::Ref line, const Formula& base, std::size_t steps)
{
    Formula cur = base;
    for (std::size_t i = 0; i < steps; ++i) {
        line = b.mp(b.axiom(AxiomId::Ax12, sub(cur)), line);
        cur = neg(cur);
    }
    return line;
}

namespace {

Formula implicative_core(const Formula& f, std::size_t& q)
{
    Formula core = f;
    q = leading_negations(f, &core);
    if (!core.is_imp())
        throw TemplateError("formula is not a negated implication: " + render(f));
    return core;
}

}  // namespace

ProofBuilder::Ref derive_star_of_implicative(ProofBuilder& b, const Formula& f)
{
    std::size_t q = 0;
    Formula core = implicative_core(f, q);
    Ref r = b.axiom(AxiomId::Ax3, sub(core.antecedent(), core.consequent()));
    return climb_star(b, r, core, q);
}

ProofBuilder::Ref derive_circ_of_implicative(ProofBuilder& b, const Formula& f)
{
    std::size_t q = 0;
    Formula core = implicative_core(f, q);
    Ref r = b.axiom(AxiomId::Ax4, sub(core.antecedent(), core.consequent()));
    return climb_circ(b, r, core, q);
}

}  // namespace inpk
