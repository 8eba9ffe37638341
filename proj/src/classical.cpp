#include "inpk/classical.hpp"

#include "inpk/syntax.hpp"
#include "inpk/templates.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace inpk {

namespace {

constexpr LogicParams kClassical{0, 0};
constexpr AxiomSystem kL = AxiomSystem::Classical;

using Ref = ProofBuilder::Ref;

// Schematic lemmas of the classical system, over the atoms phi (A) and psi (B).
enum class Lemma {
    DoubleNegElim,   // ¬¬B → B
    DoubleNegIntro,  // B → ¬¬B
    NegExplosion,    // ¬A → (A → B)
    ContraToImp,     // (¬B → ¬A) → (A → B)
    Contrapose,      // (A → B) → (¬B → ¬A)
    NegImp,          // A → (¬B → ¬(A → B))
    Cases,           // (A → B) → ((¬A → B) → B)
};

Ref use_lemma(ProofBuilder& b, Lemma which, const Formula& a, const Formula& c);

Proof build_lemma(Lemma which)
{
    const Formula A = atom("phi");
    const Formula B = atom("psi");
    switch (which) {
        case Lemma::DoubleNegElim: {
            ProofBuilder b(kClassical, {}, kL);
            Ref l3 = b.axiom(AxiomId::Bx3, {{"phi", B}, {"psi", neg(B)}});
            Ref a1 = b.axiom(AxiomId::Ax1, {{"phi", neg(neg(B))}, {"psi", neg(B)}});
            Ref t = glue::trans(b, a1, l3);
            Ref r = glue::lift(b, glue::refl(b, neg(B)), neg(neg(B)));
            return b.finish(glue::mp_under(b, t, r));
        }
        case Lemma::DoubleNegIntro: {
            ProofBuilder b(kClassical, {}, kL);
            Ref l3 = b.axiom(AxiomId::Bx3, {{"phi", neg(neg(B))}, {"psi", B}});
            Ref dn = use_lemma(b, Lemma::DoubleNegElim, A, neg(B));
            Ref m = b.mp(l3, dn);
            Ref a1 = b.axiom(AxiomId::Ax1, {{"phi", B}, {"psi", neg_n(3, B)}});
            return b.finish(glue::trans(b, a1, m));
        }
        case Lemma::ContraToImp: {
            ProofBuilder b(kClassical, {}, kL);
            Ref l3 = b.axiom(AxiomId::Bx3, {{"phi", B}, {"psi", A}});
            Ref a1 = b.axiom(AxiomId::Ax1, {{"phi", A}, {"psi", neg(B)}});
            Ref p = glue::perm(b, l3);
            return b.finish(glue::perm(b, glue::trans(b, a1, p)));
        }
        case Lemma::NegExplosion: {
            ProofBuilder b(kClassical, {}, kL);
            Ref a1 = b.axiom(AxiomId::Ax1, {{"phi", neg(A)}, {"psi", neg(B)}});
            Ref d = use_lemma(b, Lemma::ContraToImp, A, B);
            return b.finish(glue::trans(b, a1, d));
        }
        case Lemma::Contrapose: {
            ProofBuilder b(kClassical, {imp(A, B)}, kL);
            Ref h = b.hyp(imp(A, B));
            Ref t = glue::trans(b, use_lemma(b, Lemma::DoubleNegElim, B, A), h);
            Ref t2 = glue::trans(b, t, use_lemma(b, Lemma::DoubleNegIntro, A, B));
            Ref d = use_lemma(b, Lemma::ContraToImp, neg(B), neg(A));
            return discharge_hypothesis(b.finish(b.mp(d, t2)), 0, kL);
        }
        case Lemma::NegImp: {
            ProofBuilder inner(kClassical, {A, imp(A, B)}, kL);
            Ref m = inner.mp(inner.hyp(imp(A, B)), inner.hyp(A));
            Proof ab_b = discharge_hypothesis(inner.finish(m), 1, kL);
            ProofBuilder b(kClassical, {A}, kL);
            Ref r = b.include(ab_b);
            Ref e = use_lemma(b, Lemma::Contrapose, imp(A, B), B);
            return discharge_hypothesis(b.finish(b.mp(e, r)), 0, kL);
        }
        case Lemma::Cases: {
            ProofBuilder b(kClassical, {imp(A, B), imp(neg(A), B)}, kL);
            Ref e1 = b.mp(use_lemma(b, Lemma::Contrapose, A, B), b.hyp(imp(A, B)));
            Ref e2 = b.mp(use_lemma(b, Lemma::Contrapose, neg(A), B), b.hyp(imp(neg(A), B)));
            Ref l3 = b.axiom(AxiomId::Bx3, {{"phi", B}, {"psi", neg(A)}});
            Proof p = b.finish(b.mp(l3, {e2, e1}));
            return discharge_hypothesis(discharge_hypothesis(p, 1, kL), 0, kL);
        }
    }
    throw std::logic_error("unknown classical lemma");
}

// Lemma proofs are built on first use; building one may use earlier ones.
const Proof& lemma_proof(Lemma which)
{
    static std::recursive_mutex mutex;
    static std::map<Lemma, Proof> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(which);
    if (it == cache.end()) it = cache.emplace(which, build_lemma(which)).first;
    return it->second;
}

Ref use_lemma(ProofBuilder& b, Lemma which, const Formula& a, const Formula& c)
{
    return b.include(substitute_proof(lemma_proof(which), {{"phi", a}, {"psi", c}}));
}

struct Literal {
    std::string atom;
    bool value;
};

Formula literal_formula(const Literal& l) { return l.value ? atom(l.atom) : neg(atom(l.atom)); }

// B' under the assignment: B when true, ¬B when false.
Ref kalmar_line(ProofBuilder& b, const Formula& f, const Valuation& v)
{
    switch (f.kind()) {
        case Formula::Kind::Atom:
            return b.hyp(eval(kClassical, f, v).is_true() ? f : neg(f));
        case Formula::Kind::Neg: {
            const Formula& c = f.body();
            Ref rc = kalmar_line(b, c, v);
            if (!eval(kClassical, c, v).is_true()) return rc;
            return b.mp(use_lemma(b, Lemma::DoubleNegIntro, atom("phi"), c), rc);
        }
        case Formula::Kind::Imp: {
            const Formula& c = f.antecedent();
            const Formula& d = f.consequent();
            bool cv = eval(kClassical, c, v).is_true();
            bool dv = eval(kClassical, d, v).is_true();
            if (!cv) return b.mp(use_lemma(b, Lemma::NegExplosion, c, d), kalmar_line(b, c, v));
            if (dv) return glue::lift(b, kalmar_line(b, d, v), c);
            Ref rc = kalmar_line(b, c, v);
            Ref rd = kalmar_line(b, d, v);
            return b.mp(use_lemma(b, Lemma::NegImp, c, d), {rc, rd});
        }
    }
    throw std::logic_error("unreachable");
}

Formula translate(const Formula& f)
{
    switch (f.kind()) {
        case Formula::Kind::Atom: return f;
        case Formula::Kind::Neg: return strong_neg(translate(f.body()));
        case Formula::Kind::Imp: return imp(translate(f.antecedent()), translate(f.consequent()));
    }
    return f;
}

}  // namespace

Formula strong_translation(const Formula& f) { return translate(f); }

std::optional<Formula> strong_preimage(const Formula& f)
{
    switch (f.kind()) {
        case Formula::Kind::Atom: return f;
        case Formula::Kind::Neg: {
            const Formula& c = f.body();
            if (!c.is_imp() || !c.antecedent().is_imp()) return std::nullopt;
            const Formula& x = c.consequent();
            if (!(c.antecedent().antecedent() == x) || !(c.antecedent().consequent() == x)) return std::nullopt;
            auto inner = strong_preimage(x);
            if (!inner) return std::nullopt;
            return neg(*inner);
        }
        case Formula::Kind::Imp: {
            auto a = strong_preimage(f.antecedent());
            auto c = strong_preimage(f.consequent());
            if (!a || !c) return std::nullopt;
            return imp(*a, *c);
        }
    }
    return std::nullopt;
}

Proof classical_kalmar(const Formula& f)
{
    if (auto verdict = is_tautology(kClassical, f); !verdict.valid()) {
        throw NotClassicalTautology("not a classical tautology: " + render(f) + " (counterexample " +
                                    to_string(*verdict.counterexample) + ")");
    }
    const std::vector<std::string> names = atoms(f);

    // One proof per assignment, hypotheses = the literals in atom order.
    std::map<std::vector<bool>, Proof> layer;
    enumerate_valuations(kClassical, names, [&](const Valuation& v) {
        std::vector<Formula> hyps;
        std::vector<bool> key;
        for (const auto& name : names) {
            bool val = v.at(name).is_true();
            key.push_back(val);
            hyps.push_back(literal_formula({name, val}));
        }
        ProofBuilder b(kClassical, hyps, kL);
        layer.emplace(key, b.finish(kalmar_line(b, f, v)));
        return true;
    });

    // Eliminate atoms front to back.
    for (std::size_t idx = 0; idx < names.size(); ++idx) {
        std::map<std::vector<bool>, Proof> next;
        for (auto& [key, proof] : layer) {
            if (!key.front()) continue;
            std::vector<bool> rest(key.begin() + 1, key.end());
            std::vector<bool> neg_key = key;
            neg_key.front() = false;
            const Proof& pos = proof;
            const Proof& negp = layer.at(neg_key);
            const Formula p = atom(names[idx]);

            std::vector<Formula> hyps(pos.hypotheses.begin() + 1, pos.hypotheses.end());
            ProofBuilder b(kClassical, hyps, kL);
            Ref r_pos = b.include(discharge_hypothesis(pos, 0, kL));
            Ref r_neg = b.include(discharge_hypothesis(negp, 0, kL));
            Ref cases = use_lemma(b, Lemma::Cases, p, f);
            next.emplace(std::move(rest), b.finish(b.mp(cases, {r_pos, r_neg})));
        }
        layer = std::move(next);
    }
    return layer.begin()->second;
}

Proof translate_classical_proof(const Proof& classical, const LogicParams& params)
{
    std::vector<Formula> hyps;
    for (const auto& h : classical.hypotheses) hyps.push_back(translate(h));
    ProofBuilder b(params, hyps);
    std::vector<Ref> out(classical.lines.size());
    for (std::size_t i = 0; i < classical.lines.size(); ++i) {
        const ProofLine& line = classical.lines[i];
        if (const auto* ax = std::get_if<AxiomJust>(&line.just)) {
            Substitution s;
            for (const auto& [name, value] : ax->subst) s.emplace(name, translate(value));
            if (ax->schema == AxiomId::Bx3) {
                out[i] = use_template(b, TemplateId::StrongReductio, s);
            } else {
                out[i] = b.axiom(ax->schema, std::move(s));
            }
        } else if (const auto* h = std::get_if<HypJust>(&line.just)) {
            out[i] = b.hyp(hyps[h->index]);
        } else {
            const auto& m = std::get<MpJust>(line.just);
            out[i] = b.mp(out[m.major], out[m.minor]);
        }
    }
    return b.finish(out.back());
}

Proof classical_prove(const LogicParams& params, const Formula& f)
{
    auto pre = strong_preimage(f);
    if (!pre) throw NotClassicalTautology("formula is not the strong-negation image of a {!,->} formula: " + render(f));
    return translate_classical_proof(classical_kalmar(*pre), params);
}

}  // namespace inpk
