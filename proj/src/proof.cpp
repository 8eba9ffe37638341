#include "inpk/proof.hpp"

#include "inpk/syntax.hpp"

#include <algorithm>
#include <array>

namespace inpk {

namespace {

const Formula& mv_phi()
{
    static const Formula f = atom(std::string(kPhi));
    return f;
}
const Formula& mv_psi()
{
    static const Formula f = atom(std::string(kPsi));
    return f;
}
const Formula& mv_theta()
{
    static const Formula f = atom(std::string(kTheta));
    return f;
}

bool admitted(AxiomSystem system, AxiomId id)
{
    if (system == AxiomSystem::Classical)
        return id == AxiomId::Ax1 || id == AxiomId::Ax2 || id == AxiomId::Bx3;
    return id != AxiomId::Bx3;
}

bool match_into(const Formula& pattern, const Formula& f, Substitution& out)
{
    switch (pattern.kind()) {
        case Formula::Kind::Atom: {
            auto [it, inserted] = out.try_emplace(pattern.name(), f);
            return inserted || it->second == f;
        }
        case Formula::Kind::Neg: return f.is_neg() && match_into(pattern.body(), f.body(), out);
        case Formula::Kind::Imp:
            return f.is_imp() && match_into(pattern.antecedent(), f.antecedent(), out) &&
                   match_into(pattern.consequent(), f.consequent(), out);
    }
    return false;
}

std::string hyp_not_found(const Formula& f) { return "formula is not a hypothesis: " + render(f); }

}  // namespace

std::string to_string(AxiomId id)
{
    if (id == AxiomId::Bx3) return "Bx3";
    return "Ax" + std::to_string(static_cast<int>(id));
}

AxiomId parse_axiom_id(std::string_view text)
{
    for (int i = 1; i <= 12; ++i) {
        if (text == "Ax" + std::to_string(i)) return static_cast<AxiomId>(i);
    }
    throw std::invalid_argument("unknown axiom schema '" + std::string(text) + "'");
}

Formula axiom_pattern(AxiomId id, const LogicParams& params)
{
    const Formula& p = mv_phi();
    const Formula& q = mv_psi();
    const Formula& r = mv_theta();
    switch (id) {
        case AxiomId::Ax1: return imp(p, imp(q, p));
        case AxiomId::Ax2: return imp(imp(p, imp(q, r)), imp(imp(p, q), imp(p, r)));
        case AxiomId::Ax3: return star(imp(p, q));
        case AxiomId::Ax4: return circ(imp(p, q));
        case AxiomId::Ax5: return star(neg_n(params.n, p));
        case AxiomId::Ax6: return circ(neg_n(params.k, p));
        case AxiomId::Ax7:
            return imp(star(p), imp(circ(q), imp(imp(neg(p), neg(q)), imp(imp(neg(p), q), p))));
        case AxiomId::Ax8:
            return imp(star(p), imp(circ(q), imp(imp(p, neg(q)), imp(imp(p, q), neg(p)))));
        case AxiomId::Ax9: return imp(star(p), imp(neg(neg(p)), p));
        case AxiomId::Ax10: return imp(circ(p), imp(p, neg(neg(p))));
        case AxiomId::Ax11: return imp(star(p), star(neg(p)));
        case AxiomId::Ax12: return imp(circ(p), circ(neg(p)));
        case AxiomId::Bx3: return imp(imp(neg(p), neg(q)), imp(imp(neg(p), q), p));
    }
    throw std::invalid_argument("unknown axiom schema");
}

std::vector<std::string> axiom_metavariables(AxiomId id)
{
    switch (id) {
        case AxiomId::Ax2: return {"phi", "psi", "theta"};
        case AxiomId::Ax1:
        case AxiomId::Ax3:
        case AxiomId::Ax4:
        case AxiomId::Ax7:
        case AxiomId::Ax8:
        case AxiomId::Bx3: return {"phi", "psi"};
        default: return {"phi"};
    }
}

Formula instantiate(const Formula& pattern, const Substitution& subst)
{
    return substitute(pattern, [&](const std::string& name) -> const Formula* {
        auto it = subst.find(name);
        return it == subst.end() ? nullptr : &it->second;
    });
}

std::optional<Substitution> match_axiom(const Formula& f, AxiomId id, const LogicParams& params)
{
    Substitution out;
    if (!match_into(axiom_pattern(id, params), f, out)) return std::nullopt;
    return out;
}

CheckResult check(const Proof& proof, AxiomSystem system)
{
    auto reject = [](std::size_t i, std::string reason) { return CheckResult{false, i + 1, std::move(reason)}; };
    if (proof.lines.empty()) return CheckResult{false, 0, "proof has no lines"};

    std::array<std::optional<Formula>, 14> patterns;
    for (std::size_t i = 0; i < proof.lines.size(); ++i) {
        const ProofLine& line = proof.lines[i];
        if (const auto* ax = std::get_if<AxiomJust>(&line.just)) {
            if (!admitted(system, ax->schema))
                return reject(i, "schema " + to_string(ax->schema) + " is not part of this axiom system");
            auto vars = axiom_metavariables(ax->schema);
            for (const auto& [name, value] : ax->subst) {
                if (std::find(vars.begin(), vars.end(), name) == vars.end())
                    return reject(i, "bad substitution: " + name + " is not a metavariable of " +
                                         to_string(ax->schema));
            }
            for (const auto& v : vars) {
                if (!ax->subst.contains(v))
                    return reject(i, "bad substitution: metavariable " + v + " is unbound");
            }
            auto slot = static_cast<std::size_t>(ax->schema);
            if (!patterns[slot]) patterns[slot] = axiom_pattern(ax->schema, proof.params);
            if (!(instantiate(*patterns[slot], ax->subst) == line.formula))
                return reject(i, "schema mismatch: formula is not the " + to_string(ax->schema) +
                                     " instance under the given substitution");
        } else if (const auto* h = std::get_if<HypJust>(&line.just)) {
            if (h->index >= proof.hypotheses.size())
                return reject(i, "hypothesis index " + std::to_string(h->index + 1) + " out of range");
            if (!(proof.hypotheses[h->index] == line.formula))
                return reject(i, "formula differs from hypothesis " + std::to_string(h->index + 1));
        } else {
            const auto& m = std::get<MpJust>(line.just);
            if (m.major >= i || m.minor >= i)
                return reject(i, "modus ponens cites a line that is not strictly earlier");
            const Formula& major = proof.lines[m.major].formula;
            if (!major.is_imp() || !(major.antecedent() == proof.lines[m.minor].formula) ||
                !(major.consequent() == line.formula))
                return reject(i, "modus ponens shape mismatch: line " + std::to_string(m.major + 1) +
                                     " is not line " + std::to_string(m.minor + 1) + " -> this formula");
        }
    }
    return CheckResult{};
}

// ---------------------------------------------------------------------------

ProofBuilder::ProofBuilder(LogicParams params, std::vector<Formula> hypotheses, AxiomSystem system)
    : params_(params), hypotheses_(std::move(hypotheses)), system_(system)
{
}

ProofBuilder::Ref ProofBuilder::push(Formula f, Justification j)
{
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    Ref r = lines_.size();
    index_.emplace(f, r);
    lines_.push_back(ProofLine{std::move(f), std::move(j)});
    return r;
}

std::optional<ProofBuilder::Ref> ProofBuilder::find(const Formula& f) const
{
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    return std::nullopt;
}

ProofBuilder::Ref ProofBuilder::hyp(const Formula& f)
{
    for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
        if (hypotheses_[i] == f) return push(f, HypJust{i});
    }
    throw ProofError(hyp_not_found(f));
}

ProofBuilder::Ref ProofBuilder::axiom(AxiomId id, Substitution subst)
{
    if (!admitted(system_, id)) throw ProofError("schema " + to_string(id) + " not admitted");
    Formula f = instantiate(axiom_pattern(id, params_), subst);
    return push(std::move(f), AxiomJust{id, std::move(subst)});
}

ProofBuilder::Ref ProofBuilder::mp(Ref major, Ref minor)
{
    const Formula& m = lines_[major].formula;
    if (!m.is_imp() || !(m.antecedent() == lines_[minor].formula)) {
        throw ProofError("modus ponens shape mismatch: " + render(m) + " applied to " +
                         render(lines_[minor].formula));
    }
    Formula result = m.consequent();
    return push(std::move(result), MpJust{major, minor});
}

ProofBuilder::Ref ProofBuilder::mp(Ref major, std::initializer_list<Ref> minors)
{
    Ref r = major;
    for (Ref m : minors) r = mp(r, m);
    return r;
}

ProofBuilder::Ref ProofBuilder::include(const Proof& sub, const std::unordered_map<Formula, Ref>& cuts)
{
    std::vector<Ref> map(sub.lines.size());
    for (std::size_t i = 0; i < sub.lines.size(); ++i) {
        const ProofLine& line = sub.lines[i];
        if (auto found = find(line.formula)) {
            map[i] = *found;
            continue;
        }
        if (const auto* ax = std::get_if<AxiomJust>(&line.just)) {
            map[i] = push(line.formula, *ax);
        } else if (const auto* h = std::get_if<HypJust>(&line.just)) {
            const Formula& f = sub.hypotheses[h->index];
            if (auto c = cuts.find(f); c != cuts.end()) {
                map[i] = c->second;
            } else {
                map[i] = hyp(f);
            }
        } else {
            const auto& m = std::get<MpJust>(line.just);
            map[i] = push(line.formula, MpJust{map[m.major], map[m.minor]});
        }
    }
    return map.back();
}

Proof ProofBuilder::finish(Ref conclusion) const
{
    std::vector<char> needed(conclusion + 1, 0);
    needed[conclusion] = 1;
    for (std::size_t i = conclusion + 1; i-- > 0;) {
        if (!needed[i]) continue;
        if (const auto* m = std::get_if<MpJust>(&lines_[i].just)) {
            needed[m->major] = 1;
            needed[m->minor] = 1;
        }
    }
    std::vector<std::size_t> renum(conclusion + 1, 0);
    Proof out{params_, hypotheses_, {}};
    for (std::size_t i = 0; i <= conclusion; ++i) {
        if (!needed[i]) continue;
        renum[i] = out.lines.size();
        ProofLine line = lines_[i];
        if (auto* m = std::get_if<MpJust>(&line.just)) {
            m->major = renum[m->major];
            m->minor = renum[m->minor];
        }
        out.lines.push_back(std::move(line));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace glue {

Ref refl(ProofBuilder& b, const Formula& f)
{
    Formula ff = imp(f, f);
    if (auto r = b.find(ff)) return *r;
    Ref a2 = b.axiom(AxiomId::Ax2, {{"phi", f}, {"psi", ff}, {"theta", f}});
    Ref a1 = b.axiom(AxiomId::Ax1, {{"phi", f}, {"psi", ff}});
    Ref m = b.mp(a2, a1);
    Ref a1b = b.axiom(AxiomId::Ax1, {{"phi", f}, {"psi", f}});
    return b.mp(m, a1b);
}

Ref lift(ProofBuilder& b, Ref line, const Formula& a)
{
    Formula x = b.formula(line);
    if (auto r = b.find(imp(a, x))) return *r;
    Ref ax = b.axiom(AxiomId::Ax1, {{"phi", x}, {"psi", a}});
    return b.mp(ax, line);
}

Ref mp_under(ProofBuilder& b, Ref major, Ref minor)
{
    const Formula& m = b.formula(major);
    const Formula a = m.antecedent();
    const Formula& inner = m.consequent();
    if (!inner.is_imp()) throw ProofError("mp_under: major premise has the wrong shape");
    Ref ax = b.axiom(AxiomId::Ax2, {{"phi", a}, {"psi", inner.antecedent()}, {"theta", inner.consequent()}});
    return b.mp(b.mp(ax, major), minor);
}

Ref trans(ProofBuilder& b, Ref first, Ref second)
{
    const Formula phi = b.formula(first).antecedent();
    Ref lifted = lift(b, second, phi);
    return mp_under(b, lifted, first);
}

Ref perm(ProofBuilder& b, Ref premise)
{
    const Formula& f = b.formula(premise);
    const Formula phi = f.antecedent();
    const Formula psi = f.consequent().antecedent();
    const Formula theta = f.consequent().consequent();
    Ref ax2 = b.axiom(AxiomId::Ax2, {{"phi", phi}, {"psi", psi}, {"theta", theta}});
    Ref m = b.mp(ax2, premise);
    Ref ax1 = b.axiom(AxiomId::Ax1, {{"phi", psi}, {"psi", phi}});
    return trans(b, ax1, m);
}

Ref red(ProofBuilder& b, Ref premise)
{
    const Formula& f = b.formula(premise);
    const Formula phi = f.antecedent().antecedent();
    const Formula psi = f.antecedent().consequent();
    Ref ax1 = b.axiom(AxiomId::Ax1, {{"phi", psi}, {"psi", phi}});
    return trans(b, ax1, premise);
}

}  // namespace glue

// ---------------------------------------------------------------------------

Proof discharge_hypothesis(const Proof& proof, std::size_t discharge, AxiomSystem system)
{
    if (discharge >= proof.hypotheses.size())
        throw ProofError("discharge index " + std::to_string(discharge + 1) + " out of range");
    const Formula phi = proof.hypotheses[discharge];
    std::vector<Formula> remaining = proof.hypotheses;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(discharge));
    ProofBuilder b(proof.params, std::move(remaining), system);

    const std::size_t count = proof.lines.size();
    std::vector<char> dep(count, 0);
    std::vector<ProofBuilder::Ref> out(count);
    std::vector<std::optional<ProofBuilder::Ref>> lifted(count);
    auto as_imp = [&](std::size_t i) {
        if (dep[i]) return out[i];
        if (!lifted[i]) lifted[i] = glue::lift(b, out[i], phi);
        return *lifted[i];
    };

    for (std::size_t i = 0; i < count; ++i) {
        const ProofLine& line = proof.lines[i];
        if (const auto* ax = std::get_if<AxiomJust>(&line.just)) {
            out[i] = b.axiom(ax->schema, ax->subst);
        } else if (const auto* h = std::get_if<HypJust>(&line.just)) {
            if (h->index == discharge) {
                dep[i] = 1;
                out[i] = glue::refl(b, phi);
            } else {
                out[i] = b.hyp(proof.hypotheses[h->index]);
            }
        } else {
            const auto& m = std::get<MpJust>(line.just);
            if (!dep[m.major] && !dep[m.minor]) {
                out[i] = b.mp(out[m.major], out[m.minor]);
            } else {
                dep[i] = 1;
                ProofBuilder::Ref major = as_imp(m.major);
                ProofBuilder::Ref minor = as_imp(m.minor);
                out[i] = glue::mp_under(b, major, minor);
            }
        }
    }
    return b.finish(as_imp(count - 1));
}

Proof discharge_hypothesis(const Proof& proof, const Formula& f, AxiomSystem system)
{
    for (std::size_t i = 0; i < proof.hypotheses.size(); ++i) {
        if (proof.hypotheses[i] == f) return discharge_hypothesis(proof, i, system);
    }
    throw ProofError(hyp_not_found(f));
}

Proof deduction_transform(const Proof& proof, std::size_t discharge)
{
    if (auto r = check(proof); !r.accepted)
        throw ProofError("input proof rejected at line " + std::to_string(r.line) + ": " + r.reason);
    return discharge_hypothesis(proof, discharge);
}

Proof weaken(const Proof& proof, std::vector<Formula> hypotheses)
{
    ProofBuilder b(proof.params, std::move(hypotheses));
    return b.finish(b.include(proof));
}

Proof cut(const Proof& proof, const Formula& f, const Proof& lemma)
{
    std::vector<Formula> hyps;
    auto add = [&](const Formula& h) {
        if (std::find(hyps.begin(), hyps.end(), h) == hyps.end()) hyps.push_back(h);
    };
    for (const auto& h : proof.hypotheses) {
        if (!(h == f)) add(h);
    }
    for (const auto& h : lemma.hypotheses) add(h);
    ProofBuilder b(proof.params, std::move(hyps));
    ProofBuilder::Ref r = b.include(lemma);
    return b.finish(b.include(proof, {{f, r}}));
}

Proof substitute_proof(const Proof& proof, const Substitution& atom_map)
{
    auto lookup = [&](const std::string& name) -> const Formula* {
        auto it = atom_map.find(name);
        return it == atom_map.end() ? nullptr : &it->second;
    };
    // One memo for the whole proof: lines share most of their subformulas.
    std::unordered_map<const void*, Formula> memo;
    auto substitute = [&](const Formula& f, const auto& lk) { return detail::substitute_memo(f, lk, memo); };
    Proof out{proof.params, {}, {}};
    out.hypotheses.reserve(proof.hypotheses.size());
    for (const auto& h : proof.hypotheses) out.hypotheses.push_back(substitute(h, lookup));
    out.lines.reserve(proof.lines.size());
    for (const auto& line : proof.lines) {
        Justification j = line.just;
        if (auto* ax = std::get_if<AxiomJust>(&j)) {
            for (auto& [name, value] : ax->subst) value = substitute(value, lookup);
        }
        out.lines.push_back(ProofLine{substitute(line.formula, lookup), std::move(j)});
    }
    return out;
}

namespace {

void require_checked(const Proof& p, const char* what)
{
    if (auto r = check(p); !r.accepted)
        throw ProofError(std::string(what) + ": premise proof rejected at line " + std::to_string(r.line) +
                         ": " + r.reason);
}

bool is_imp_of_imp(const Formula& f) { return f.is_imp() && f.consequent().is_imp(); }

}  // namespace

Proof rule_perm(const Proof& premise)
{
    require_checked(premise, "Perm");
    if (!is_imp_of_imp(premise.conclusion())) throw ProofError("Perm: premise is not of the form a -> (b -> c)");
    ProofBuilder b(premise.params, premise.hypotheses);
    return b.finish(glue::perm(b, b.include(premise)));
}

Proof rule_trans(const Proof& first, const Proof& second)
{
    require_checked(first, "Trans");
    require_checked(second, "Trans");
    const Formula& f = first.conclusion();
    const Formula& g = second.conclusion();
    if (!f.is_imp() || !g.is_imp() || !(f.consequent() == g.antecedent()))
        throw ProofError("Trans: premises are not of the form a -> b, b -> c");
    if (!(first.params == second.params)) throw ProofError("Trans: premises use different logics");
    std::vector<Formula> hyps = first.hypotheses;
    for (const auto& h : second.hypotheses) {
        if (std::find(hyps.begin(), hyps.end(), h) == hyps.end()) hyps.push_back(h);
    }
    ProofBuilder b(first.params, std::move(hyps));
    ProofBuilder::Ref r1 = b.include(first);
    ProofBuilder::Ref r2 = b.include(second);
    return b.finish(glue::trans(b, r1, r2));
}

Proof rule_red(const Proof& premise)
{
    require_checked(premise, "Red");
    const Formula& f = premise.conclusion();
    if (!f.is_imp() || !f.antecedent().is_imp()) throw ProofError("Red: premise is not of the form (a -> b) -> c");
    ProofBuilder b(premise.params, premise.hypotheses);
    return b.finish(glue::red(b, b.include(premise)));
}

}  // namespace inpk
