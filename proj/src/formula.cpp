#include "inpk/formula.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace inpk {

namespace {

constexpr std::size_t kNegSalt = 0x9e3779b97f4a7c15ULL;
constexpr std::size_t kImpSalt = 0xc2b2ae3d27d4eb4fULL;

std::size_t mix(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b9 + (seed << 6) + (seed >> 2));
}

// Children are interned already, so a node is identified by its kind, its
// name and the addresses of its children.
using NodeKey = std::tuple<int, std::string, const void*, const void*>;

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept
    {
        std::size_t h = std::hash<std::string>{}(std::get<1>(k));
        h = mix(h, static_cast<std::size_t>(std::get<0>(k)));
        h = mix(h, std::hash<const void*>{}(std::get<2>(k)));
        return mix(h, std::hash<const void*>{}(std::get<3>(k)));
    }
};

}  // namespace

// Entries hold weak references; expired ones are swept whenever the table has
// doubled since the last sweep.
Formula Formula::intern(Kind kind, std::string name, std::optional<Formula> left,
                        std::optional<Formula> right, std::size_t hash, std::size_t complexity)
{
    static std::mutex mutex;
    static std::unordered_map<NodeKey, std::weak_ptr<const Node>, NodeKeyHash> table;
    static std::size_t sweep_at = 1024;

    NodeKey key{static_cast<int>(kind), name, left ? left->id() : nullptr, right ? right->id() : nullptr};
    std::lock_guard lock(mutex);
    auto [it, inserted] = table.try_emplace(std::move(key));
    if (!inserted) {
        if (auto alive = it->second.lock()) return Formula(std::move(alive));
    }
    auto node = std::make_shared<const Node>(
        Node{kind, std::move(name), std::move(left), std::move(right), hash, complexity});
    it->second = node;
    if (table.size() >= sweep_at) {
        std::erase_if(table, [](const auto& entry) { return entry.second.expired(); });
        sweep_at = std::max<std::size_t>(1024, 2 * table.size());
    }
    return Formula(std::move(node));
}

Formula Formula::atom(std::string name)
{
    std::size_t h = std::hash<std::string>{}(name);
    return intern(Kind::Atom, std::move(name), std::nullopt, std::nullopt, h, 0);
}

Formula Formula::neg(Formula body)
{
    std::size_t h = mix(kNegSalt, body.hash());
    std::size_t c = body.complexity() + 1;
    return intern(Kind::Neg, {}, std::move(body), std::nullopt, h, c);
}

Formula Formula::imp(Formula antecedent, Formula consequent)
{
    std::size_t h = mix(mix(kImpSalt, antecedent.hash()), consequent.hash());
    std::size_t c = antecedent.complexity() + consequent.complexity() + 1;
    return intern(Kind::Imp, {}, std::move(antecedent), std::move(consequent), h, c);
}

Formula neg_n(std::size_t q, Formula f)
{
    for (std::size_t i = 0; i < q; ++i) f = neg(std::move(f));
    return f;
}

Formula classicalize(const Formula& f) { return imp(imp(f, f), f); }
Formula strong_neg(const Formula& f) { return neg(classicalize(f)); }
Formula lor(const Formula& f, const Formula& g) { return imp(strong_neg(f), g); }
Formula land(const Formula& f, const Formula& g) { return strong_neg(imp(f, strong_neg(g))); }
Formula lor_cl(const Formula& f, const Formula& g) { return imp(neg(f), g); }
Formula land_cl(const Formula& f, const Formula& g) { return neg(imp(f, neg(g))); }
Formula star(const Formula& f) { return lor(neg(f), f); }
Formula circ(const Formula& f) { return neg(land(neg(f), f)); }

std::size_t arity(DerivedForm d) noexcept
{
    switch (d) {
        case DerivedForm::Or:
        case DerivedForm::And:
        case DerivedForm::OrCL:
        case DerivedForm::AndCL: return 2;
        default: return 1;
    }
}

Formula expand(DerivedForm d, std::span<const Formula> args, std::size_t count)
{
    if (args.size() != arity(d)) {
        throw ArityError("derived connective expects " + std::to_string(arity(d)) +
                         " argument(s), got " + std::to_string(args.size()));
    }
    switch (d) {
        case DerivedForm::Classicalize: return classicalize(args[0]);
        case DerivedForm::StrongNeg: return strong_neg(args[0]);
        case DerivedForm::Or: return lor(args[0], args[1]);
        case DerivedForm::And: return land(args[0], args[1]);
        case DerivedForm::OrCL: return lor_cl(args[0], args[1]);
        case DerivedForm::AndCL: return land_cl(args[0], args[1]);
        case DerivedForm::Star: return star(args[0]);
        case DerivedForm::Circ: return circ(args[0]);
        case DerivedForm::IterNeg: return neg_n(count, args[0]);
    }
    return args[0];
}

std::vector<std::string> atoms(const Formula& f)
{
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    std::unordered_set<const void*> visited;
    std::vector<const Formula*> stack{&f};
    while (!stack.empty()) {
        const Formula* g = stack.back();
        stack.pop_back();
        if (!visited.insert(g->id()).second) continue;
        switch (g->kind()) {
            case Formula::Kind::Atom:
                if (seen.insert(g->name()).second) out.push_back(g->name());
                break;
            case Formula::Kind::Neg: stack.push_back(&g->body()); break;
            case Formula::Kind::Imp:
                stack.push_back(&g->consequent());
                stack.push_back(&g->antecedent());
                break;
        }
    }
    return out;
}

std::size_t leading_negations(const Formula& f, Formula* core)
{
    std::size_t q = 0;
    const Formula* g = &f;
    while (g->is_neg()) {
        g = &g->body();
        ++q;
    }
    if (core) *core = *g;
    return q;
}

}  // namespace inpk
