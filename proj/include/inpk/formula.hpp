#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace inpk {

/// Formula of the language L(C): atoms closed under ¬ and →.
///
/// A Formula is an immutable handle onto a hash-consed node: structurally equal
/// formulas share one node, so equality is a pointer comparison and a formula
/// is a DAG whose size is the number of distinct subformulas. Nodes cache their
/// structural hash and connective count (counted as a tree).
class Formula {
public:
    enum class Kind : std::uint8_t { Atom, Neg, Imp };

    static Formula atom(std::string name);
    static Formula neg(Formula body);
    static Formula imp(Formula antecedent, Formula consequent);

    Kind kind() const noexcept;
    bool is_atom() const noexcept { return kind() == Kind::Atom; }
    bool is_neg() const noexcept { return kind() == Kind::Neg; }
    bool is_imp() const noexcept { return kind() == Kind::Imp; }

    // Accessors assume the matching kind.
    const std::string& name() const noexcept;
    const Formula& body() const noexcept;
    const Formula& antecedent() const noexcept;
    const Formula& consequent() const noexcept;

    std::size_t hash() const noexcept;
    /// Number of ¬ and → nodes.
    std::size_t complexity() const noexcept;

    bool same_node(const Formula& other) const noexcept { return node_ == other.node_; }
    /// Node identity, stable while any handle to the node is alive.
    const void* id() const noexcept { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b) noexcept { return a.node_ == b.node_; }

private:
    struct Node;

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula intern(Kind kind, std::string name, std::optional<Formula> left,
                          std::optional<Formula> right, std::size_t hash, std::size_t complexity);

    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Kind kind;
    std::string name;
    std::optional<Formula> left;
    std::optional<Formula> right;
    std::size_t hash;
    std::size_t complexity;
};

inline Formula::Kind Formula::kind() const noexcept { return node_->kind; }
inline const std::string& Formula::name() const noexcept { return node_->name; }
inline const Formula& Formula::body() const noexcept { return *node_->left; }
inline const Formula& Formula::antecedent() const noexcept { return *node_->left; }
inline const Formula& Formula::consequent() const noexcept { return *node_->right; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }
inline std::size_t Formula::complexity() const noexcept { return node_->complexity; }

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// Primitive and derived constructors. Derived connectives expand on the spot;
// no derived node ever exists in a Formula.
inline Formula atom(std::string name) { return Formula::atom(std::move(name)); }
inline Formula neg(Formula f) { return Formula::neg(std::move(f)); }
inline Formula imp(Formula a, Formula b) { return Formula::imp(std::move(a), std::move(b)); }

/// ¬^q f
Formula neg_n(std::size_t q, Formula f);
/// ©f := (f → f) → f
Formula classicalize(const Formula& f);
/// ∼f := ¬©f
Formula strong_neg(const Formula& f);
/// f ∨ g := ∼f → g
Formula lor(const Formula& f, const Formula& g);
/// f ∧ g := ∼(f → ∼g)
Formula land(const Formula& f, const Formula& g);
/// f ∨_CL g := ¬f → g
Formula lor_cl(const Formula& f, const Formula& g);
/// f ∧_CL g := ¬(f → ¬g)
Formula land_cl(const Formula& f, const Formula& g);
/// f* := ¬f ∨ f
Formula star(const Formula& f);
/// f° := ¬(¬f ∧ f)
Formula circ(const Formula& f);

enum class DerivedForm {
    Classicalize,
    StrongNeg,
    Or,
    And,
    OrCL,
    AndCL,
    Star,
    Circ,
    IterNeg,
};

class ArityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::size_t arity(DerivedForm d) noexcept;

/// Expands a derived constructor applied to `args`. `count` is the exponent q
/// for IterNeg and ignored otherwise. Throws ArityError on a wrong arg count.
Formula expand(DerivedForm d, std::span<const Formula> args, std::size_t count = 0);

/// Distinct atom names in first-occurrence (left-to-right, preorder) order.
std::vector<std::string> atoms(const Formula& f);

/// If f = ¬^q g with g not a negation, returns q and sets `core` to g.
std::size_t leading_negations(const Formula& f, Formula* core = nullptr);

/// Simultaneous replacement of atoms by formulas. Unmapped atoms stay put.
template <class Lookup>
Formula substitute(const Formula& f, const Lookup& lookup);

}  // namespace inpk

template <>
struct std::hash<inpk::Formula> {
    std::size_t operator()(const inpk::Formula& f) const noexcept { return f.hash(); }
};

namespace inpk {

namespace detail {

template <class Lookup>
Formula substitute_memo(const Formula& f, const Lookup& lookup,
                        std::unordered_map<const void*, Formula>& memo)
{
    if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
    Formula out = f;
    switch (f.kind()) {
        case Formula::Kind::Atom: {
            const Formula* image = lookup(f.name());
            if (image) out = *image;
            break;
        }
        case Formula::Kind::Neg: {
            Formula b = substitute_memo(f.body(), lookup, memo);
            if (!b.same_node(f.body())) out = neg(std::move(b));
            break;
        }
        case Formula::Kind::Imp: {
            Formula a = substitute_memo(f.antecedent(), lookup, memo);
            Formula c = substitute_memo(f.consequent(), lookup, memo);
            if (!a.same_node(f.antecedent()) || !c.same_node(f.consequent()))
                out = imp(std::move(a), std::move(c));
            break;
        }
    }
    memo.emplace(f.id(), out);
    return out;
}

}  // namespace detail

template <class Lookup>
Formula substitute(const Formula& f, const Lookup& lookup)
{
    std::unordered_map<const void*, Formula> memo;
    return detail::substitute_memo(f, lookup, memo);
}

}  // namespace inpk
