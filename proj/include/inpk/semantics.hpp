#pragma once

#include "inpk/formula.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace inpk {

/// A logic I^nP^k of the hierarchy: carrier {F0..Fn, T0..Tk}, designated {T0..Tk}.
struct LogicParams {
    unsigned n = 0;
    unsigned k = 0;

    std::size_t carrier_size() const noexcept { return std::size_t{n} + k + 2; }

    friend bool operator==(const LogicParams&, const LogicParams&) = default;
};

/// F_r or T_i. Range checking against (n,k) happens in the operations.
struct TruthValue {
    enum class Sign : std::uint8_t { F, T };

    Sign sign = Sign::F;
    unsigned index = 0;

    static constexpr TruthValue F(unsigned r) noexcept { return {Sign::F, r}; }
    static constexpr TruthValue T(unsigned i) noexcept { return {Sign::T, i}; }

    bool is_true() const noexcept { return sign == Sign::T; }

    friend bool operator==(const TruthValue&, const TruthValue&) = default;
};

/// `T<i>` / `F<r>`.
std::string to_string(TruthValue a);
/// Inverse of to_string; throws std::invalid_argument.
TruthValue parse_truth_value(std::string_view text);

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

bool in_range(const LogicParams& params, TruthValue a) noexcept;

/// Position in the canonical order F0 < ... < Fn < T0 < ... < Tk.
std::size_t value_code(const LogicParams& params, TruthValue a);
TruthValue value_from_code(const LogicParams& params, std::size_t code);
/// All carrier values in canonical order.
std::vector<TruthValue> carrier(const LogicParams& params);

TruthValue neg_value(const LogicParams& params, TruthValue a);
TruthValue imp_value(const LogicParams& params, TruthValue a, TruthValue b);
bool is_designated(const LogicParams& params, TruthValue a);

/// Assignment of truth values to atoms, kept in insertion order.
class Valuation {
public:
    Valuation() = default;
    Valuation(std::initializer_list<std::pair<std::string, TruthValue>> entries);

    void set(const std::string& atom, TruthValue value);
    const TruthValue* find(std::string_view atom) const noexcept;
    TruthValue at(std::string_view atom) const;

    const std::vector<std::pair<std::string, TruthValue>>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    std::vector<std::pair<std::string, TruthValue>> entries_;
};

/// `p=T1,q=F0`.
std::string to_string(const Valuation& v);
/// Inverse of to_string; throws std::invalid_argument.
Valuation parse_valuation(std::string_view text);

class UnboundAtom : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

TruthValue eval(const LogicParams& params, const Formula& f, const Valuation& v);

/// Calls `visit` with each of the (n+k+2)^|atoms| valuations over `atoms`, in
/// lexicographic order of the value sequence (first atom most significant).
/// Stops early when `visit` returns false.
void enumerate_valuations(const LogicParams& params, const std::vector<std::string>& atoms,
                          const std::function<bool(const Valuation&)>& visit);

std::vector<Valuation> all_valuations(const LogicParams& params, const std::vector<std::string>& atoms);

/// Outcome of a tautology or consequence check.
struct Verdict {
    std::optional<Valuation> counterexample;

    bool valid() const noexcept { return !counterexample.has_value(); }
};

Verdict is_tautology(const LogicParams& params, const Formula& f);
Verdict entails(const LogicParams& params, const std::vector<Formula>& hyps, const Formula& f);

enum class OrderVerdict { StrictlyBelow, StrictlyAbove, Equal, Incomparable };

std::string to_string(OrderVerdict o);

/// a ⪯ b (every consequence of a holds in b) iff (b.n, b.k) <= (a.n, a.k) componentwise.
OrderVerdict compare_logics(const LogicParams& a, const LogicParams& b);

/// A formula valid in `a` and refuted in `b`, when one of b's indices exceeds a's.
std::optional<Formula> separating_witness(const LogicParams& a, const LogicParams& b);

/// Full table of a primitive or derived connective over the carrier.
struct TruthTable {
    std::string connective;
    std::size_t arity = 1;
    std::vector<TruthValue> domain;
    /// Unary: cells[i] is the image of domain[i]. Binary: row-major,
    /// cells[i * domain.size() + j] is domain[i] ∘ domain[j].
    std::vector<TruthValue> cells;

    TruthValue at(std::size_t i, std::size_t j = 0) const { return cells[i * (arity == 2 ? domain.size() : 1) + j]; }
};

class UnknownConnective : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Connective names: neg, imp, classicalize, strong, or, and, or_cl, and_cl, star, circ.
TruthTable truth_table(const LogicParams& params, std::string_view connective);

const std::vector<std::string>& connective_names();

}  // namespace inpk
