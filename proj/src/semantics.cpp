#include "inpk/semantics.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

namespace inpk {

namespace {

std::string range_message(const LogicParams& p, TruthValue a)
{
    return "truth value " + to_string(a) + " out of range for (n,k)=(" + std::to_string(p.n) + "," +
           std::to_string(p.k) + ")";
}

void require_range(const LogicParams& p, TruthValue a)
{
    if (!in_range(p, a)) throw RangeError(range_message(p, a));
}

// Value codes follow the canonical order: F_r -> r, T_i -> n + 1 + i.
struct CodeOps {
    std::uint32_t n;

    std::uint32_t neg(std::uint32_t c) const noexcept
    {
        if (c == 0) return n + 1;
        if (c == n + 1) return 0;
        return c - 1;
    }
    std::uint32_t imp(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return (a <= n || b > n) ? n + 1 : 0;
    }
    bool designated(std::uint32_t c) const noexcept { return c > n; }
};

// Straight-line program over the distinct subformulas of one formula; slot i
// holds the value of the i-th node in postorder.
class Compiled {
public:
    Compiled(const Formula& f, const std::unordered_map<std::string, std::uint32_t>& index)
    {
        std::unordered_map<const void*, std::uint32_t> slots;
        emit(f, index, slots);
    }

    std::uint32_t run(const CodeOps& ops, const std::vector<std::uint32_t>& values,
                      std::vector<std::uint32_t>& regs) const
    {
        regs.resize(code_.size());
        for (std::size_t i = 0; i < code_.size(); ++i) {
            const Instr& in = code_[i];
            switch (in.op) {
                case Op::Load: regs[i] = values[in.a]; break;
                case Op::Neg: regs[i] = ops.neg(regs[in.a]); break;
                case Op::Imp: regs[i] = ops.imp(regs[in.a], regs[in.b]); break;
            }
        }
        return regs.back();
    }

private:
    enum class Op : std::uint8_t { Load, Neg, Imp };
    struct Instr {
        Op op;
        std::uint32_t a;
        std::uint32_t b;
    };

    std::uint32_t emit(const Formula& f, const std::unordered_map<std::string, std::uint32_t>& index,
                       std::unordered_map<const void*, std::uint32_t>& slots)
    {
        if (auto it = slots.find(f.id()); it != slots.end()) return it->second;
        Instr in{Op::Load, 0, 0};
        switch (f.kind()) {
            case Formula::Kind::Atom: in.a = index.at(f.name()); break;
            case Formula::Kind::Neg: in = {Op::Neg, emit(f.body(), index, slots), 0}; break;
            case Formula::Kind::Imp: {
                std::uint32_t a = emit(f.antecedent(), index, slots);
                in = {Op::Imp, a, emit(f.consequent(), index, slots)};
                break;
            }
        }
        auto slot = static_cast<std::uint32_t>(code_.size());
        code_.push_back(in);
        slots.emplace(f.id(), slot);
        return slot;
    }

    std::vector<Instr> code_;
};

// Odometer over value codes, first atom most significant.
bool next_assignment(std::vector<std::uint32_t>& values, std::uint32_t base)
{
    for (std::size_t i = values.size(); i-- > 0;) {
        if (++values[i] < base) return true;
        values[i] = 0;
    }
    return false;
}

Valuation to_valuation(const LogicParams& p, const std::vector<std::string>& atoms,
                       const std::vector<std::uint32_t>& values)
{
    Valuation v;
    for (std::size_t i = 0; i < atoms.size(); ++i) v.set(atoms[i], value_from_code(p, values[i]));
    return v;
}

Verdict search(const LogicParams& params, const std::vector<Formula>& hyps, const Formula& goal)
{
    std::vector<std::string> names;
    std::unordered_map<std::string, std::uint32_t> index;
    auto collect = [&](const Formula& f) {
        for (auto& a : atoms(f)) {
            if (index.emplace(a, static_cast<std::uint32_t>(names.size())).second) names.push_back(a);
        }
    };
    for (const auto& h : hyps) collect(h);
    collect(goal);

    std::vector<Compiled> compiled_hyps;
    compiled_hyps.reserve(hyps.size());
    for (const auto& h : hyps) compiled_hyps.emplace_back(h, index);
    Compiled compiled_goal(goal, index);

    CodeOps ops{params.n};
    auto base = static_cast<std::uint32_t>(params.carrier_size());
    std::vector<std::uint32_t> values(names.size(), 0);
    std::vector<std::uint32_t> regs;
    do {
        bool premises = std::all_of(compiled_hyps.begin(), compiled_hyps.end(), [&](const Compiled& c) {
            return ops.designated(c.run(ops, values, regs));
        });
        if (premises && !ops.designated(compiled_goal.run(ops, values, regs)))
            return Verdict{to_valuation(params, names, values)};
    } while (next_assignment(values, base));
    return Verdict{};
}

}  // namespace

std::string to_string(TruthValue a)
{
    return (a.is_true() ? "T" : "F") + std::to_string(a.index);
}

TruthValue parse_truth_value(std::string_view text)
{
    if (text.size() < 2 || (text[0] != 'T' && text[0] != 'F'))
        throw std::invalid_argument("malformed truth value '" + std::string(text) + "'");
    unsigned idx = 0;
    auto digits = text.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw std::invalid_argument("malformed truth value '" + std::string(text) + "'");
    return text[0] == 'T' ? TruthValue::T(idx) : TruthValue::F(idx);
}

bool in_range(const LogicParams& params, TruthValue a) noexcept
{
    return a.is_true() ? a.index <= params.k : a.index <= params.n;
}

std::size_t value_code(const LogicParams& params, TruthValue a)
{
    require_range(params, a);
    return a.is_true() ? std::size_t{params.n} + 1 + a.index : a.index;
}

TruthValue value_from_code(const LogicParams& params, std::size_t code)
{
    if (code <= params.n) return TruthValue::F(static_cast<unsigned>(code));
    if (code < params.carrier_size()) return TruthValue::T(static_cast<unsigned>(code - params.n - 1));
    throw RangeError("value code " + std::to_string(code) + " out of range");
}

std::vector<TruthValue> carrier(const LogicParams& params)
{
    std::vector<TruthValue> out;
    out.reserve(params.carrier_size());
    for (std::size_t c = 0; c < params.carrier_size(); ++c) out.push_back(value_from_code(params, c));
    return out;
}

TruthValue neg_value(const LogicParams& params, TruthValue a)
{
    require_range(params, a);
    if (a.index == 0) return a.is_true() ? TruthValue::F(0) : TruthValue::T(0);
    return TruthValue{a.sign, a.index - 1};
}

TruthValue imp_value(const LogicParams& params, TruthValue a, TruthValue b)
{
    require_range(params, a);
    require_range(params, b);
    return (!a.is_true() || b.is_true()) ? TruthValue::T(0) : TruthValue::F(0);
}

bool is_designated(const LogicParams& params, TruthValue a)
{
    require_range(params, a);
    return a.is_true();
}

Valuation::Valuation(std::initializer_list<std::pair<std::string, TruthValue>> entries)
{
    for (const auto& [atom, value] : entries) set(atom, value);
}

void Valuation::set(const std::string& atom, TruthValue value)
{
    for (auto& entry : entries_) {
        if (entry.first == atom) {
            entry.second = value;
            return;
        }
    }
    entries_.emplace_back(atom, value);
}

const TruthValue* Valuation::find(std::string_view atom) const noexcept
{
    for (const auto& entry : entries_) {
        if (entry.first == atom) return &entry.second;
    }
    return nullptr;
}

TruthValue Valuation::at(std::string_view atom) const
{
    if (const TruthValue* v = find(atom)) return *v;
    throw UnboundAtom("atom '" + std::string(atom) + "' has no value");
}

std::string to_string(const Valuation& v)
{
    std::string out;
    for (const auto& [atom, value] : v.entries()) {
        if (!out.empty()) out += ',';
        out += atom + "=" + to_string(value);
    }
    return out;
}

Valuation parse_valuation(std::string_view text)
{
    Valuation v;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw std::invalid_argument("malformed valuation entry '" + std::string(item) + "'");
        v.set(std::string(item.substr(0, eq)), parse_truth_value(item.substr(eq + 1)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return v;
}

namespace {

TruthValue eval_memo(const LogicParams& params, const Formula& f, const Valuation& v,
                     std::unordered_map<const void*, TruthValue>& memo)
{
    if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
    TruthValue out{};
    switch (f.kind()) {
        case Formula::Kind::Atom:
            out = v.at(f.name());
            require_range(params, out);
            break;
        case Formula::Kind::Neg: out = neg_value(params, eval_memo(params, f.body(), v, memo)); break;
        case Formula::Kind::Imp:
            out = imp_value(params, eval_memo(params, f.antecedent(), v, memo),
                            eval_memo(params, f.consequent(), v, memo));
            break;
    }
    memo.emplace(f.id(), out);
    return out;
}

}  // namespace

TruthValue eval(const LogicParams& params, const Formula& f, const Valuation& v)
{
    std::unordered_map<const void*, TruthValue> memo;
    return eval_memo(params, f, v, memo);
}

void enumerate_valuations(const LogicParams& params, const std::vector<std::string>& atoms,
                          const std::function<bool(const Valuation&)>& visit)
{
    auto base = static_cast<std::uint32_t>(params.carrier_size());
    std::vector<std::uint32_t> values(atoms.size(), 0);
    do {
        if (!visit(to_valuation(params, atoms, values))) return;
    } while (next_assignment(values, base));
}

std::vector<Valuation> all_valuations(const LogicParams& params, const std::vector<std::string>& atoms)
{
    std::vector<Valuation> out;
    enumerate_valuations(params, atoms, [&](const Valuation& v) {
        out.push_back(v);
        return true;
    });
    return out;
}

Verdict is_tautology(const LogicParams& params, const Formula& f) { return search(params, {}, f); }

Verdict entails(const LogicParams& params, const std::vector<Formula>& hyps, const Formula& f)
{
    return search(params, hyps, f);
}

std::string to_string(OrderVerdict o)
{
    switch (o) {
        case OrderVerdict::StrictlyBelow: return "below";
        case OrderVerdict::StrictlyAbove: return "above";
        case OrderVerdict::Equal: return "equal";
        case OrderVerdict::Incomparable: return "incomparable";
    }
    return "incomparable";
}

OrderVerdict compare_logics(const LogicParams& a, const LogicParams& b)
{
    if (a == b) return OrderVerdict::Equal;
    if (b.n <= a.n && b.k <= a.k) return OrderVerdict::StrictlyBelow;
    if (a.n <= b.n && a.k <= b.k) return OrderVerdict::StrictlyAbove;
    return OrderVerdict::Incomparable;
}

std::optional<Formula> separating_witness(const LogicParams& a, const LogicParams& b)
{
    const Formula p = atom("p");
    if (b.n > a.n) return lor(neg_n(a.n + 1, p), neg_n(a.n, p));
    if (b.k > a.k) return neg(land(neg_n(a.k + 1, p), neg_n(a.k, p)));
    return std::nullopt;
}

const std::vector<std::string>& connective_names()
{
    static const std::vector<std::string> names{"neg", "imp", "classicalize", "strong", "or",
                                                "and", "or_cl", "and_cl", "star", "circ"};
    return names;
}

TruthTable truth_table(const LogicParams& params, std::string_view connective)
{
    const Formula p = atom("p");
    const Formula q = atom("q");
    std::optional<Formula> shape;
    std::size_t ar = 1;
    if (connective == "neg") shape = neg(p);
    else if (connective == "classicalize") shape = classicalize(p);
    else if (connective == "strong") shape = strong_neg(p);
    else if (connective == "star") shape = star(p);
    else if (connective == "circ") shape = circ(p);
    else {
        ar = 2;
        if (connective == "imp") shape = imp(p, q);
        else if (connective == "or") shape = lor(p, q);
        else if (connective == "and") shape = land(p, q);
        else if (connective == "or_cl") shape = lor_cl(p, q);
        else if (connective == "and_cl") shape = land_cl(p, q);
    }
    if (!shape) throw UnknownConnective("unknown connective '" + std::string(connective) + "'");

    TruthTable table;
    table.connective = std::string(connective);
    table.arity = ar;
    table.domain = carrier(params);
    for (TruthValue a : table.domain) {
        if (ar == 1) {
            table.cells.push_back(eval(params, *shape, Valuation{{"p", a}}));
            continue;
        }
        for (TruthValue b : table.domain) table.cells.push_back(eval(params, *shape, Valuation{{"p", a}, {"q", b}}));
    }
    return table;
}

}  // namespace inpk
