#include "inpk/cli.hpp"

#include "inpk/kalmar.hpp"
#include "inpk/proof_json.hpp"
#include "inpk/semantics.hpp"
#include "inpk/syntax.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace inpk::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr unsigned kMaxIndex = 16;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Logic {
    unsigned n = 0;
    unsigned k = 0;
    LogicParams params() const
    {
        if (n > kMaxIndex || k > kMaxIndex)
            throw UsageError("capacity error: n and k are limited to " + std::to_string(kMaxIndex));
        return {n, k};
    }
};

void add_logic(CLI::App* cmd, Logic& logic)
{
    cmd->add_option("--n", logic.n, "I-dimension (number of extra false values)")->required();
    cmd->add_option("--k", logic.k, "P-dimension (number of extra true values)")->required();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text << '\n';
}

Proof read_proof(const std::string& path)
{
    Proof p = load_proof(read_file(path));
    if (p.params.n > kMaxIndex || p.params.k > kMaxIndex)
        throw UsageError("capacity error: n and k are limited to " + std::to_string(kMaxIndex));
    return p;
}

json valuation_json(const Valuation& v)
{
    json o = json::object();
    for (const auto& [name, value] : v.entries()) o[name] = to_string(value);
    return o;
}

std::string pad(const std::string& s, std::size_t width) { return s + std::string(width - std::min(width, s.size()), ' '); }

void print_table(std::ostream& out, const TruthTable& t)
{
    std::size_t w = 2;
    for (const auto& v : t.domain) w = std::max(w, to_string(v).size());
    const std::string& name = t.connective;
    if (t.arity == 1) {
        std::size_t head = std::max(w, name.size());
        out << pad(name, head) << " |\n" << std::string(head, '-') << "-+-" << std::string(w, '-') << '\n';
        for (std::size_t i = 0; i < t.domain.size(); ++i)
            out << pad(to_string(t.domain[i]), head) << " | " << to_string(t.at(i)) << '\n';
        return;
    }
    std::size_t head = std::max(w, name.size());
    out << pad(name, head) << " |";
    for (const auto& v : t.domain) out << ' ' << pad(to_string(v), w);
    out << '\n' << std::string(head, '-') << "-+" << std::string(t.domain.size() * (w + 1), '-') << '\n';
    for (std::size_t i = 0; i < t.domain.size(); ++i) {
        out << pad(to_string(t.domain[i]), head) << " |";
        for (std::size_t j = 0; j < t.domain.size(); ++j) out << ' ' << pad(to_string(t.at(i, j)), w);
        out << '\n';
    }
}

int report_verdict(std::ostream& out, bool as_json, const Verdict& v)
{
    if (as_json) {
        json o{{"valid", v.valid()}};
        if (!v.valid()) o["counterexample"] = valuation_json(*v.counterexample);
        out << o.dump() << '\n';
    } else if (v.valid()) {
        out << "valid\n";
    } else {
        out << "counterexample: " << to_string(*v.counterexample) << '\n';
    }
    return v.valid() ? kOk : kNegative;
}

int report_check(std::ostream& out, bool as_json, const CheckResult& r)
{
    if (as_json) {
        json o{{"accepted", r.accepted}};
        if (!r.accepted) o["line"] = r.line, o["reason"] = r.reason;
        out << o.dump() << '\n';
    } else if (r.accepted) {
        out << "accepted\n";
    } else {
        out << "rejected line " << r.line << ": " << r.reason << '\n';
    }
    return r.accepted ? kOk : kNegative;
}

void emit_proof(std::ostream& out, bool as_json, const Proof& proof, const std::string& path)
{
    if (path.empty()) {
        out << dump_proof(proof) << '\n';
        return;
    }
    write_file(path, dump_proof(proof));
    if (as_json)
        out << json{{"lines", proof.lines.size()}, {"output", path}}.dump() << '\n';
    else
        out << "wrote " << proof.lines.size() << " lines to " << path << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Semantics, proof checking and proof synthesis for the I^nP^k logics", "inpk"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string expr;
    Logic logic;
    std::string output;

    auto* parse_cmd = app.add_subcommand("parse", "print the primitive form of a formula");
    parse_cmd->add_option("expr", expr)->required();

    auto* table_cmd = app.add_subcommand("table", "truth table of a connective");
    std::string connective;
    add_logic(table_cmd, logic);
    table_cmd->add_option("--connective", connective)->required();

    auto* eval_cmd = app.add_subcommand("eval", "value of a formula under a valuation");
    std::string val_text;
    add_logic(eval_cmd, logic);
    eval_cmd->add_option("--val", val_text, "e.g. p=T1,q=F0");
    eval_cmd->add_option("expr", expr)->required();

    auto* taut_cmd = app.add_subcommand("taut", "decide validity");
    add_logic(taut_cmd, logic);
    taut_cmd->add_option("expr", expr)->required();

    auto* entails_cmd = app.add_subcommand("entails", "decide consequence");
    std::vector<std::string> hyp_texts;
    add_logic(entails_cmd, logic);
    entails_cmd->add_option("--hyp", hyp_texts, "hypothesis (repeatable)");
    entails_cmd->add_option("expr", expr)->required();

    auto* compare_cmd = app.add_subcommand("compare", "order two logics of the hierarchy");
    std::vector<unsigned> indices;
    compare_cmd->add_option("indices", indices, "n1 k1 n2 k2")->required()->expected(4);

    auto* check_cmd = app.add_subcommand("check", "check a proof file");
    std::string proof_path;
    check_cmd->add_option("proof", proof_path)->required();

    auto* prove_cmd = app.add_subcommand("prove", "synthesize a proof of a tautology");
    bool trace = false;
    add_logic(prove_cmd, logic);
    prove_cmd->add_option("expr", expr)->required();
    prove_cmd->add_option("-o,--output", output);
    prove_cmd->add_flag("--trace", trace, "report each merge step on stderr");

    auto* dt_cmd = app.add_subcommand("dt", "discharge a hypothesis by the deduction theorem");
    std::size_t discharge = 0;
    dt_cmd->add_option("proof", proof_path)->required();
    dt_cmd->add_option("--discharge", discharge, "1-based hypothesis index")->required();
    dt_cmd->add_option("-o,--output", output);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (parse_cmd->parsed()) {
            Formula f = parse(expr);
            if (as_json)
                out << json{{"formula", render(f)}, {"complexity", f.complexity()}, {"atoms", atoms(f)}}.dump() << '\n';
            else
                out << render(f) << '\n';
            return kOk;
        }
        if (table_cmd->parsed()) {
            TruthTable t = truth_table(logic.params(), connective);
            if (as_json) {
                json cells = json::array();
                std::size_t rows = t.domain.size();
                for (std::size_t i = 0; i < rows; ++i) {
                    if (t.arity == 1) {
                        cells.push_back(to_string(t.at(i)));
                        continue;
                    }
                    json row = json::array();
                    for (std::size_t j = 0; j < rows; ++j) row.push_back(to_string(t.at(i, j)));
                    cells.push_back(row);
                }
                json domain = json::array();
                for (const auto& v : t.domain) domain.push_back(to_string(v));
                out << json{{"connective", t.connective}, {"arity", t.arity}, {"domain", domain}, {"cells", cells}}.dump()
                    << '\n';
            } else {
                print_table(out, t);
            }
            return kOk;
        }
        if (eval_cmd->parsed()) {
            LogicParams p = logic.params();
            Formula f = parse(expr);
            TruthValue v = eval(p, f, parse_valuation(val_text));
            if (as_json)
                out << json{{"value", to_string(v)}, {"designated", is_designated(p, v)}}.dump() << '\n';
            else
                out << to_string(v) << '\n';
            return kOk;
        }
        if (taut_cmd->parsed()) return report_verdict(out, as_json, is_tautology(logic.params(), parse(expr)));
        if (entails_cmd->parsed()) {
            LogicParams p = logic.params();
            std::vector<Formula> hyps;
            for (const auto& h : hyp_texts) hyps.push_back(parse(h));
            return report_verdict(out, as_json, entails(p, hyps, parse(expr)));
        }
        if (compare_cmd->parsed()) {
            Logic a{indices[0], indices[1]};
            Logic b{indices[2], indices[3]};
            LogicParams pa = a.params();
            LogicParams pb = b.params();
            OrderVerdict verdict = compare_logics(pa, pb);
            // A witness is valid in the first logic and refuted in the second.
            std::vector<std::pair<std::string, Formula>> witnesses;
            auto label = [](const LogicParams& x) {
                return "(" + std::to_string(x.n) + "," + std::to_string(x.k) + ")";
            };
            if (auto w = separating_witness(pa, pb)) witnesses.emplace_back("valid in " + label(pa) + ", refuted in " + label(pb), *w);
            if (auto w = separating_witness(pb, pa)) witnesses.emplace_back("valid in " + label(pb) + ", refuted in " + label(pa), *w);
            if (as_json) {
                json ws = json::array();
                for (const auto& [note, w] : witnesses) ws.push_back({{"formula", render(w)}, {"note", note}});
                out << json{{"verdict", to_string(verdict)}, {"witnesses", ws}}.dump() << '\n';
            } else {
                out << to_string(verdict) << '\n';
                for (const auto& [note, w] : witnesses) out << "witness: " << render(w) << "  (" << note << ")\n";
            }
            return kOk;
        }
        if (check_cmd->parsed()) return report_check(out, as_json, check(read_proof(proof_path)));
        if (prove_cmd->parsed()) {
            LogicParams p = logic.params();
            Formula f = parse(expr);
            TraceSink sink;
            if (trace) sink = [&err](const std::string& line) { err << line << '\n'; };
            try {
                emit_proof(out, as_json, complete_prove(p, f, nullptr, sink), output);
            } catch (const NotTautology& e) {
                return report_verdict(out, as_json, Verdict{e.counterexample()});
            }
            return kOk;
        }
        if (dt_cmd->parsed()) {
            Proof p = read_proof(proof_path);
            if (discharge == 0 || discharge > p.hypotheses.size())
                throw UsageError("--discharge must be between 1 and " + std::to_string(p.hypotheses.size()));
            if (auto r = check(p); !r.accepted) return report_check(out, as_json, r);
            emit_proof(out, as_json, discharge_hypothesis(p, discharge - 1), output);
            return kOk;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        // Range, unbound-atom, format and capacity errors are all usage errors.
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace inpk::cli
