#include "inpk/proof_json.hpp"

#include "inpk/syntax.hpp"

#include <limits>

namespace inpk {

namespace {

using json = nlohmann::ordered_json;

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw ProofFormatError(where + ": missing \"" + key + "\"");
    return obj.at(key);
}

Formula formula_at(const json& value, const std::string& where)
{
    if (!value.is_string()) throw ProofFormatError(where + ": formula must be a string");
    try {
        return parse(value.get<std::string>());
    } catch (const ParseError& e) {
        throw ProofFormatError(where + ": " + e.what());
    }
}

// 1-based index in the document, 0-based in memory. Zero maps to SIZE_MAX so
// that check() reports it as out of range.
std::size_t index_at(const json& value, const std::string& where)
{
    if (!value.is_number_integer() || value.get<long long>() < 0)
        throw ProofFormatError(where + ": expected a non-negative integer");
    auto i = value.get<unsigned long long>();
    return i == 0 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(i - 1);
}

unsigned param_at(const json& logic, const char* key)
{
    const json& v = field(logic, key, "logic");
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ProofFormatError(std::string("logic.") + key + " must be a non-negative integer");
    return v.get<unsigned>();
}

}  // namespace

json to_json(const Proof& proof)
{
    json doc;
    doc["logic"] = {{"n", proof.params.n}, {"k", proof.params.k}};
    doc["hypotheses"] = json::array();
    for (const auto& h : proof.hypotheses) doc["hypotheses"].push_back(render_sugared(h));
    doc["lines"] = json::array();
    for (const auto& line : proof.lines) {
        json just;
        if (const auto* ax = std::get_if<AxiomJust>(&line.just)) {
            json subst = json::object();
            for (const auto& [name, value] : ax->subst) subst[name] = render_sugared(value);
            just = {{"kind", "axiom"}, {"schema", to_string(ax->schema)}, {"subst", subst}};
        } else if (const auto* h = std::get_if<HypJust>(&line.just)) {
            just = {{"kind", "hyp"}, {"index", h->index + 1}};
        } else {
            const auto& m = std::get<MpJust>(line.just);
            just = {{"kind", "mp"}, {"major", m.major + 1}, {"minor", m.minor + 1}};
        }
        doc["lines"].push_back({{"formula", render_sugared(line.formula)}, {"just", just}});
    }
    return doc;
}

Proof proof_from_json(const json& doc)
{
    Proof proof;
    const json& logic = field(doc, "logic", "document");
    proof.params = LogicParams{param_at(logic, "n"), param_at(logic, "k")};

    const json& hyps = field(doc, "hypotheses", "document");
    if (!hyps.is_array()) throw ProofFormatError("hypotheses must be an array");
    for (std::size_t i = 0; i < hyps.size(); ++i)
        proof.hypotheses.push_back(formula_at(hyps[i], "hypothesis " + std::to_string(i + 1)));

    const json& lines = field(doc, "lines", "document");
    if (!lines.is_array()) throw ProofFormatError("lines must be an array");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string where = "line " + std::to_string(i + 1);
        Formula f = formula_at(field(lines[i], "formula", where), where);
        const json& just = field(lines[i], "just", where);
        const json& kind = field(just, "kind", where);
        if (kind == "axiom") {
            const json& schema = field(just, "schema", where);
            if (!schema.is_string()) throw ProofFormatError(where + ": schema must be a string");
            AxiomJust ax;
            try {
                ax.schema = parse_axiom_id(schema.get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ProofFormatError(where + ": " + e.what());
            }
            const json& subst = field(just, "subst", where);
            if (!subst.is_object()) throw ProofFormatError(where + ": subst must be an object");
            for (const auto& [name, value] : subst.items())
                ax.subst.emplace(name, formula_at(value, where + " subst " + name));
            proof.lines.push_back({std::move(f), std::move(ax)});
        } else if (kind == "hyp") {
            proof.lines.push_back({std::move(f), HypJust{index_at(field(just, "index", where), where)}});
        } else if (kind == "mp") {
            MpJust m{index_at(field(just, "major", where), where), index_at(field(just, "minor", where), where)};
            proof.lines.push_back({std::move(f), m});
        } else {
            throw ProofFormatError(where + ": unknown justification kind");
        }
    }
    return proof;
}

std::string dump_proof(const Proof& proof, int indent) { return to_json(proof).dump(indent); }

Proof load_proof(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ProofFormatError(std::string("invalid JSON: ") + e.what());
    }
    return proof_from_json(doc);
}

}  // namespace inpk
