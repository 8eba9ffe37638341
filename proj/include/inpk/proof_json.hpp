#pragma once

#include "inpk/proof.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace inpk {

class ProofFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"logic":{"n":N,"k":K},"hypotheses":[...],"lines":[{"formula":...,"just":...}]}
/// where just is one of
///   {"kind":"axiom","schema":"Ax7","subst":{"phi":...,"psi":...}}
///   {"kind":"hyp","index":I}
///   {"kind":"mp","major":L1,"minor":L2}
/// Formulas are written with render_sugared. Line references and
/// hypothesis indices are 1-based.
nlohmann::ordered_json to_json(const Proof& proof);

/// Inverse of to_json. Structural problems (missing keys, unparsable
/// formulas, unknown schemas) raise ProofFormatError; whether the lines form
/// a valid proof is left to check(), so forward references and bad indices
/// are accepted here and rejected there.
Proof proof_from_json(const nlohmann::ordered_json& doc);

std::string dump_proof(const Proof& proof, int indent = 2);
Proof load_proof(const std::string& text);

}  // namespace inpk
