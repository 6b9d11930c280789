#pragma once

// JSON and plain-text renderings shared by the CLI and the acceptance suite.
// JSON key order is fixed, so equal inputs give byte-identical documents.

#include <ostream>
#include <span>

#include "json.hpp"

#include "addrand/decide.hpp"
#include "addrand/normalize.hpp"
#include "addrand/oracle.hpp"
#include "addrand/verify.hpp"

namespace addrand {

using Json = nlohmann::ordered_json;

Json to_json(const Classification& c);
Json to_json(const NormalizationTrace& t);
Json to_json(const NormalizationBranch& b);
Json to_json(const ScanResult& r);
Json to_json(const VerificationReport& r, bool timing);
Json to_json(const AxiomReport& r);

/// chi, its boundary and, when chi fails, the witness and trapped set.
Json chi_report(const RandomnessOracle& o, const PrimaryFormula& f);

void print_text(std::ostream& os, const Classification& c);
void print_text(std::ostream& os, std::span<const NormalizationBranch> branches);
void print_text(std::ostream& os, const VerificationReport& r, bool timing);
void print_text(std::ostream& os, const AxiomReport& r);

}  // namespace addrand
