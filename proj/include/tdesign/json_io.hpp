#pragma once

#include "tdesign/distinction.hpp"
#include "tdesign/ensemble.hpp"
#include "tdesign/haar.hpp"
#include "tdesign/kwise.hpp"
#include "tdesign/quadrature.hpp"
#include "tdesign/verifier.hpp"

#include <json.hpp>

#include <string>

namespace tdesign {

using Json = nlohmann::json;

Json family_to_json(const FunctionFamily& fam);
Json rule_to_json(const QuadratureRule& rule);
Json ensemble_spec_to_json(const DesignEnsemble& ensemble);
DesignEnsemble ensemble_from_spec(const Json& spec);

Json report_to_json(const VerificationReport& rep);
Json report_to_json(const DistinctionReport& rep);

// "index:c,d;..." (explicit conjugate exponents) or "index:e,index:e,..."
// (balanced shorthand, e = c = d)
Monomial parse_monomial(const std::string& text);
std::string monomial_to_string(const Monomial& m);

// {"n": N, "entries": [[re, im], ...]} row-major, or CSV rows of interleaved
// re,im values
DensityMatrix density_from_json(const Json& j);
DensityMatrix density_from_file(const std::string& path);
PureState state_from_file(const std::string& path);

} // namespace tdesign
