#pragma once

#include <string>

#include <json.hpp>

#include "minsim/exactlaw.hpp"
#include "minsim/hashing.hpp"
#include "minsim/itemsets.hpp"
#include "minsim/montecarlo.hpp"
#include "minsim/signatures.hpp"

namespace minsim {

// {"universe": [labels...], "members": [indices...]}
nlohmann::json itemset_to_json(const ItemSet& s);
ItemSet itemset_from_json(const nlohmann::json& j);

// {"support": [[p,q],...], "prob": ["num/den",...]}
nlohmann::json law_to_json(const CoefficientLaw& law);
CoefficientLaw law_from_json(const nlohmann::json& j);

// {"k":..., "probs": ["num/den",...]}
nlohmann::json distribution_to_json(const DistributionTable& d);
DistributionTable distribution_from_json(const nlohmann::json& j);
std::string distribution_to_csv(const DistributionTable& d);  // rows: t/k,prob

// {"k":..., "columns": {"name": [v1..vk]}}
nlohmann::json signature_to_json(const SignatureMatrix& s,
                                 const std::vector<std::string>& column_names);

std::string empirical_to_csv(const EmpiricalDistribution& e);      // rows: t,count
std::string convergence_to_csv(const ConvergenceResult& r);        // rows: n1,n2,mean_abs_err

std::string read_text_file(const std::string& path);

}  // namespace minsim
