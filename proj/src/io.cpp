#include "minsim/io.hpp"

#include <fstream>
#include <sstream>

#include "minsim/errors.hpp"

namespace minsim {

nlohmann::json itemset_to_json(const ItemSet& s) {
    nlohmann::json j;
    j["universe"] = s.universe()->labels();
    j["members"] = s.members();
    return j;
}

ItemSet itemset_from_json(const nlohmann::json& j) {
    auto universe = Universe::from_labels(j.at("universe").get<std::vector<std::string>>());
    return ItemSet(universe, j.at("members").get<std::vector<int>>());
}

nlohmann::json law_to_json(const CoefficientLaw& law) {
    nlohmann::json j;
    j["support"] = nlohmann::json::array();
    for (const auto& [p, q] : law.support) {
        j["support"].push_back({p, q});
    }
    j["prob"] = nlohmann::json::array();
    for (const auto& p : law.prob) {
        j["prob"].push_back(to_string(p));
    }
    return j;
}

CoefficientLaw law_from_json(const nlohmann::json& j) {
    CoefficientLaw law;
    for (const auto& pair : j.at("support")) {
        law.support.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    }
    for (const auto& p : j.at("prob")) {
        law.prob.push_back(rational_from_string(p.get<std::string>()));
    }
    law.validate();
    return law;
}

nlohmann::json distribution_to_json(const DistributionTable& d) {
    nlohmann::json j;
    j["k"] = d.k;
    j["probs"] = nlohmann::json::array();
    for (const auto& p : d.probs) {
        j["probs"].push_back(to_string(p));
    }
    return j;
}

DistributionTable distribution_from_json(const nlohmann::json& j) {
    DistributionTable d;
    d.k = j.at("k").get<int>();
    for (const auto& p : j.at("probs")) {
        d.probs.push_back(rational_from_string(p.get<std::string>()));
    }
    d.validate();
    return d;
}

std::string distribution_to_csv(const DistributionTable& d) {
    std::ostringstream out;
    out << "s,prob\n";
    for (int t = 0; t <= d.k; ++t) {
        out << t << "/" << d.k << "," << to_string(d.probs[static_cast<std::size_t>(t)])
            << "\n";
    }
    return out.str();
}

nlohmann::json signature_to_json(const SignatureMatrix& s,
                                 const std::vector<std::string>& column_names) {
    if (static_cast<int>(column_names.size()) != s.m) {
        throw DimensionMismatchError("one name per signature column required");
    }
    nlohmann::json j;
    j["k"] = s.k;
    j["columns"] = nlohmann::json::object();
    for (int col = 1; col <= s.m; ++col) {
        j["columns"][column_names[static_cast<std::size_t>(col - 1)]] = s.column(col);
    }
    return j;
}

std::string empirical_to_csv(const EmpiricalDistribution& e) {
    std::ostringstream out;
    out << "t,count\n";
    for (int t = 0; t <= e.k; ++t) {
        out << t << "," << e.counts[static_cast<std::size_t>(t)] << "\n";
    }
    return out.str();
}

std::string convergence_to_csv(const ConvergenceResult& r) {
    std::ostringstream out;
    out << "n1,n2,mean_abs_err\n";
    for (const auto& rec : r.records) {
        out << rec.n1 << "," << rec.n2 << "," << rec.mean_abs_error << "\n";
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace minsim
