// minsim: exact and minhash-estimated Jaccard similarity, exact laws of
// the estimator, confidence intervals and simulation reports.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minsim/errors.hpp"
#include "minsim/exactlaw.hpp"
#include "minsim/io.hpp"
#include "minsim/itemsets.hpp"
#include "minsim/montecarlo.hpp"
#include "minsim/rng.hpp"
#include "minsim/signatures.hpp"

namespace {

using namespace minsim;
using nlohmann::json;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MINHASH_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1;
}

std::string decimal(double v) {
    std::ostringstream out;
    out << std::setprecision(6) << v;
    return out.str();
}

// Shingle every file against one shared universe.
std::vector<ItemSet> load_corpus(const std::vector<std::string>& files, int p) {
    std::vector<std::vector<std::string>> per_file;
    std::vector<std::string> all_labels;
    for (const auto& f : files) {
        per_file.push_back(shingle_labels(read_text_file(f), p));
        for (const auto& l : per_file.back()) {
            all_labels.push_back(l);
        }
    }
    std::sort(all_labels.begin(), all_labels.end());
    all_labels.erase(std::unique(all_labels.begin(), all_labels.end()), all_labels.end());
    auto universe = Universe::from_labels(all_labels);
    std::vector<ItemSet> sets;
    sets.reserve(files.size());
    for (const auto& labels : per_file) {
        sets.push_back(ItemSet::from_labels(universe, labels));
    }
    return sets;
}

ItemSet load_itemset(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read file: " + path);
    }
    json j;
    in >> j;
    return itemset_from_json(j);
}

// Loads two sets either from item-set JSON files (--set) or text files
// with shingling (--files/--p).
std::pair<ItemSet, ItemSet> load_pair(const std::vector<std::string>& set_files,
                                      const std::vector<std::string>& text_files, int p) {
    if (set_files.size() == 2) {
        ItemSet a = load_itemset(set_files[0]);
        ItemSet b0 = load_itemset(set_files[1]);
        if (a.universe()->labels() != b0.universe()->labels()) {
            throw UniverseMismatchError("the two item sets declare different universes");
        }
        // rebind b to a's universe object so the sets are comparable
        std::vector<std::string> labels;
        for (int idx : b0.members()) {
            labels.push_back(b0.universe()->label(idx));
        }
        return {a, ItemSet::from_labels(a.universe(), labels)};
    }
    if (text_files.size() == 2) {
        auto sets = load_corpus(text_files, p);
        return {sets[0], sets[1]};
    }
    throw Error("provide exactly two inputs (--set twice, or two text files)");
}

HashFamily make_family(const std::string& hash_mode, const std::optional<CoefficientLaw>& law,
                       int k, int n, std::uint64_t seed) {
    if (hash_mode == "permutation") {
        return sample_permutations(k, n, seed);
    }
    if (!law) {
        return sample_uniform_family(k, n, seed);
    }
    return sample_family(*law, k, n, seed);
}

void emit(const json& j, const std::string& format, const std::string& csv) {
    if (format == "csv") {
        std::cout << csv;
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"MinHash similarity estimation and its exact probability laws"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    // sim -------------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("sim", "Exact pairwise Jaccard similarity of text files");
    std::vector<std::string> sim_files;
    int sim_p = 3;
    sim_cmd->add_option("files", sim_files, "UTF-8 text files")->required()->expected(2, -1);
    sim_cmd->add_option("--p", sim_p, "Shingle size");

    // estimate ----------------------------------------------------------
    auto* est_cmd = app.add_subcommand("estimate", "RUM-estimated similarity of text files");
    std::vector<std::string> est_files;
    int est_p = 3;
    int est_k = 5;
    std::string est_hash = "linear";
    std::string est_mode = "min";
    std::string est_law_file;
    std::uint64_t est_seed = default_seed();
    bool with_exact = false;
    est_cmd->add_option("files", est_files, "UTF-8 text files")->required()->expected(2, -1);
    est_cmd->add_option("--p", est_p, "Shingle size");
    est_cmd->add_option("--k", est_k, "Number of minhash functions");
    est_cmd->add_option("--hash", est_hash, "Hash scheme")
        ->check(CLI::IsMember({"linear", "permutation"}));
    est_cmd->add_option("--mode", est_mode, "Aggregation")->check(CLI::IsMember({"min", "max"}));
    est_cmd->add_option("--law", est_law_file, "CoefficientLaw JSON file");
    est_cmd->add_option("--seed", est_seed, "Random seed");
    est_cmd->add_flag("--with-exact", with_exact, "Also print the exact similarity and error");

    // law ----------------------------------------------------------------
    auto* law_cmd = app.add_subcommand("law", "Exact probability law of the estimator");
    std::vector<std::string> law_sets;
    std::vector<std::string> law_texts;
    int law_p = 3;
    int law_k = 2;
    std::string law_scheme = "permutation";
    std::string law_mode = "mixture";
    std::string law_file;
    bool law_rum = false;
    int enum_limit = kDefaultEnumerationLimit;
    law_cmd->add_option("--set", law_sets, "ItemSet JSON file (twice)");
    law_cmd->add_option("files", law_texts, "Two text files")->expected(0, 2);
    law_cmd->add_option("--p", law_p, "Shingle size");
    law_cmd->add_option("--k", law_k, "Number of minhash functions");
    law_cmd->add_option("--scheme", law_scheme, "Hash scheme")
        ->check(CLI::IsMember({"linear", "permutation"}));
    law_cmd->add_option("--law-mode", law_mode, "Coordinate-dependence reading")
        ->check(CLI::IsMember({"product", "mixture"}));
    law_cmd->add_option("--law", law_file, "CoefficientLaw JSON (linear scheme)");
    law_cmd->add_flag("--rum", law_rum, "Use the doubled-row RUM matrix");
    law_cmd->add_option("--enum-limit", enum_limit, "Permutation enumeration limit")
        ->check(CLI::Range(1, 9));

    // ci -------------------------------------------------------------
    auto* ci_cmd = app.add_subcommand("ci", "Exact confidence interval from a law table");
    std::string ci_dist_file;
    std::string ci_p = "1/2";
    double ci_level = 0.95;
    ci_cmd->add_option("--dist", ci_dist_file, "DistributionTable JSON file")->required();
    ci_cmd->add_option("--center", ci_p, "Center p as a fraction");
    ci_cmd->add_option("--level", ci_level, "Nominal confidence level");

    // simulate -------------------------------------------------------
    auto* simu_cmd = app.add_subcommand("simulate", "Empirical law of the RUM estimator");
    std::vector<std::string> simu_sets;
    std::vector<std::string> simu_texts;
    int simu_p = 3;
    int simu_k = 2;
    long simu_trials = 10000;
    std::uint64_t simu_seed = default_seed();
    std::string simu_hash = "permutation";
    std::string simu_mode = "min";
    std::string simu_law_file;
    double tv_threshold = 0.02;
    bool simu_compare = false;
    int simu_enum_limit = kDefaultEnumerationLimit;
    simu_cmd->add_option("--set", simu_sets, "ItemSet JSON file (twice)");
    simu_cmd->add_option("files", simu_texts, "Two text files")->expected(0, 2);
    simu_cmd->add_option("--p", simu_p, "Shingle size");
    simu_cmd->add_option("--k", simu_k, "Number of minhash functions");
    simu_cmd->add_option("--trials", simu_trials, "Trial count");
    simu_cmd->add_option("--seed", simu_seed, "Random seed");
    simu_cmd->add_option("--hash", simu_hash, "Hash scheme")
        ->check(CLI::IsMember({"linear", "permutation"}));
    simu_cmd->add_option("--mode", simu_mode, "Aggregation")->check(CLI::IsMember({"min", "max"}));
    simu_cmd->add_option("--law", simu_law_file, "CoefficientLaw JSON (linear scheme)");
    simu_cmd->add_flag("--compare", simu_compare, "Compare against the exact law");
    simu_cmd->add_option("--tv-threshold", tv_threshold, "TV pass threshold for --compare");
    simu_cmd->add_option("--enum-limit", simu_enum_limit, "Permutation enumeration limit")
        ->check(CLI::Range(1, 9));

    // convergence ------------------------------------------------------
    auto* conv_cmd = app.add_subcommand("convergence", "Subsample-similarity convergence");
    std::vector<std::string> conv_files;
    int conv_p = 3;
    std::vector<int> conv_grid = {50, 100, 200, 400, 800, 1600};
    int conv_reps = 1000;
    std::uint64_t conv_seed = default_seed();
    conv_cmd->add_option("files", conv_files, "Two text files")->required()->expected(2);
    conv_cmd->add_option("--p", conv_p, "Shingle size");
    conv_cmd->add_option("--grid", conv_grid, "Subsample sizes");
    conv_cmd->add_option("--replications", conv_reps, "Replications per grid point");
    conv_cmd->add_option("--seed", conv_seed, "Random seed");

    CLI11_PARSE(app, argc, argv);

    if (*sim_cmd) {
        auto sets = load_corpus(sim_files, sim_p);
        json out = json::array();
        std::ostringstream csv;
        csv << "file_a,file_b,sim,simM\n";
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                Rational s = jaccard(sets[i], sets[j]);
                Rational sM = sim_to_simM(s);
                out.push_back({{"a", sim_files[i]},
                               {"b", sim_files[j]},
                               {"sim", to_string(s)},
                               {"simM", to_string(sM)}});
                csv << sim_files[i] << "," << sim_files[j] << "," << to_string(s) << ","
                    << to_string(sM) << "\n";
            }
        }
        emit(out, format, csv.str());
        return 0;
    }

    if (*est_cmd) {
        auto sets = load_corpus(est_files, est_p);
        std::optional<CoefficientLaw> law;
        if (!est_law_file.empty()) {
            std::ifstream in(est_law_file);
            json j;
            in >> j;
            law = law_from_json(j);
        }
        AggregationMode mode = est_mode == "max" ? AggregationMode::Max : AggregationMode::Min;
        json out = json::array();
        std::ostringstream csv;
        csv << "file_a,file_b,simrum,recovered_sim\n";
        std::uint64_t pair_stream = 0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                int n_rows = sets[i].size() + sets[j].size();
                std::uint64_t pair_seed = derive_seed(est_seed, pair_stream++);
                HashFamily family = make_family(est_hash, law, est_k, n_rows, pair_seed);
                auto rng = make_engine(derive_seed(pair_seed, 0xabcd));
                std::vector<int> sigma = identity_permutation(n_rows);
                std::shuffle(sigma.begin(), sigma.end(), rng);
                SignatureEstimate est = estimate_rum(sets[i], sets[j], family, sigma, mode);
                json rec = {{"a", est_files[i]},
                            {"b", est_files[j]},
                            {"simrum", decimal(est.simrum)},
                            {"recovered_sim", decimal(est.recovered_sim)}};
                if (with_exact) {
                    Rational exact = jaccard(sets[i], sets[j]);
                    rec["exact_sim"] = to_string(exact);
                    rec["signed_error"] = decimal(est.recovered_sim - to_double(exact));
                }
                out.push_back(rec);
                csv << est_files[i] << "," << est_files[j] << "," << decimal(est.simrum) << ","
                    << decimal(est.recovered_sim) << "\n";
            }
        }
        emit(out, format, csv.str());
        return 0;
    }

    if (*law_cmd) {
        auto [a, b] = load_pair(law_sets, law_texts, law_p);
        DistributionTable table;
        if (law_scheme == "permutation") {
            RepresentationMatrix m =
                law_rum ? build_rum_matrix(a, b, identity_permutation(a.size() + b.size()))
                        : build_representation_matrix(a.universe(), {a, b},
                                                      identity_permutation(a.universe()->size()));
            table = simrum_law_permutation(m, 1, 2, law_k);
        } else {
            RepresentationMatrix m =
                law_rum ? build_rum_matrix(a, b, identity_permutation(a.size() + b.size()))
                        : build_representation_matrix(a.universe(), {a, b},
                                                      identity_permutation(a.universe()->size()));
            CoefficientLaw law = CoefficientLaw::uniform(m.n_rows());
            if (!law_file.empty()) {
                std::ifstream in(law_file);
                json j;
                in >> j;
                law = law_from_json(j);
            }
            table = law_mode == "product"
                        ? simrum_law_product(m, 1, 2, law, law_k, enum_limit)
                        : simrum_law_mixture(m, 1, 2, law, law_k, enum_limit);
        }
        emit(distribution_to_json(table), format, distribution_to_csv(table));
        return 0;
    }

    if (*ci_cmd) {
        std::ifstream in(ci_dist_file);
        if (!in) {
            throw Error("cannot read file: " + ci_dist_file);
        }
        json j;
        in >> j;
        DistributionTable d = distribution_from_json(j);
        // nominal levels arrive as decimals; 0.95 -> 19/20 exactly
        Rational level(static_cast<long long>(ci_level * 10000 + 0.5), 10000);
        ConfidenceInterval ci = exact_ci(d, rational_from_string(ci_p), level);
        json out = {{"center", to_string(ci.center)},
                    {"half_width", to_string(ci.half_width)},
                    {"coverage", to_string(ci.coverage)},
                    {"level", to_string(ci.level)}};
        std::ostringstream csv;
        csv << "center,half_width,coverage,level\n"
            << to_string(ci.center) << "," << to_string(ci.half_width) << ","
            << to_string(ci.coverage) << "," << to_string(ci.level) << "\n";
        emit(out, format, csv.str());
        return 0;
    }

    if (*simu_cmd) {
        auto [a, b] = load_pair(simu_sets, simu_texts, simu_p);
        Sampler sampler = Sampler::permutations();
        std::optional<CoefficientLaw> law;
        if (simu_hash == "linear") {
            CoefficientLaw l = CoefficientLaw::uniform(a.size() + b.size());
            if (!simu_law_file.empty()) {
                std::ifstream in(simu_law_file);
                json j;
                in >> j;
                l = law_from_json(j);
            }
            law = l;
            sampler = Sampler::linear(l);
        }
        AggregationMode mode = simu_mode == "max" ? AggregationMode::Max : AggregationMode::Min;
        EmpiricalDistribution e =
            simulate_simrum(a, b, sampler, simu_k, simu_trials, simu_seed, mode);
        json out = {{"k", e.k}, {"trials", e.trials}, {"seed", e.seed}, {"counts", e.counts}};
        if (simu_compare) {
            RepresentationMatrix m =
                build_rum_matrix(a, b, identity_permutation(a.size() + b.size()));
            DistributionTable exact =
                simu_hash == "permutation"
                    ? simrum_law_permutation(m, 1, 2, simu_k)
                    : simrum_law_mixture(m, 1, 2, *law, simu_k, simu_enum_limit);
            ComparisonResult cmp = compare(e, exact, tv_threshold);
            out["tv_distance"] = cmp.tv_distance;
            out["chi_square"] = cmp.chi_square;
            out["pass"] = cmp.pass;
            if (!cmp.pass) {
                std::cerr << "TV distance " << cmp.tv_distance << " exceeds threshold "
                          << tv_threshold << "\n";
                emit(out, format, empirical_to_csv(e));
                return 1;
            }
        }
        emit(out, format, empirical_to_csv(e));
        return 0;
    }

    if (*conv_cmd) {
        auto sets = load_corpus(conv_files, conv_p);
        ConvergenceResult res = subsample_convergence(sets[0], sets[1], conv_grid, conv_reps,
                                                      conv_seed);
        json out = {{"slope", res.slope}, {"records", json::array()}};
        for (const auto& rec : res.records) {
            out["records"].push_back({{"n1", rec.n1},
                                      {"n2", rec.n2},
                                      {"replications", rec.replications},
                                      {"mean_abs_error", rec.mean_abs_error}});
        }
        emit(out, format, convergence_to_csv(res));
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const EnumerationLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
