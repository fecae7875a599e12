#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "minsim/exactlaw.hpp"
#include "minsim/hashing.hpp"
#include "minsim/itemsets.hpp"
#include "minsim/signatures.hpp"

namespace minsim {

struct EmpiricalDistribution {
    int k = 0;
    std::vector<long> counts;  // indexed by t, size k+1
    long trials = 0;
    std::uint64_t seed = 0;

    double freq_at(int t) const {
        return static_cast<double>(counts.at(static_cast<std::size_t>(t))) /
               static_cast<double>(trials);
    }
};

enum class SamplerKind { Linear, Permutation };

struct Sampler {
    SamplerKind kind = SamplerKind::Permutation;
    std::optional<CoefficientLaw> law;  // required for Linear

    static Sampler permutations() { return {SamplerKind::Permutation, std::nullopt}; }
    static Sampler linear(CoefficientLaw law) { return {SamplerKind::Linear, std::move(law)}; }
};

// Each trial draws a fresh family and a fresh RUM row order, runs
// estimate_rum and records t = k * simrum. Per-trial seeds derive from
// the master seed by a counter scheme, so results do not depend on
// evaluation order.
EmpiricalDistribution simulate_simrum(const ItemSet& a, const ItemSet& b,
                                      const Sampler& sampler, int k, long trials,
                                      std::uint64_t seed,
                                      AggregationMode mode = AggregationMode::Min);

// Shared-sigma generative model of the exact laws: per trial draw one
// uniform row order and k iid coefficient pairs, fill, count matches of
// columns l and l2.
EmpiricalDistribution simulate_matrix_simrum(const RepresentationMatrix& m, int l, int l2,
                                             const CoefficientLaw& law, int k, long trials,
                                             std::uint64_t seed);

struct ComparisonResult {
    double tv_distance = 0.0;
    double chi_square = 0.0;
    int pooled_cells = 0;
    bool pass = false;
};

// TV distance plus a chi-square statistic over cells pooled to expected
// count >= 5; pass iff tv_distance < tv_threshold.
ComparisonResult compare(const EmpiricalDistribution& e, const DistributionTable& d,
                         double tv_threshold);

struct ConvergenceRecord {
    int n1 = 0;
    int n2 = 0;
    int replications = 0;
    double mean_abs_error = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRecord> records;
    double slope = 0.0;  // least-squares slope of log(err) vs log(n1+n2)
};

// Subsample S1 of A and S2 of B without replacement at each grid size,
// average |sim(S1,S2) - sim(A,B)| over replications.
ConvergenceResult subsample_convergence(const ItemSet& a, const ItemSet& b,
                                        const std::vector<int>& size_grid, int replications,
                                        std::uint64_t seed);

}  // namespace minsim
