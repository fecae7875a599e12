#include "minsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minsim/errors.hpp"
#include "minsim/rng.hpp"

namespace minsim {

EmpiricalDistribution simulate_simrum(const ItemSet& a, const ItemSet& b,
                                      const Sampler& sampler, int k, long trials,
                                      std::uint64_t seed, AggregationMode mode) {
    if (trials < 1) {
        throw DomainError("need at least one trial");
    }
    if (sampler.kind == SamplerKind::Linear && !sampler.law) {
        throw InvalidLawError("linear sampler requires a coefficient law");
    }
    int n_rows = a.size() + b.size();
    if (n_rows == 0) {
        throw EmptyInputError("both sets empty");
    }
    EmpiricalDistribution e;
    e.k = k;
    e.seed = seed;
    e.trials = trials;
    e.counts.assign(static_cast<std::size_t>(k) + 1, 0);
    for (long t = 0; t < trials; ++t) {
        std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        auto rng = make_engine(derive_seed(trial_seed, 0));
        std::vector<int> sigma = identity_permutation(n_rows);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        HashFamily family =
            sampler.kind == SamplerKind::Permutation
                ? HashFamily(sample_permutations(k, n_rows, derive_seed(trial_seed, 1)))
                : HashFamily(sample_family(*sampler.law, k, n_rows, derive_seed(trial_seed, 1)));
        SignatureEstimate est = estimate_rum(a, b, family, sigma, mode);
        e.counts[static_cast<std::size_t>(est.matches)]++;
    }
    return e;
}

EmpiricalDistribution simulate_matrix_simrum(const RepresentationMatrix& m, int l, int l2,
                                             const CoefficientLaw& law, int k, long trials,
                                             std::uint64_t seed) {
    law.validate();
    if (trials < 1) {
        throw DomainError("need at least one trial");
    }
    int n = m.n_rows();
    std::vector<int> member_l = m.member_rows(l);
    std::vector<int> member_l2 = m.member_rows(l2);
    std::vector<double> cum;
    {
        double acc = 0.0;
        for (const auto& p : law.prob) {
            acc += to_double(p);
            cum.push_back(acc);
        }
        cum.back() = 1.0;
    }
    EmpiricalDistribution e;
    e.k = k;
    e.seed = seed;
    e.trials = trials;
    e.counts.assign(static_cast<std::size_t>(k) + 1, 0);
    std::vector<int> pos(static_cast<std::size_t>(n) + 1);
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (long t = 0; t < trials; ++t) {
        auto rng = make_engine(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::iota(sigma.begin(), sigma.end(), 1);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        for (int i = 1; i <= n; ++i) {
            pos[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i - 1)])] = i;
        }
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        int matches = 0;
        for (int alpha = 0; alpha < k; ++alpha) {
            double u = unif(rng);
            auto it = std::lower_bound(cum.begin(), cum.end(), u);
            if (it == cum.end()) {
                --it;
            }
            const auto& [x, y] = law.support[static_cast<std::size_t>(it - cum.begin())];
            int ml = n + 1;
            for (int j : member_l) {
                ml = std::min(ml, eval_linear(x, y, n, pos[static_cast<std::size_t>(j)]));
            }
            int ml2 = n + 1;
            for (int j : member_l2) {
                ml2 = std::min(ml2, eval_linear(x, y, n, pos[static_cast<std::size_t>(j)]));
            }
            if (ml == ml2 && ml <= n) {
                ++matches;
            }
        }
        e.counts[static_cast<std::size_t>(matches)]++;
    }
    return e;
}

ComparisonResult compare(const EmpiricalDistribution& e, const DistributionTable& d,
                         double tv_threshold) {
    if (e.k != d.k) {
        throw DimensionMismatchError("empirical and exact tables disagree on k");
    }
    ComparisonResult res;
    double tv = 0.0;
    for (int t = 0; t <= e.k; ++t) {
        tv += std::abs(e.freq_at(t) - to_double(d.probs[static_cast<std::size_t>(t)]));
    }
    res.tv_distance = 0.5 * tv;

    // chi-square with cells pooled so every expected count is >= 5
    double chi = 0.0;
    int cells = 0;
    double obs_acc = 0.0;
    double exp_acc = 0.0;
    for (int t = 0; t <= e.k; ++t) {
        obs_acc += static_cast<double>(e.counts[static_cast<std::size_t>(t)]);
        exp_acc += to_double(d.probs[static_cast<std::size_t>(t)]) *
                   static_cast<double>(e.trials);
        if (exp_acc >= 5.0) {
            chi += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
            ++cells;
            obs_acc = 0.0;
            exp_acc = 0.0;
        }
    }
    if (exp_acc > 0.0 && cells > 0) {
        // fold the tail remainder into the last cell
        chi += (obs_acc - exp_acc) * (obs_acc - exp_acc) / std::max(exp_acc, 1e-12);
    }
    res.chi_square = chi;
    res.pooled_cells = cells;
    res.pass = res.tv_distance < tv_threshold;
    return res;
}

namespace {

double subsample_abs_error(const std::vector<int>& a, const std::vector<int>& b, int n1,
                           int n2, double sim_full, std::mt19937_64& rng) {
    std::vector<int> s1;
    std::vector<int> s2;
    std::sample(a.begin(), a.end(), std::back_inserter(s1), n1, rng);
    std::sample(b.begin(), b.end(), std::back_inserter(s2), n2, rng);
    std::vector<int> inter;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                          std::back_inserter(inter));
    double i = static_cast<double>(inter.size());
    double u = static_cast<double>(n1 + n2) - i;
    double sim = u > 0.0 ? i / u : 0.0;
    return std::abs(sim - sim_full);
}

}  // namespace

ConvergenceResult subsample_convergence(const ItemSet& a, const ItemSet& b,
                                        const std::vector<int>& size_grid, int replications,
                                        std::uint64_t seed) {
    if (replications < 1) {
        throw DomainError("need at least one replication");
    }
    for (int g : size_grid) {
        if (g < 1 || g > a.size() || g > b.size()) {
            throw DomainError("grid size exceeds set cardinality");
        }
    }
    double sim_full = to_double(jaccard(a, b));
    ConvergenceResult result;
    std::vector<double> log_size;
    std::vector<double> log_err;
    for (std::size_t gi = 0; gi < size_grid.size(); ++gi) {
        int g = size_grid[gi];
        double total = 0.0;
        for (int r = 0; r < replications; ++r) {
            auto rng = make_engine(derive_seed(seed, (static_cast<std::uint64_t>(gi) << 32) |
                                                         static_cast<std::uint64_t>(r)));
            total += subsample_abs_error(a.members(), b.members(), g, g, sim_full, rng);
        }
        ConvergenceRecord rec;
        rec.n1 = g;
        rec.n2 = g;
        rec.replications = replications;
        rec.mean_abs_error = total / replications;
        result.records.push_back(rec);
        if (rec.mean_abs_error > 0.0) {
            log_size.push_back(std::log(static_cast<double>(2 * g)));
            log_err.push_back(std::log(rec.mean_abs_error));
        }
    }
    // least-squares slope of log(err) on log(n1+n2)
    if (log_size.size() >= 2) {
        double mx = std::accumulate(log_size.begin(), log_size.end(), 0.0) / log_size.size();
        double my = std::accumulate(log_err.begin(), log_err.end(), 0.0) / log_err.size();
        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t i = 0; i < log_size.size(); ++i) {
            sxx += (log_size[i] - mx) * (log_size[i] - mx);
            sxy += (log_size[i] - mx) * (log_err[i] - my);
        }
        result.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    return result;
}

}  // namespace minsim
