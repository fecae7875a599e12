#include "minsim/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "minsim/errors.hpp"
#include "minsim/rng.hpp"

namespace minsim {

int eval_linear(long long x, long long y, int n, int i) {
    if (n < 1) {
        throw DomainError("modulus must be >= 1");
    }
    if (i < 1 || i > n) {
        throw DomainError("hash argument outside {1..n}");
    }
    long long r = (x * i + y) % n;
    if (r < 0) {
        r += n;
    }
    return r == 0 ? n : static_cast<int>(r);
}

int family_k(const HashFamily& family) {
    return std::visit([](const auto& f) { return f.k(); }, family);
}

int family_modulus(const HashFamily& family) {
    if (const auto* lin = std::get_if<LinearHashFamily>(&family)) {
        return lin->modulus;
    }
    return std::get<PermutationFamily>(family).n;
}

void CoefficientLaw::validate() const {
    if (support.empty()) {
        throw InvalidLawError("coefficient law has empty support");
    }
    if (support.size() != prob.size()) {
        throw InvalidLawError("support/probability length mismatch");
    }
    Rational total(0);
    for (const auto& p : prob) {
        if (p < Rational(0)) {
            throw InvalidLawError("negative probability mass");
        }
        total += p;
    }
    if (total != Rational(1)) {
        throw InvalidLawError("probabilities must sum to exactly 1");
    }
    auto sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidLawError("duplicate support pair");
    }
}

CoefficientLaw CoefficientLaw::uniform(int n) {
    CoefficientLaw law;
    Rational mass(1, static_cast<long long>(n) * n);
    for (int x = 1; x <= n; ++x) {
        for (int y = 1; y <= n; ++y) {
            law.support.emplace_back(x, y);
            law.prob.push_back(mass);
        }
    }
    return law;
}

CoefficientLaw CoefficientLaw::point_mass(int x, int y) {
    CoefficientLaw law;
    law.support.emplace_back(x, y);
    law.prob.emplace_back(1);
    return law;
}

namespace {

// Cumulative weights for sampling; double precision is fine on the
// Monte Carlo paths.
std::vector<double> cumulative_weights(const CoefficientLaw& law) {
    std::vector<double> cum;
    cum.reserve(law.prob.size());
    double acc = 0.0;
    for (const auto& p : law.prob) {
        acc += to_double(p);
        cum.push_back(acc);
    }
    cum.back() = 1.0;
    return cum;
}

std::size_t sample_index(const std::vector<double>& cum, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    auto it = std::lower_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) {
        --it;
    }
    return static_cast<std::size_t>(it - cum.begin());
}

}  // namespace

LinearHashFamily sample_family(const CoefficientLaw& law, int k, int n, std::uint64_t seed) {
    law.validate();
    if (k < 1) {
        throw DomainError("family size must be >= 1");
    }
    auto cum = cumulative_weights(law);
    auto rng = make_engine(seed);
    LinearHashFamily family;
    family.modulus = n;
    family.coeffs.reserve(static_cast<std::size_t>(k));
    for (int alpha = 0; alpha < k; ++alpha) {
        const auto& pair = law.support[sample_index(cum, rng)];
        family.coeffs.emplace_back(pair.first, pair.second);
    }
    return family;
}

LinearHashFamily sample_uniform_family(int k, int n, std::uint64_t seed) {
    if (k < 1 || n < 1) {
        throw DomainError("need k >= 1 and n >= 1");
    }
    auto rng = make_engine(seed);
    std::uniform_int_distribution<int> coeff(1, n);
    LinearHashFamily family;
    family.modulus = n;
    family.coeffs.reserve(static_cast<std::size_t>(k));
    for (int alpha = 0; alpha < k; ++alpha) {
        int x = coeff(rng);
        int y = coeff(rng);
        family.coeffs.emplace_back(x, y);
    }
    return family;
}

PermutationFamily sample_permutations(int k, int n, std::uint64_t seed) {
    if (k < 1 || n < 1) {
        throw DomainError("need k >= 1 and n >= 1");
    }
    PermutationFamily family;
    family.n = n;
    family.perms.reserve(static_cast<std::size_t>(k));
    auto rng = make_engine(seed);
    for (int alpha = 0; alpha < k; ++alpha) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        family.perms.push_back(std::move(perm));
    }
    return family;
}

HashMatrix family_rows(const HashFamily& family) {
    HashMatrix z;
    z.n = family_modulus(family);
    z.k = family_k(family);
    z.values.resize(static_cast<std::size_t>(z.n) * z.k);
    if (const auto* lin = std::get_if<LinearHashFamily>(&family)) {
        for (int i = 1; i <= z.n; ++i) {
            for (int alpha = 1; alpha <= z.k; ++alpha) {
                const auto& [x, y] = lin->coeffs[static_cast<std::size_t>(alpha - 1)];
                z.values[static_cast<std::size_t>(i - 1) * z.k + (alpha - 1)] =
                    eval_linear(x, y, z.n, i);
            }
        }
    } else {
        const auto& perm = std::get<PermutationFamily>(family);
        for (int i = 1; i <= z.n; ++i) {
            for (int alpha = 1; alpha <= z.k; ++alpha) {
                z.values[static_cast<std::size_t>(i - 1) * z.k + (alpha - 1)] =
                    perm.perms[static_cast<std::size_t>(alpha - 1)][static_cast<std::size_t>(i - 1)];
            }
        }
    }
    return z;
}

namespace {

DisjointnessEstimate run_disjointness(int n, int k, long trials, std::uint64_t seed,
                                      const std::function<HashMatrix(std::uint64_t)>& draw) {
    if (trials < 1) {
        throw DomainError("need at least one trial");
    }
    long disjoint_count = 0;
    std::vector<std::vector<long>> coord_hits(static_cast<std::size_t>(n),
                                              std::vector<long>(static_cast<std::size_t>(n), 0));
    std::vector<std::vector<long>> share_hits(static_cast<std::size_t>(n),
                                              std::vector<long>(static_cast<std::size_t>(n), 0));
    for (long t = 0; t < trials; ++t) {
        HashMatrix z = draw(derive_seed(seed, static_cast<std::uint64_t>(t)));
        bool all_disjoint = true;
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                int matches = 0;
                for (int alpha = 1; alpha <= k; ++alpha) {
                    if (z.at(i, alpha) == z.at(j, alpha)) {
                        ++matches;
                    }
                }
                coord_hits[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +=
                    matches;
                if (matches > 0) {
                    all_disjoint = false;
                    share_hits[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]++;
                }
            }
        }
        if (all_disjoint) {
            ++disjoint_count;
        }
    }
    DisjointnessEstimate est;
    est.trials = trials;
    est.p_disjoint = static_cast<double>(disjoint_count) / static_cast<double>(trials);
    est.std_err = std::sqrt(est.p_disjoint * (1.0 - est.p_disjoint) / static_cast<double>(trials));
    est.pair_collision.assign(static_cast<std::size_t>(n),
                              std::vector<double>(static_cast<std::size_t>(n), 0.0));
    est.pair_share = est.pair_collision;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            est.pair_collision[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<double>(coord_hits[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
                (static_cast<double>(trials) * k);
            est.pair_share[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<double>(share_hits[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
                static_cast<double>(trials);
        }
    }
    return est;
}

}  // namespace

DisjointnessEstimate disjointness_probability(const CoefficientLaw& law, int n, int k,
                                              long trials, std::uint64_t seed) {
    law.validate();
    return run_disjointness(n, k, trials, seed, [&](std::uint64_t s) {
        return family_rows(HashFamily(sample_family(law, k, n, s)));
    });
}

DisjointnessEstimate disjointness_probability_permutation(int n, int k, long trials,
                                                          std::uint64_t seed) {
    return run_disjointness(n, k, trials, seed, [&](std::uint64_t s) {
        return family_rows(HashFamily(sample_permutations(k, n, s)));
    });
}

}  // namespace minsim
