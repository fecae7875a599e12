#include "minsim/exactlaw.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "minsim/errors.hpp"
#include "minsim/rng.hpp"

namespace minsim {

namespace {

Rational rational_pow(const Rational& base, int exp) {
    Rational out(1);
    for (int i = 0; i < exp; ++i) {
        out *= base;
    }
    return out;
}

}  // namespace

void DistributionTable::validate() const {
    if (k < 1 || probs.size() != static_cast<std::size_t>(k) + 1) {
        throw DimensionMismatchError("distribution table must have k+1 entries");
    }
    Rational total(0);
    for (const auto& p : probs) {
        if (p < Rational(0)) {
            throw DomainError("negative probability in distribution table");
        }
        total += p;
    }
    if (total != Rational(1)) {
        throw DomainError("distribution table does not sum to 1");
    }
}

DistributionTable binomial_table(int k, const Rational& p) {
    if (p < Rational(0) || p > Rational(1)) {
        throw DomainError("binomial parameter outside [0,1]");
    }
    DistributionTable d;
    d.k = k;
    d.probs.resize(static_cast<std::size_t>(k) + 1);
    Rational q = Rational(1) - p;
    for (int t = 0; t <= k; ++t) {
        d.probs[static_cast<std::size_t>(t)] =
            Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(t))) *
            rational_pow(p, t) * rational_pow(q, k - t);
    }
    return d;
}

DistributionTable poisson_binomial(std::span<const Rational> probs) {
    int k = static_cast<int>(probs.size());
    if (k < 1) {
        throw EmptyInputError("need at least one coordinate probability");
    }
    for (const auto& p : probs) {
        if (p < Rational(0) || p > Rational(1)) {
            throw DomainError("coordinate probability outside [0,1]");
        }
    }
    std::vector<Rational> dp(static_cast<std::size_t>(k) + 1, Rational(0));
    dp[0] = Rational(1);
    for (int alpha = 0; alpha < k; ++alpha) {
        const Rational& p = probs[static_cast<std::size_t>(alpha)];
        for (int t = alpha + 1; t >= 1; --t) {
            dp[static_cast<std::size_t>(t)] =
                dp[static_cast<std::size_t>(t)] * (Rational(1) - p) +
                dp[static_cast<std::size_t>(t - 1)] * p;
        }
        dp[0] *= (Rational(1) - p);
    }
    DistributionTable d;
    d.k = k;
    d.probs = std::move(dp);
    return d;
}

Rational conditional_similarity(const RepresentationMatrix& m, int h, int l) {
    if (h == l || h < 1 || l < 1 || h > m.m_cols() || l > m.m_cols()) {
        throw DomainError("column indices must be distinct and in range");
    }
    long long class_a = 0;  // both ones
    long long class_b = 0;  // exactly one one
    for (int i = 1; i <= m.n_rows(); ++i) {
        bool ch = m.cell(i, h);
        bool cl = m.cell(i, l);
        if (ch && cl) {
            ++class_a;
        } else if (ch || cl) {
            ++class_b;
        }
    }
    if (class_a + class_b == 0) {
        throw UndefinedSimilarityError("all rows lie in class C");
    }
    return Rational(BigInt(class_a), BigInt(class_a + class_b));
}

SubsetLaw random_subset_law(int n, int k, int m) {
    if (k < 1 || m < 1 || k > n || m > n) {
        throw DomainError("need 1 <= k,m <= n");
    }
    SubsetLaw law;
    law.n = n;
    law.k = k;
    law.m = m;
    int jmax = std::min(k, m);
    law.pmf.resize(static_cast<std::size_t>(jmax) + 1);
    BigInt choose_nm = binomial(static_cast<unsigned>(n), static_cast<unsigned>(m));
    BigInt choose_nk = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
    Rational expected(0);
    for (int j = 0; j <= jmax; ++j) {
        Rational first(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)) *
                           binomial(static_cast<unsigned>(n - k), static_cast<unsigned>(m - j)),
                       choose_nm);
        Rational second(binomial(static_cast<unsigned>(m), static_cast<unsigned>(j)) *
                            binomial(static_cast<unsigned>(n - m), static_cast<unsigned>(k - j)),
                        choose_nk);
        Rational pj = (first + second) / Rational(2);
        law.pmf[static_cast<std::size_t>(j)] = pj;
        if (j > 0) {
            expected += Rational(j, m + k - j) * pj;
        }
    }
    law.expected_similarity = expected;
    return law;
}

namespace {

// Minimum of z(i) = p*i + q mod n (zero -> n) over the member positions;
// n+1 when the member set is empty.
int min_hash_over(const std::vector<int>& positions, long long p, long long q, int n) {
    int best = n + 1;
    for (int i : positions) {
        best = std::min(best, eval_linear(p, q, n, i));
    }
    return best;
}

// Calls fn(p_sigma) once per permutation sigma of the rows, where p_sigma
// is the law mass of {(p,q) : minima over the two member position sets
// agree}.
template <typename Fn>
int for_each_sigma(const RepresentationMatrix& m, int l, int l2, const CoefficientLaw& law,
                   int enum_limit, Fn&& fn) {
    law.validate();
    int n = m.n_rows();
    if (n > enum_limit) {
        throw EnumerationLimitError("row count " + std::to_string(n) +
                                    " exceeds the enumeration limit " +
                                    std::to_string(enum_limit));
    }
    std::vector<int> member_l = m.member_rows(l);
    std::vector<int> member_l2 = m.member_rows(l2);
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    int count = 0;
    do {
        // position of original row j under this order
        std::vector<int> pos(static_cast<std::size_t>(n) + 1, 0);
        for (int i = 1; i <= n; ++i) {
            pos[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i - 1)])] = i;
        }
        std::vector<int> gamma_l, gamma_l2;
        for (int j : member_l) {
            gamma_l.push_back(pos[static_cast<std::size_t>(j)]);
        }
        for (int j : member_l2) {
            gamma_l2.push_back(pos[static_cast<std::size_t>(j)]);
        }
        Rational p_sigma(0);
        for (std::size_t s = 0; s < law.support.size(); ++s) {
            const auto& [p, q] = law.support[s];
            if (min_hash_over(gamma_l, p, q, n) == min_hash_over(gamma_l2, p, q, n)) {
                p_sigma += law.prob[s];
            }
        }
        fn(p_sigma);
        ++count;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return count;
}

}  // namespace

CollisionReport collision_probability(const RepresentationMatrix& m, int l, int l2,
                                      const CoefficientLaw& law, int enum_limit) {
    CollisionReport report;
    Rational total(0);
    report.permutations_enumerated =
        for_each_sigma(m, l, l2, law, enum_limit, [&](const Rational& p_sigma) {
            report.per_sigma.push_back(p_sigma);
            total += p_sigma;
        });
    report.collision_prob = total / Rational(report.permutations_enumerated);
    return report;
}

Rational collision_probability_uniform(int i1_size, int i2_size, int i3_size) {
    if (i1_size < 0 || i2_size < 0 || i3_size < 0) {
        throw DomainError("class sizes must be nonnegative");
    }
    long long total = static_cast<long long>(i1_size) + i2_size + i3_size;
    if (total == 0) {
        throw EmptyInputError("all row classes empty");
    }
    return Rational(BigInt(i2_size), BigInt(total));
}

DistributionTable simrum_law_product(const RepresentationMatrix& m, int l, int l2,
                                     const CoefficientLaw& law, int k, int enum_limit) {
    Rational p = collision_probability(m, l, l2, law, enum_limit).collision_prob;
    return binomial_table(k, p);
}

DistributionTable simrum_law_mixture(const RepresentationMatrix& m, int l, int l2,
                                     const CoefficientLaw& law, int k, int enum_limit) {
    std::vector<Rational> acc(static_cast<std::size_t>(k) + 1, Rational(0));
    int count = for_each_sigma(m, l, l2, law, enum_limit, [&](const Rational& p_sigma) {
        DistributionTable cond = binomial_table(k, p_sigma);
        for (int t = 0; t <= k; ++t) {
            acc[static_cast<std::size_t>(t)] += cond.probs[static_cast<std::size_t>(t)];
        }
    });
    for (auto& p : acc) {
        p /= Rational(count);
    }
    DistributionTable d;
    d.k = k;
    d.probs = std::move(acc);
    return d;
}

DistributionTable simrum_law_permutation(const RepresentationMatrix& m, int l, int l2, int k) {
    int i2 = 0;
    int other = 0;
    for (int i = 1; i <= m.n_rows(); ++i) {
        bool ch = m.cell(i, l);
        bool cl = m.cell(i, l2);
        if (ch && cl) {
            ++i2;
        } else if (ch || cl) {
            ++other;
        }
    }
    // Rows outside both columns never carry the column minima's elements
    // in a RUM matrix; they still dilute the uniform minimum, so they
    // count in the denominator.
    int rest = m.n_rows() - i2 - other;
    Rational p = collision_probability_uniform(other + rest, i2, 0);
    return binomial_table(k, p);
}

Rational deviation_probability(const DistributionTable& d, const Rational& p,
                               const Rational& eps) {
    if (p < Rational(0) || p > Rational(1) || eps < Rational(0)) {
        throw DomainError("need p in [0,1] and eps >= 0");
    }
    Rational total(0);
    for (int t = 0; t <= d.k; ++t) {
        Rational s(t, d.k);
        Rational diff = s > p ? s - p : p - s;
        if (diff <= eps) {
            total += d.probs[static_cast<std::size_t>(t)];
        }
    }
    return total;
}

Rational moment(const DistributionTable& d, int p) {
    if (p < 1) {
        throw DomainError("moment order must be >= 1");
    }
    Rational total(0);
    for (int t = 0; t <= d.k; ++t) {
        total += rational_pow(Rational(t, d.k), p) * d.probs[static_cast<std::size_t>(t)];
    }
    return total;
}

ConfidenceInterval exact_ci(const DistributionTable& d, const Rational& p,
                            const Rational& level) {
    if (level <= Rational(0) || level >= Rational(1)) {
        throw DomainError("confidence level must lie in (0,1)");
    }
    ConfidenceInterval ci;
    ci.center = p;
    ci.level = level;
    for (int j = 0; j <= 2 * d.k; ++j) {
        Rational eps(j, 2 * d.k);
        Rational coverage = deviation_probability(d, p, eps);
        if (coverage >= level) {
            ci.half_width = eps;
            ci.coverage = coverage;
            return ci;
        }
    }
    // eps = 1 covers the whole support
    ci.half_width = Rational(1);
    ci.coverage = Rational(1);
    return ci;
}

UniformSchemeStats uniform_scheme_stats(const Rational& sim, int k, const Rational& lambda) {
    if (sim < Rational(0) || sim > Rational(1)) {
        throw DomainError("similarity outside [0,1]");
    }
    if (k < 1 || lambda <= Rational(0)) {
        throw DomainError("need k >= 1 and lambda > 0");
    }
    UniformSchemeStats stats;
    stats.sim = sim;
    stats.k = k;
    stats.lambda = lambda;
    stats.mean = sim;
    stats.variance = sim * (Rational(1) - sim) / Rational(k);
    stats.tchebychev_bound = stats.variance / (lambda * lambda);
    if (sim > Rational(0) && sim < Rational(1)) {
        stats.gaussian_available = true;
        stats.gaussian_half_width = 1.96 * std::sqrt(to_double(stats.variance));
    }
    return stats;
}

namespace {

GeneralSchemeResult run_general_scheme(const RepresentationMatrix& m,
                                       const std::vector<int>& i2_rows, int k, long trials,
                                       std::uint64_t seed, double lambda, int z0,
                                       const std::function<HashMatrix(std::uint64_t)>& draw) {
    if (trials < 1) {
        throw DomainError("need at least one trial");
    }
    int n = m.n_rows();
    long accepted = 0;
    long hits = 0;
    for (long t = 0; t < trials; ++t) {
        HashMatrix z = draw(derive_seed(seed, static_cast<std::uint64_t>(t)));
        bool disjoint = true;
        for (int i = 1; i <= n && disjoint; ++i) {
            for (int j = i + 1; j <= n && disjoint; ++j) {
                for (int alpha = 1; alpha <= k; ++alpha) {
                    if (z.at(i, alpha) == z.at(j, alpha)) {
                        disjoint = false;
                        break;
                    }
                }
            }
        }
        if (!disjoint) {
            continue;
        }
        ++accepted;
        for (int alpha = 1; alpha <= k; ++alpha) {
            for (int i : i2_rows) {
                if (z.at(i, alpha) == z0) {
                    ++hits;
                    break;
                }
            }
        }
    }
    if (accepted == 0) {
        throw ConditioningFailureError("no trial realized the disjointness event D_n");
    }
    GeneralSchemeResult res;
    res.trials = trials;
    res.accepted = accepted;
    res.p_disjoint_hat = static_cast<double>(accepted) / static_cast<double>(trials);
    res.p_hat = static_cast<double>(hits) / (static_cast<double>(accepted) * k);
    res.deviation_bound =
        res.p_disjoint_hat * res.p_hat * (1.0 - res.p_hat) / (k * lambda * lambda);
    return res;
}

}  // namespace

GeneralSchemeResult general_scheme(const RepresentationMatrix& m,
                                   const std::vector<int>& i2_rows,
                                   const CoefficientLaw& law, int k, long trials,
                                   std::uint64_t seed, double lambda) {
    law.validate();
    int n = m.n_rows();
    // z0: smallest achievable hash value over the law's support.
    int z0 = n + 1;
    for (const auto& [p, q] : law.support) {
        for (int i = 1; i <= n; ++i) {
            z0 = std::min(z0, eval_linear(p, q, n, i));
        }
    }
    return run_general_scheme(m, i2_rows, k, trials, seed, lambda, z0, [&](std::uint64_t s) {
        return family_rows(HashFamily(sample_family(law, k, n, s)));
    });
}

GeneralSchemeResult general_scheme_permutation(const RepresentationMatrix& m,
                                               const std::vector<int>& i2_rows, int k,
                                               long trials, std::uint64_t seed, double lambda) {
    int n = m.n_rows();
    return run_general_scheme(m, i2_rows, k, trials, seed, lambda, /*z0=*/1,
                              [&](std::uint64_t s) {
                                  return family_rows(HashFamily(sample_permutations(k, n, s)));
                              });
}

}  // namespace minsim
