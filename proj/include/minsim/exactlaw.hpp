#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "minsim/hashing.hpp"
#include "minsim/itemsets.hpp"
#include "minsim/rational.hpp"

namespace minsim {

inline constexpr int kDefaultEnumerationLimit = 7;

/// Exact law of the estimated similarity on the support {t/k : 0 <= t <= k}.
struct DistributionTable {
    int k = 0;
    std::vector<Rational> probs;  // indexed by t, size k+1

    void validate() const;  // nonnegative, sums to exactly 1
    Rational prob_at(int t) const { return probs.at(static_cast<std::size_t>(t)); }
};

DistributionTable binomial_table(int k, const Rational& p);

// The law of a sum of independent Bernoulli(probs[alpha]) coordinates,
// divided by k. This is the product-form reading of the simrum law.
DistributionTable poisson_binomial(std::span<const Rational> probs);

// Similarity as a conditional probability: #(rows with two ones) over
// #(rows with at least one one), via the A/B/C row classes.
Rational conditional_similarity(const RepresentationMatrix& m, int h, int l);

struct SubsetLaw {
    int n = 0;
    int k = 0;
    int m = 0;
    std::vector<Rational> pmf;  // P(#(X cap Y) = j), j = 0..min(k,m)
    Rational expected_similarity;
};

// Law of the intersection cardinality of two uniformly drawn subsets of
// sizes k and m from an n-element set, and E[sim(X,Y)].
SubsetLaw random_subset_law(int n, int k, int m);

struct CollisionReport {
    Rational collision_prob;  // P(U_l(alpha) = U_l'(alpha)), same for every alpha
    int permutations_enumerated = 0;
    std::vector<Rational> per_sigma;  // conditional collision prob for each sigma
};

// Exact double enumeration over row orders sigma and the law's support.
// The per-pair hash convention is z(i) = p*i + q mod n (zero -> n) for a
// support pair (p,q), matching eval_linear.
CollisionReport collision_probability(const RepresentationMatrix& m, int l, int l2,
                                      const CoefficientLaw& law,
                                      int enum_limit = kDefaultEnumerationLimit);

// Bernoulli parameter of the pure uniform permutation scheme:
// #I2 / (#I1 + #I2 + #I3).
Rational collision_probability_uniform(int i1_size, int i2_size, int i3_size);

// Unconditional (paper-literal) law: Binomial built from the sigma-averaged
// collision probability, treating coordinates as independent.
DistributionTable simrum_law_product(const RepresentationMatrix& m, int l, int l2,
                                     const CoefficientLaw& law, int k,
                                     int enum_limit = kDefaultEnumerationLimit);

// Exact mixture law: average over sigma of the Binomial(k, p_sigma)
// conditional laws; coordinates are independent only given sigma.
DistributionTable simrum_law_mixture(const RepresentationMatrix& m, int l, int l2,
                                     const CoefficientLaw& law, int k,
                                     int enum_limit = kDefaultEnumerationLimit);

// Law under k independent uniform permutations: exactly
// Binomial(k, #I2/#rows) / k for the matrix's columns l, l2.
DistributionTable simrum_law_permutation(const RepresentationMatrix& m, int l, int l2, int k);

// P(|simrum - p| <= eps), summed over the closed band of support points.
Rational deviation_probability(const DistributionTable& d, const Rational& p,
                               const Rational& eps);

Rational moment(const DistributionTable& d, int p);

struct ConfidenceInterval {
    Rational center;
    Rational half_width;   // smallest eps on the grid {j/(2k)}
    Rational coverage;     // achieved coverage at half_width
    Rational level;
};

ConfidenceInterval exact_ci(const DistributionTable& d, const Rational& p,
                            const Rational& level);

struct UniformSchemeStats {
    Rational sim;
    int k = 0;
    Rational mean;
    Rational variance;          // sim(1-sim)/k
    Rational tchebychev_bound;  // sim(1-sim)/(k lambda^2)
    Rational lambda;
    bool gaussian_available = false;
    double gaussian_half_width = 0.0;  // 1.96 sqrt(sim(1-sim)/k)
};

UniformSchemeStats uniform_scheme_stats(const Rational& sim, int k, const Rational& lambda);

struct GeneralSchemeResult {
    double p_hat = 0.0;          // conditional Bernoulli parameter on D_n
    double p_disjoint_hat = 0.0; // estimate of P(D_n)
    double deviation_bound = 0.0;  // P(D_n) p(1-p)/(k lambda^2)
    long accepted = 0;
    long trials = 0;
};

// Rejection-sample hash matrices, keep those realizing D_n (all rows
// pairwise disjoint), and estimate the probability that the minimum
// achievable hash value z0 is attained on an I2 row.
GeneralSchemeResult general_scheme(const RepresentationMatrix& m,
                                   const std::vector<int>& i2_rows,
                                   const CoefficientLaw& law, int k, long trials,
                                   std::uint64_t seed, double lambda);
GeneralSchemeResult general_scheme_permutation(const RepresentationMatrix& m,
                                               const std::vector<int>& i2_rows, int k,
                                               long trials, std::uint64_t seed, double lambda);

}  // namespace minsim
