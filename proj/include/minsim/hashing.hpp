#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "minsim/rational.hpp"

namespace minsim {

/// z(i) = x*i + y mod n, with a zero remainder mapped to n so the range
/// is {1..n}.
int eval_linear(long long x, long long y, int n, int i);

struct LinearHashFamily {
    int modulus = 0;                                   // n
    std::vector<std::pair<long long, long long>> coeffs;  // (x_alpha, y_alpha)

    int k() const { return static_cast<int>(coeffs.size()); }
};

struct PermutationFamily {
    int n = 0;
    std::vector<std::vector<int>> perms;  // each a permutation of {1..n}

    int k() const { return static_cast<int>(perms.size()); }
};

using HashFamily = std::variant<LinearHashFamily, PermutationFamily>;

int family_k(const HashFamily& family);
int family_modulus(const HashFamily& family);

/// Joint law of a coefficient pair (X, Y) on a finite support, with
/// exact rational masses summing to 1.
struct CoefficientLaw {
    std::vector<std::pair<int, int>> support;
    std::vector<Rational> prob;

    void validate() const;  // throws InvalidLawError
    static CoefficientLaw uniform(int n);            // uniform on {1..n}^2
    static CoefficientLaw point_mass(int x, int y);
};

LinearHashFamily sample_family(const CoefficientLaw& law, int k, int n, std::uint64_t seed);
// Uniform coefficients on {1..n}^2 without materializing the n^2 support.
LinearHashFamily sample_uniform_family(int k, int n, std::uint64_t seed);
PermutationFamily sample_permutations(int k, int n, std::uint64_t seed);

/// n x k matrix of hash values; rows are the Z^(i) of the extended
/// representation matrix.
struct HashMatrix {
    int n = 0;
    int k = 0;
    std::vector<int> values;  // row-major

    int at(int row, int alpha) const { return values[(row - 1) * k + (alpha - 1)]; }
};

HashMatrix family_rows(const HashFamily& family);

struct DisjointnessEstimate {
    double p_disjoint = 0.0;  // Monte Carlo estimate of P(D_n)
    double std_err = 0.0;
    long trials = 0;
    // p_hat[i][j], i<j: estimated per-coordinate collision probability
    // P(Z^(i)_alpha = Z^(j)_alpha), pooled over the k coordinates.
    std::vector<std::vector<double>> pair_collision;
    // frequency of the event that rows i and j share at least one
    // coordinate value (complement of D_{i,j}).
    std::vector<std::vector<double>> pair_share;
};

DisjointnessEstimate disjointness_probability(const CoefficientLaw& law, int n, int k,
                                              long trials, std::uint64_t seed);
DisjointnessEstimate disjointness_probability_permutation(int n, int k, long trials,
                                                          std::uint64_t seed);

}  // namespace minsim
