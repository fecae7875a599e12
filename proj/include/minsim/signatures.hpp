#pragma once

#include <cstdint>
#include <vector>

#include "minsim/hashing.hpp"
#include "minsim/itemsets.hpp"

namespace minsim {

enum class AggregationMode { Min, Max };

/// k x m matrix of per-function minima (or maxima). Entries are hash
/// values in {1..n}; the sentinel n+1 (Min) or 0 (Max) marks a column
/// whose set is empty.
struct SignatureMatrix {
    int k = 0;
    int m = 0;
    int sentinel = 0;
    std::vector<int> values;  // row-major, k rows by m columns

    int at(int alpha, int col) const { return values[(alpha - 1) * m + (col - 1)]; }
    std::vector<int> column(int col) const;
};

// Three equivalent fills of the signature matrix.
SignatureMatrix fill_ru(const RepresentationMatrix& m, const HashMatrix& z,
                        AggregationMode mode = AggregationMode::Min);
SignatureMatrix fill_criterion_c(const RepresentationMatrix& m, const HashMatrix& z,
                                 AggregationMode mode = AggregationMode::Min);
SignatureMatrix fill_markov(const RepresentationMatrix& m, const HashMatrix& z,
                            AggregationMode mode = AggregationMode::Min);

struct SignatureEstimate {
    int matches = 0;  // t
    int k = 0;
    double simrum = 0.0;         // t / k
    double recovered_sim = 0.0;  // simrum / (2 - simrum)
    AggregationMode mode = AggregationMode::Min;
};

// Fraction of coordinates where columns h and l agree. Sentinel entries
// never count as matches.
SignatureEstimate sim_signature(const SignatureMatrix& s, int h, int l);

// Full RUM pipeline: doubled matrix over N = #A + #B rows, signature fill
// with the family (modulus must equal N), coordinate match count, and the
// simM -> sim inversion.
SignatureEstimate estimate_rum(const ItemSet& a, const ItemSet& b, const HashFamily& family,
                               const std::vector<int>& sigma,
                               AggregationMode mode = AggregationMode::Min);

}  // namespace minsim
