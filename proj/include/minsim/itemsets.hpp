#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "minsim/rational.hpp"

namespace minsim {

/// An ordered universe of distinct element labels. Elements are indexed
/// 1..n; index 0 is never used.
class Universe {
public:
    static std::shared_ptr<Universe> from_labels(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int index) const;         // 1-based
    int index_of(const std::string& label) const;      // 1-based, throws if absent
    bool contains(const std::string& label) const;
    const std::vector<std::string>& labels() const { return labels_; }

private:
    explicit Universe(std::vector<std::string> labels);
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

using UniversePtr = std::shared_ptr<Universe>;

/// A subset of a universe, stored as sorted 1-based indices.
class ItemSet {
public:
    ItemSet(UniversePtr universe, std::vector<int> members);
    static ItemSet from_labels(UniversePtr universe, const std::vector<std::string>& labels);

    const UniversePtr& universe() const { return universe_; }
    const std::vector<int>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool contains(int index) const;

private:
    UniversePtr universe_;
    std::vector<int> members_;  // sorted ascending, no duplicates
};

/// Boolean membership matrix. Each row carries one universe element
/// (possibly repeated in the RUM form); cell(i,h)=1 iff that element
/// belongs to column h's set.
class RepresentationMatrix {
public:
    RepresentationMatrix(int n_rows, int m_cols, std::vector<std::uint8_t> cells,
                         std::vector<int> row_elements);

    int n_rows() const { return n_rows_; }
    int m_cols() const { return m_cols_; }
    bool cell(int row, int col) const;              // 1-based
    int row_element(int row) const;                 // 1-based row -> element index
    std::vector<int> member_rows(int col) const;    // rows with a 1 in col

private:
    int n_rows_;
    int m_cols_;
    std::vector<std::uint8_t> cells_;  // row-major
    std::vector<int> row_elements_;
};

// --- shingling ---------------------------------------------------------

// Lowercases and collapses whitespace runs to single spaces.
std::string normalize_text(const std::string& text);

// Distinct contiguous p-character substrings of the normalized text, in
// first-appearance order. Throws EmptyInputError if too short.
std::vector<std::string> shingle_labels(const std::string& text, int p);

// Convenience: shingle with a fresh universe made of the shingles.
ItemSet shingle(const std::string& text, int p);

// Shingle against a supplied universe (every shingle must be a label).
ItemSet shingle(const std::string& text, int p, UniversePtr universe);

// --- similarity --------------------------------------------------------

Rational jaccard(const ItemSet& a, const ItemSet& b);

// sigma is a permutation of {1..n} (row i carries element sigma[i-1]).
RepresentationMatrix build_representation_matrix(const UniversePtr& universe,
                                                 const std::vector<ItemSet>& sets,
                                                 const std::vector<int>& sigma);

// Doubled-row RUM matrix: rows carry the elements of A then B, so
// intersection elements appear twice; membership is by element identity.
// sigma is a permutation of {1..N}, N = #A + #B.
RepresentationMatrix build_rum_matrix(const ItemSet& a, const ItemSet& b,
                                      const std::vector<int>& sigma);

Rational matrix_similarity(const RepresentationMatrix& m, int h, int l);

Rational sim_to_simM(const Rational& s);
Rational simM_to_sim(const Rational& sM);
double sim_to_simM(double s);
double simM_to_sim(double sM);

std::vector<int> identity_permutation(int n);

}  // namespace minsim
