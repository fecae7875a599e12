#include "minsim/itemsets.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_set>

#include "minsim/errors.hpp"

namespace minsim {

Universe::Universe(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw EmptyInputError("universe must contain at least one element");
    }
    index_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        auto [it, inserted] = index_.emplace(labels_[i], static_cast<int>(i + 1));
        if (!inserted) {
            throw DomainError("duplicate universe label: " + labels_[i]);
        }
    }
}

std::shared_ptr<Universe> Universe::from_labels(std::vector<std::string> labels) {
    return std::shared_ptr<Universe>(new Universe(std::move(labels)));
}

const std::string& Universe::label(int index) const {
    if (index < 1 || index > size()) {
        throw DomainError("universe index out of range");
    }
    return labels_[static_cast<std::size_t>(index - 1)];
}

int Universe::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
        throw DomainError("label not in universe: " + label);
    }
    return it->second;
}

bool Universe::contains(const std::string& label) const {
    return index_.contains(label);
}

ItemSet::ItemSet(UniversePtr universe, std::vector<int> members)
    : universe_(std::move(universe)), members_(std::move(members)) {
    if (!universe_) {
        throw DomainError("item set requires a universe");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (int m : members_) {
        if (m < 1 || m > universe_->size()) {
            throw DomainError("member index outside universe");
        }
    }
}

ItemSet ItemSet::from_labels(UniversePtr universe, const std::vector<std::string>& labels) {
    std::vector<int> members;
    members.reserve(labels.size());
    for (const auto& l : labels) {
        members.push_back(universe->index_of(l));
    }
    return ItemSet(std::move(universe), std::move(members));
}

bool ItemSet::contains(int index) const {
    return std::binary_search(members_.begin(), members_.end(), index);
}

RepresentationMatrix::RepresentationMatrix(int n_rows, int m_cols,
                                           std::vector<std::uint8_t> cells,
                                           std::vector<int> row_elements)
    : n_rows_(n_rows), m_cols_(m_cols), cells_(std::move(cells)),
      row_elements_(std::move(row_elements)) {
    if (n_rows_ < 1 || m_cols_ < 1 ||
        cells_.size() != static_cast<std::size_t>(n_rows_) * static_cast<std::size_t>(m_cols_) ||
        row_elements_.size() != static_cast<std::size_t>(n_rows_)) {
        throw DimensionMismatchError("representation matrix shape mismatch");
    }
}

bool RepresentationMatrix::cell(int row, int col) const {
    if (row < 1 || row > n_rows_ || col < 1 || col > m_cols_) {
        throw DomainError("matrix cell out of range");
    }
    return cells_[static_cast<std::size_t>(row - 1) * m_cols_ + (col - 1)] != 0;
}

int RepresentationMatrix::row_element(int row) const {
    if (row < 1 || row > n_rows_) {
        throw DomainError("matrix row out of range");
    }
    return row_elements_[static_cast<std::size_t>(row - 1)];
}

std::vector<int> RepresentationMatrix::member_rows(int col) const {
    std::vector<int> rows;
    for (int i = 1; i <= n_rows_; ++i) {
        if (cell(i, col)) {
            rows.push_back(i);
        }
    }
    return rows;
}

std::string normalize_text(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool in_space = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) {
            out.push_back(' ');
        }
        in_space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

std::vector<std::string> shingle_labels(const std::string& text, int p) {
    if (p < 1) {
        throw DomainError("shingle size must be >= 1");
    }
    std::string norm = normalize_text(text);
    if (static_cast<int>(norm.size()) < p) {
        throw EmptyInputError("text shorter than shingle size after normalization");
    }
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i + static_cast<std::size_t>(p) <= norm.size(); ++i) {
        std::string s = norm.substr(i, static_cast<std::size_t>(p));
        if (seen.insert(s).second) {
            out.push_back(std::move(s));
        }
    }
    return out;
}

ItemSet shingle(const std::string& text, int p) {
    auto labels = shingle_labels(text, p);
    auto universe = Universe::from_labels(labels);
    return ItemSet::from_labels(universe, labels);
}

ItemSet shingle(const std::string& text, int p, UniversePtr universe) {
    auto labels = shingle_labels(text, p);
    return ItemSet::from_labels(std::move(universe), labels);
}

Rational jaccard(const ItemSet& a, const ItemSet& b) {
    if (a.universe() != b.universe()) {
        throw UniverseMismatchError("jaccard requires a shared universe");
    }
    if (a.size() == 0 && b.size() == 0) {
        throw UndefinedSimilarityError("similarity of two empty sets is undefined");
    }
    std::vector<int> inter;
    std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                          b.members().end(), std::back_inserter(inter));
    long long inter_n = static_cast<long long>(inter.size());
    long long union_n = a.size() + b.size() - inter_n;
    return Rational(BigInt(inter_n), BigInt(union_n));
}

std::vector<int> identity_permutation(int n) {
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    return sigma;
}

namespace {

void check_permutation(const std::vector<int>& sigma, int n) {
    if (static_cast<int>(sigma.size()) != n) {
        throw DimensionMismatchError("permutation length mismatch");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : sigma) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
            throw DomainError("sigma is not a permutation of {1..n}");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

}  // namespace

RepresentationMatrix build_representation_matrix(const UniversePtr& universe,
                                                 const std::vector<ItemSet>& sets,
                                                 const std::vector<int>& sigma) {
    if (sets.empty()) {
        throw EmptyInputError("need at least one set");
    }
    for (const auto& s : sets) {
        if (s.universe() != universe) {
            throw UniverseMismatchError("set not over the given universe");
        }
    }
    int n = universe->size();
    check_permutation(sigma, n);
    int m = static_cast<int>(sets.size());
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * m, 0);
    std::vector<int> row_elements(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        int element = sigma[static_cast<std::size_t>(i - 1)];
        row_elements[static_cast<std::size_t>(i - 1)] = element;
        for (int h = 1; h <= m; ++h) {
            if (sets[static_cast<std::size_t>(h - 1)].contains(element)) {
                cells[static_cast<std::size_t>(i - 1) * m + (h - 1)] = 1;
            }
        }
    }
    return RepresentationMatrix(n, m, std::move(cells), std::move(row_elements));
}

RepresentationMatrix build_rum_matrix(const ItemSet& a, const ItemSet& b,
                                      const std::vector<int>& sigma) {
    if (a.universe() != b.universe()) {
        throw UniverseMismatchError("RUM matrix requires a shared universe");
    }
    if (a.size() == 0 && b.size() == 0) {
        throw EmptyInputError("RUM matrix of two empty sets");
    }
    // Concatenated listing: elements of A, then elements of B; the
    // intersection appears twice.
    std::vector<int> listing;
    listing.reserve(static_cast<std::size_t>(a.size() + b.size()));
    listing.insert(listing.end(), a.members().begin(), a.members().end());
    listing.insert(listing.end(), b.members().begin(), b.members().end());
    int n_rows = static_cast<int>(listing.size());
    check_permutation(sigma, n_rows);

    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n_rows) * 2, 0);
    std::vector<int> row_elements(static_cast<std::size_t>(n_rows));
    for (int i = 1; i <= n_rows; ++i) {
        int element = listing[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i - 1)] - 1)];
        row_elements[static_cast<std::size_t>(i - 1)] = element;
        if (a.contains(element)) {
            cells[static_cast<std::size_t>(i - 1) * 2 + 0] = 1;
        }
        if (b.contains(element)) {
            cells[static_cast<std::size_t>(i - 1) * 2 + 1] = 1;
        }
    }
    return RepresentationMatrix(n_rows, 2, std::move(cells), std::move(row_elements));
}

Rational matrix_similarity(const RepresentationMatrix& m, int h, int l) {
    if (h == l || h < 1 || l < 1 || h > m.m_cols() || l > m.m_cols()) {
        throw DomainError("column indices must be distinct and in range");
    }
    long long both = 0;
    long long any = 0;
    for (int i = 1; i <= m.n_rows(); ++i) {
        bool ch = m.cell(i, h);
        bool cl = m.cell(i, l);
        if (ch && cl) {
            ++both;
        }
        if (ch || cl) {
            ++any;
        }
    }
    if (any == 0) {
        throw UndefinedSimilarityError("no row has a one in either column");
    }
    return Rational(BigInt(both), BigInt(any));
}

Rational sim_to_simM(const Rational& s) {
    return Rational(2 * s.numerator(), s.numerator() + s.denominator());
}

Rational simM_to_sim(const Rational& sM) {
    return Rational(sM.numerator(), 2 * sM.denominator() - sM.numerator());
}

double sim_to_simM(double s) { return 2.0 * s / (1.0 + s); }

double simM_to_sim(double sM) { return sM / (2.0 - sM); }

}  // namespace minsim
