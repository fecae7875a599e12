#include "minsim/signatures.hpp"

#include <algorithm>

#include "minsim/errors.hpp"

namespace minsim {

namespace {

int sentinel_for(AggregationMode mode, int n) {
    return mode == AggregationMode::Min ? n + 1 : 0;
}

bool better(AggregationMode mode, int candidate, int current) {
    return mode == AggregationMode::Min ? candidate < current : candidate > current;
}

void check_dims(const RepresentationMatrix& m, const HashMatrix& z) {
    if (m.n_rows() != z.n) {
        throw DimensionMismatchError("representation and hash matrices disagree on n");
    }
}

}  // namespace

std::vector<int> SignatureMatrix::column(int col) const {
    std::vector<int> out(static_cast<std::size_t>(k));
    for (int alpha = 1; alpha <= k; ++alpha) {
        out[static_cast<std::size_t>(alpha - 1)] = at(alpha, col);
    }
    return out;
}

SignatureMatrix fill_ru(const RepresentationMatrix& m, const HashMatrix& z,
                        AggregationMode mode) {
    check_dims(m, z);
    SignatureMatrix sig;
    sig.k = z.k;
    sig.m = m.m_cols();
    sig.sentinel = sentinel_for(mode, z.n);
    sig.values.assign(static_cast<std::size_t>(sig.k) * sig.m, sig.sentinel);
    // Steps 1-4 of the original fill: walk the rows of each column and
    // fold each member row into the running minimum.
    for (int col = 1; col <= sig.m; ++col) {
        for (int i = 1; i <= m.n_rows(); ++i) {
            if (!m.cell(i, col)) {
                continue;
            }
            for (int alpha = 1; alpha <= sig.k; ++alpha) {
                int& c = sig.values[static_cast<std::size_t>(alpha - 1) * sig.m + (col - 1)];
                int v = z.at(i, alpha);
                if (better(mode, v, c)) {
                    c = v;
                }
            }
        }
    }
    return sig;
}

SignatureMatrix fill_criterion_c(const RepresentationMatrix& m, const HashMatrix& z,
                                 AggregationMode mode) {
    check_dims(m, z);
    SignatureMatrix sig;
    sig.k = z.k;
    sig.m = m.m_cols();
    sig.sentinel = sentinel_for(mode, z.n);
    sig.values.assign(static_cast<std::size_t>(sig.k) * sig.m, sig.sentinel);
    // Each column is the coordinate-wise minimum of the hash rows of its
    // member elements.
    for (int col = 1; col <= sig.m; ++col) {
        auto rows = m.member_rows(col);
        for (int alpha = 1; alpha <= sig.k; ++alpha) {
            int best = sig.sentinel;
            for (int i : rows) {
                int v = z.at(i, alpha);
                if (better(mode, v, best)) {
                    best = v;
                }
            }
            sig.values[static_cast<std::size_t>(alpha - 1) * sig.m + (col - 1)] = best;
        }
    }
    return sig;
}

SignatureMatrix fill_markov(const RepresentationMatrix& m, const HashMatrix& z,
                            AggregationMode mode) {
    check_dims(m, z);
    SignatureMatrix sig;
    sig.k = z.k;
    sig.m = m.m_cols();
    sig.sentinel = sentinel_for(mode, z.n);
    sig.values.assign(static_cast<std::size_t>(sig.k) * sig.m, sig.sentinel);
    for (int col = 1; col <= sig.m; ++col) {
        // U^0 = (sentinel,...,sentinel); U^i folds row i in iff C(i,col)=1.
        std::vector<int> state(static_cast<std::size_t>(sig.k), sig.sentinel);
        for (int i = 1; i <= m.n_rows(); ++i) {
            if (!m.cell(i, col)) {
                continue;  // indicator I(C(i,h)=0) branch: state unchanged
            }
            for (int alpha = 1; alpha <= sig.k; ++alpha) {
                int v = z.at(i, alpha);
                int& s = state[static_cast<std::size_t>(alpha - 1)];
                if (better(mode, v, s)) {
                    s = v;
                }
            }
        }
        for (int alpha = 1; alpha <= sig.k; ++alpha) {
            sig.values[static_cast<std::size_t>(alpha - 1) * sig.m + (col - 1)] =
                state[static_cast<std::size_t>(alpha - 1)];
        }
    }
    return sig;
}

SignatureEstimate sim_signature(const SignatureMatrix& s, int h, int l) {
    if (h == l || h < 1 || l < 1 || h > s.m || l > s.m) {
        throw DomainError("column indices must be distinct and in range");
    }
    SignatureEstimate est;
    est.k = s.k;
    for (int alpha = 1; alpha <= s.k; ++alpha) {
        int a = s.at(alpha, h);
        int b = s.at(alpha, l);
        if (a == b && a != s.sentinel) {
            ++est.matches;
        }
    }
    est.simrum = static_cast<double>(est.matches) / static_cast<double>(est.k);
    est.recovered_sim = simM_to_sim(est.simrum);
    return est;
}

SignatureEstimate estimate_rum(const ItemSet& a, const ItemSet& b, const HashFamily& family,
                               const std::vector<int>& sigma, AggregationMode mode) {
    RepresentationMatrix m = build_rum_matrix(a, b, sigma);
    if (family_modulus(family) != m.n_rows()) {
        throw DimensionMismatchError("hash family modulus must equal the RUM row count");
    }
    HashMatrix z = family_rows(family);
    SignatureMatrix sig = fill_criterion_c(m, z, mode);
    SignatureEstimate est = sim_signature(sig, 1, 2);
    est.mode = mode;
    return est;
}

}  // namespace minsim
