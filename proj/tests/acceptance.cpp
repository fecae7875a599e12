// Acceptance battery: one line of output per criterion, nonzero exit on
// any failure. Every expected value is recomputed here by brute force
// (bitmask subset enumeration, std::next_permutation) independently of
// the library internals.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "minsim/exactlaw.hpp"
#include "minsim/hashing.hpp"
#include "minsim/itemsets.hpp"
#include "minsim/montecarlo.hpp"
#include "minsim/rng.hpp"
#include "minsim/signatures.hpp"

using namespace minsim;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " " << index << " " << name;
    if (!detail.empty()) {
        std::cout << " (" << detail << ")";
    }
    std::cout << "\n";
    if (!ok) {
        ++g_failures;
    }
}

UniversePtr make_universe(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        labels.push_back("e" + std::to_string(i));
    }
    return Universe::from_labels(labels);
}

std::vector<int> mask_members(unsigned mask, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
            out.push_back(i + 1);
        }
    }
    return out;
}

// Fraction of permutations sigma of {1..n} for which the minimum of
// sigma over A equals the minimum over B (empty minima never match).
Rational min_collision_by_enumeration(const std::vector<int>& a, const std::vector<int>& b,
                                      int n) {
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    long long hits = 0;
    long long count = 0;
    do {
        int ma = n + 1;
        for (int e : a) {
            ma = std::min(ma, sigma[static_cast<std::size_t>(e - 1)]);
        }
        int mb = n + 1;
        for (int e : b) {
            mb = std::min(mb, sigma[static_cast<std::size_t>(e - 1)]);
        }
        if (ma <= n && ma == mb) {
            ++hits;
        }
        ++count;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return Rational(BigInt(hits), BigInt(count));
}

// Same event on a representation matrix: minimum of sigma over the
// member rows of col 1 vs col 2.
Rational matrix_collision_by_enumeration(const RepresentationMatrix& m) {
    int n = m.n_rows();
    auto rows1 = m.member_rows(1);
    auto rows2 = m.member_rows(2);
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    long long hits = 0;
    long long count = 0;
    do {
        int m1 = n + 1;
        for (int r : rows1) {
            m1 = std::min(m1, sigma[static_cast<std::size_t>(r - 1)]);
        }
        int m2 = n + 1;
        for (int r : rows2) {
            m2 = std::min(m2, sigma[static_cast<std::size_t>(r - 1)]);
        }
        if (m1 <= n && m1 == m2) {
            ++hits;
        }
        ++count;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return Rational(BigInt(hits), BigInt(count));
}

double tv_distance(const DistributionTable& a, const DistributionTable& b) {
    double tv = 0.0;
    for (int t = 0; t <= a.k; ++t) {
        tv += std::abs(to_double(a.probs[static_cast<std::size_t>(t)]) -
                       to_double(b.probs[static_cast<std::size_t>(t)]));
    }
    return tv / 2.0;
}

// ---------------------------------------------------------------------

void criterion_uniform_identity() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    for (int n = 1; n <= 6 && ok; ++n) {
        auto u = make_universe(n);
        auto id = identity_permutation(n);
        for (unsigned ma = 0; ma < (1u << n) && ok; ++ma) {
            for (unsigned mb = 0; mb < (1u << n) && ok; ++mb) {
                if ((ma | mb) == 0) {
                    continue;  // similarity undefined
                }
                auto amem = mask_members(ma, n);
                auto bmem = mask_members(mb, n);
                int i1 = static_cast<int>(std::popcount(ma & ~mb));
                int i2 = static_cast<int>(std::popcount(ma & mb));
                int i3 = static_cast<int>(std::popcount(mb & ~ma));
                Rational expected = collision_probability_uniform(i1, i2, i3);
                Rational enumerated = min_collision_by_enumeration(amem, bmem, n);
                if (expected != enumerated) {
                    ok = false;
                    detail = "RU collision mismatch at n=" + std::to_string(n);
                }
            }
        }
    }

    // RUM form (doubled rows): single-permutation enumeration must give
    // exactly simM, and the k-permutation law must be Binomial(k, simM).
    for (int n = 1; n <= 4 && ok; ++n) {
        auto u = make_universe(n);
        for (unsigned ma = 1; ma < (1u << n) && ok; ++ma) {
            for (unsigned mb = 1; mb < (1u << n) && ok; ++mb) {
                ItemSet a(u, mask_members(ma, n));
                ItemSet b(u, mask_members(mb, n));
                int nn = a.size() + b.size();
                auto rum = build_rum_matrix(a, b, identity_permutation(nn));
                Rational sim = jaccard(a, b);
                Rational sm = sim_to_simM(sim);
                Rational enumerated = matrix_collision_by_enumeration(rum);
                if (enumerated != sm) {
                    ok = false;
                    detail = "RUM collision != simM at n=" + std::to_string(n);
                    break;
                }
                for (int k = 1; k <= 3; ++k) {
                    auto law = simrum_law_permutation(rum, 1, 2, k);
                    auto binom = binomial_table(k, sm);
                    if (law.probs != binom.probs) {
                        ok = false;
                        detail = "simrum law != Binomial(k, simM)";
                        break;
                    }
                }
            }
        }
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    if (ok && elapsed >= 60) {
        ok = false;
        detail = "runtime " + std::to_string(elapsed) + "s";
    }
    report(1, "uniform-scheme collision identity and Binomial simrum law", ok, detail);
}

void criterion_fill_equivalence() {
    std::mt19937_64 rng(20240817);
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + static_cast<int>(rng() % 20);
        int m = 1 + static_cast<int>(rng() % 5);
        int k = 1 + static_cast<int>(rng() % 8);
        auto u = make_universe(n);
        std::vector<ItemSet> sets;
        for (int c = 0; c < m; ++c) {
            std::vector<int> members;
            for (int e = 1; e <= n; ++e) {
                if (rng() % 2 == 0) {
                    members.push_back(e);
                }
            }
            sets.emplace_back(u, members);
        }
        std::vector<int> sigma = identity_permutation(n);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        auto matrix = build_representation_matrix(u, sets, sigma);

        HashFamily family = (rng() % 2 == 0)
                                ? HashFamily(sample_family(CoefficientLaw::uniform(n), k, n,
                                                           rng()))
                                : HashFamily(sample_permutations(k, n, rng()));
        auto z = family_rows(family);
        auto mode = (rng() % 2 == 0) ? AggregationMode::Min : AggregationMode::Max;

        auto s1 = fill_ru(matrix, z, mode);
        auto s2 = fill_criterion_c(matrix, z, mode);
        auto s3 = fill_markov(matrix, z, mode);
        if (s1.values != s2.values || s1.values != s3.values) {
            ++mismatches;
        }
    }
    report(2, "fill_ru / fill_criterion_c / fill_markov equivalence", mismatches == 0,
           std::to_string(mismatches) + " mismatches over 1000 instances");
}

void criterion_conversion_roundtrip() {
    std::mt19937_64 rng(555);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        int n = 2 + static_cast<int>(rng() % 29);
        auto u = make_universe(n);
        std::vector<int> amem, bmem;
        for (int e = 1; e <= n; ++e) {
            if (rng() % 2 == 0) amem.push_back(e);
            if (rng() % 2 == 0) bmem.push_back(e);
        }
        if (amem.empty() && bmem.empty()) {
            continue;
        }
        ItemSet a(u, amem);
        ItemSet b(u, bmem);
        int nn = a.size() + b.size();
        std::vector<int> sigma = identity_permutation(nn);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        auto rum = build_rum_matrix(a, b, sigma);
        if (simM_to_sim(matrix_similarity(rum, 1, 2)) != jaccard(a, b)) {
            ok = false;
            detail = "RUM similarity inversion mismatch";
        }
    }
    for (int j = 0; j <= 1000 && ok; ++j) {
        Rational s(j, 1000);
        if (simM_to_sim(sim_to_simM(s)) != s) {
            ok = false;
            detail = "grid round trip fails at " + to_string(s);
        }
    }
    report(3, "exact RUM inversion and sim<->simM round trip", ok, detail);
}

void criterion_subset_law() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 8 && ok; ++n) {
        for (int k = 1; k <= n && ok; ++k) {
            for (int m = 1; m <= n && ok; ++m) {
                auto law = random_subset_law(n, k, m);
                Rational total =
                    std::accumulate(law.pmf.begin(), law.pmf.end(), Rational(0));
                if (total != Rational(1)) {
                    ok = false;
                    detail = "pmf does not sum to 1";
                    break;
                }
                // brute force over all (X, Y) subset pairs of sizes (k, m)
                int maxj = std::min(k, m);
                std::vector<BigInt> counts(static_cast<std::size_t>(maxj) + 1, BigInt(0));
                BigInt pairs(0);
                Rational mean(0);
                for (unsigned mx = 0; mx < (1u << n); ++mx) {
                    if (std::popcount(mx) != k) continue;
                    for (unsigned my = 0; my < (1u << n); ++my) {
                        if (std::popcount(my) != m) continue;
                        int j = static_cast<int>(std::popcount(mx & my));
                        counts[static_cast<std::size_t>(j)] += 1;
                        pairs += 1;
                        mean += Rational(BigInt(j), BigInt(k + m - j));
                    }
                }
                for (int j = 0; j <= maxj; ++j) {
                    if (law.pmf[static_cast<std::size_t>(j)] !=
                        Rational(counts[static_cast<std::size_t>(j)], pairs)) {
                        ok = false;
                        detail = "pmf mismatch vs subset-pair enumeration";
                        break;
                    }
                }
                if (ok && law.expected_similarity != mean / Rational(pairs, BigInt(1))) {
                    ok = false;
                    detail = "expected similarity mismatch";
                }
            }
        }
    }
    if (ok) {
        auto base = random_subset_law(2, 1, 1);
        if (base.expected_similarity != Rational(1, 2)) {
            ok = false;
            detail = "n=2,k=m=1 expected similarity != 1/2";
        }
    }
    report(4, "random-subset intersection law vs exhaustive enumeration", ok, detail);
}

void criterion_enumeration_vs_monte_carlo() {
    struct Instance {
        int n;
        std::vector<int> a;
        std::vector<int> b;
        CoefficientLaw law;
    };
    CoefficientLaw two_point;
    two_point.support = {{1, 1}, {3, 2}};
    two_point.prob = {Rational(1, 2), Rational(1, 2)};
    CoefficientLaw three_point;
    three_point.support = {{1, 0}, {2, 1}, {3, 2}};
    three_point.prob = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    CoefficientLaw skew;
    skew.support = {{1, 2}, {4, 1}};
    skew.prob = {Rational(3, 4), Rational(1, 4)};

    std::vector<Instance> instances = {
        {3, {1, 2}, {2, 3}, CoefficientLaw::uniform(3)},
        {3, {1, 2}, {2, 3}, CoefficientLaw::point_mass(1, 0)},
        {3, {1}, {1, 2, 3}, CoefficientLaw::uniform(3)},
        {4, {1, 2}, {3, 4}, CoefficientLaw::uniform(4)},
        {4, {1, 2, 3}, {2, 3, 4}, CoefficientLaw::uniform(4)},
        {4, {1, 2}, {2, 3}, two_point},
        {4, {1}, {1}, CoefficientLaw::uniform(4)},
        {5, {1, 2, 3}, {3, 4, 5}, CoefficientLaw::uniform(5)},
        {5, {1, 2}, {2, 3, 4}, three_point},
        {5, {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}, CoefficientLaw::uniform(5)},
        {5, {2, 4}, {1, 3, 5}, skew},
    };

    bool ok = true;
    std::string detail;
    const long trials_point = 1000000;
    const long trials_law = 100000;
    std::uint64_t seed = 90210;
    for (std::size_t idx = 0; idx < instances.size() && ok; ++idx) {
        const auto& inst = instances[idx];
        auto u = make_universe(inst.n);
        ItemSet a(u, inst.a);
        ItemSet b(u, inst.b);
        auto m = build_representation_matrix(u, {a, b}, identity_permutation(inst.n));

        double exact = to_double(collision_probability(m, 1, 2, inst.law).collision_prob);
        auto e = simulate_matrix_simrum(m, 1, 2, inst.law, 1, trials_point, seed + idx);
        double freq = e.freq_at(1);
        double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials_point));
        if (std::abs(freq - exact) > 4.0 * se + 1e-12) {
            ok = false;
            detail = "collision probability off at instance " + std::to_string(idx);
            break;
        }

        auto mixture = simrum_law_mixture(m, 1, 2, inst.law, 2);
        auto emp = simulate_matrix_simrum(m, 1, 2, inst.law, 2, trials_law, seed + 100 + idx);
        auto cmp = compare(emp, mixture, 0.01);
        if (!cmp.pass) {
            ok = false;
            detail = "mixture-law TV " + std::to_string(cmp.tv_distance) + " at instance " +
                     std::to_string(idx);
        }
    }
    report(5, "exact collision/mixture laws vs Monte Carlo (11 instances)", ok, detail);
}

void criterion_ci_and_tchebychev() {
    bool ok = true;
    std::string detail;
    Rational level(19, 20);

    std::vector<DistributionTable> battery;
    battery.push_back(binomial_table(2, Rational(1, 3)));
    battery.push_back(binomial_table(5, Rational(1, 2)));
    battery.push_back(binomial_table(10, Rational(7, 10)));
    battery.push_back(binomial_table(25, Rational(1, 10)));
    battery.push_back(poisson_binomial(std::vector<Rational>{Rational(1, 2), Rational(1, 4),
                                                             Rational(3, 4)}));
    {
        auto u = make_universe(4);
        ItemSet a(u, {1, 2});
        ItemSet b(u, {2, 3, 4});
        auto m = build_representation_matrix(u, {a, b}, identity_permutation(4));
        battery.push_back(simrum_law_mixture(m, 1, 2, CoefficientLaw::uniform(4), 3));
    }

    for (const auto& d : battery) {
        Rational center = moment(d, 1);
        auto ci = exact_ci(d, center, level);
        if (ci.coverage < level) {
            ok = false;
            detail = "coverage below level";
            break;
        }
        if (ci.half_width > Rational(0)) {
            Rational step(1, 2 * d.k);
            if (deviation_probability(d, center, ci.half_width - step) >= level) {
                ok = false;
                detail = "interval not grid-minimal";
                break;
            }
        }
    }

    int points = 0;
    for (int s = 1; s <= 9 && ok; ++s) {
        for (int k : {5, 10, 20, 50, 100}) {
            Rational sim(s, 10);
            auto d = binomial_table(k, sim);
            for (const Rational& lambda :
                 {Rational(1, 20), Rational(1, 10), Rational(1, 5), Rational(1, 2),
                  Rational(1)}) {
                Rational tail = Rational(1) - deviation_probability(d, sim, lambda);
                Rational bound = uniform_scheme_stats(sim, k, lambda).tchebychev_bound;
                ++points;
                if (tail > bound) {
                    ok = false;
                    detail = "Tchebychev bound violated";
                    break;
                }
            }
            if (!ok) break;
        }
    }
    if (ok && points < 200) {
        ok = false;
        detail = "grid too small";
    }
    report(6, "exact CI coverage/minimality and Tchebychev dominance", ok, detail);
}

void criterion_convergence_trend() {
    // #A = #B = 2000, #(A cap B) = 923 => sim = 923/3077 ~ 0.30
    int inter = 923;
    int total = 2000 + 2000 - inter;
    auto u = make_universe(total);
    std::vector<int> amem, bmem;
    for (int i = 1; i <= 2000; ++i) amem.push_back(i);
    for (int i = 2000 - inter + 1; i <= total; ++i) bmem.push_back(i);
    ItemSet a(u, amem);
    ItemSet b(u, bmem);

    auto res = subsample_convergence(a, b, {50, 100, 200, 400, 800, 1600}, 1000, 2718);
    bool ok = res.records.size() == 6;
    std::string detail;
    for (std::size_t i = 1; i < res.records.size() && ok; ++i) {
        if (!(res.records[i].mean_abs_error < res.records[i - 1].mean_abs_error)) {
            ok = false;
            detail = "mean abs error not strictly decreasing";
        }
    }
    if (ok && !(res.slope < 0.0)) {
        ok = false;
        detail = "log-log slope not negative";
    }
    std::ostringstream oss;
    oss << "slope " << res.slope;
    report(7, "subsample similarity error decreases on the doubling grid", ok,
           ok ? oss.str() : detail);
}

std::string make_chunk(std::mt19937_64& rng, int len) {
    std::string out;
    out.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        out.push_back(static_cast<char>('a' + rng() % 26));
    }
    return out;
}

void criterion_corpus_estimates() {
    std::mt19937_64 rng(424242);
    const int chunk = 20000;
    std::string A = make_chunk(rng, chunk);
    std::string B = make_chunk(rng, chunk);
    std::string C = make_chunk(rng, chunk);
    std::string D = make_chunk(rng, chunk);
    std::string E = make_chunk(rng, chunk);
    std::string F = make_chunk(rng, chunk);
    std::string G = make_chunk(rng, chunk);
    std::vector<std::string> docs = {A + B + C, B + C + D, E + F + G, A + B + C};

    bool ok = true;
    std::string detail;

    // CLI run: two largest documents, k = 5, under five seconds.
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "minsim_acceptance";
    fs::create_directories(dir);
    std::vector<fs::path> paths;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        fs::path p = dir / ("doc" + std::to_string(i + 1) + ".txt");
        std::ofstream(p) << docs[i];
        paths.push_back(p);
    }
    {
        std::string cmd = std::string(MINSIM_CLI_PATH) + " estimate " + paths[0].string() +
                          " " + paths[1].string() + " --p 4 --k 5 --seed 7 > " +
                          (dir / "estimate.json").string();
        auto t0 = std::chrono::steady_clock::now();
        int rc = std::system(cmd.c_str());
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        if (rc != 0) {
            ok = false;
            detail = "CLI estimate exited " + std::to_string(rc);
        } else if (secs >= 5.0) {
            ok = false;
            detail = "CLI estimate took " + std::to_string(secs) + "s";
        }
    }

    // 100 seeded runs per pair: simrum inside simM +- 1.96 sqrt(simM(1-simM)/k)
    // in at least 90 runs.
    const int k = 5;
    const int runs = 100;
    for (std::size_t i = 0; i < docs.size() && ok; ++i) {
        for (std::size_t j = i + 1; j < docs.size() && ok; ++j) {
            auto la = shingle_labels(docs[i], 4);
            auto lb = shingle_labels(docs[j], 4);
            std::vector<std::string> all = la;
            for (const auto& s : lb) {
                all.push_back(s);
            }
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            auto u = Universe::from_labels(all);
            ItemSet sa = shingle(docs[i], 4, u);
            ItemSet sb = shingle(docs[j], 4, u);
            double sm = sim_to_simM(to_double(jaccard(sa, sb)));
            double half = 1.96 * std::sqrt(sm * (1.0 - sm) / k);

            int nn = sa.size() + sb.size();
            int inside = 0;
            for (int r = 0; r < runs; ++r) {
                std::uint64_t s = derive_seed(31337, static_cast<std::uint64_t>(
                                                         (i * 16 + j) * 1000 + r));
                HashFamily family = sample_permutations(k, nn, s);
                auto eng = make_engine(derive_seed(s, 0xabcd));
                std::vector<int> sigma = identity_permutation(nn);
                std::shuffle(sigma.begin(), sigma.end(), eng);
                auto est = estimate_rum(sa, sb, family, sigma);
                if (std::abs(est.simrum - sm) <= half + 1e-12) {
                    ++inside;
                }
            }
            if (inside < 90) {
                ok = false;
                detail = "pair " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ": only " + std::to_string(inside) + "/100 inside";
            }
        }
    }
    report(8, "4-document corpus: fast CLI estimate, 95% band holds in >=90/100 runs", ok,
           detail);
}

void criterion_product_vs_mixture() {
    auto u = make_universe(4);
    ItemSet a(u, {1, 2});
    ItemSet b(u, {2, 3});
    auto m = build_representation_matrix(u, {a, b}, identity_permutation(4));
    CoefficientLaw law;
    law.support = {{1, 1}, {3, 2}};
    law.prob = {Rational(1, 2), Rational(1, 2)};
    const int k = 3;
    auto product = simrum_law_product(m, 1, 2, law, k);
    auto mixture = simrum_law_mixture(m, 1, 2, law, k);

    bool ok = true;
    std::string detail;
    try {
        product.validate();
        mixture.validate();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double tv = tv_distance(product, mixture);
    if (ok && !(tv > 0.0)) {
        ok = false;
        detail = "product and mixture laws coincide";
    }
    if (ok) {
        std::ostringstream oss;
        oss << "TV(product, mixture) = " << tv << "; product = [";
        for (int t = 0; t <= k; ++t) {
            oss << (t ? ", " : "") << to_string(product.probs[static_cast<std::size_t>(t)]);
        }
        oss << "], mixture = [";
        for (int t = 0; t <= k; ++t) {
            oss << (t ? ", " : "") << to_string(mixture.probs[static_cast<std::size_t>(t)]);
        }
        oss << "]";
        detail = oss.str();
    }
    report(9, "product vs mixture law discrepancy is logged and both sum to 1", ok, detail);
}

}  // namespace

int main() {
    criterion_uniform_identity();
    criterion_fill_equivalence();
    criterion_conversion_roundtrip();
    criterion_subset_law();
    criterion_enumeration_vs_monte_carlo();
    criterion_ci_and_tchebychev();
    criterion_convergence_trend();
    criterion_corpus_estimates();
    criterion_product_vs_mixture();
    if (g_failures > 0) {
        std::cout << g_failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
