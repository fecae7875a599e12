#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minsim/errors.hpp"
#include "minsim/exactlaw.hpp"
#include "minsim/hashing.hpp"
#include "minsim/itemsets.hpp"
#include "minsim/montecarlo.hpp"
#include "minsim/rng.hpp"
#include "minsim/signatures.hpp"

namespace py = pybind11;
using namespace minsim;

namespace {

ItemSet make_set(UniversePtr universe, const std::vector<int>& members) {
    return ItemSet(std::move(universe), members);
}

std::vector<double> table_probs(const DistributionTable& d) {
    std::vector<double> out;
    out.reserve(d.probs.size());
    for (const auto& p : d.probs) {
        out.push_back(to_double(p));
    }
    return out;
}

std::vector<std::string> table_fracs(const DistributionTable& d) {
    std::vector<std::string> out;
    out.reserve(d.probs.size());
    for (const auto& p : d.probs) {
        out.push_back(to_string(p));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "MinHash similarity estimation: RU/RUM pipelines and exact laws";

    py::register_exception<Error>(m, "MinsimError");

    py::class_<Universe, UniversePtr>(m, "Universe")
        .def_static("from_labels", &Universe::from_labels)
        .def("size", &Universe::size)
        .def("labels", &Universe::labels)
        .def("index_of", &Universe::index_of);

    py::class_<ItemSet>(m, "ItemSet")
        .def(py::init(&make_set), py::arg("universe"), py::arg("members"))
        .def_static("from_labels", &ItemSet::from_labels)
        .def("members", &ItemSet::members)
        .def("size", &ItemSet::size)
        .def_property_readonly("universe", [](const ItemSet& s) { return s.universe(); });

    m.def("shingle_labels", &shingle_labels, py::arg("text"), py::arg("p"));
    m.def("shingle", py::overload_cast<const std::string&, int>(&shingle), py::arg("text"),
          py::arg("p"));
    m.def("jaccard",
          [](const ItemSet& a, const ItemSet& b) { return to_string(jaccard(a, b)); });
    m.def("jaccard_float",
          [](const ItemSet& a, const ItemSet& b) { return to_double(jaccard(a, b)); });
    m.def("sim_to_simM", py::overload_cast<double>(&sim_to_simM));
    m.def("simM_to_sim", py::overload_cast<double>(&simM_to_sim));
    m.def("eval_linear", &eval_linear, py::arg("x"), py::arg("y"), py::arg("n"), py::arg("i"));

    py::class_<SignatureEstimate>(m, "SignatureEstimate")
        .def_readonly("matches", &SignatureEstimate::matches)
        .def_readonly("k", &SignatureEstimate::k)
        .def_readonly("simrum", &SignatureEstimate::simrum)
        .def_readonly("recovered_sim", &SignatureEstimate::recovered_sim);

    m.def(
        "estimate_rum",
        [](const ItemSet& a, const ItemSet& b, int k, std::uint64_t seed,
           const std::string& hash, const std::string& mode) {
            int n = a.size() + b.size();
            HashFamily family = hash == "linear"
                                    ? HashFamily(sample_uniform_family(k, n, seed))
                                    : HashFamily(sample_permutations(k, n, seed));
            auto rng = make_engine(derive_seed(seed, 0xabcd));
            std::vector<int> sigma = identity_permutation(n);
            std::shuffle(sigma.begin(), sigma.end(), rng);
            return estimate_rum(a, b, family, sigma,
                                mode == "max" ? AggregationMode::Max : AggregationMode::Min);
        },
        py::arg("a"), py::arg("b"), py::arg("k"), py::arg("seed") = 1,
        py::arg("hash") = "permutation", py::arg("mode") = "min");

    py::class_<DistributionTable>(m, "DistributionTable")
        .def_readonly("k", &DistributionTable::k)
        .def("probs", &table_probs)
        .def("fractions", &table_fracs);

    m.def("binomial_table", [](int k, const std::string& p) {
        return binomial_table(k, rational_from_string(p));
    });
    m.def(
        "simrum_law",
        [](const ItemSet& a, const ItemSet& b, int k) {
            RepresentationMatrix m2 =
                build_rum_matrix(a, b, identity_permutation(a.size() + b.size()));
            return simrum_law_permutation(m2, 1, 2, k);
        },
        py::arg("a"), py::arg("b"), py::arg("k"),
        "Exact law of simrum under independent uniform permutations");
    m.def("deviation_probability",
          [](const DistributionTable& d, const std::string& p, const std::string& eps) {
              return to_string(deviation_probability(d, rational_from_string(p),
                                                     rational_from_string(eps)));
          });
    m.def("exact_ci", [](const DistributionTable& d, const std::string& p,
                         const std::string& level) {
        ConfidenceInterval ci = exact_ci(d, rational_from_string(p),
                                         rational_from_string(level));
        py::dict out;
        out["center"] = to_string(ci.center);
        out["half_width"] = to_string(ci.half_width);
        out["coverage"] = to_string(ci.coverage);
        return out;
    });
    m.def("random_subset_law", [](int n, int k, int m2) {
        SubsetLaw law = random_subset_law(n, k, m2);
        py::dict out;
        std::vector<std::string> pmf;
        for (const auto& p : law.pmf) {
            pmf.push_back(to_string(p));
        }
        out["pmf"] = pmf;
        out["expected_similarity"] = to_string(law.expected_similarity);
        return out;
    });
    m.def("collision_probability_uniform", [](int i1, int i2, int i3) {
        return to_string(collision_probability_uniform(i1, i2, i3));
    });

    py::class_<EmpiricalDistribution>(m, "EmpiricalDistribution")
        .def_readonly("k", &EmpiricalDistribution::k)
        .def_readonly("counts", &EmpiricalDistribution::counts)
        .def_readonly("trials", &EmpiricalDistribution::trials);

    m.def(
        "simulate_simrum",
        [](const ItemSet& a, const ItemSet& b, int k, long trials, std::uint64_t seed) {
            return simulate_simrum(a, b, Sampler::permutations(), k, trials, seed);
        },
        py::arg("a"), py::arg("b"), py::arg("k"), py::arg("trials"), py::arg("seed") = 1);
}
