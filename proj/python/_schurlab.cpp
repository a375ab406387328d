#include "schurlab/claims.hpp"
#include "schurlab/free_space.hpp"
#include "schurlab/seq_quantities.hpp"
#include "schurlab/spaces.hpp"
#include "schurlab/subset_selection.hpp"
#include "schurlab/sums.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <cmath>

namespace py = pybind11;
using namespace schurlab;
using spaces::ComplexRational;

// Rationals cross the boundary as fractions.Fraction; int and str also load.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool convert) {
        if (!src) return false;
        if (py::isinstance<py::bool_>(src)) return false;
        if (py::isinstance<py::int_>(src)) {
            value = Rational(py::str(src).cast<std::string>());
            return true;
        }
        if (!convert) return false;
        py::object fraction = py::module_::import("fractions").attr("Fraction");
        try {
            py::object f = fraction(src);
            value = Rational(py::str(f.attr("numerator")).cast<std::string>() + "/" +
                             py::str(f.attr("denominator")).cast<std::string>());
            value.canonicalize();
            return true;
        } catch (const py::error_already_set&) {
            return false;
        }
    }

    static handle cast(const Rational& q, return_value_policy, handle) {
        py::object fraction = py::module_::import("fractions").attr("Fraction");
        py::int_ num(py::reinterpret_steal<py::object>(PyLong_FromString(q.get_num().get_str().c_str(), nullptr, 10)));
        py::int_ den(py::reinterpret_steal<py::object>(PyLong_FromString(q.get_den().get_str().c_str(), nullptr, 10)));
        return fraction(num, den).release();
    }
};
}  // namespace pybind11::detail

namespace {

// Accepts a real scalar, a Python complex (converted exactly from its doubles)
// or a (re, im) pair.
ComplexRational to_complex(const py::handle& h) {
    if (PyComplex_Check(h.ptr())) {
        auto c = h.cast<std::complex<double>>();
        return {Rational(c.real()), Rational(c.imag())};
    }
    if (py::isinstance<py::tuple>(h) || py::isinstance<py::list>(h)) {
        auto seq = h.cast<py::sequence>();
        if (seq.size() != 2) throw py::value_error("complex entries are (re, im) pairs");
        return {seq[0].cast<Rational>(), seq[1].cast<Rational>()};
    }
    return {h.cast<Rational>()};
}

std::vector<ComplexRational> to_complex_list(const py::iterable& values) {
    std::vector<ComplexRational> out;
    for (auto h : values) out.push_back(to_complex(h));
    return out;
}

py::tuple from_complex(const ComplexRational& z) { return py::make_tuple(z.re, z.im); }

py::dict norm_dict(const NormValue& v) {
    py::dict d;
    d["value"] = v.value();
    d["lower"] = v.lower();
    d["upper"] = v.upper();
    d["exact"] = v.exact ? py::cast(*v.exact) : py::none();
    d["squared"] = v.squared ? py::cast(*v.squared) : py::none();
    return d;
}

py::dict selection_dict(const subset_selection::SelectionResult& r) {
    py::dict d;
    d["subset"] = r.subset;
    d["sum"] = from_complex(r.sum);
    d["modulus"] = norm_dict(r.modulus);
    d["total"] = norm_dict(r.total);
    d["ratio"] = r.ratio.value;
    d["ratio_lower"] = r.ratio.lower();
    return d;
}

free_space::FreeVector free_vector(const free_space::FiniteMetricSpace& space, std::vector<Rational> c) {
    if (c.size() != space.size()) throw py::value_error("one coefficient per point is required");
    return {std::move(c)};
}

py::dict bound_dict(const seq_quantities::Bound& b) {
    py::dict d;
    d["value"] = b.value;
    d["exact"] = b.exact ? py::cast(*b.exact) : py::none();
    return d;
}

py::dict computed_dict(const claims::Computed& c) {
    py::dict d;
    d["exact"] = c.exact ? py::cast(*c.exact) : py::none();
    d["lower"] = c.lower;
    d["upper"] = c.upper;
    return d;
}

}  // namespace

PYBIND11_MODULE(_schurlab, m) {
    m.doc() = "Exact and certified computations on Lipschitz-free spaces and l1-type sequence constants.";

    // subset selection
    m.def("halfplane_select", [](const py::iterable& values) {
        auto lambda = to_complex_list(values);
        return selection_dict(subset_selection::halfplane_select(lambda));
    }, py::arg("values"));
    m.def("best_subset_bruteforce", [](const py::iterable& values) {
        auto lambda = to_complex_list(values);
        return selection_dict(subset_selection::best_subset_bruteforce(lambda));
    }, py::arg("values"));
    m.def("roots_witness", [](int n) {
        auto w = subset_selection::roots_witness(n, n <= 8);
        py::dict d;
        d["n"] = w.n;
        d["ratio"] = w.ratio_enclosure.value;
        d["ratio_lower"] = w.ratio_enclosure.lower();
        d["ratio_upper"] = w.ratio_enclosure.upper();
        d["best"] = w.best_enclosure.value;
        d["optimal_subset"] = w.optimal_subset;
        d["half_circle_verified"] = w.half_circle_verified ? py::cast(*w.half_circle_verified) : py::none();
        return d;
    }, py::arg("n"));

    // free spaces
    py::class_<free_space::FiniteMetricSpace>(m, "MetricSpace")
        .def(py::init([](std::vector<std::string> labels, std::vector<std::vector<Rational>> distance,
                         std::size_t base) {
                 free_space::FiniteMetricSpace s{std::move(labels), std::move(distance), base};
                 s.validate();
                 return s;
             }),
             py::arg("labels"), py::arg("distances"), py::arg("base") = 0)
        .def_readonly("labels", &free_space::FiniteMetricSpace::labels)
        .def_readonly("distances", &free_space::FiniteMetricSpace::distance)
        .def_readonly("base", &free_space::FiniteMetricSpace::base)
        .def("index_of", [](const free_space::FiniteMetricSpace& s, const std::string& label) {
            auto i = s.index_of(label);
            if (!i) throw py::key_error(label);
            return *i;
        })
        .def("__len__", &free_space::FiniteMetricSpace::size)
        .def("__repr__", [](const free_space::FiniteMetricSpace& s) {
            return "<MetricSpace with " + std::to_string(s.size()) + " points, base " + s.labels[s.base] + ">";
        });

    m.def("exlf_space", &free_space::exlf_space, py::arg("n"));
    m.def("exlf3_space", &free_space::exlf3_space, py::arg("n"));
    m.def("mprime_space", &free_space::mprime_space, py::arg("n"));
    m.def("exlf_index", &free_space::exlf_index, py::arg("k"));
    m.def("exlf3_index", &free_space::exlf3_index, py::arg("k"));
    m.def("star_extension", &free_space::star_extension, py::arg("space"));

    m.def("free_norm", [](const free_space::FiniteMetricSpace& space, std::vector<Rational> c,
                          const std::string& method) {
        auto mu = free_vector(space, std::move(c));
        if (method == "dual") return free_space::free_norm_dual(mu, space);
        if (method == "primal") return free_space::free_norm_primal(mu, space);
        throw py::value_error("method must be 'primal' or 'dual'");
    }, py::arg("space"), py::arg("coefficients"), py::arg("method") = "dual");
    m.def("free_norm_witness", [](const free_space::FiniteMetricSpace& space, std::vector<Rational> c) {
        auto [value, f] = free_space::free_norm_dual_with_witness(free_vector(space, std::move(c)), space);
        return py::make_tuple(value, f.values);
    }, py::arg("space"), py::arg("coefficients"));
    m.def("lip_constant", [](const free_space::FiniteMetricSpace& space, std::vector<Rational> values) {
        return free_space::lip_constant({std::move(values)}, space);
    }, py::arg("space"), py::arg("values"));
    m.def("exlf_norm_formula", [](std::vector<Rational> c) {
        return free_space::exlf_norm_formula({std::move(c)});
    }, py::arg("coefficients"));
    m.def("mprime_norm_formula", [](std::vector<Rational> c) {
        return free_space::mprime_norm_formula({std::move(c)});
    }, py::arg("coefficients"));

    m.def("certify", [](const std::string& example, int n, const Rational& epsilon) {
        free_space::CertificateReport r;
        {
            py::gil_scoped_release release;
            r = free_space::exceptional_pair_certificate(free_space::parse_example(example), n, epsilon);
        }
        py::dict d;
        d["example"] = free_space::to_string(r.example);
        d["n"] = r.n;
        d["epsilon"] = r.epsilon;
        py::list pairs;
        for (const auto& p : r.pair_certificates) pairs.append(py::make_tuple(p.first, p.second, p.optimum));
        d["pair_certificates"] = pairs;
        d["pair_bound"] = r.pair_bound;
        d["confinement_bound"] = r.confinement_bound ? py::cast(*r.confinement_bound) : py::none();
        d["holds"] = r.holds;
        return d;
    }, py::arg("example"), py::arg("n"), py::arg("epsilon") = Rational(1, 4));

    m.def("sandwich_check", [](const free_space::FiniteMetricSpace& space,
                               const std::vector<std::vector<Rational>>& samples) {
        auto r = free_space::separated_sandwich_check(space, samples);
        py::dict d;
        d["a"] = r.a;
        d["b"] = r.b;
        py::list rows;
        for (const auto& s : r.samples) rows.append(py::make_tuple(s.lower, s.norm, s.upper));
        d["samples"] = rows;
        d["holds"] = r.holds;
        return d;
    }, py::arg("space"), py::arg("samples"));

    // spaces
    m.def("complexified_norm", [](std::vector<Rational> x, std::vector<Rational> y) {
        return norm_dict(spaces::complexified_norm(x, y));
    }, py::arg("x"), py::arg("y"));
    m.def("sign_sup_norm", [](const py::iterable& alpha) {
        auto a = to_complex_list(alpha);
        return norm_dict(spaces::sign_sup_norm(a));
    }, py::arg("alpha"));

    // sequence quantities
    m.def("family_tags", &seq_quantities::family_tags);
    m.def("staged_tags", &seq_quantities::staged_tags);
    m.def("quantities", [](const std::string& tag, int stage) {
        seq_quantities::DiameterSeparation ds;
        seq_quantities::LowerL1Real real;
        seq_quantities::LowerL1Complex complex;
        seq_quantities::RosenthalReport rosenthal;
        bool polyhedral = false, is_complex = false;
        {
            py::gil_scoped_release release;
            auto f = seq_quantities::generate_family(tag, stage);
            ds = seq_quantities::diam_and_separation(f);
            real = seq_quantities::lower_l1_real(f);
            is_complex = f.model.field() == spaces::Field::Complex;
            if (is_complex) complex = seq_quantities::lower_l1_complex(f);
            polyhedral = real.exact.has_value();
            if (polyhedral) rosenthal = seq_quantities::rosenthal_stage_check(f);
        }
        py::dict d;
        d["tag"] = tag;
        d["stage"] = stage;
        d["diameter"] = norm_dict(ds.diameter);
        d["separation"] = norm_dict(ds.separation);
        py::dict cjr;
        cjr["lower"] = bound_dict(real.lower);
        cjr["upper"] = bound_dict(real.upper);
        cjr["exact"] = real.exact ? py::cast(*real.exact) : py::none();
        d["cjr"] = cjr;
        if (is_complex) {
            py::dict cj;
            cj["lower"] = bound_dict(complex.lower);
            cj["upper"] = bound_dict(complex.upper);
            cj["witness_kind"] = complex.witness_kind;
            d["cj"] = cj;
        } else {
            d["cj"] = py::none();  // real model: cj is cjr
        }
        d["rosenthal_holds"] = polyhedral ? py::cast(rosenthal.holds) : py::none();
        return d;
    }, py::arg("tag"), py::arg("stage"));
    m.def("staged", [](const std::string& tag, int max_stage) {
        seq_quantities::StagedValues s;
        {
            py::gil_scoped_release release;
            s = seq_quantities::staged_report(tag, max_stage);
        }
        py::list rows;
        for (const auto& [stage, e] : s.stages) rows.append(py::make_tuple(stage, e.value, e.lower(), e.upper()));
        py::dict d;
        d["tag"] = s.tag;
        d["direction"] = seq_quantities::to_string(s.direction);
        d["stages"] = rows;
        d["target"] = s.target ? py::cast(*s.target) : py::none();
        d["monotone"] = s.monotone(true);
        d["within_target"] = s.within_target();
        return d;
    }, py::arg("tag"), py::arg("max_stage"));
    m.def("gliding_hump", [](const std::vector<std::vector<Rational>>& y, std::size_t start, const Rational& eps) {
        auto h = seq_quantities::gliding_hump(y, start, eps);
        py::dict d;
        d["indices"] = h.indices;
        d["boundaries"] = h.boundaries;
        d["verified"] = seq_quantities::verify_hump(y, start, eps, h);
        return d;
    }, py::arg("sequence"), py::arg("start"), py::arg("epsilon"));

    // direct sums
    m.def("chain_witness_x", [](int n, int k) { return sums::build_witness_x(n, k).norm; },
          py::arg("n"), py::arg("k"));
    m.def("chain_witness_z", [](int n, int count, std::vector<int> indices) {
        return sums::build_witness_z(n, count, std::move(indices)).norm;
    }, py::arg("n"), py::arg("m"), py::arg("indices") = std::vector<int>{});
    m.def("telescoping_identity", [](int n, int count) {
        auto r = sums::telescoping_identity(n, count);
        return py::make_tuple(r.values, r.holds);
    }, py::arg("n"), py::arg("m"));

    // claims
    m.def("claim_ids", [] {
        std::vector<std::string> ids;
        for (const auto& c : claims::registry()) ids.push_back(c.id);
        return ids;
    });
    m.def("run_claims", [](const std::vector<std::string>& ids, std::optional<int> stage, std::uint64_t seed) {
        std::vector<claims::ClaimResult> results;
        {
            py::gil_scoped_release release;
            results = claims::run(ids, stage, seed);
        }
        py::list out;
        for (const auto& r : results) {
            py::dict d;
            d["claim"] = r.claim;
            d["paper"] = r.paper.text;
            d["paper_value"] = r.paper.value;
            d["computed"] = computed_dict(r.computed);
            d["stage"] = r.stage;
            d["status"] = claims::to_string(r.status);
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    }, py::arg("ids") = std::vector<std::string>{}, py::arg("stage") = std::nullopt, py::arg("seed") = 7);
}
