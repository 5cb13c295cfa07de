#include "sraembed/cli.hpp"
#include "sraembed/io.hpp"
#include "sraembed/sraembed.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace sraembed;

namespace {

py::array_t<double> to_array(const PointMap& map) {
    py::array_t<double> out({map.size(), map.dim()});
    auto buf = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < map.size(); ++i)
        for (std::size_t c = 0; c < map.dim(); ++c) buf(i, c) = map.row(i)[c];
    return out;
}

PointMap from_array(const FiniteMetricSpace& space, const std::vector<std::size_t>& domain,
                    const py::array_t<double, py::array::c_style | py::array::forcecast>& values) {
    if (values.ndim() != 2 || static_cast<std::size_t>(values.shape(0)) != domain.size())
        throw Error(ErrorKind::InvalidArgument, "values must be a 2-d array with one row per domain point");
    const Subset dom = Subset::from_unsorted(domain);
    if (dom.size() != domain.size() || dom.indices() != domain)
        throw Error(ErrorKind::InvalidArgument, "domain indices must be strictly increasing");
    check_subset(space, dom);
    const auto dim = static_cast<std::size_t>(values.shape(1));
    std::vector<double> flat(values.data(), values.data() + domain.size() * dim);
    return PointMap(dom, dim, std::move(flat));
}

py::dict audit_dict(const AuditReport& r) {
    py::dict d;
    d["lipschitz"] = r.lipschitz;
    d["colipschitz"] = r.colipschitz;
    d["distortion"] = r.distortion;
    d["witness_max"] = py::make_tuple(r.witness_max.first.value, r.witness_max.second.value);
    d["witness_min"] = py::make_tuple(r.witness_min.first.value, r.witness_min.second.value);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Embeddings of SRA-free finite metric spaces into Euclidean space";

    static py::handle error_type = py::exception<Error>(m, "SraEmbedError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = error_type(e.what());
            inst.attr("kind") = std::string(to_string(e.kind()));
            inst.attr("witness") = e.witness();
            inst.attr("level") = e.level();
            PyErr_SetObject(error_type.ptr(), inst.ptr());
        }
    });

    py::class_<FiniteMetricSpace>(m, "MetricSpace")
        .def(py::init([](const std::vector<std::vector<double>>& matrix,
                         std::optional<std::vector<std::string>> labels) {
                 return validate_metric(matrix, std::move(labels));
             }),
             py::arg("matrix"), py::arg("labels") = std::nullopt)
        .def_static("from_text", [](const std::string& text) { return io::parse_space(text); },
                    "Parses a JSON or CSV space description.")
        .def("to_json", [](const FiniteMetricSpace& s) { return io::space_to_json(s); })
        .def("__len__", &FiniteMetricSpace::size)
        .def_property_readonly("labels", &FiniteMetricSpace::labels)
        .def_property_readonly("diameter", &FiniteMetricSpace::diameter)
        .def("d", [](const FiniteMetricSpace& s, std::size_t i, std::size_t j) {
            check_point(s, PointId{i});
            check_point(s, PointId{j});
            return s.d(i, j);
        })
        .def("matrix", [](const FiniteMetricSpace& s) {
            py::array_t<double> out({s.size(), s.size()});
            auto buf = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = 0; j < s.size(); ++j) buf(i, j) = s.d(i, j);
            return out;
        })
        .def("restrict", [](const FiniteMetricSpace& s, const std::vector<std::size_t>& idx) {
            return restrict_to(s, Subset::from_unsorted(idx));
        });

    m.def("generate",
          [](const std::string& family, std::size_t n, std::optional<double> exponent,
             std::optional<std::size_t> dim, std::uint64_t seed) {
              GenSpec spec{family_from_string(family), n, exponent, dim, seed};
              return generate(spec);
          },
          py::arg("family"), py::arg("n"), py::arg("exponent") = std::nullopt, py::arg("dim") = std::nullopt,
          py::arg("seed") = 0);

    m.def("find_sra_subspace",
          [](const FiniteMetricSpace& s, double alpha, std::size_t k) -> std::optional<std::vector<std::size_t>> {
              py::gil_scoped_release release;
              if (auto w = find_sra_subspace(s, SraParams{alpha, k})) return w->indices();
              return std::nullopt;
          },
          py::arg("space"), py::arg("alpha"), py::arg("k"));
    m.def("is_sra", [](const FiniteMetricSpace& s, const std::vector<std::size_t>& idx, double alpha) {
        return subset_is_sra(s, Subset::from_unsorted(idx), alpha);
    });
    m.def("sra_free_parameter", &sra_free_parameter, py::arg("space"), py::arg("alpha"),
          py::call_guard<py::gil_scoped_release>());
    m.def("doubling_constant",
          [](const FiniteMetricSpace& s) { return doubling_constant_estimate(s).lambda; });

    m.def("_embed",
          [](const FiniteMetricSpace& s, double alpha, std::optional<std::size_t> k) {
              EmbedResult r;
              {
                  py::gil_scoped_release release;
                  r = embed(s, k ? *k : sra_free_parameter(s, alpha), alpha);
              }
              py::dict d;
              d["coords"] = to_array(r.map);
              d["scale"] = r.map.scale;
              d["claimed_distortion"] = r.map.claimed_distortion;
              d["theoretical_bound"] = theoretical_bounds(r.constants);
              d["constants_json"] = io::to_json(r.constants).dump();
              return d;
          },
          py::arg("space"), py::arg("alpha"), py::arg("k") = std::nullopt);

    m.def("audit",
          [](const FiniteMetricSpace& s, const py::array_t<double, py::array::c_style | py::array::forcecast>& coords) {
              std::vector<std::size_t> all(s.size());
              for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
              return audit_dict(distortion_audit(s, from_array(s, all, coords)));
          },
          py::arg("space"), py::arg("coords"));

    m.def("mcshane_extend",
          [](const FiniteMetricSpace& s, const std::vector<std::size_t>& domain,
             const py::array_t<double, py::array::c_style | py::array::forcecast>& values, double lip) {
              return to_array(mcshane_extend(s, from_array(s, domain, values), lip));
          },
          py::arg("space"), py::arg("domain"), py::arg("values"), py::arg("lipschitz"));

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        std::vector<std::string> argv{"sraembed"};
        argv.insert(argv.end(), args.begin(), args.end());
        const int code = run_cli(argv, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
