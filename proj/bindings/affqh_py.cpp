// Python bindings.  The surface is deliberately text-first: every element,
// polynomial and coefficient crosses the boundary in its canonical string
// form, so Python sees exactly what the table files contain and exactness is
// never at the mercy of a float.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affqh/affweyl.hpp"
#include "affqh/errors.hpp"
#include "affqh/grring.hpp"
#include "affqh/peterson.hpp"
#include "affqh/qhring.hpp"
#include "affqh/rootdata.hpp"
#include "affqh/tableio.hpp"
#include "affqh/textio.hpp"

namespace py = pybind11;
using namespace affqh;

namespace {

ParabolicSet parabolic_from(const RootSystem& rs, const std::vector<int>& p) {
    ParabolicSet out(p);
    rs.validate_parabolic(out);
    return out;
}

// Affine Schubert basis products over one root system, with memoized
// localization data shared across calls.
struct GrEngine {
    const RootSystem& rs;
    GrRing ring;

    explicit GrEngine(const RootSystem& r) : rs(r), ring(r) {}

    py::dict product(const std::string& u, const std::string& v) const {
        GrClassVector c = ring.structure_constants(aff_from_string(rs, u),
                                                   aff_from_string(rs, v));
        py::dict out;
        for (const auto& [z, coeff] : c.entries)
            out[py::str(aff_to_string(rs, z))] =
                poly_to_string(coeff.to_poly());
        return out;
    }
};

// Quantum cohomology over one parabolic choice.
struct QhEngine {
    const RootSystem& rs;
    QHRing ring;

    QhEngine(const RootSystem& r, const std::vector<int>& p)
        : rs(r), ring(r, parabolic_from(r, p)) {}

    std::vector<std::string> coset_reps() const {
        std::vector<std::string> out;
        for (const WeylElement& w : ring.coset_reps())
            out.push_back(weyl_to_string(rs, w));
        return out;
    }

    py::list product(const std::string& u, const std::string& v) const {
        QuantumClass c = ring.quantum_product(weyl_from_string(rs, u),
                                              weyl_from_string(rs, v));
        py::list out;
        for (const auto& [key, poly] : c.entries)
            out.append(py::make_tuple(curve_to_string(key.first),
                                      weyl_to_string(rs, key.second),
                                      poly_to_string(poly)));
        return out;
    }

    py::dict classical_product(const std::string& u,
                               const std::string& v) const {
        py::dict out;
        for (const auto& [w, poly] :
             ring.classical_product(weyl_from_string(rs, u),
                                    weyl_from_string(rs, v)))
            out[py::str(weyl_to_string(rs, w))] = poly_to_string(poly);
        return out;
    }

    std::string localization(const std::string& v, const std::string& u) const {
        return poly_to_string(
            ring.localization(weyl_from_string(rs, v), weyl_from_string(rs, u)));
    }

    std::optional<std::pair<std::string, std::string>> basis_image(
        const std::string& x) const {
        auto image = peterson_basis_image(ring, aff_from_string(rs, x));
        if (!image) return std::nullopt;
        return std::make_pair(curve_to_string(image->first),
                              weyl_to_string(rs, image->second));
    }

    py::dict dimension(const std::string& x, const std::string& v) const {
        DimensionCount dc =
            dim_count(ring, aff_from_string(rs, x), weyl_from_string(rs, v));
        py::dict out;
        out["dimension"] = dc.dimension;
        out["length_x"] = dc.length_x;
        out["length_v"] = dc.length_v;
        out["chern"] = dc.chern;
        out["summands"] = dc.summands;
        return out;
    }
};

py::dict run_verify(const RootSystem& rs, const std::vector<int>& p,
                    int max_length, int threads) {
    ParabolicSet par = parabolic_from(rs, p);
    VerifyReport r;
    {
        py::gil_scoped_release release;
        GrRing gr(rs);
        QHRing qh(rs, par);
        r = verify_homomorphism(gr, qh, max_length, threads);
    }
    py::dict out;
    out["group_type"] = std::string(1, r.group_type);
    out["rank"] = r.rank;
    out["parabolic"] = r.parabolic;
    out["max_length"] = r.max_length;
    out["pairs_checked"] = r.pairs_checked;
    out["passed"] = r.passed();
    py::list failures;
    for (const VerifyFailure& f : r.failures) {
        py::dict row;
        row["u"] = aff_to_string(rs, f.u);
        row["v"] = aff_to_string(rs, f.v);
        row["what"] = f.what;
        failures.append(std::move(row));
    }
    out["failures"] = std::move(failures);
    py::dict timing;
    timing["products"] = r.seconds_products;
    timing["membership"] = r.seconds_membership;
    timing["dimension"] = r.seconds_dimension;
    out["timing"] = std::move(timing);
    return out;
}

} // namespace

PYBIND11_MODULE(_affqh, m) {
    m.doc() = "Exact affine Schubert / quantum Chevalley engine";

    py::register_exception<Error>(m, "EngineError");
    py::register_exception<InvalidInput>(m, "InvalidInputError",
                                         PyExc_ValueError);

    py::class_<RootSystem>(m, "RootSystem")
        .def(py::init<char, int>(), py::arg("type"), py::arg("rank"))
        .def_property_readonly("type",
                               [](const RootSystem& rs) {
                                   return std::string(1, rs.type());
                               })
        .def_property_readonly("rank", &RootSystem::rank)
        .def("__repr__", [](const RootSystem& rs) {
            return "RootSystem('" + std::string(1, rs.type()) + "', " +
                   std::to_string(rs.rank()) + ")";
        });

    py::class_<GrEngine>(m, "GrEngine")
        .def(py::init<const RootSystem&>(), py::arg("root_system"),
             py::keep_alive<1, 2>())
        .def("product", &GrEngine::product, py::arg("u"), py::arg("v"),
             "Expansion of xi_u * xi_v as {element: coefficient}");

    py::class_<QhEngine>(m, "QhEngine")
        .def(py::init<const RootSystem&, const std::vector<int>&>(),
             py::arg("root_system"), py::arg("parabolic") = std::vector<int>{},
             py::keep_alive<1, 2>())
        .def("coset_reps", &QhEngine::coset_reps)
        .def("product", &QhEngine::product, py::arg("u"), py::arg("v"),
             "Quantum product as [(curve, element, coefficient)] rows")
        .def("classical_product", &QhEngine::classical_product, py::arg("u"),
             py::arg("v"))
        .def("localization", &QhEngine::localization, py::arg("v"),
             py::arg("u"), "Restriction of sigma_v to the fixed point y_u")
        .def("basis_image", &QhEngine::basis_image, py::arg("x"),
             "Image (curve, element) of an affine basis class, or None")
        .def("dimension", &QhEngine::dimension, py::arg("x"), py::arg("v"));

    m.def("enumerate_minus",
          [](const RootSystem& rs, int max_length) {
              std::vector<std::string> out;
              for (const AffineWeylElement& x :
                   enumerate_waf_minus(rs, max_length))
                  out.push_back(aff_to_string(rs, x));
              return out;
          },
          py::arg("root_system"), py::arg("max_length"),
          "Minimal coset representatives up to the length bound");
    m.def("enumerate_ball",
          [](const RootSystem& rs, int max_length) {
              std::vector<std::string> out;
              for (const AffineWeylElement& x :
                   enumerate_waf_ball(rs, max_length))
                  out.push_back(aff_to_string(rs, x));
              return out;
          },
          py::arg("root_system"), py::arg("max_length"));
    m.def("length",
          [](const RootSystem& rs, const std::string& x) {
              return length_minrep(rs, aff_from_string(rs, x));
          },
          py::arg("root_system"), py::arg("x"));
    m.def("reduced_word",
          [](const RootSystem& rs, const std::string& x) {
              return word_to_string(reduced_word(rs, aff_from_string(rs, x)));
          },
          py::arg("root_system"), py::arg("x"));
    m.def("in_wp_af",
          [](const RootSystem& rs, const std::string& x,
             const std::vector<int>& p) {
              return in_wp_af(rs, aff_from_string(rs, x),
                              parabolic_from(rs, p));
          },
          py::arg("root_system"), py::arg("x"),
          py::arg("parabolic") = std::vector<int>{});
    m.def("condition_c",
          [](const RootSystem& rs, const std::string& x,
             const std::vector<int>& p) {
              return condition_c(rs, aff_from_string(rs, x),
                                 parabolic_from(rs, p));
          },
          py::arg("root_system"), py::arg("x"),
          py::arg("parabolic") = std::vector<int>{});
    m.def("min_coset_rep",
          [](const RootSystem& rs, const std::string& w,
             const std::vector<int>& p) {
              return weyl_to_string(
                  rs, min_coset_rep(rs, weyl_from_string(rs, w),
                                    parabolic_from(rs, p)));
          },
          py::arg("root_system"), py::arg("w"),
          py::arg("parabolic") = std::vector<int>{});

    m.def("verify", &run_verify, py::arg("root_system"),
          py::arg("parabolic") = std::vector<int>{}, py::arg("max_length") = 3,
          py::arg("threads") = 0,
          "Exhaustive comparison of both products; returns the report");

    m.def("xi_table_json",
          [](const RootSystem& rs, int max_length, bool non_equivariant) {
              GrRing gr(rs);
              return xi_table_to_json(
                  rs, compute_xi_table(gr, max_length, non_equivariant));
          },
          py::arg("root_system"), py::arg("max_length"),
          py::arg("non_equivariant") = false);
    m.def("qh_table_json",
          [](const RootSystem& rs, const std::vector<int>& p, int max_length,
             bool non_equivariant) {
              QHRing qh(rs, parabolic_from(rs, p));
              return qh_table_to_json(
                  rs, compute_qh_table(qh, max_length, non_equivariant));
          },
          py::arg("root_system"), py::arg("parabolic"), py::arg("max_length"),
          py::arg("non_equivariant") = false);
    m.def("convention_fingerprint", &convention_fingerprint);
}
