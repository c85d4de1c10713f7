// Python bindings: a thin workspace object over the exact C++ core, exposing
// the main operations (canonical forms, Bruhat order, KL polynomials, leaf
// characters, cellular data, Phi certificates, the monotonicity scan).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "soergel/cellular.hpp"
#include "soergel/errors.hpp"
#include "soergel/mono.hpp"

namespace py = pybind11;
using namespace soergel;

namespace {

class Workspace {
  public:
    Workspace(const std::string& group, int max_length, unsigned seed = 0)
        : sys_(CoxeterMatrix::preset(group)),
          uni_(sys_, max_length),
          ctx_(sys_),
          led_(uni_, seed),
          fac_(ctx_, led_),
          kl_(uni_) {}

    int rank() const { return sys_.rank(); }
    std::size_t size() const { return uni_.size(); }

    std::string canonical(const Word& w) const {
        return word_str(uni_.normal_form(w).canonical);
    }
    int length(const Word& w) const { return uni_.normal_form(w).length; }
    bool bruhat_leq(const Word& u, const Word& w) const {
        return uni_.bruhat_leq(uni_.product_id(u), uni_.product_id(w));
    }

    std::string kl_h(const Word& x, const Word& w) {
        return kl_.kl_poly(uni_.product_id(x), uni_.product_id(w)).str();
    }
    std::map<int, long long> kl_P(const Word& x, const Word& w) {
        return kl_.kl_poly_P(uni_.product_id(x), uni_.product_id(w));
    }

    std::map<std::string, std::string> leaf_characters(const Word& w) const {
        std::map<std::string, std::string> out;
        for (auto& [x, ch] : leaf_character(led_, w))
            out[word_str(uni_.canonical_word(x))] = ch.str();
        return out;
    }

    std::map<std::string, std::string> multiplicities(const Word& w) {
        CellularContext cc(fac_, w);
        std::map<std::string, std::string> out;
        for (auto& [y, m] : cc.solve_multiplicities(kl_))
            out[word_str(uni_.canonical_word(y))] = m.str();
        return out;
    }

    std::map<std::string, std::map<std::string, std::string>> cell_data(const Word& w) {
        CellularContext cc(fac_, w);
        std::map<std::string, std::map<std::string, std::string>> out;
        for (ElementId x : cc.strata()) {
            auto& row = out[word_str(uni_.canonical_word(x))];
            row["gd_cell"] = cc.gd_cell(x).str();
            row["gd_simple"] = cc.gd_simple(x).str();
        }
        return out;
    }

    std::map<std::string, bool> certify_phi_chain(const Word& w, const Word& u,
                                                  const Word& v) {
        CellularContext cc(fac_, w);
        PhiCertificate cert =
            certify_phi(cc, uni_.product_id(u), uni_.product_id(v));
        return {{"intertwines", cert.intertwines},
                {"injective", cert.injective},
                {"graded_embedding", cert.graded_embedding}};
    }

    py::dict monotonicity(int max_len, int threads = 1) {
        MonoReport rep = monotonicity_scan(uni_, kl_, max_len, threads);
        py::list viols;
        for (auto& v : rep.violations) {
            py::dict d;
            d["u"] = word_str(uni_.canonical_word(v.u));
            d["v"] = word_str(uni_.canonical_word(v.v));
            d["w"] = word_str(uni_.canonical_word(v.w));
            d["form"] = v.form;
            d["detail"] = v.detail;
            viols.append(d);
        }
        py::dict out;
        out["triples_checked"] = rep.triples_checked;
        out["violations"] = viols;
        return out;
    }

  private:
    CoxeterSystem sys_;
    GroupUniverse uni_;
    RingContext ctx_;
    ChoiceLedger led_;
    MorphismFactory fac_;
    KLTable kl_;
};

}  // namespace

PYBIND11_MODULE(soergel_py, m) {
    m.doc() = "Exact light-leaves calculus, cellular structure, and "
              "Kazhdan-Lusztig monotonicity checks";

    py::register_exception<Error>(m, "SoergelError");

    py::class_<Workspace>(m, "Workspace")
        .def(py::init<const std::string&, int, unsigned>(), py::arg("group"),
             py::arg("max_length"), py::arg("seed") = 0)
        .def_property_readonly("rank", &Workspace::rank)
        .def_property_readonly("size", &Workspace::size)
        .def("canonical", &Workspace::canonical, py::arg("word"))
        .def("length", &Workspace::length, py::arg("word"))
        .def("bruhat_leq", &Workspace::bruhat_leq, py::arg("u"), py::arg("w"))
        .def("kl_h", &Workspace::kl_h, py::arg("x"), py::arg("w"))
        .def("kl_P", &Workspace::kl_P, py::arg("x"), py::arg("w"))
        .def("leaf_characters", &Workspace::leaf_characters, py::arg("word"))
        .def("multiplicities", &Workspace::multiplicities, py::arg("w"))
        .def("cell_data", &Workspace::cell_data, py::arg("w"))
        .def("certify_phi", &Workspace::certify_phi_chain, py::arg("w"), py::arg("u"),
             py::arg("v"))
        .def("monotonicity", &Workspace::monotonicity, py::arg("max_length"),
             py::arg("threads") = 1);
}
