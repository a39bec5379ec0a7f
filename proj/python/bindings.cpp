#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qsubfactor/cli.hpp"
#include "qsubfactor/corep.hpp"
#include "qsubfactor/error.hpp"
#include "qsubfactor/haar.hpp"
#include "qsubfactor/type3.hpp"
#include "qsubfactor/uqsl2.hpp"
#include "qsubfactor/verify.hpp"
#include "qsubfactor/wassermann.hpp"

namespace py = pybind11;
using namespace qsf;

namespace {

CorepDecomp rep(const std::string& s, bool so3 = false) { return parse_rep(s, ParseOptions{so3}); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Invariants of Wassermann-type subfactors from SU_q(2)";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
    py::register_exception<NumericalDegeneracy>(m, "NumericalDegeneracy", base.ptr());

    // Representations: strings in the rep grammar on the Python side.
    m.def("normalize", [](const std::string& s, bool so3) { return render(rep(s, so3)); }, py::arg("rep"),
          py::arg("so3") = false);
    m.def("fuse", [](const std::string& a, const std::string& b) { return render(fuse(rep(a), rep(b))); });
    m.def("blocks", [](const std::string& s) {
        std::vector<std::pair<int, int>> out;
        const auto r = rep(s);
        for (const auto& b : r.blocks()) out.emplace_back(b.spin.twice(), b.mult);
        return out;
    }, "List of (2l, multiplicity)");
    m.def("dim_q", [](const std::string& s) { return to_string(dim_q(rep(s))); });
    m.def("dim_q_value", [](const std::string& s, double q) { return eval(dim_q(rep(s)), q); });
    m.def("index_poly", [](const std::string& s) { return to_string(index_poly(rep(s))); });
    m.def("index_value", [](const std::string& s, double q) { return index_value(rep(s), q); });
    m.def("f_matrix", [](const std::string& s, double q) { return f_matrix(rep(s)).numeric(q); });
    m.def("qtrace", [](const std::string& s, bool minus, const Eigen::MatrixXd& x, double q) {
        return qtrace(rep(s), minus ? TraceSign::minus : TraceSign::plus, x, q);
    }, py::arg("rep"), py::arg("minus"), py::arg("x"), py::arg("q"));

    m.def("cg", [](int twice_a, int twice_b, double q) {
        std::vector<std::pair<int, Eigen::MatrixXd>> out;
        for (auto& c : decompose(tensor(irrep(Spin::from_twice(twice_a), q), irrep(Spin::from_twice(twice_b), q))))
            out.emplace_back(c.target_spin.twice(), std::move(c.C));
        return out;
    }, "Isometries of V_a (x) V_b as (2l, C) pairs", py::arg("twice_a"), py::arg("twice_b"), py::arg("q"));

    m.def("haar_of_product", [](const std::vector<std::string>& names, double q) {
        PWElement acc = PWElement::unit(q);
        for (const auto& n : names) {
            const bool conj = !n.empty() && n.back() == '*';
            const auto g = generator(conj ? n.substr(0, n.size() - 1) : n, q);
            acc = multiply(acc, conj ? star(g) : g);
        }
        return haar(acc);
    }, "h of a word in x, u, v, y (suffix * for the adjoint)", py::arg("word"), py::arg("q"));

    m.def("lemma1_check", [](const std::string& pi, const std::string& sigma, double q) {
        return lemma1_check(rep(pi), ToyAction{rep(sigma), q});
    });
    m.def("verify_composition", [](const std::string& pi, const std::string& sigma, double q) {
        return verify_composition(rep(pi), ToyAction{rep(sigma), q});
    });
    m.def("t0", &t0);
    m.def("essentially_type_II", [](const std::string& s) { return essentially_type_II(rep(s)); });
    m.def("parity_scalars", [](const std::string& s) { return parity_scalars(rep(s)); });

    // Structured reports as JSON text; the package wrapper decodes them.
    m.def("tower_json", [](const std::string& s, int n, std::optional<double> q) {
        const auto t = jones_tower(rep(s), n);
        return to_json(t, q ? &*q : nullptr).dump();
    }, py::arg("rep"), py::arg("n"), py::arg("q") = py::none());
    m.def("type3_json", [](const std::string& s, double q) { return to_json(type3_report(rep(s), q)).dump(); });
    m.def("verify_json", [](const std::string& target, std::optional<double> q, double tol) {
        py::gil_scoped_release release;
        return to_json(run_verify(target, VerifyOptions{q, true}), tol).dump();
    }, py::arg("target") = "all", py::arg("q") = py::none(), py::arg("tol") = 1e-8);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "Run the command-line front end in-process; returns (exit code, stdout, stderr)");
}
