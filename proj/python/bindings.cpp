#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypcone/conelib.hpp"
#include "hypcone/membership.hpp"
#include "hypcone/oracle.hpp"
#include "hypcone/sdpa_io.hpp"
#include "hypcone/sdpsolve.hpp"
#include "hypcone/verify.hpp"

namespace py = pybind11;
using namespace hypcone;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

conelib::ConeSpec spec_from_arg(const std::string& text) { return conelib::spec_from_json(text); }

py::dict verdict_dict(const oracle::MembershipVerdict& v) {
    py::dict d;
    d["margin"] = v.margin;
    d["binding_index"] = v.binding_index;
    d["decision"] = oracle::decision_name(v.decision);
    return d;
}

py::dict report_dict(const sdpsolve::SolveReport& r) {
    py::dict d;
    d["status"] = sdpsolve::status_name(r.status);
    d["objective"] = r.objective_value;
    d["iterations"] = r.iterations;
    d["complementarity"] = r.complementarity;
    d["primal_residual"] = r.primal_residual;
    d["dual_residual"] = r.dual_residual;
    d["point"] = r.primal_point;
    return d;
}

} // namespace

PYBIND11_MODULE(_hypcone, m) {
    m.doc() = "semidefinite representations of derivative relaxations of the orthant, "
              "the PSD cone and spectrahedral cones";

    m.def("elem_sym", [](const VectorXd& x, int k) { return symlin::elem_sym(x, k); },
          py::arg("x"), py::arg("k"),
          "elementary symmetric polynomial e_k(x) via the coefficient recurrence");

    m.def("charpoly_coeffs",
          [](const MatrixXd& x) {
              return symlin::charpoly_coeffs(symlin::SymMatrix::from_full(x, 1e-9));
          },
          py::arg("X"), "E_1..E_n with the det(X + tI) sign convention");

    m.def("eigvals_sym",
          [](const MatrixXd& x) {
              return symlin::eigvals_sym(symlin::SymMatrix::from_full(x, 1e-9));
          },
          py::arg("X"), "eigenvalues, weakly decreasing");

    m.def("complement_basis", [](int n) { return symlin::complement_basis(n).V; }, py::arg("n"),
          "n x (n-1) matrix V with V^T V = I and V^T 1 = 0 (Householder construction)");

    m.def("orthant_margin",
          [](const VectorXd& x, int k) { return verdict_dict(oracle::orthant_margin(x, k)); },
          py::arg("x"), py::arg("k"));

    m.def("psd_deriv_margin",
          [](const MatrixXd& x, int k) {
              return verdict_dict(oracle::psd_deriv_margin(symlin::SymMatrix::from_full(x, 1e-9), k));
          },
          py::arg("X"), py::arg("k"));

    m.def("spectrahedral_margin",
          [](const std::string& spec_json, const VectorXd& x) {
              const auto spec = spec_from_arg(spec_json);
              if (spec.kind != conelib::ConeSpec::Kind::SpectrahedralDeriv)
                  throw argument_error("spectrahedral_margin expects a spectrahedral spec");
              return verdict_dict(oracle::spectrahedral_margin(*spec.pencil, spec.k, x));
          },
          py::arg("spec_json"), py::arg("x"));

    m.def("check_main_identity", &oracle::check_main_identity, py::arg("x"), py::arg("t"));
    m.def("check_polar_identity",
          [](const VectorXd& x, int k) { return oracle::check_polar_identity(x, k); },
          py::arg("x"), py::arg("k"));

    m.def("build_representation",
          [](const std::string& spec_json) {
              const auto spec = spec_from_arg(spec_json);
              const auto rep = conelib::build(spec);
              py::dict d;
              d["primal_dim"] = rep.primal_dim();
              d["aux_dim"] = rep.aux_dim();
              d["size"] = rep.size();
              d["slice_form"] = rep.is_slice_form();
              d["json"] = lmi::to_json(rep);
              return d;
          },
          py::arg("spec_json"));

    m.def("size_report",
          [](const std::string& spec_json) {
              std::vector<py::dict> rows;
              for (const auto& r : conelib::size_report(spec_from_arg(spec_json))) {
                  py::dict d;
                  d["cone"] = r.cone;
                  d["added"] = r.added;
                  d["cumulative"] = r.cumulative;
                  rows.push_back(d);
              }
              return rows;
          },
          py::arg("spec_json"));

    m.def("member",
          [](const std::string& spec_json, const VectorXd& point) {
              const auto spec = spec_from_arg(spec_json);
              const auto rep = conelib::build(spec);
              const auto mr = membership::member_point(rep, point);
              py::dict d;
              d["inside"] = mr.inside;
              d["margin"] = mr.margin;
              d["status"] = sdpsolve::status_name(mr.solve.status);
              return d;
          },
          py::arg("spec_json"), py::arg("point"));

    m.def("solve_over_cone",
          [](const std::string& spec_json, const VectorXd& objective,
             const std::vector<std::pair<VectorXd, double>>& equalities, bool maximize) {
              const auto rep = conelib::build(spec_from_arg(spec_json));
              return report_dict(membership::solve_over_cone(
                  rep, objective, equalities,
                  maximize ? sdpsolve::Sense::Max : sdpsolve::Sense::Min));
          },
          py::arg("spec_json"), py::arg("objective"), py::arg("equalities") = py::list(),
          py::arg("maximize") = false);

    m.def("solve_sdpa_file", [](const std::string& path) { return report_dict(sdpa::solve_file(path)); },
          py::arg("path"));

    m.def("boundary_points",
          [](const std::string& spec_json, int count, std::uint64_t seed) {
              const auto rep = conelib::build(spec_from_arg(spec_json));
              const auto rows = membership::boundary_points(rep, count, seed);
              MatrixXd out(rows.size(), 6);
              std::vector<std::string> status;
              for (size_t i = 0; i < rows.size(); ++i) {
                  const auto& r = rows[i];
                  out.row(static_cast<int>(i)) << r.theta, r.dir_x, r.dir_y, r.x, r.y, r.objective;
                  status.push_back(sdpsolve::status_name(r.status));
              }
              return py::make_tuple(out, status);
          },
          py::arg("spec_json"), py::arg("count") = 200, py::arg("seed") = 42);

    m.def("verify",
          [](std::uint64_t seed, int nmax) {
              std::vector<py::dict> out;
              for (const auto& r : verify::run_all(seed, nmax)) {
                  py::dict d;
                  d["name"] = r.name;
                  d["passed"] = r.passed;
                  d["checks"] = r.checks;
                  d["worst"] = r.worst;
                  out.push_back(d);
              }
              return out;
          },
          py::arg("seed") = 42, py::arg("nmax") = 6);

    py::register_exception<argument_error>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<strategy_error>(m, "StrategyError", PyExc_ValueError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);
}
