#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypcone/conelib.hpp"
#include "hypcone/lmi.hpp"
#include "hypcone/sdpa_io.hpp"
#include "hypcone/sdpsolve.hpp"
#include "hypcone/verify.hpp"

using namespace hypcone;
using lmi::AffineMatrixMap;
using lmi::LinExpr;
using lmi::SdpRepresentation;
using Eigen::VectorXd;

namespace {

SdpRepresentation halfspace_rep() {
    SdpRepresentation rep(1);
    rep.add_nonneg(LinExpr::variable(0));
    return rep;
}

VectorXd vec(std::initializer_list<double> vals) {
    VectorXd v(static_cast<int>(vals.size()));
    int i = 0;
    for (double x : vals) v(i++) = x;
    return v;
}

} // namespace

TEST_CASE("new_representation basics") {
    const auto rep = lmi::new_representation(3);
    CHECK(rep.size() == 0);
    CHECK(rep.primal_dim() == 3);
    // Empty representation accepts everything; margin hits the cap.
    const auto fr = sdpsolve::feasibility_margin(rep, vec({5, -7, 0}));
    CHECK(fr.margin == doctest::Approx(1.0).epsilon(1e-6));

    CHECK(lmi::new_representation(0).size() == 0);

    auto half = halfspace_rep();
    CHECK(half.size() == 1);
    CHECK(sdpsolve::feasibility_margin(half, vec({1})).margin > 0.5);
    CHECK(sdpsolve::feasibility_margin(half, vec({-1})).margin == doctest::Approx(-1.0));
}

TEST_CASE("embed substitutes images and is size-additive") {
    SdpRepresentation host(2);
    host.embed(halfspace_rep(), {LinExpr::variable(0) + LinExpr::variable(1)});
    CHECK(host.size() == 1);
    // Strictly feasible but saturated by the t <= 1 normalization cap.
    CHECK(sdpsolve::feasibility_margin(host, vec({3, -1})).margin == doctest::Approx(1.0));
    CHECK(sdpsolve::feasibility_margin(host, vec({-3, 1})).margin == doctest::Approx(-2.0));

    // PSD(2) via the identity image grows the host by exactly 2.
    SdpRepresentation host2(3);
    const int before = host2.size();
    host2.embed(conelib::build_psd_deriv(2, 0), {LinExpr::variable(0), LinExpr::variable(1),
                                                 LinExpr::variable(2)});
    CHECK(host2.size() == before + 2);
}

TEST_CASE("membership never widens under embedding") {
    // Start from a halfspace in R^2, then cut with a second one.
    SdpRepresentation rep(2);
    rep.add_nonneg(LinExpr::variable(0));
    std::vector<VectorXd> points = {vec({1, 1}), vec({1, -2}), vec({-1, 1}), vec({2, -0.5})};
    std::vector<double> before;
    for (const auto& p : points) before.push_back(sdpsolve::feasibility_margin(rep, p).margin);
    rep.embed(halfspace_rep(), {LinExpr::variable(1)});
    for (size_t i = 0; i < points.size(); ++i) {
        const double after = sdpsolve::feasibility_margin(rep, points[i]).margin;
        CHECK(after <= before[i] + 1e-7);
    }
}

TEST_CASE("size accounting") {
    CHECK(conelib::build_psd_deriv(4, 0).size() == 4); // trivial PSD representation
    CHECK(lmi::new_representation(5).size() == 0);
    CHECK(conelib::build_schur_horn(4).size() == 25);
    CHECK(conelib::build_schur_horn(2).size() == 3);
    CHECK(conelib::build_schur_horn(1).size() == 1);
}

TEST_CASE("freeze_membership_problem") {
    auto half = halfspace_rep();
    const auto frozen = half.freeze_membership_problem(vec({1}));
    CHECK(frozen.var_count == 0);
    CHECK(frozen.nonneg.size() == 1);
    CHECK(frozen.nonneg[0].is_constant());
    CHECK(frozen.nonneg[0].constant() == doctest::Approx(1.0));

    // Boundary of orthant(3,1) at (2,2,-1): e_2 = 0.
    const auto rep = conelib::build_orthant(3, 1);
    const auto fr = sdpsolve::feasibility_margin(rep, vec({2, 2, -1}));
    CHECK(std::abs(fr.margin) <= 1e-6);

    SdpRepresentation proj(1, SdpRepresentation::Form::Projection);
    const int t = proj.new_aux();
    proj.add_nonneg(LinExpr::variable(t));
    proj.set_output_map({LinExpr::variable(t)});
    CHECK_THROWS_AS(proj.freeze_membership_problem(vec({1})), unsupported_form_error);
}

TEST_CASE("SDPA text export") {
    sdpsolve::SdpProblem empty;
    empty.var_count = 0;
    CHECK(sdpa::write_sdpa(empty) == "0\n0\n\n\n");

    sdpsolve::SdpProblem one;
    one.var_count = 1;
    one.objective = LinExpr::variable(0);
    AffineMatrixMap blk(2);
    blk.add_const(0, 0, 1.0);
    blk.add_coeff(0, 0, 1, 2.0);
    one.psd_blocks.push_back(blk);
    const std::string text = sdpa::write_sdpa(one);
    CHECK(text == "1\n1\n2\n1\n0 1 1 1 -1\n1 1 1 2 2\n");

    // Reading back preserves the data exactly.
    const auto back = sdpa::read_sdpa(text);
    CHECK(sdpa::write_sdpa(back) == text);
}

TEST_CASE("representation JSON round-trip") {
    const auto res = verify::lmi_suite(42);
    CHECK(res.passed);

    const auto rep = conelib::build_psd_deriv(3, 1);
    const auto back = lmi::from_json(lmi::to_json(rep));
    CHECK(rep.structurally_equal(back));

    const auto dual = conelib::build_orthant_dual(3, 1);
    const auto dual_back = lmi::from_json(lmi::to_json(dual));
    CHECK(dual.structurally_equal(dual_back));
}
