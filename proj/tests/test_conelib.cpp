#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypcone/conelib.hpp"
#include "hypcone/membership.hpp"
#include "hypcone/oracle.hpp"
#include "hypcone/sdpsolve.hpp"
#include "hypcone/verify.hpp"
#include "three_ellipse.hpp"

using namespace hypcone;
using conelib::ConeSpec;
using conelib::Strategy;
using symlin::SymMatrix;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec3(double a, double b, double c) {
    VectorXd v(3);
    v << a, b, c;
    return v;
}

double rep_margin(const lmi::SdpRepresentation& rep, const VectorXd& pt) {
    return sdpsolve::feasibility_margin(rep, pt).margin;
}

// Points spread across In/Out for the orthant relaxations.
VectorXd sample_point(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    VectorXd x = verify::random_vector(rng, n);
    if (u(rng) < 0.5) x = x.cwiseAbs() + 0.2 * verify::random_vector(rng, n);
    return x;
}

} // namespace

TEST_CASE("orthant base cases") {
    const auto free3 = conelib::build_orthant(3, 3);
    CHECK(free3.size() == 0);
    CHECK(rep_margin(free3, vec3(-5, 2, 0)) == doctest::Approx(1.0).epsilon(1e-6));

    const auto orth = conelib::build_orthant(3, 0);
    CHECK(orth.size() == 3);
    CHECK(rep_margin(orth, vec3(1, 1, 1)) > 0.5);
    CHECK(rep_margin(orth, vec3(-1, 1, 1)) < -0.5);

    // n = 1 degenerates before any recursion.
    CHECK(conelib::build_orthant(1, 0).size() == 1);
    CHECK(conelib::build_orthant(1, 1).size() == 0);
}

TEST_CASE("orthant(3,1) slice membership matches the oracle examples") {
    for (auto s : {Strategy::DerivativeBased, Strategy::PolarBased, Strategy::Auto}) {
        const auto rep = conelib::build_orthant(3, 1, s);
        CHECK(std::abs(rep_margin(rep, vec3(2, 2, -1))) <= 1e-6); // e_2 = 0
        CHECK(rep_margin(rep, vec3(1, 1, -1)) < -1e-4);           // e_2 = -1
        CHECK(rep_margin(rep, vec3(1, 1, 1)) > 1e-3);
    }
}

TEST_CASE("polar strategy rejects k = n-1") {
    CHECK_THROWS_AS(conelib::build_orthant(4, 3, Strategy::PolarBased), strategy_error);
    // Auto falls back to the derivative chain there.
    CHECK(conelib::build_orthant(4, 3, Strategy::Auto).size() > 0);
}

TEST_CASE("psd_deriv base cases") {
    // k = n-1 with the polar chain is the half-space tr X >= 0.
    const auto half = conelib::build_psd_deriv(2, 1, Strategy::PolarBased);
    CHECK(half.size() == 1);
    VectorXd feas = symlin::sym_to_vec(SymMatrix::diagonal((VectorXd(2) << 1, -0.5).finished()));
    VectorXd infeas = symlin::sym_to_vec(SymMatrix::from_upper(-MatrixXd::Identity(2, 2)));
    CHECK(rep_margin(half, feas) > 1e-3);
    CHECK(rep_margin(half, infeas) < -1e-3);

    // Auto picks the polar base case at k = n-1.
    CHECK(conelib::build_psd_deriv(3, 2).size() == 1);

    CHECK(conelib::build_psd_deriv(3, 3).size() == 0);
    CHECK(conelib::build_psd_deriv(3, 0).size() == 3);
}

TEST_CASE("psd_deriv(3,1) membership and rotation invariance") {
    std::mt19937_64 rng(3);
    for (auto s : {Strategy::DerivativeBased, Strategy::PolarBased}) {
        const auto rep = conelib::build_psd_deriv(3, 1, s);

        const SymMatrix border = SymMatrix::diagonal(vec3(2, 2, -1));
        CHECK(std::abs(rep_margin(rep, symlin::sym_to_vec(border))) <= 1e-6);

        const SymMatrix outside = SymMatrix::diagonal(vec3(1, 1, -1));
        CHECK(rep_margin(rep, symlin::sym_to_vec(outside)) < -1e-4);

        for (int trial = 0; trial < 5; ++trial) {
            const MatrixXd q = verify::random_orthogonal(rng, 3);
            const VectorXd lam = verify::random_vector(rng, 3);
            const SymMatrix x = SymMatrix::from_full(q * lam.asDiagonal() * q.transpose(), 1e-9);
            const double m1 = rep_margin(rep, symlin::sym_to_vec(x));
            const double m2 = rep_margin(rep, symlin::sym_to_vec(SymMatrix::diagonal(lam)));
            const auto omrg = oracle::psd_deriv_margin(x, 1);
            if (std::abs(omrg.margin) < 1e-5) continue;
            CHECK((m1 > 0) == (omrg.margin > 0));
            CHECK((m2 > 0) == (omrg.margin > 0));
            CHECK(m1 == doctest::Approx(m2).epsilon(5e-4));
        }
    }
}

TEST_CASE("schur_horn membership") {
    const auto sh = conelib::build_schur_horn(2);
    auto pack = [](const SymMatrix& x, const VectorXd& z) {
        VectorXd v(symlin::sym_vec_dim(x.dim()) + z.size());
        v << symlin::sym_to_vec(x), z;
        return v;
    };
    const SymMatrix d31 = SymMatrix::diagonal((VectorXd(2) << 3, 1).finished());
    CHECK(rep_margin(sh, pack(d31, (VectorXd(2) << 3, 1).finished())) >= -1e-7);

    // Eigenvalues (2,2) are majorized by z = (3,1).
    const SymMatrix d22 = SymMatrix::diagonal((VectorXd(2) << 2, 2).finished());
    CHECK(rep_margin(sh, pack(d22, (VectorXd(2) << 3, 1).finished())) >= -1e-7);

    // z not weakly decreasing.
    CHECK(rep_margin(sh, pack(d31, (VectorXd(2) << 1, 3).finished())) < -1e-3);

    // Majorization oracle agrees on random points.
    std::mt19937_64 rng(7);
    const auto sh3 = conelib::build_schur_horn(3);
    for (int trial = 0; trial < 20; ++trial) {
        const MatrixXd q = verify::random_orthogonal(rng, 3);
        const VectorXd lam = verify::random_vector(rng, 3);
        const SymMatrix x = SymMatrix::from_full(q * lam.asDiagonal() * q.transpose(), 1e-9);
        const VectorXd z = verify::random_vector(rng, 3);
        VectorXd v(symlin::sym_vec_dim(3) + 3);
        v << symlin::sym_to_vec(x), z;
        const double margin = rep_margin(sh3, v);
        const bool oracle_in = oracle::majorization_check(x, z);
        if (std::abs(margin) < 1e-6) continue;
        CHECK((margin > 0) == oracle_in);
    }
}

TEST_CASE("frozen size examples from the recursion arithmetic") {
    CHECK(conelib::build_orthant(4, 1, Strategy::DerivativeBased).size() == 3);
    CHECK(conelib::build_psd_deriv(4, 1, Strategy::DerivativeBased).size() == 28); // 25 + 3

    const auto rows = conelib::size_report(ConeSpec::orthant(4, 1, Strategy::DerivativeBased));
    REQUIRE(!rows.empty());
    CHECK(rows.back().cone == "psd_deriv(3,0)");
    CHECK(rows.back().added == 3);
    CHECK(rows.back().cumulative == 3);

    // Polar is small exactly where the derivative chain is large.
    const int deriv65 = conelib::build_psd_deriv(6, 5, Strategy::DerivativeBased).size();
    const int polar65 = conelib::build_psd_deriv(6, 5, Strategy::PolarBased).size();
    CHECK(polar65 == 1);
    CHECK(deriv65 > 100);
}

TEST_CASE("size_report totals equal built sizes") {
    for (int n = 1; n <= 7; ++n)
        for (int k = 0; k <= n; ++k)
            for (auto s : {Strategy::DerivativeBased, Strategy::PolarBased, Strategy::Auto}) {
                if (s == Strategy::PolarBased && k == n - 1 && k != 0 && k != n) continue;
                const auto spec = ConeSpec::orthant(n, k, s);
                const auto rows = conelib::size_report(spec);
                CHECK(rows.back().cumulative == conelib::build(spec).size());

                const auto pspec = ConeSpec::psd_deriv(n, k, s);
                const auto prows = conelib::size_report(pspec);
                CHECK(prows.back().cumulative == conelib::build(pspec).size());

                const auto dspec = ConeSpec::dual_of(ConeSpec::orthant(n, k, s));
                CHECK(conelib::size_report(dspec).back().cumulative ==
                      conelib::build(dspec).size());

                const auto pdspec = ConeSpec::dual_of(ConeSpec::psd_deriv(n, k, s));
                CHECK(conelib::size_report(pdspec).back().cumulative ==
                      conelib::build(pdspec).size());
            }
    for (int n = 2; n <= 6; ++n) {
        for (int k : {n - 2, n - 3}) {
            if (k < 0) continue;
            const auto spec = ConeSpec::orthant(n, k, Strategy::SocSimplified);
            CHECK(conelib::size_report(spec).back().cumulative == conelib::build(spec).size());
            const auto pspec = ConeSpec::psd_deriv(n, k, Strategy::SocSimplified);
            CHECK(conelib::size_report(pspec).back().cumulative == conelib::build(pspec).size());
        }
    }
    const auto espec = ConeSpec::spectrahedral(three_ellipse_pencil(), 2);
    CHECK(conelib::size_report(espec).back().cumulative == conelib::build(espec).size());
}

TEST_CASE("second-order-cone variants") {
    // n=3, k=1: boundary at (2,2,-1) since e_1^2 - |x|^2 = 2 e_2 = 0.
    const auto soc = conelib::build_soc_orthant(3, 1);
    CHECK(std::abs(rep_margin(soc, vec3(2, 2, -1))) <= 1e-6);
    CHECK(rep_margin(soc, VectorXd::Ones(3)) > 1e-2);

    CHECK_THROWS_AS(conelib::build_soc_orthant(5, 1), strategy_error);

    std::mt19937_64 rng(11);
    for (int n : {3, 4, 5}) {
        const auto arrow = conelib::build_soc_orthant(n, n - 2);
        const auto plain = conelib::build_orthant(n, n - 2);
        const auto socz = conelib::build_soc_orthant(n, n - 3);
        const auto plainz = conelib::build_orthant(n, n - 3);
        for (int trial = 0; trial < 25; ++trial) {
            const VectorXd x = sample_point(rng, n);
            const auto v2 = oracle::orthant_margin(x, n - 2);
            if (std::abs(v2.margin) > 1e-5) {
                CHECK((rep_margin(arrow, x) > 0) == (v2.margin > 0));
                CHECK((rep_margin(plain, x) > 0) == (v2.margin > 0));
            }
            const auto v3 = oracle::orthant_margin(x, n - 3);
            if (std::abs(v3.margin) > 1e-5) {
                CHECK((rep_margin(socz, x) > 0) == (v3.margin > 0));
                CHECK((rep_margin(plainz, x) > 0) == (v3.margin > 0));
            }
        }
    }
}

TEST_CASE("strategy equivalence on random points") {
    std::mt19937_64 rng(13);
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k <= n - 1; ++k) {
            const auto deriv = conelib::build_orthant(n, k, Strategy::DerivativeBased);
            const bool has_polar = k <= n - 2;
            const auto polar = has_polar ? conelib::build_orthant(n, k, Strategy::PolarBased)
                                         : conelib::build_orthant(n, k);
            for (int trial = 0; trial < 12; ++trial) {
                const VectorXd x = sample_point(rng, n);
                const auto om = oracle::orthant_margin(x, k);
                if (std::abs(om.margin) < 1e-5) continue;
                const double md = rep_margin(deriv, x);
                if (std::abs(md) < 1e-7) continue;
                CHECK((md > 0) == (om.margin > 0));
                if (has_polar) {
                    const double mp = rep_margin(polar, x);
                    if (std::abs(mp) < 1e-7) continue;
                    CHECK((mp > 0) == (om.margin > 0));
                }
            }
        }
}

TEST_CASE("nesting of the derivative relaxations") {
    std::mt19937_64 rng(17);
    for (int n : {3, 4, 5}) {
        std::vector<lmi::SdpRepresentation> reps;
        for (int k = 0; k <= n; ++k) reps.push_back(conelib::build_orthant(n, k));
        int checked = 0;
        while (checked < 10) {
            const VectorXd x = sample_point(rng, n);
            for (int k = 0; k < n; ++k) {
                const auto om = oracle::orthant_margin(x, k);
                if (om.margin <= 1e-5) continue;
                ++checked;
                CHECK(rep_margin(reps[k + 1], x) > -1e-7); // member of the looser cone
            }
        }
    }
}

TEST_CASE("diagonal slice law: orthant vs psd_deriv") {
    std::mt19937_64 rng(19);
    for (int n : {2, 3, 4}) {
        for (int k = 0; k <= n - 1; ++k) {
            const auto orep = conelib::build_orthant(n, k);
            const auto prep = conelib::build_psd_deriv(n, k);
            for (int trial = 0; trial < 8; ++trial) {
                const VectorXd z = sample_point(rng, n);
                const auto om = oracle::orthant_margin(z, k);
                if (std::abs(om.margin) < 1e-5) continue;
                const double mo = rep_margin(orep, z);
                const double mp = rep_margin(prep, symlin::sym_to_vec(SymMatrix::diagonal(z)));
                if (std::abs(mo) < 1e-7 || std::abs(mp) < 1e-7) continue;
                CHECK((mo > 0) == (mp > 0));
                CHECK((mo > 0) == (om.margin > 0));
            }
        }
    }
}

TEST_CASE("spectrahedral relaxations") {
    // A diagonal pencil reproduces the orthant cone.
    conelib::Pencil diag;
    diag.m = 3;
    for (int i = 0; i < 3; ++i) {
        SymMatrix e(3);
        e.set(i, i, 1.0);
        diag.A.push_back(e);
    }
    diag.e = VectorXd::Ones(3);
    const auto rep = conelib::build_spectrahedral_deriv(diag, 1);
    const auto orep = conelib::build_orthant(3, 1);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const VectorXd x = sample_point(rng, 3);
        const auto om = oracle::orthant_margin(x, 1);
        if (std::abs(om.margin) < 1e-5) continue;
        CHECK((rep_margin(rep, x) > 0) == (om.margin > 0));
        CHECK((rep_margin(orep, x) > 0) == (om.margin > 0));
    }

    // 3-ellipse: strictly inside at the hyperbolicity direction, boundary at
    // the focus (3,0).
    const auto pencil = three_ellipse_pencil();
    const auto erep = conelib::build_spectrahedral_deriv(pencil, 0);
    CHECK(rep_margin(erep, vec3(0, 0, 1)) > 1e-3);
    CHECK(std::abs(rep_margin(erep, vec3(3, 0, 1))) <= 1e-5);
    CHECK(rep_margin(erep, vec3(6, 0, 1)) < -1e-4);

    conelib::Pencil bad = pencil;
    bad.e = vec3(1, 0, 0);
    CHECK_THROWS_AS(conelib::build_spectrahedral_deriv(bad, 0), definiteness_error);
}

TEST_CASE("cone spec JSON round trip") {
    const auto spec = ConeSpec::dual_of(ConeSpec::psd_deriv(4, 2, Strategy::PolarBased));
    const auto back = conelib::spec_from_json(conelib::spec_to_json(spec));
    CHECK(back.kind == ConeSpec::Kind::Dual);
    CHECK(back.inner->n == 4);
    CHECK(back.inner->k == 2);
    CHECK(back.inner->strategy == Strategy::PolarBased);

    const auto espec = ConeSpec::spectrahedral(three_ellipse_pencil(), 1);
    const auto eback = conelib::spec_from_json(conelib::spec_to_json(espec));
    CHECK(eback.pencil->m == 8);
    CHECK((eback.pencil->A[2].mat() - espec.pencil->A[2].mat()).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(conelib::spec_from_json(R"({"kind":"orthant","n":3,"k":7})"),
                    argument_error);
}
