#include "hypcone/verify.hpp"

#include <algorithm>
#include <cmath>

#include "hypcone/lmi.hpp"
#include "hypcone/oracle.hpp"
#include "hypcone/sdpsolve.hpp"

namespace hypcone::verify {

using symlin::SymMatrix;

VectorXd random_vector(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = dist(rng);
    return v;
}

MatrixXd random_orthogonal(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    const Eigen::HouseholderQR<MatrixXd> qr(g);
    MatrixXd q = qr.householderQ();
    // Fix the sign convention so the sample is deterministic.
    const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
        if (r(i, i) < 0) q.col(i) = -q.col(i);
    return q;
}

MatrixXd gram_schmidt_complement(int n) {
    // Orthonormalize {e_2 - e_1, ..., e_n - e_1}, all orthogonal to nothing a
    // priori but spanning the complement of 1_n after projection.
    MatrixXd v(n, n - 1);
    const VectorXd ones = VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    for (int c = 0; c < n - 1; ++c) {
        VectorXd w = VectorXd::Zero(n);
        w(c + 1) = 1.0;
        w -= w.dot(ones) * ones;
        for (int p = 0; p < c; ++p) w -= w.dot(v.col(p)) * v.col(p);
        v.col(c) = w / w.norm();
    }
    return v;
}

SuiteResult main_identity_suite(std::uint64_t seed, int n_lo, int n_hi, int count,
                                ElemSymFn elem_sym) {
    if (!elem_sym)
        elem_sym = [](const VectorXd& x, int k) { return symlin::elem_sym(x, k); };
    SuiteResult res;
    res.name = "main-identity";
    std::mt19937_64 rng(seed);
    for (int n = std::max(2, n_lo); n <= n_hi; ++n) {
        const MatrixXd v = symlin::complement_basis(n).V;
        for (int c = 0; c < count; ++c) {
            const VectorXd x = random_vector(rng, n);
            const double t = random_vector(rng, 1)(0);
            const VectorXd shifted = x.array() + t;
            const double lhs = elem_sym(shifted, n - 1);
            const MatrixXd inner =
                v.transpose() * x.asDiagonal() * v + t * MatrixXd::Identity(n - 1, n - 1);
            const double rhs = n * inner.determinant();
            const double err = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
            res.worst = std::max(res.worst, err);
            ++res.checks;
        }
    }
    res.passed = res.worst <= 1e-8;
    return res;
}

SuiteResult polar_identity_suite(std::uint64_t seed, int n_lo, int n_hi, int count) {
    SuiteResult res;
    res.name = "polar-identity";
    std::mt19937_64 rng(seed);
    for (int n = std::max(2, n_lo); n <= n_hi; ++n) {
        int done = 0;
        while (done < count) {
            const VectorXd x = random_vector(rng, n);
            if (std::abs(x.sum()) < 1e-3) continue; // identity requires e_1(x) != 0
            ++done;
            for (int k = 0; k <= n - 1; ++k) {
                const double err = oracle::check_polar_identity(x, k);
                res.worst = std::max(res.worst, err);
                ++res.checks;
            }
        }
    }
    res.passed = res.worst <= 1e-8;
    return res;
}

SuiteResult symlin_suite(std::uint64_t seed, int n_hi) {
    SuiteResult res;
    res.name = "symlin";
    std::mt19937_64 rng(seed);
    for (int n = 2; n <= n_hi; ++n) {
        const MatrixXd v = symlin::complement_basis(n).V;
        const MatrixXd v2 = gram_schmidt_complement(n);
        for (int c = 0; c < 100; ++c) {
            const VectorXd x = random_vector(rng, n);
            // charpoly on a diagonal matrix reproduces elem_sym.
            const VectorXd ec = symlin::charpoly_coeffs(SymMatrix::diagonal(x));
            const VectorXd es = symlin::elem_sym_all(x);
            for (int k = 1; k <= n; ++k) {
                const double err = std::abs(ec(k - 1) - es(k)) / (1.0 + std::abs(es(k)));
                res.worst = std::max(res.worst, err);
                ++res.checks;
            }
            // Permutation invariance of the recurrence.
            VectorXd xp = x.reverse();
            res.worst = std::max(res.worst,
                                 std::abs(symlin::elem_sym(x, n / 2 + 1 > n ? n : n / 2 + 1) -
                                          symlin::elem_sym(xp, n / 2 + 1 > n ? n : n / 2 + 1)));
            ++res.checks;
            // Basis independence of det(V^T diag(x) V).
            const double d1 = (v.transpose() * x.asDiagonal() * v).determinant();
            const double d2 = (v2.transpose() * x.asDiagonal() * v2).determinant();
            res.worst = std::max(res.worst, std::abs(d1 - d2) / (1.0 + std::abs(d1)));
            ++res.checks;
        }
    }
    res.passed = res.worst <= 1e-8;
    return res;
}

SuiteResult oracle_suite(std::uint64_t seed, int n_hi) {
    SuiteResult res;
    res.name = "oracle";
    std::mt19937_64 rng(seed);
    for (int n = 2; n <= n_hi; ++n) {
        for (int c = 0; c < 50; ++c) {
            const VectorXd x = random_vector(rng, n);
            const MatrixXd q = random_orthogonal(rng, n);
            const SymMatrix xd = SymMatrix::diagonal(x);
            const SymMatrix xc = SymMatrix::from_full(q * x.asDiagonal() * q.transpose(), 1e-9);
            for (int k = 0; k <= n; ++k) {
                const auto vo = oracle::orthant_margin(x, k);
                const auto vd = oracle::psd_deriv_margin(xd, k);
                const auto vc = oracle::psd_deriv_margin(xc, k);
                if (k < n) {
                    res.worst = std::max(res.worst, std::abs(vo.margin - vd.margin));
                    res.worst = std::max(res.worst, std::abs(vo.margin - vc.margin));
                }
                res.checks += 2;
            }
            // lambda(X) always majorizes itself.
            if (!oracle::majorization_check(xc, symlin::eigvals_sym(xc))) {
                res.worst = std::max(res.worst, 1.0);
                res.note = "majorization identity failed";
            }
            ++res.checks;
        }
    }
    res.passed = res.worst <= 1e-8;
    return res;
}

namespace {

lmi::SdpRepresentation random_representation(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> small(0, 3);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    const int primal = small(rng) + 1;
    const bool projection = small(rng) == 0;
    lmi::SdpRepresentation rep(primal, projection ? lmi::SdpRepresentation::Form::Projection
                                                  : lmi::SdpRepresentation::Form::Slice);
    const int aux = small(rng) + (projection ? 1 : 0);
    rep.new_aux_block(aux);
    const int vars = rep.var_count();
    const int nblocks = small(rng);
    for (int b = 0; b < nblocks; ++b) {
        const int dim = small(rng) + 1;
        lmi::AffineMatrixMap blk(dim);
        for (int e = 0; e < 4; ++e) {
            const int i = std::uniform_int_distribution<int>(0, dim - 1)(rng);
            const int j = std::uniform_int_distribution<int>(0, dim - 1)(rng);
            blk.add_const(std::min(i, j), std::max(i, j), val(rng));
            if (vars > 0) {
                const int v = std::uniform_int_distribution<int>(0, vars - 1)(rng);
                blk.add_coeff(v, std::min(i, j), std::max(i, j), val(rng));
            }
        }
        rep.add_psd_block(std::move(blk));
    }
    for (int s = small(rng); s > 0 && vars > 0; --s) {
        lmi::LinExpr e(val(rng));
        e.add_term(std::uniform_int_distribution<int>(0, vars - 1)(rng), val(rng));
        rep.add_nonneg(std::move(e));
    }
    for (int s = small(rng) / 2; s > 0 && vars > 0; --s) {
        lmi::LinExpr e(val(rng));
        e.add_term(std::uniform_int_distribution<int>(0, vars - 1)(rng), val(rng));
        rep.add_equality(std::move(e));
    }
    if (projection) {
        std::vector<lmi::LinExpr> out(primal);
        for (auto& e : out) {
            e = lmi::LinExpr(val(rng));
            if (vars > 0) e.add_term(std::uniform_int_distribution<int>(0, vars - 1)(rng), val(rng));
        }
        rep.set_output_map(std::move(out));
    }
    return rep;
}

} // namespace

SuiteResult lmi_suite(std::uint64_t seed) {
    SuiteResult res;
    res.name = "lmi";
    std::mt19937_64 rng(seed);
    for (int c = 0; c < 100; ++c) {
        const auto rep = random_representation(rng);
        const auto back = lmi::from_json(lmi::to_json(rep));
        if (!rep.structurally_equal(back)) {
            res.worst = 1.0;
            res.note = "JSON round-trip mismatch";
        }
        ++res.checks;
    }
    // Size additivity under embedding.
    for (int c = 0; c < 50; ++c) {
        auto host = random_representation(rng);
        while (!host.is_slice_form()) host = random_representation(rng);
        const auto cone = random_representation(rng);
        const int before = host.size();
        std::vector<lmi::LinExpr> image(cone.primal_dim());
        for (auto& e : image) {
            e = lmi::LinExpr(0.5);
            if (host.var_count() > 0)
                e.add_term(std::uniform_int_distribution<int>(0, host.var_count() - 1)(rng), 1.0);
        }
        host.embed(cone, image);
        if (host.size() != before + cone.size()) {
            res.worst = 1.0;
            res.note = "embed size not additive";
        }
        ++res.checks;
    }
    res.passed = res.worst == 0.0;
    return res;
}

SuiteResult solver_suite(std::uint64_t seed) {
    SuiteResult res;
    res.name = "solver";
    std::mt19937_64 rng(seed);
    for (int n : {2, 4, 6}) {
        for (int c = 0; c < 3; ++c) {
            MatrixXd g(n, n);
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
            const SymMatrix cm = SymMatrix::from_full(0.5 * (g + g.transpose()), 1e-9);

            sdpsolve::SdpProblem p;
            p.var_count = symlin::sym_vec_dim(n);
            lmi::AffineMatrixMap psd(n);
            lmi::LinExpr tr(-1.0);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    const int v = symlin::sym_vec_index(n, i, j);
                    psd.add_coeff(v, i, j, 1.0);
                    p.objective.add_term(v, (i == j ? 1.0 : 2.0) * cm(i, j));
                    if (i == j) tr.add_term(v, 1.0);
                }
            p.psd_blocks.push_back(std::move(psd));
            p.equalities.push_back(std::move(tr));
            const auto rep_solve = sdpsolve::solve(p);
            const double lmin = symlin::eigvals_sym(cm)(n - 1);
            res.worst = std::max(res.worst, std::abs(rep_solve.objective_value - lmin));
            ++res.checks;
        }
    }
    res.passed = res.worst <= 1e-7;
    return res;
}

std::vector<SuiteResult> run_all(std::uint64_t seed, int n_hi) {
    std::vector<SuiteResult> all;
    all.push_back(main_identity_suite(seed, 2, n_hi, 200));
    all.push_back(polar_identity_suite(seed + 1, 2, n_hi, 200));
    all.push_back(symlin_suite(seed + 2, n_hi));
    all.push_back(oracle_suite(seed + 3, std::min(n_hi, 6)));
    all.push_back(lmi_suite(seed + 4));
    all.push_back(solver_suite(seed + 5));
    return all;
}

} // namespace hypcone::verify
