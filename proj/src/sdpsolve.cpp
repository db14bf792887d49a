#include "hypcone/sdpsolve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace hypcone::sdpsolve {

using Eigen::MatrixXd;

const char* status_name(Status s) {
    switch (s) {
        case Status::Optimal: return "Optimal";
        case Status::Infeasible: return "Infeasible";
        case Status::Unbounded: return "Unbounded";
        case Status::MaxIter: return "MaxIter";
        case Status::NumericalTrouble: return "NumericalTrouble";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Block {
    int dim = 0;
    MatrixXd C;
    // (variable, upper-triangle entries) pairs, sorted by variable.
    std::vector<std::pair<int, std::vector<lmi::Entry>>> coeffs;

    MatrixXd coeff_dense(int which) const {
        MatrixXd a = MatrixXd::Zero(dim, dim);
        for (const auto& e : coeffs[which].second) {
            a(e.i, e.j) += e.value;
            if (e.i != e.j) a(e.j, e.i) += e.value;
        }
        return a;
    }

    double inner_with_coeff(int which, const MatrixXd& t) const {
        double s = 0.0;
        for (const auto& e : coeffs[which].second)
            s += e.value * (e.i == e.j ? t(e.i, e.i) : t(e.i, e.j) + t(e.j, e.i));
        return s;
    }

    MatrixXd eval(const VectorXd& y) const {
        MatrixXd m = C;
        for (size_t q = 0; q < coeffs.size(); ++q) {
            const double yv = y(coeffs[q].first);
            for (const auto& e : coeffs[q].second) {
                m(e.i, e.j) += yv * e.value;
                if (e.i != e.j) m(e.j, e.i) += yv * e.value;
            }
        }
        return m;
    }
};

struct SymEig {
    VectorXd lam;
    MatrixXd q;
};

SymEig eig(const MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw numerical_error("sdpsolve: eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

MatrixXd spectral_pow(const SymEig& e, double p) {
    VectorXd d(e.lam.size());
    for (int i = 0; i < d.size(); ++i) {
        if (e.lam(i) <= 0.0) throw numerical_error("sdpsolve: iterate left the cone");
        d(i) = std::pow(e.lam(i), p);
    }
    return e.q * d.asDiagonal() * e.q.transpose();
}

// Largest alpha with P + alpha*D >= 0, via L^{-1} D L^{-T} with P = L L^T.
double max_step(const MatrixXd& p, const MatrixXd& d) {
    const int n = static_cast<int>(p.rows());
    if (n == 1) {
        if (d(0, 0) >= 0.0) return kInf;
        return p(0, 0) > 0.0 ? -p(0, 0) / d(0, 0) : 0.0;
    }
    Eigen::LLT<MatrixXd> llt(p);
    MatrixXd y;
    if (llt.info() == Eigen::Success) {
        MatrixXd a = llt.matrixL().solve(d);
        y = llt.matrixL().solve(a.transpose()).transpose();
    } else {
        const SymEig pe = eig(p);
        const MatrixXd pinvh = spectral_pow(pe, -0.5);
        y = pinvh * d * pinvh;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (y + y.transpose()),
                                               Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    return lmin >= 0.0 ? kInf : -1.0 / lmin;
}

// Solves (V U + U V)/2 = B for U given the eigendecomposition of V.
MatrixXd lyapunov_solve(const SymEig& v, const MatrixXd& b) {
    MatrixXd bt = v.q.transpose() * b * v.q;
    for (int i = 0; i < bt.rows(); ++i)
        for (int j = 0; j < bt.cols(); ++j)
            bt(i, j) *= 2.0 / (v.lam(i) + v.lam(j));
    return v.q * bt * v.q.transpose();
}

struct Workspace {
    int n_vars = 0;
    VectorXd c;
    double c0 = 0.0;
    bool negated = false;
    std::vector<Block> blocks;
    MatrixXd E; // p x n
    VectorXd d; // p
};

Workspace build_workspace(const SdpProblem& p) {
    if (p.var_count < 0) throw argument_error("solve: negative variable count");
    Workspace w;
    w.n_vars = p.var_count;
    w.c = VectorXd::Zero(p.var_count);
    w.c0 = p.objective.constant();
    auto check_var = [&](int v) {
        if (v >= p.var_count)
            throw argument_error("solve: constraint references variable beyond var_count");
    };
    for (const auto& [v, coef] : p.objective.terms()) {
        check_var(v);
        w.c(v) = coef;
    }
    if (p.sense == Sense::Max) {
        w.c = -w.c;
        w.c0 = -w.c0;
        w.negated = true;
    }
    auto add_block = [&](int dim, const MatrixXd& cmat,
                         std::vector<std::pair<int, std::vector<lmi::Entry>>> coeffs) {
        for (const auto& [v, entries] : coeffs) check_var(v);
        w.blocks.push_back(Block{dim, cmat, std::move(coeffs)});
    };
    for (const auto& b : p.psd_blocks)
        add_block(b.dim(), b.const_block().mat(), b.coeffs());
    for (const auto& e : p.nonneg) {
        MatrixXd cmat(1, 1);
        cmat(0, 0) = e.constant();
        std::vector<std::pair<int, std::vector<lmi::Entry>>> coeffs;
        for (const auto& [v, coef] : e.terms())
            coeffs.push_back({v, {lmi::Entry{0, 0, coef}}});
        add_block(1, cmat, std::move(coeffs));
    }
    const int p_eq = static_cast<int>(p.equalities.size());
    w.E = MatrixXd::Zero(p_eq, p.var_count);
    w.d = VectorXd::Zero(p_eq);
    for (int r = 0; r < p_eq; ++r) {
        for (const auto& [v, coef] : p.equalities[r].terms()) {
            check_var(v);
            w.E(r, v) = coef;
        }
        w.d(r) = -p.equalities[r].constant();
    }
    return w;
}

// Pure linear problem (no cone blocks): minimize c^T y s.t. E y = d.
SolveReport solve_linear_only(const Workspace& w, const SolverConfig&) {
    SolveReport rep;
    rep.primal_point = VectorXd::Zero(w.n_vars);
    if (w.E.rows() == 0) {
        if (w.c.norm() == 0.0) {
            rep.status = Status::Optimal;
        } else {
            rep.status = Status::Unbounded;
            rep.primal_point = -w.c * 1e12; // a descent direction scaled far out
        }
    } else {
        Eigen::ColPivHouseholderQR<MatrixXd> qr(w.E);
        const VectorXd y = qr.solve(w.d);
        if ((w.E * y - w.d).norm() > 1e-8 * (1.0 + w.d.norm())) {
            rep.status = Status::Infeasible;
        } else {
            // Optimal iff c lies in the row space of E.
            Eigen::ColPivHouseholderQR<MatrixXd> qrt(w.E.transpose());
            const VectorXd nu = qrt.solve(w.c);
            if ((w.E.transpose() * nu - w.c).norm() > 1e-8 * (1.0 + w.c.norm())) {
                rep.status = Status::Unbounded;
            } else {
                rep.status = Status::Optimal;
            }
            rep.primal_point = y;
        }
    }
    const double val = w.c.dot(rep.primal_point) + w.c0;
    rep.objective_value = w.negated ? -val : val;
    return rep;
}

} // namespace

SolveReport solve(const SdpProblem& problem, const SolverConfig& config) {
    Workspace w = build_workspace(problem);
    const int n = w.n_vars;
    const int p = static_cast<int>(w.E.rows());
    const int nb = static_cast<int>(w.blocks.size());

    if (n == 0 || nb == 0) {
        // No variables: evaluate constants. No blocks: linear program over
        // equalities only.
        if (n == 0) {
            SolveReport rep;
            rep.primal_point = VectorXd::Zero(0);
            bool feas = true;
            for (const auto& b : w.blocks) {
                Eigen::SelfAdjointEigenSolver<MatrixXd> es(b.C, Eigen::EigenvaluesOnly);
                if (es.eigenvalues().minCoeff() < -1e-10) feas = false;
            }
            for (int r = 0; r < p; ++r)
                if (std::abs(w.d(r)) > 1e-10) feas = false;
            rep.status = feas ? Status::Optimal : Status::Infeasible;
            rep.objective_value = w.negated ? -w.c0 : w.c0;
            return rep;
        }
        return solve_linear_only(w, config);
    }

    int n_total = 0;
    for (const auto& b : w.blocks) n_total += b.dim;

    // Iterates.
    VectorXd y = VectorXd::Zero(n);
    VectorXd nu = VectorXd::Zero(p);
    std::vector<MatrixXd> X(nb), S(nb);
    double c_scale = 1.0 + w.c.norm();
    double cmat_scale = 1.0;
    for (int b = 0; b < nb; ++b) {
        double tau = std::max(1.0, w.blocks[b].C.norm());
        for (size_t q = 0; q < w.blocks[b].coeffs.size(); ++q) {
            double fn = 0.0;
            for (const auto& e : w.blocks[b].coeffs[q].second)
                fn += e.value * e.value * (e.i == e.j ? 1.0 : 2.0);
            tau = std::max(tau, std::sqrt(fn));
        }
        X[b] = tau * MatrixXd::Identity(w.blocks[b].dim, w.blocks[b].dim);
        S[b] = X[b];
        cmat_scale += w.blocks[b].C.squaredNorm();
    }
    cmat_scale = std::sqrt(cmat_scale);
    const double d_scale = 1.0 + (p > 0 ? w.d.norm() : 0.0);

    SolveReport rep;
    rep.status = Status::MaxIter;
    double reg = config.reg_init;
    int stall_count = 0;
    double pobj0 = std::abs(w.c0) + 1.0;

    std::vector<MatrixXd> RS(nb), Wm(nb), Dm(nb), Dinv(nb), Sinv(nb);
    std::vector<SymEig> Veig(nb);
    std::vector<MatrixXd> dXa(nb), dSa(nb), dX(nb), dS(nb), Hrhs(nb);

    try {
        for (int iter = 0; iter < config.max_iter; ++iter) {
            // Residuals.
            VectorXd rd = w.c - w.E.transpose() * nu;
            for (int b = 0; b < nb; ++b) {
                const Block& blk = w.blocks[b];
                for (size_t q = 0; q < blk.coeffs.size(); ++q)
                    rd(blk.coeffs[q].first) -= blk.inner_with_coeff(static_cast<int>(q), X[b]);
            }
            VectorXd re = w.d - w.E * y;
            double rs_norm2 = 0.0;
            double gap = 0.0;
            double cx = 0.0;
            for (int b = 0; b < nb; ++b) {
                RS[b] = w.blocks[b].eval(y) - S[b];
                rs_norm2 += RS[b].squaredNorm();
                gap += (X[b].array() * S[b].array()).sum();
                cx += (w.blocks[b].C.array() * X[b].array()).sum();
            }
            const double mu = gap / n_total;
            const double pobj = w.c.dot(y) + w.c0;
            const double dobj = -cx + (p > 0 ? w.d.dot(nu) : 0.0) + w.c0;

            const double rel_rd = rd.norm() / c_scale;
            const double rel_re = p > 0 ? re.norm() / d_scale : 0.0;
            const double rel_rs = std::sqrt(rs_norm2) / (1.0 + cmat_scale);
            const double comp = std::abs(gap) / (1.0 + std::abs(pobj) + std::abs(dobj));

            rep.iterations = iter;
            rep.primal_point = y;
            rep.primal_residual = std::max(rel_rs, rel_re);
            rep.dual_residual = rel_rd;
            rep.complementarity = comp;
            rep.objective_value = w.negated ? -pobj : pobj;
            rep.mu_history.push_back(mu);

            if (config.verbose)
                std::fprintf(stderr, "it %3d  mu %.3e  rd %.3e  rs %.3e  re %.3e  gap %.3e  obj % .10e\n",
                             iter, mu, rel_rd, rel_rs, rel_re, comp, pobj);

            if (rel_rd <= config.tol_feas && rel_re <= config.tol_feas && rel_rs <= config.tol_feas &&
                comp <= config.tol_gap) {
                rep.status = Status::Optimal;
                return rep;
            }
            // Divergence heuristics; advisory classification.
            if (pobj < -config.unbounded_threshold * pobj0 && rel_rs < 1e-6 && rel_re < 1e-6) {
                rep.status = Status::Unbounded;
                return rep;
            }
            if (dobj > config.unbounded_threshold * pobj0 && rel_rd < 1e-6) {
                rep.status = Status::Infeasible;
                return rep;
            }

            // Nesterov-Todd scaling per block: W S W = X.
            bool scaling_ok = true;
            for (int b = 0; b < nb; ++b) {
                try {
                    const SymEig se = eig(S[b]);
                    const MatrixXd sh = spectral_pow(se, 0.5);
                    const MatrixXd sih = spectral_pow(se, -0.5);
                    Sinv[b] = spectral_pow(se, -1.0);
                    const SymEig ge = eig(sh * X[b] * sh);
                    Wm[b] = sih * spectral_pow(ge, 0.5) * sih;
                    const SymEig we = eig(0.5 * (Wm[b] + Wm[b].transpose()));
                    Dm[b] = spectral_pow(we, 0.5);
                    Dinv[b] = spectral_pow(we, -0.5);
                    Veig[b] = eig(Dm[b] * S[b] * Dm[b]);
            } catch (const numerical_error&) {
                scaling_ok = false;
            }
        }
        if (!scaling_ok) {
            rep.status = Status::NumericalTrouble;
            return rep;
        }

        // Schur complement of the Newton system.
        MatrixXd M = MatrixXd::Zero(n, n);
        for (int b = 0; b < nb; ++b) {
            const Block& blk = w.blocks[b];
            const int m = static_cast<int>(blk.coeffs.size());
            const int dim = blk.dim;
            for (int jq = 0; jq < m; ++jq) {
                // U = W A_j W, assembled from rank-one pieces of A_j.
                MatrixXd u = MatrixXd::Zero(dim, dim);
                for (const auto& e : blk.coeffs[jq].second) {
                    const auto wi = Wm[b].col(e.i);
                    const auto wj = Wm[b].col(e.j);
                    u.noalias() += e.value * (wi * wj.transpose());
                    if (e.i != e.j) u.noalias() += e.value * (wj * wi.transpose());
                }
                const int vj = blk.coeffs[jq].first;
                for (int iq = 0; iq <= jq; ++iq) {
                    const double mij = blk.inner_with_coeff(iq, u);
                    const int vi = blk.coeffs[iq].first;
                    M(vi, vj) += mij;
                    if (vi != vj) M(vj, vi) += mij;
                }
            }
        }
        double diag_scale = 1.0 + M.diagonal().cwiseAbs().maxCoeff();
        Eigen::LLT<MatrixXd> mllt;
        double delta = reg;
        for (int attempt = 0;; ++attempt) {
            MatrixXd Mreg = M;
            Mreg.diagonal().array() += delta * diag_scale;
            mllt.compute(Mreg);
            if (mllt.info() == Eigen::Success) break;
            delta = std::max(delta * 1e3, 1e-12);
            if (attempt >= 5) {
                rep.status = Status::NumericalTrouble;
                return rep;
            }
        }

        MatrixXd MinvEt;
        Eigen::LDLT<MatrixXd> sldlt;
        if (p > 0) {
            MinvEt = mllt.solve(w.E.transpose());
            MatrixXd snu = w.E * MinvEt;
            snu.diagonal().array() += delta * (1.0 + snu.diagonal().cwiseAbs().maxCoeff());
            sldlt.compute(snu);
            if (sldlt.info() != Eigen::Success) {
                rep.status = Status::NumericalTrouble;
                return rep;
            }
        }

        auto solve_newton = [&](VectorXd& dy, VectorXd& dnu) {
            // M dy - E^T dnu = g, E dy = re, with g stored in dy on entry.
            const VectorXd g = dy;
            VectorXd base = mllt.solve(g);
            if (p > 0) {
                dnu = sldlt.solve(re - w.E * base);
                dy = base + MinvEt * dnu;
            } else {
                dnu.resize(0);
                dy = base;
            }
            // One pass of iterative refinement on the saddle system.
            VectorXd r1 = g - M * dy;
            if (p > 0) r1 += w.E.transpose() * dnu;
            VectorXd e1 = mllt.solve(r1);
            if (p > 0) {
                const VectorXd r2 = re - w.E * dy;
                const VectorXd enu = sldlt.solve(r2 - w.E * e1);
                dy += e1 + MinvEt * enu;
                dnu += enu;
            } else {
                dy += e1;
            }
        };

        auto assemble_steps = [&](const VectorXd& dy, std::vector<MatrixXd>& dXv,
                                  std::vector<MatrixXd>& dSv) {
            for (int b = 0; b < nb; ++b) {
                const Block& blk = w.blocks[b];
                MatrixXd ds = RS[b];
                for (size_t q = 0; q < blk.coeffs.size(); ++q) {
                    const double dv = dy(blk.coeffs[q].first);
                    for (const auto& e : blk.coeffs[q].second) {
                        ds(e.i, e.j) += dv * e.value;
                        if (e.i != e.j) ds(e.j, e.i) += dv * e.value;
                    }
                }
                dSv[b] = ds;
                dXv[b] = Hrhs[b] - Wm[b] * ds * Wm[b];
                dXv[b] = 0.5 * (dXv[b] + dXv[b].transpose());
            }
        };

        auto rhs_vector = [&]() {
            VectorXd g = -rd;
            for (int b = 0; b < nb; ++b) {
                const Block& blk = w.blocks[b];
                const MatrixXd t = Hrhs[b] - Wm[b] * RS[b] * Wm[b];
                for (size_t q = 0; q < blk.coeffs.size(); ++q)
                    g(blk.coeffs[q].first) += blk.inner_with_coeff(static_cast<int>(q), t);
            }
            return g;
        };

        // Predictor.
        for (int b = 0; b < nb; ++b) Hrhs[b] = -X[b];
        VectorXd dy = rhs_vector();
        VectorXd dnu;
        solve_newton(dy, dnu);
        assemble_steps(dy, dXa, dSa);

        double ap = 1.0, ad = 1.0;
        for (int b = 0; b < nb; ++b) {
            ap = std::min(ap, max_step(X[b], dXa[b]));
            ad = std::min(ad, max_step(S[b], dSa[b]));
        }
        double gap_aff = 0.0;
        for (int b = 0; b < nb; ++b)
            gap_aff += ((X[b] + ap * dXa[b]).array() * (S[b] + ad * dSa[b]).array()).sum();
        gap_aff = std::max(gap_aff, 0.0);
        const double sigma = std::min(1.0, std::pow(gap_aff / std::max(gap, 1e-300), 3.0));

        // Corrector.
        for (int b = 0; b < nb; ++b) {
            const MatrixXd dxt = Dinv[b] * dXa[b] * Dinv[b];
            const MatrixXd dst = Dm[b] * dSa[b] * Dm[b];
            const MatrixXd cross = 0.5 * (dxt * dst + dst * dxt);
            const MatrixXd corr = Dm[b] * lyapunov_solve(Veig[b], cross) * Dm[b];
            Hrhs[b] = sigma * mu * Sinv[b] - X[b] - corr;
            Hrhs[b] = 0.5 * (Hrhs[b] + Hrhs[b].transpose());
        }
        dy = rhs_vector();
        solve_newton(dy, dnu);
        assemble_steps(dy, dX, dS);

        ap = kInf;
        ad = kInf;
        for (int b = 0; b < nb; ++b) {
            ap = std::min(ap, max_step(X[b], dX[b]));
            ad = std::min(ad, max_step(S[b], dS[b]));
        }
        ap = std::min(1.0, config.step_fraction * ap);
        ad = std::min(1.0, config.step_fraction * ad);

        if (ap < 1e-10 && ad < 1e-10) {
            if (++stall_count >= 3) {
                rep.status = Status::NumericalTrouble;
                return rep;
            }
        } else {
            stall_count = 0;
        }

        for (int b = 0; b < nb; ++b) {
            X[b] += ap * dX[b];
            X[b] = 0.5 * (X[b] + X[b].transpose());
            S[b] += ad * dS[b];
            S[b] = 0.5 * (S[b] + S[b].transpose());
        }
        if (p > 0) nu += ap * dnu;
        y += ad * dy;

        if (mu < 1e-300) break;
    }
    } catch (const numerical_error&) {
        // Breakdown anywhere in the iteration (scaling, step length,
        // factorization) is reported as NumericalTrouble with the best
        // iterate rather than thrown.
        rep.status = Status::NumericalTrouble;
    }
    return rep;
}

FeasibilityReport feasibility_margin(const lmi::MembershipProblem& mp,
                                     const SolverConfig& config) {
    FeasibilityReport out;

    // Equalities that lost all variables when freezing decide feasibility
    // outright if violated.
    double worst_const = 0.0;
    std::vector<LinExpr> live_eqs;
    for (const auto& e : mp.equalities) {
        if (e.is_constant()) {
            worst_const = std::max(worst_const, std::abs(e.constant()));
        } else {
            live_eqs.push_back(e);
        }
    }
    if (worst_const > 1e-8) {
        out.margin = -(1.0 + worst_const);
        out.solve.status = Status::Infeasible;
        return out;
    }

    SdpProblem prob;
    prob.var_count = mp.var_count + 1;
    const int t = mp.var_count;
    prob.sense = Sense::Max;
    prob.objective = LinExpr::variable(t);
    for (const auto& b : mp.psd_blocks) {
        AffineMatrixMap shifted = b;
        for (int i = 0; i < b.dim(); ++i) shifted.add_coeff(t, i, i, -1.0);
        prob.psd_blocks.push_back(std::move(shifted));
    }
    for (const auto& e : mp.nonneg) {
        LinExpr s = e;
        s.add_term(t, -1.0);
        prob.nonneg.push_back(std::move(s));
    }
    LinExpr cap(1.0);
    cap.add_term(t, -1.0);
    prob.nonneg.push_back(std::move(cap)); // normalization cap t <= 1
    prob.equalities = std::move(live_eqs);

    out.solve = solve(prob, config);
    if (out.solve.primal_point.size() == prob.var_count)
        out.margin = out.solve.primal_point(t);
    return out;
}

FeasibilityReport feasibility_margin(const lmi::SdpRepresentation& rep, const VectorXd& point,
                                     const SolverConfig& config) {
    return feasibility_margin(rep.freeze_membership_problem(point), config);
}

} // namespace hypcone::sdpsolve
