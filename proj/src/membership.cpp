#include "hypcone/membership.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace hypcone::membership {

using lmi::AffineMatrixMap;
using lmi::LinExpr;
using sdpsolve::SdpProblem;
using sdpsolve::Sense;
using sdpsolve::Status;

namespace {

// Base problem carrying the representation's constraints over its variables.
SdpProblem problem_over(const SdpRepresentation& rep, int extra_vars = 0) {
    SdpProblem p;
    p.var_count = rep.var_count() + extra_vars;
    p.psd_blocks = rep.psd_blocks();
    p.nonneg = rep.nonneg_scalars();
    p.equalities = rep.equalities();
    return p;
}

// Expression of interface coordinate i over the representation's variables.
LinExpr interface_expr(const SdpRepresentation& rep, int i) {
    if (rep.is_slice_form()) return LinExpr::variable(i);
    return (*rep.output_map())[i];
}

} // namespace

MemberReport member_point(const SdpRepresentation& rep, const VectorXd& point,
                          const ToleranceConfig& tol, const SolverConfig& cfg) {
    if (point.size() != rep.primal_dim())
        throw argument_error("member_point: point dimension mismatch");

    MemberReport out;
    if (rep.is_slice_form()) {
        const auto fr = sdpsolve::feasibility_margin(rep, point, cfg);
        out.margin = fr.margin;
        out.solve = fr.solve;
        out.inside = fr.margin >= -tol.boundary_margin;
        return out;
    }

    // min t  s.t.  [[t I, out(v) - w], [., t]] >= 0  and v feasible.
    const int d = rep.primal_dim();
    SdpProblem p = problem_over(rep, 1);
    const int t = rep.var_count();
    AffineMatrixMap arrow(d + 1);
    for (int q = 0; q <= d; ++q) arrow.add_coeff(t, q, q, 1.0);
    const auto& outmap = *rep.output_map();
    for (int j = 0; j < d; ++j) {
        arrow.add_const(j, d, outmap[j].constant() - point(j));
        for (const auto& [v, c] : outmap[j].terms()) arrow.add_coeff(v, j, d, c);
    }
    p.psd_blocks.push_back(std::move(arrow));
    p.sense = Sense::Min;
    p.objective = LinExpr::variable(t);

    out.solve = sdpsolve::solve(p, cfg);
    const double dist = std::max(0.0, out.solve.objective_value);
    out.margin = -dist;
    out.inside = dist <= tol.dual_membership_rel * (1.0 + point.norm());
    return out;
}

std::vector<VectorXd> sample_projection_points(const SdpRepresentation& rep, int count,
                                               std::uint64_t seed, const SolverConfig& cfg) {
    if (rep.is_slice_form())
        throw unsupported_form_error("sample_projection_points: representation is slice-form");
    const int m = rep.var_count();
    const auto& outmap = *rep.output_map();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double box = 4.0;
    const double tilt = m > 0 ? 0.3 / std::sqrt(static_cast<double>(m)) : 0.0;
    SolverConfig tight = cfg;
    tight.tol_feas = std::min(cfg.tol_feas, 1e-9);
    tight.tol_gap = std::min(cfg.tol_gap, 1e-9);

    std::vector<VectorXd> samples;
    int attempts = 0;
    while (static_cast<int>(samples.size()) < count && attempts < 20 * count + 20) {
        ++attempts;
        SdpProblem p = problem_over(rep, 1);
        const int t = m;
        for (auto& blk : p.psd_blocks)
            for (int i = 0; i < blk.dim(); ++i) blk.add_coeff(t, i, i, -1.0);
        for (auto& e : p.nonneg) e.add_term(t, -1.0);
        for (int v = 0; v < m; ++v) {
            LinExpr hi(box);
            hi.add_term(v, -1.0);
            p.nonneg.push_back(std::move(hi));
            LinExpr lo(box);
            lo.add_term(v, 1.0);
            p.nonneg.push_back(std::move(lo));
        }
        LinExpr cap(1.0);
        cap.add_term(t, -1.0);
        p.nonneg.push_back(std::move(cap));

        p.sense = Sense::Max;
        p.objective = LinExpr::variable(t);
        for (int v = 0; v < m; ++v) p.objective.add_term(v, tilt * gauss(rng));

        const auto rep_solve = sdpsolve::solve(p, tight);
        if (rep_solve.status != Status::Optimal) continue;
        // Flat cones (e.g. rays) admit no strictly feasible point; accept
        // margins down to solver accuracy.
        if (rep_solve.primal_point(t) <= -1e-7) continue;
        VectorXd w(rep.primal_dim());
        const VectorXd& v = rep_solve.primal_point;
        for (int j = 0; j < rep.primal_dim(); ++j) w(j) = outmap[j].eval(v);
        // The origin belongs to every closed cone; snap away solver dust.
        if (w.cwiseAbs().maxCoeff() <= 1e-6) w.setZero();
        samples.push_back(std::move(w));
    }
    return samples;
}

sdpsolve::SolveReport solve_over_cone(const SdpRepresentation& rep, const VectorXd& objective,
                                      const std::vector<std::pair<VectorXd, double>>& eq_rows,
                                      Sense sense, const SolverConfig& cfg) {
    const int d = rep.primal_dim();
    if (objective.size() != d) throw argument_error("solve_over_cone: objective dimension mismatch");
    SdpProblem p = problem_over(rep);
    p.sense = sense;
    for (int i = 0; i < d; ++i) {
        if (objective(i) == 0.0) continue;
        LinExpr piece = interface_expr(rep, i);
        piece *= objective(i);
        p.objective += piece;
    }
    for (const auto& [a, b] : eq_rows) {
        if (a.size() != d) throw argument_error("solve_over_cone: equality row dimension mismatch");
        LinExpr row(-b);
        for (int i = 0; i < d; ++i) {
            if (a(i) == 0.0) continue;
            LinExpr piece = interface_expr(rep, i);
            piece *= a(i);
            row += piece;
        }
        p.equalities.push_back(std::move(row));
    }
    auto report = sdpsolve::solve(p, cfg);
    // For projection-form cones the caller cares about the interface point.
    if (!rep.is_slice_form() && report.primal_point.size() == rep.var_count()) {
        VectorXd w(d);
        for (int i = 0; i < d; ++i) w(i) = interface_expr(rep, i).eval(report.primal_point);
        report.primal_point = w;
    }
    return report;
}

std::vector<BoundaryRow> boundary_points(const SdpRepresentation& rep, int count,
                                         std::uint64_t seed, const SolverConfig& cfg) {
    if (rep.primal_dim() != 3)
        throw argument_error("boundary_points: cone interface must be 3-dimensional");
    if (count < 1) throw argument_error("boundary_points: count must be positive");

    const double offset = static_cast<double>(seed % 1000u) / 1000.0;
    std::vector<BoundaryRow> rows;
    rows.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double theta = 2.0 * M_PI * (i + offset) / count;
        BoundaryRow row;
        row.theta = theta;
        row.dir_x = std::cos(theta);
        row.dir_y = std::sin(theta);
        VectorXd c(3);
        c << row.dir_x, row.dir_y, 0.0;
        VectorXd slice(3);
        slice << 0.0, 0.0, 1.0;
        const auto rep_solve = solve_over_cone(rep, c, {{slice, 1.0}}, Sense::Max, cfg);
        row.status = rep_solve.status;
        row.objective = rep_solve.objective_value;
        if (rep_solve.primal_point.size() == 3) {
            row.x = rep_solve.primal_point(0);
            row.y = rep_solve.primal_point(1);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string boundary_csv(const std::vector<BoundaryRow>& rows) {
    std::ostringstream os;
    os << "theta,dir_x,dir_y,x,y,objective,status\n";
    os.precision(12);
    for (const auto& r : rows)
        os << r.theta << "," << r.dir_x << "," << r.dir_y << "," << r.x << "," << r.y << ","
           << r.objective << "," << sdpsolve::status_name(r.status) << "\n";
    return os.str();
}

} // namespace hypcone::membership
