#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypcone/lmi.hpp"

namespace hypcone::sdpsolve {

using lmi::AffineMatrixMap;
using lmi::LinExpr;
using Eigen::VectorXd;

enum class Sense { Min, Max };

enum class Status { Optimal, Infeasible, Unbounded, MaxIter, NumericalTrouble };

const char* status_name(Status s);

/// Linear cone program over a flat variable vector y:
///   optimize objective(y)
///   s.t. each psd block, evaluated at y, is positive semidefinite,
///        each nonneg expression is >= 0, each equality expression is == 0.
struct SdpProblem {
    int var_count = 0;
    LinExpr objective;
    Sense sense = Sense::Min;
    std::vector<AffineMatrixMap> psd_blocks;
    std::vector<LinExpr> nonneg;
    std::vector<LinExpr> equalities;
};

struct SolverConfig {
    double tol_feas = 1e-8;
    double tol_gap = 1e-8;
    int max_iter = 200;
    /// Fraction-to-boundary step damping.
    double step_fraction = 0.98;
    /// Objective magnitude beyond which divergence heuristics fire.
    double unbounded_threshold = 1e8;
    /// Initial diagonal regularization of the Schur complement, relative.
    double reg_init = 1e-13;
    bool verbose = false;
};

struct SolveReport {
    Status status = Status::NumericalTrouble;
    /// Objective in the problem's own sense, including any constant term.
    double objective_value = 0.0;
    VectorXd primal_point;
    /// Normalized complementarity gap at termination.
    double complementarity = 0.0;
    /// Feasibility of the returned point (blocks and equalities), normalized.
    double primal_residual = 0.0;
    /// Stationarity residual of the dual system, normalized.
    double dual_residual = 0.0;
    int iterations = 0;
    /// Barrier parameter per iteration; identical runs produce identical logs.
    std::vector<double> mu_history;
};

/// Primal-dual path-following with Nesterov-Todd scaling on each block,
/// Mehrotra predictor-corrector, infeasible start.
SolveReport solve(const SdpProblem& problem, const SolverConfig& config = {});

struct FeasibilityReport {
    /// Optimal t of: max t s.t. every block >= t*I, scalars >= t,
    /// equalities hold, t <= 1. Positive: strictly feasible; negative:
    /// infeasible; near zero: boundary.
    double margin = 0.0;
    SolveReport solve;
};

FeasibilityReport feasibility_margin(const lmi::MembershipProblem& problem,
                                     const SolverConfig& config = {});

/// Freezes the interface of a slice-form representation at `point` and
/// reports the feasibility margin of the residual problem.
FeasibilityReport feasibility_margin(const lmi::SdpRepresentation& rep, const VectorXd& point,
                                     const SolverConfig& config = {});

} // namespace hypcone::sdpsolve
