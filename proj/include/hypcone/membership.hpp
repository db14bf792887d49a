#pragma once

#include <cstdint>

#include "hypcone/conelib.hpp"
#include "hypcone/sdpsolve.hpp"

namespace hypcone::membership {

using conelib::SdpRepresentation;
using sdpsolve::SolverConfig;
using Eigen::VectorXd;

struct MemberReport {
    bool inside = false;
    /// Slice form: feasibility margin t*. Projection form: minus the
    /// distance of the point to the represented cone's image.
    double margin = 0.0;
    sdpsolve::SolveReport solve;
};

/// Membership of `point` in the represented cone. Slice-form cones freeze
/// the interface and maximize the feasibility margin; projection-form cones
/// minimize || output_map(vars) - point || and accept iff the residual is
/// at most dual_membership_rel * (1 + |point|).
MemberReport member_point(const SdpRepresentation& rep, const VectorXd& point,
                          const ToleranceConfig& tol = {}, const SolverConfig& cfg = {});

/// Draws members of a projection-form cone: solves max-margin feasibility
/// with a random linear objective tilt (box-capped), then maps the internal
/// point through the output map. Samples with margin below 1e-6 are
/// discarded and retried.
std::vector<VectorXd> sample_projection_points(const SdpRepresentation& rep, int count,
                                               std::uint64_t seed, const SolverConfig& cfg = {});

/// Minimizes/maximizes a linear functional over the represented cone
/// intersected with affine equality rows (functional and rows act on the
/// interface space).
sdpsolve::SolveReport solve_over_cone(const SdpRepresentation& rep, const VectorXd& objective,
                                      const std::vector<std::pair<VectorXd, double>>& eq_rows,
                                      sdpsolve::Sense sense, const SolverConfig& cfg = {});

struct BoundaryRow {
    double theta = 0.0;
    double dir_x = 0.0;
    double dir_y = 0.0;
    double x = 0.0;
    double y = 0.0;
    double objective = 0.0;
    sdpsolve::Status status = sdpsolve::Status::NumericalTrouble;
};

/// Boundary of the {last interface coordinate == 1} slice of a cone with a
/// 3-dimensional interface: maximizes `count` uniformly spaced directions
/// over the slice. Unbounded directions are flagged per row.
std::vector<BoundaryRow> boundary_points(const SdpRepresentation& rep, int count,
                                         std::uint64_t seed = 0, const SolverConfig& cfg = {});

std::string boundary_csv(const std::vector<BoundaryRow>& rows);

} // namespace hypcone::membership
