#pragma once

#include <string>

#include "hypcone/sdpsolve.hpp"

namespace hypcone::sdpa {

/// Serializes a Min-sense problem in SDPA sparse format (.dat-s):
/// m, nblocks, block sizes (negative = diagonal block holding the nonneg
/// scalars and equality pairs), objective row, then "matno blkno i j value"
/// entries with i <= j and F_0 = -const so that each block reads
/// sum_i y_i F_i - F_0 >= 0. Equalities are encoded as +/- scalar pairs.
std::string write_sdpa(const sdpsolve::SdpProblem& problem);

/// Parses SDPA sparse format. Positive blocks become PSD blocks, entries of
/// diagonal blocks become nonneg scalars. Throws parse_error naming the line
/// on malformed input.
sdpsolve::SdpProblem read_sdpa(const std::string& text);

sdpsolve::SdpProblem read_sdpa_file(const std::string& path);
void write_sdpa_file(const sdpsolve::SdpProblem& problem, const std::string& path);

/// Parse, solve, report.
sdpsolve::SolveReport solve_file(const std::string& path,
                                 const sdpsolve::SolverConfig& config = {});

} // namespace hypcone::sdpa
