// Command-line surface: represent, member, solve, boundary, verify.
// Exit codes: 0 success, 1 verification/solve failure, 2 usage error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hypcone/conelib.hpp"
#include "hypcone/membership.hpp"
#include "hypcone/oracle.hpp"
#include "hypcone/sdpa_io.hpp"
#include "hypcone/sdpsolve.hpp"
#include "hypcone/verify.hpp"

using namespace hypcone;
using nlohmann::json;
using Eigen::VectorXd;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --spec accepts a file path or inline JSON.
conelib::ConeSpec load_spec(const std::string& spec_arg, const std::string& strategy_override) {
    std::string text = spec_arg;
    if (!spec_arg.empty() && spec_arg.front() != '{') text = slurp(spec_arg);
    auto spec = conelib::spec_from_json(text);
    if (!strategy_override.empty()) {
        auto* target = &spec;
        while (target->kind == conelib::ConeSpec::Kind::Dual) target = target->inner.get();
        target->strategy = conelib::strategy_from_name(strategy_override);
    }
    return spec;
}

VectorXd parse_point(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    VectorXd v(static_cast<int>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) v(static_cast<int>(i)) = vals[i];
    return v;
}

json report_to_json(const sdpsolve::SolveReport& r) {
    json j;
    j["status"] = sdpsolve::status_name(r.status);
    j["objective"] = r.objective_value;
    j["iterations"] = r.iterations;
    j["complementarity"] = r.complementarity;
    j["primal_residual"] = r.primal_residual;
    j["dual_residual"] = r.dual_residual;
    j["point"] = std::vector<double>(r.primal_point.data(),
                                     r.primal_point.data() + r.primal_point.size());
    return j;
}

// Oracle margin for slice-form cone kinds; nullopt for duals.
std::optional<oracle::MembershipVerdict> oracle_verdict(const conelib::ConeSpec& spec,
                                                        const VectorXd& point) {
    using Kind = conelib::ConeSpec::Kind;
    switch (spec.kind) {
        case Kind::Orthant: return oracle::orthant_margin(point, spec.k);
        case Kind::PsdDeriv:
            return oracle::psd_deriv_margin(symlin::vec_to_sym(point, spec.n), spec.k);
        case Kind::SpectrahedralDeriv:
            return oracle::spectrahedral_margin(*spec.pencil, spec.k, point);
        case Kind::Dual: return std::nullopt; // no closed-form dual oracle
    }
    return std::nullopt;
}

int cmd_represent(const conelib::ConeSpec& spec, const std::string& outdir) {
    const auto rep = conelib::build(spec);
    const auto rows = conelib::size_report(spec);

    std::filesystem::create_directories(outdir);
    std::ofstream(outdir + "/representation.json") << lmi::to_json(rep);

    sdpsolve::SdpProblem tmpl;
    tmpl.var_count = rep.var_count();
    tmpl.psd_blocks = rep.psd_blocks();
    tmpl.nonneg = rep.nonneg_scalars();
    tmpl.equalities = rep.equalities();
    sdpa::write_sdpa_file(tmpl, outdir + "/template.dat-s");

    std::ofstream csv(outdir + "/size_report.csv");
    csv << "cone,added,cumulative\n";
    std::printf("%-34s %8s %10s\n", "cone", "added", "cumulative");
    for (const auto& r : rows) {
        csv << r.cone << "," << r.added << "," << r.cumulative << "\n";
        std::printf("%-34s %8d %10d\n", r.cone.c_str(), r.added, r.cumulative);
    }
    std::printf("total size: %d (vars: %d primal + %d aux)\n", rep.size(), rep.primal_dim(),
                rep.aux_dim());

    // When both chains apply, print the comparison.
    if (spec.kind != conelib::ConeSpec::Kind::Dual && spec.strategy == conelib::Strategy::Auto) {
        try {
            auto d = spec, p = spec;
            d.strategy = conelib::Strategy::DerivativeBased;
            p.strategy = conelib::Strategy::PolarBased;
            const int ds = conelib::size_report(d).back().cumulative;
            const int ps = conelib::size_report(p).back().cumulative;
            std::printf("chain sizes: derivative %d, polar %d\n", ds, ps);
        } catch (const strategy_error&) {
        }
    }
    std::printf("artifacts written to %s\n", outdir.c_str());
    return 0;
}

int cmd_member(const conelib::ConeSpec& spec, const VectorXd& point, double tol_override) {
    const auto rep = conelib::build(spec);
    if (point.size() != rep.primal_dim())
        throw argument_error("point dimension " + std::to_string(point.size()) +
                             " does not match cone interface " +
                             std::to_string(rep.primal_dim()));
    ToleranceConfig tol;
    if (tol_override > 0) tol.boundary_margin = tol_override;
    const auto mr = membership::member_point(rep, point, tol);

    json j;
    j["cone"] = spec.label();
    j["representation_margin"] = mr.margin;
    j["representation_inside"] = mr.inside;
    if (const auto ov = oracle_verdict(spec, point)) {
        j["oracle_margin"] = ov->margin;
        j["oracle_binding_index"] = ov->binding_index;
        j["oracle_decision"] = oracle::decision_name(ov->decision);
        const bool agree = ov->decision == oracle::Decision::Boundary
                               ? std::abs(mr.margin) <= 1e-4
                               : ((ov->margin > 0) == (mr.margin > 0));
        j["agree"] = agree;
    } else {
        j["oracle_margin"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_solve(const std::string& problem_path, const std::string& sdpa_path,
              const std::string& out) {
    sdpsolve::SolveReport rep;
    if (!sdpa_path.empty()) {
        rep = sdpa::solve_file(sdpa_path);
    } else {
        const json j = json::parse(slurp(problem_path));
        const auto spec = conelib::spec_from_json(j.at("spec").dump());
        const auto cone = conelib::build(spec);
        VectorXd c = VectorXd::Zero(cone.primal_dim());
        if (j.contains("objective")) {
            const auto& arr = j.at("objective");
            for (int i = 0; i < c.size() && i < static_cast<int>(arr.size()); ++i)
                c(i) = arr.at(i).get<double>();
        } else if (j.contains("objective_matrix")) {
            symlin::SymMatrix cm(static_cast<int>(std::lround(
                (std::sqrt(8.0 * c.size() + 1.0) - 1.0) / 2.0)));
            for (const auto& t : j.at("objective_matrix"))
                cm.set(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>());
            c = symlin::trace_inner_coeffs(cm);
        }
        std::vector<std::pair<VectorXd, double>> eqs;
        if (j.contains("equalities"))
            for (const auto& e : j.at("equalities")) {
                VectorXd a = VectorXd::Zero(cone.primal_dim());
                const auto& arr = e.at("a");
                for (int i = 0; i < a.size() && i < static_cast<int>(arr.size()); ++i)
                    a(i) = arr.at(i).get<double>();
                eqs.push_back({a, e.at("b").get<double>()});
            }
        const auto sense = (j.value("sense", "min") == "max") ? sdpsolve::Sense::Max
                                                              : sdpsolve::Sense::Min;
        rep = membership::solve_over_cone(cone, c, eqs, sense);
    }
    const json out_json = report_to_json(rep);
    if (!out.empty()) {
        std::ofstream(out) << out_json.dump(2);
    }
    std::cout << out_json.dump(2) << "\n";
    return rep.status == sdpsolve::Status::NumericalTrouble ? 1 : 0;
}

int cmd_boundary(const conelib::ConeSpec& spec, int count, std::uint64_t seed,
                 const std::string& out) {
    const auto rep = conelib::build(spec);
    const auto rows = membership::boundary_points(rep, count, seed);
    const std::string csv = membership::boundary_csv(rows);
    if (!out.empty()) {
        std::ofstream(out) << csv;
        std::printf("wrote %zu boundary rows to %s\n", rows.size(), out.c_str());
    } else {
        std::cout << csv;
    }
    int bad = 0;
    for (const auto& r : rows)
        if (r.status != sdpsolve::Status::Optimal) ++bad;
    if (bad > 0) std::fprintf(stderr, "%d direction(s) flagged non-optimal\n", bad);
    return 0;
}

int cmd_verify(std::uint64_t seed, int nmax, const std::string& only) {
    const auto results = verify::run_all(seed, nmax);
    bool all = true;
    for (const auto& r : results) {
        if (!only.empty() && r.name != only) continue;
        std::printf("[%s] %-16s checks=%-6d worst=%.3e %s\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.checks, r.worst, r.note.c_str());
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semidefinite representations of derivative relaxations of "
                 "the orthant, the PSD cone and spectrahedral cones"};
    app.require_subcommand(1);

    std::string spec_arg, strategy, point_arg, out, problem_path, sdpa_path, suite;
    double tol = -1.0;
    std::uint64_t seed = 42;
    int count = 200, nmax = 8;

    auto* rep_cmd = app.add_subcommand("represent", "build a representation and its size report");
    rep_cmd->add_option("--spec", spec_arg, "cone spec: JSON file path or inline JSON")->required();
    rep_cmd->add_option("--strategy", strategy, "deriv|polar|auto|soc (overrides the spec)");
    rep_cmd->add_option("--out", out, "output directory")->default_val("represent_out");

    auto* mem_cmd = app.add_subcommand("member", "membership verdict: oracle and representation");
    mem_cmd->add_option("--spec", spec_arg)->required();
    mem_cmd->add_option("--strategy", strategy);
    mem_cmd->add_option("--point", point_arg, "comma-separated interface coordinates")->required();
    mem_cmd->add_option("--tol", tol, "boundary tolerance override");

    auto* solve_cmd = app.add_subcommand("solve", "solve a cone program");
    solve_cmd->add_option("--problem", problem_path, "problem JSON (spec/objective/equalities)");
    solve_cmd->add_option("--sdpa", sdpa_path, "SDPA sparse .dat-s file");
    solve_cmd->add_option("--out", out, "write the report JSON here");

    auto* bnd_cmd = app.add_subcommand("boundary", "boundary points of the z = 1 slice");
    bnd_cmd->add_option("--spec", spec_arg)->required();
    bnd_cmd->add_option("--strategy", strategy);
    bnd_cmd->add_option("--count", count)->default_val(200);
    bnd_cmd->add_option("--seed", seed)->default_val(42);
    bnd_cmd->add_option("--out", out, "CSV output path (stdout if omitted)");

    auto* ver_cmd = app.add_subcommand("verify", "run the invariant suites");
    ver_cmd->add_option("--seed", seed)->default_val(42);
    ver_cmd->add_option("--nmax", nmax, "largest dimension exercised")->default_val(8);
    ver_cmd->add_option("--suite", suite, "run a single named suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (rep_cmd->parsed()) return cmd_represent(load_spec(spec_arg, strategy), out);
        if (mem_cmd->parsed())
            return cmd_member(load_spec(spec_arg, strategy), parse_point(point_arg), tol);
        if (solve_cmd->parsed()) {
            if (problem_path.empty() == sdpa_path.empty()) {
                std::fprintf(stderr, "solve: provide exactly one of --problem or --sdpa\n");
                return 2;
            }
            return cmd_solve(problem_path, sdpa_path, out);
        }
        if (bnd_cmd->parsed())
            return cmd_boundary(load_spec(spec_arg, strategy), count, seed, out);
        if (ver_cmd->parsed()) return cmd_verify(seed, nmax, suite);
    } catch (const argument_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const strategy_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
