#include <nlohmann/json.hpp>

#include "hypcone/lmi.hpp"

// Schema:
// {
//   "primal_dim": int, "aux_dim": int,
//   "blocks": [{"dim": int, "const": [[i,j,v],...],
//               "coeffs": [{"var": int, "entries": [[i,j,v],...]},...]}],
//   "equalities": [{"terms": [[var,coef],...], "constant": c},...],
//   "output_map": {"exprs": [...same as equalities...]} | null
// }
// Nonneg scalars are emitted as blocks of dim 1.

namespace hypcone::lmi {

using nlohmann::json;

namespace {

json entries_to_json(const std::vector<Entry>& entries) {
    json a = json::array();
    for (const Entry& e : entries) a.push_back({e.i, e.j, e.value});
    return a;
}

json expr_to_json(const LinExpr& e) {
    json terms = json::array();
    for (const auto& [v, c] : e.terms()) terms.push_back({v, c});
    return json{{"terms", terms}, {"constant", e.constant()}};
}

json block_to_json(const AffineMatrixMap& b) {
    json coeffs = json::array();
    for (const auto& [var, entries] : b.coeffs())
        coeffs.push_back({{"var", var}, {"entries", entries_to_json(entries)}});
    return json{{"dim", b.dim()}, {"const", entries_to_json(b.const_entries())}, {"coeffs", coeffs}};
}

LinExpr expr_from_json(const json& j) {
    LinExpr e(j.at("constant").get<double>());
    for (const auto& t : j.at("terms"))
        e.add_term(t.at(0).get<int>(), t.at(1).get<double>());
    return e;
}

AffineMatrixMap block_from_json(const json& j) {
    AffineMatrixMap b(j.at("dim").get<int>());
    for (const auto& t : j.at("const"))
        b.add_const(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>());
    for (const auto& c : j.at("coeffs")) {
        const int var = c.at("var").get<int>();
        for (const auto& t : c.at("entries"))
            b.add_coeff(var, t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>());
    }
    return b;
}

} // namespace

std::string to_json(const SdpRepresentation& rep) {
    json j;
    j["primal_dim"] = rep.primal_dim();
    j["aux_dim"] = rep.aux_dim();
    json blocks = json::array();
    for (const auto& b : rep.psd_blocks()) blocks.push_back(block_to_json(b));
    for (const auto& e : rep.nonneg_scalars()) {
        AffineMatrixMap m(1);
        m.add_const(0, 0, e.constant());
        for (const auto& [v, c] : e.terms()) m.add_coeff(v, 0, 0, c);
        blocks.push_back(block_to_json(m));
    }
    j["blocks"] = blocks;
    json eqs = json::array();
    for (const auto& e : rep.equalities()) eqs.push_back(expr_to_json(e));
    j["equalities"] = eqs;
    if (rep.output_map()) {
        json exprs = json::array();
        for (const auto& e : *rep.output_map()) exprs.push_back(expr_to_json(e));
        j["output_map"] = json{{"exprs", exprs}};
    } else {
        j["output_map"] = nullptr;
    }
    return j.dump(2);
}

SdpRepresentation from_json(const std::string& text) {
    const json j = json::parse(text);
    const bool projection = !j.at("output_map").is_null();
    SdpRepresentation rep(j.at("primal_dim").get<int>(),
                          projection ? SdpRepresentation::Form::Projection
                                     : SdpRepresentation::Form::Slice);
    rep.new_aux_block(j.at("aux_dim").get<int>());
    for (const auto& bj : j.at("blocks")) {
        AffineMatrixMap b = block_from_json(bj);
        if (b.dim() == 1) {
            rep.add_nonneg(b.entry_expr(0, 0));
        } else {
            rep.add_psd_block(std::move(b));
        }
    }
    for (const auto& ej : j.at("equalities")) rep.add_equality(expr_from_json(ej));
    if (projection) {
        std::vector<LinExpr> exprs;
        for (const auto& ej : j.at("output_map").at("exprs")) exprs.push_back(expr_from_json(ej));
        rep.set_output_map(std::move(exprs));
    }
    return rep;
}

} // namespace hypcone::lmi
