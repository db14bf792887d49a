#include <nlohmann/json.hpp>

#include "hypcone/conelib.hpp"

namespace hypcone::conelib {

using nlohmann::json;

namespace {

json pencil_to_json(const Pencil& p) {
    json a = json::array();
    for (const auto& mat : p.A) {
        json entries = json::array();
        for (int i = 0; i < mat.dim(); ++i)
            for (int j = i; j < mat.dim(); ++j)
                if (mat(i, j) != 0.0) entries.push_back({i, j, mat(i, j)});
        a.push_back(entries);
    }
    json e = json::array();
    for (int i = 0; i < p.e.size(); ++i) e.push_back(p.e(i));
    return json{{"m", p.m}, {"A", a}, {"e", e}};
}

Pencil pencil_from_json(const json& j) {
    Pencil p;
    p.m = j.at("m").get<int>();
    for (const auto& mj : j.at("A")) {
        SymMatrix mat(p.m);
        for (const auto& t : mj)
            mat.set(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>());
        p.A.push_back(std::move(mat));
    }
    const auto& ej = j.at("e");
    p.e.resize(static_cast<int>(ej.size()));
    for (int i = 0; i < p.e.size(); ++i) p.e(i) = ej.at(i).get<double>();
    p.validate();
    return p;
}

json spec_to_json_obj(const ConeSpec& spec) {
    switch (spec.kind) {
        case ConeSpec::Kind::Orthant:
            return json{{"kind", "orthant"},
                        {"n", spec.n},
                        {"k", spec.k},
                        {"strategy", strategy_name(spec.strategy)}};
        case ConeSpec::Kind::PsdDeriv:
            return json{{"kind", "psd_deriv"},
                        {"n", spec.n},
                        {"k", spec.k},
                        {"strategy", strategy_name(spec.strategy)}};
        case ConeSpec::Kind::SpectrahedralDeriv: {
            json j = pencil_to_json(*spec.pencil);
            j["kind"] = "spectrahedral";
            j["k"] = spec.k;
            j["strategy"] = strategy_name(spec.strategy);
            return j;
        }
        case ConeSpec::Kind::Dual:
            return json{{"kind", "dual"}, {"inner", spec_to_json_obj(*spec.inner)}};
    }
    throw argument_error("spec_to_json: unknown kind");
}

ConeSpec spec_from_json_obj(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const Strategy s = j.contains("strategy")
                           ? strategy_from_name(j.at("strategy").get<std::string>())
                           : Strategy::Auto;
    if (kind == "orthant")
        return ConeSpec::orthant(j.at("n").get<int>(), j.at("k").get<int>(), s);
    if (kind == "psd_deriv")
        return ConeSpec::psd_deriv(j.at("n").get<int>(), j.at("k").get<int>(), s);
    if (kind == "spectrahedral")
        return ConeSpec::spectrahedral(pencil_from_json(j), j.at("k").get<int>(), s);
    if (kind == "dual") return ConeSpec::dual_of(spec_from_json_obj(j.at("inner")));
    throw argument_error("spec_from_json: unknown kind '" + kind + "'");
}

} // namespace

std::string spec_to_json(const ConeSpec& spec) { return spec_to_json_obj(spec).dump(2); }

ConeSpec spec_from_json(const std::string& text) {
    ConeSpec spec = spec_from_json_obj(json::parse(text));
    spec.validate();
    return spec;
}

} // namespace hypcone::conelib
