#include "hypcone/conelib.hpp"

namespace hypcone::conelib {

using symlin::sym_vec_dim;

namespace {

bool report_polar(Strategy s, int n, int k) {
    if (s == Strategy::PolarBased) return true;
    if (s == Strategy::DerivativeBased) return false;
    return 2 * k > n;
}

void push(std::vector<SizeRow>& rows, std::string label, std::vector<int> dims) {
    SizeRow r;
    r.cone = std::move(label);
    r.added_dims = std::move(dims);
    for (int d : r.added_dims) r.added += d;
    rows.push_back(std::move(r));
}

std::vector<int> schur_horn_dims(int n) {
    std::vector<int> dims;
    dims.push_back(n);                                // z_1 I - X
    dims.insert(dims.end(), n - 1, 1);                // ordering scalars
    for (int ell = 2; ell <= n - 1; ++ell) {          // per epigraph level
        dims.push_back(n);                            //   Z >= 0
        dims.push_back(n);                            //   tI + Z - X
        dims.push_back(1);                            //   trace slack
    }
    return dims;
}

void orthant_rows(std::vector<SizeRow>& rows, int n, int k, Strategy s, bool dual);
void psd_rows(std::vector<SizeRow>& rows, int n, int k, Strategy s, bool dual);
void soc_orthant_rows(std::vector<SizeRow>& rows, int n, int k);
void soc_psd_rows(std::vector<SizeRow>& rows, int n, int k);

std::string tag(const char* base, int n, int k, bool dual) {
    std::string t = std::string(base) + "(" + std::to_string(n) + "," + std::to_string(k) + ")";
    return dual ? "dual " + t : t;
}

void orthant_rows(std::vector<SizeRow>& rows, int n, int k, Strategy s, bool dual) {
    if (s == Strategy::SocSimplified) {
        soc_orthant_rows(rows, n, k);
        return;
    }
    if (k == n) {
        push(rows, tag("orthant", n, k, dual), {});
        return;
    }
    if (k == 0) {
        push(rows, tag("orthant", n, k, dual), std::vector<int>(n, 1));
        return;
    }
    bool polar = report_polar(s, n, k);
    if (polar && k > n - 2) {
        if (s == Strategy::PolarBased)
            throw strategy_error("size_report: polar strategy requires k <= n-2");
        polar = false;
    }
    if (polar) {
        push(rows, tag("orthant", n, k, dual), {n});
        psd_rows(rows, n - 1, k, Strategy::PolarBased, dual);
    } else {
        push(rows, tag("orthant", n, k, dual), {});
        psd_rows(rows, n - 1, k - 1, Strategy::DerivativeBased, dual);
    }
}

void psd_rows(std::vector<SizeRow>& rows, int n, int k, Strategy s, bool dual) {
    if (s == Strategy::SocSimplified) {
        soc_psd_rows(rows, n, k);
        return;
    }
    if (k == n) {
        push(rows, tag("psd_deriv", n, k, dual), {});
        return;
    }
    if (k == 0) {
        push(rows, tag("psd_deriv", n, k, dual), {n});
        return;
    }
    const bool polar = report_polar(s, n, k);
    if (polar && k == n - 1) {
        push(rows, tag("psd_deriv", n, k, dual), {1});
        return;
    }
    push(rows, tag("psd_deriv", n, k, dual) + " via SH_" + std::to_string(n), schur_horn_dims(n));
    orthant_rows(rows, n, k, polar ? Strategy::PolarBased : Strategy::DerivativeBased, dual);
}

void soc_orthant_rows(std::vector<SizeRow>& rows, int n, int k) {
    if (k == n - 2 && n >= 2) {
        push(rows, tag("orthant", n, k, false) + " soc", {n + 1});
        return;
    }
    if (k == n - 3 && n >= 3) {
        push(rows, tag("orthant", n, k, false) + " soc", {n});
        soc_psd_rows(rows, n - 1, n - 3);
        return;
    }
    throw strategy_error("size_report: SOC simplification is defined for k = n-2, n-3");
}

void soc_psd_rows(std::vector<SizeRow>& rows, int n, int k) {
    if (k == n - 2 && n >= 2) {
        push(rows, tag("psd_deriv", n, k, false) + " soc", {n * n + 1});
        return;
    }
    if (k == n - 3 && n >= 3) {
        push(rows, tag("psd_deriv", n, k, false) + " via SH_" + std::to_string(n),
             schur_horn_dims(n));
        soc_orthant_rows(rows, n, n - 3);
        return;
    }
    throw strategy_error("size_report: SOC simplification is defined for k = n-2, n-3");
}

} // namespace

std::vector<SizeRow> size_report(const ConeSpec& spec) {
    spec.validate();
    std::vector<SizeRow> rows;
    switch (spec.kind) {
        case ConeSpec::Kind::Orthant:
            orthant_rows(rows, spec.n, spec.k, spec.strategy, false);
            break;
        case ConeSpec::Kind::PsdDeriv:
            psd_rows(rows, spec.n, spec.k, spec.strategy, false);
            break;
        case ConeSpec::Kind::SpectrahedralDeriv:
            push(rows, spec.label(), {});
            psd_rows(rows, spec.pencil->m, spec.k, spec.strategy, false);
            break;
        case ConeSpec::Kind::Dual: {
            const ConeSpec& in = *spec.inner;
            switch (in.kind) {
                case ConeSpec::Kind::Orthant:
                    orthant_rows(rows, in.n, in.k, in.strategy, true);
                    break;
                case ConeSpec::Kind::PsdDeriv:
                    psd_rows(rows, in.n, in.k, in.strategy, true);
                    break;
                case ConeSpec::Kind::SpectrahedralDeriv:
                    push(rows, spec.label(), {});
                    psd_rows(rows, in.pencil->m, in.k, in.strategy, true);
                    break;
                case ConeSpec::Kind::Dual:
                    return size_report(*in.inner);
            }
            break;
        }
    }
    int total = 0;
    for (auto& r : rows) {
        total += r.added;
        r.cumulative = total;
    }
    return rows;
}

} // namespace hypcone::conelib
