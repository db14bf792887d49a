#include "hypcone/conelib.hpp"

#include <algorithm>
#include <cmath>

namespace hypcone::conelib {

using lmi::AffineMatrixMap;
using lmi::LinExpr;
using symlin::sym_vec_dim;
using symlin::sym_vec_index;
using Eigen::MatrixXd;

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::DerivativeBased: return "deriv";
        case Strategy::PolarBased: return "polar";
        case Strategy::Auto: return "auto";
        case Strategy::SocSimplified: return "soc";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "deriv") return Strategy::DerivativeBased;
    if (name == "polar") return Strategy::PolarBased;
    if (name == "auto") return Strategy::Auto;
    if (name == "soc") return Strategy::SocSimplified;
    throw argument_error("unknown strategy: " + name);
}

SymMatrix Pencil::eval(const VectorXd& x) const {
    if (x.size() != n()) throw argument_error("Pencil::eval: dimension mismatch");
    MatrixXd s = MatrixXd::Zero(m, m);
    for (int i = 0; i < n(); ++i) s += x(i) * A[i].mat();
    return SymMatrix::from_upper(s);
}

void Pencil::validate() const {
    if (m < 1) throw argument_error("Pencil: matrix size must be positive");
    if (A.empty()) throw argument_error("Pencil: no coefficient matrices");
    for (const auto& a : A)
        if (a.dim() != m) throw argument_error("Pencil: coefficient matrix dimension mismatch");
    if (e.size() != n()) throw argument_error("Pencil: direction dimension mismatch");
}

ConeSpec ConeSpec::orthant(int n, int k, Strategy s) {
    ConeSpec c;
    c.kind = Kind::Orthant;
    c.n = n;
    c.k = k;
    c.strategy = s;
    return c;
}

ConeSpec ConeSpec::psd_deriv(int n, int k, Strategy s) {
    ConeSpec c;
    c.kind = Kind::PsdDeriv;
    c.n = n;
    c.k = k;
    c.strategy = s;
    return c;
}

ConeSpec ConeSpec::spectrahedral(Pencil p, int k, Strategy s) {
    ConeSpec c;
    c.kind = Kind::SpectrahedralDeriv;
    c.pencil = std::make_shared<Pencil>(std::move(p));
    c.n = c.pencil->n();
    c.k = k;
    c.strategy = s;
    return c;
}

ConeSpec ConeSpec::dual_of(ConeSpec inner) {
    ConeSpec c;
    c.kind = Kind::Dual;
    c.inner = std::make_shared<ConeSpec>(std::move(inner));
    return c;
}

int ConeSpec::interface_dim() const {
    switch (kind) {
        case Kind::Orthant: return n;
        case Kind::PsdDeriv: return sym_vec_dim(n);
        case Kind::SpectrahedralDeriv: return pencil ? pencil->n() : 0;
        case Kind::Dual: return inner ? inner->interface_dim() : 0;
    }
    return 0;
}

void ConeSpec::validate() const {
    switch (kind) {
        case Kind::Orthant:
        case Kind::PsdDeriv:
            if (n < 1) throw argument_error("ConeSpec: n must be positive");
            if (k < 0 || k > n) throw argument_error("ConeSpec: k out of range [0, n]");
            break;
        case Kind::SpectrahedralDeriv:
            if (!pencil) throw argument_error("ConeSpec: missing pencil");
            pencil->validate();
            if (k < 0 || k > pencil->m - 1)
                throw argument_error("ConeSpec: k out of range [0, m-1]");
            break;
        case Kind::Dual:
            if (!inner) throw argument_error("ConeSpec: missing inner spec");
            inner->validate();
            break;
    }
}

std::string ConeSpec::label() const {
    switch (kind) {
        case Kind::Orthant:
            return "orthant(" + std::to_string(n) + "," + std::to_string(k) + ")";
        case Kind::PsdDeriv:
            return "psd_deriv(" + std::to_string(n) + "," + std::to_string(k) + ")";
        case Kind::SpectrahedralDeriv:
            return "spectrahedral(m=" + std::to_string(pencil ? pencil->m : 0) + ",k=" +
                   std::to_string(k) + ")";
        case Kind::Dual:
            return "dual[" + (inner ? inner->label() : std::string("?")) + "]";
    }
    return "?";
}

namespace {

// Identity expressions for a contiguous variable range.
std::vector<LinExpr> var_range(int base, int count) {
    std::vector<LinExpr> v;
    v.reserve(count);
    for (int i = 0; i < count; ++i) v.push_back(LinExpr::variable(base + i));
    return v;
}

// vec image of V^T diag(x) V over the x variables (x_i at index base_x + i).
std::vector<LinExpr> compressed_diag_image(const MatrixXd& v, int base_x) {
    const int n = static_cast<int>(v.rows());
    const int r = static_cast<int>(v.cols());
    std::vector<LinExpr> image(sym_vec_dim(r));
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b) {
            LinExpr e;
            for (int i = 0; i < n; ++i) e.add_term(base_x + i, v(i, a) * v(i, b));
            image[sym_vec_index(r, a, b)] = e;
        }
    return image;
}

// Adds to `block` the terms of -(V Z V^T) over the vec(Z) variables starting
// at base_z, with V of shape n x r.
void subtract_conjugated(AffineMatrixMap& block, const MatrixXd& v, int base_z) {
    const int n = static_cast<int>(v.rows());
    const int r = static_cast<int>(v.cols());
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b) {
            const int var = base_z + sym_vec_index(r, a, b);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double coef = v(i, a) * v(j, b);
                    if (a != b) coef += v(i, b) * v(j, a);
                    block.add_coeff(var, i, j, -coef);
                }
        }
}

// Whether the chain at (n, k) follows the polar recursion.
bool use_polar(Strategy s, int n, int k) {
    if (s == Strategy::PolarBased) return true;
    if (s == Strategy::DerivativeBased) return false;
    return 2 * k > n; // Auto: derivative-based iff k < n/2, ties to derivative
}

void check_nk(int n, int k, const char* who) {
    if (n < 1) throw argument_error(std::string(who) + ": n must be positive");
    if (k < 0 || k > n) throw argument_error(std::string(who) + ": k out of range [0, n]");
}

} // namespace

SdpRepresentation build_schur_horn(int n) {
    if (n < 1) throw argument_error("build_schur_horn: n must be positive");
    const int nx = sym_vec_dim(n);
    SdpRepresentation rep(nx + n);
    auto xv = [&](int i, int j) { return sym_vec_index(n, i, j); };
    const int zbase = nx;

    // Ordering of z.
    for (int i = 0; i + 1 < n; ++i) {
        LinExpr e = LinExpr::variable(zbase + i);
        e.add_term(zbase + i + 1, -1.0);
        rep.add_nonneg(e);
    }
    // tr X = sum z.
    LinExpr tr;
    for (int i = 0; i < n; ++i) tr.add_term(xv(i, i), 1.0);
    for (int i = 0; i < n; ++i) tr.add_term(zbase + i, -1.0);
    rep.add_equality(tr);
    // z_1 I - X >= 0.
    AffineMatrixMap top(n);
    for (int i = 0; i < n; ++i) top.add_coeff(zbase, i, i, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) top.add_coeff(xv(i, j), i, j, -1.0);
    rep.add_psd_block(std::move(top));
    // Epigraphs of the partial eigenvalue sums, ell = 2..n-1.
    for (int ell = 2; ell <= n - 1; ++ell) {
        const int t = rep.new_aux();
        const int zb = rep.new_aux_block(sym_vec_dim(n));
        AffineMatrixMap zpsd(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) zpsd.add_coeff(zb + sym_vec_index(n, i, j), i, j, 1.0);
        rep.add_psd_block(std::move(zpsd));

        AffineMatrixMap dom(n); // t I + Z - X >= 0
        for (int i = 0; i < n; ++i) dom.add_coeff(t, i, i, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                dom.add_coeff(zb + sym_vec_index(n, i, j), i, j, 1.0);
                dom.add_coeff(xv(i, j), i, j, -1.0);
            }
        rep.add_psd_block(std::move(dom));

        LinExpr slack; // sum_{j<=ell} z_j - ell*t - tr Z >= 0
        for (int j = 0; j < ell; ++j) slack.add_term(zbase + j, 1.0);
        slack.add_term(t, -static_cast<double>(ell));
        for (int i = 0; i < n; ++i) slack.add_term(zb + sym_vec_index(n, i, i), -1.0);
        rep.add_nonneg(std::move(slack));
    }
    return rep;
}

SdpRepresentation build_orthant(int n, int k, Strategy s, const ToleranceConfig& tol) {
    check_nk(n, k, "build_orthant");
    if (s == Strategy::SocSimplified) return build_soc_orthant(n, k, tol);

    SdpRepresentation rep(n);
    if (k == n) return rep; // full space
    if (k == 0) {
        for (int i = 0; i < n; ++i) rep.add_nonneg(LinExpr::variable(i));
        return rep;
    }

    bool polar = use_polar(s, n, k);
    if (polar && k > n - 2) {
        if (s == Strategy::PolarBased)
            throw strategy_error("build_orthant: polar strategy requires k <= n-2");
        polar = false; // Auto falls back to the derivative chain at k = n-1
    }

    const MatrixXd v = symlin::complement_basis(n).V;
    if (polar) {
        // exists Z in psd_deriv(n-1, k) with diag(x) >= V Z V^T.
        const int zb = rep.new_aux_block(sym_vec_dim(n - 1));
        AffineMatrixMap dom(n);
        for (int i = 0; i < n; ++i) dom.add_coeff(i, i, i, 1.0);
        subtract_conjugated(dom, v, zb);
        rep.add_psd_block(std::move(dom));
        rep.embed(build_psd_deriv(n - 1, k, Strategy::PolarBased, tol),
                  var_range(zb, sym_vec_dim(n - 1)));
    } else {
        // V^T diag(x) V in psd_deriv(n-1, k-1).
        rep.embed(build_psd_deriv(n - 1, k - 1, Strategy::DerivativeBased, tol),
                  compressed_diag_image(v, 0));
    }
    return rep;
}

SdpRepresentation build_psd_deriv(int n, int k, Strategy s, const ToleranceConfig& tol) {
    check_nk(n, k, "build_psd_deriv");
    if (s == Strategy::SocSimplified) return build_soc_psd_deriv(n, k, tol);

    const int nx = sym_vec_dim(n);
    SdpRepresentation rep(nx);
    if (k == n) return rep;
    if (k == 0) {
        AffineMatrixMap psd(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) psd.add_coeff(sym_vec_index(n, i, j), i, j, 1.0);
        rep.add_psd_block(std::move(psd));
        return rep;
    }
    const bool polar = use_polar(s, n, k);
    if (polar && k == n - 1) {
        // Base of the polar chain: the half-space tr(X) >= 0.
        LinExpr tr;
        for (int i = 0; i < n; ++i) tr.add_term(sym_vec_index(n, i, i), 1.0);
        rep.add_nonneg(std::move(tr));
        return rep;
    }
    const Strategy chain = polar ? Strategy::PolarBased : Strategy::DerivativeBased;
    const int zb = rep.new_aux_block(n);
    rep.embed(build_orthant(n, k, chain, tol), var_range(zb, n));
    std::vector<LinExpr> image = var_range(0, nx);
    std::vector<LinExpr> zimg = var_range(zb, n);
    image.insert(image.end(), zimg.begin(), zimg.end());
    rep.embed(build_schur_horn(n), image);
    return rep;
}

SdpRepresentation build_soc_orthant(int n, int k, const ToleranceConfig& tol) {
    check_nk(n, k, "build_soc_orthant");
    if (k == n - 2 && n >= 2) {
        SdpRepresentation rep(n);
        // (x, e_1(x)) in Q^{n+1} as the arrow LMI of order n+1.
        AffineMatrixMap arrow(n + 1);
        for (int j = 0; j < n; ++j) {
            for (int d = 0; d <= n; ++d) arrow.add_coeff(j, d, d, 1.0);
            arrow.add_coeff(j, j, n, 1.0);
        }
        rep.add_psd_block(std::move(arrow));
        return rep;
    }
    if (k == n - 3 && n >= 3) {
        SdpRepresentation rep(n);
        const int zb = rep.new_aux_block(sym_vec_dim(n - 1));
        const MatrixXd v = symlin::complement_basis(n).V;
        AffineMatrixMap dom(n);
        for (int i = 0; i < n; ++i) dom.add_coeff(i, i, i, 1.0);
        subtract_conjugated(dom, v, zb);
        rep.add_psd_block(std::move(dom));
        rep.embed(build_soc_psd_deriv(n - 1, n - 3, tol), var_range(zb, sym_vec_dim(n - 1)));
        return rep;
    }
    throw strategy_error("build_soc_orthant: SOC simplification is defined for k = n-2, n-3");
}

SdpRepresentation build_soc_psd_deriv(int n, int k, const ToleranceConfig& tol) {
    check_nk(n, k, "build_soc_psd_deriv");
    const int nx = sym_vec_dim(n);
    if (k == n - 2 && n >= 2) {
        SdpRepresentation rep(nx);
        // (vec X, tr X) in Q^{n^2+1}; off-diagonal entries appear twice.
        AffineMatrixMap arrow(n * n + 1);
        const int last = n * n;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const int var = sym_vec_index(n, i, j);
                arrow.add_coeff(var, i * n + j, last, 1.0);
                if (i != j) arrow.add_coeff(var, j * n + i, last, 1.0);
                if (i == j)
                    for (int d = 0; d <= last; ++d) arrow.add_coeff(var, d, d, 1.0);
            }
        rep.add_psd_block(std::move(arrow));
        return rep;
    }
    if (k == n - 3 && n >= 3) {
        SdpRepresentation rep(nx);
        const int zb = rep.new_aux_block(n);
        rep.embed(build_soc_orthant(n, n - 3, tol), var_range(zb, n));
        std::vector<LinExpr> image = var_range(0, nx);
        std::vector<LinExpr> zimg = var_range(zb, n);
        image.insert(image.end(), zimg.begin(), zimg.end());
        rep.embed(build_schur_horn(n), image);
        return rep;
    }
    throw strategy_error("build_soc_psd_deriv: SOC simplification is defined for k = n-2, n-3");
}

SdpRepresentation build_orthant_dual(int n, int k, Strategy s, const ToleranceConfig& tol) {
    check_nk(n, k, "build_orthant_dual");
    if (s == Strategy::SocSimplified)
        throw strategy_error("build_orthant_dual: SOC variants are not defined for dual cones");

    SdpRepresentation rep(n, SdpRepresentation::Form::Projection);
    if (k == n) { // dual of the full space is {0}
        rep.set_output_map(std::vector<LinExpr>(n));
        return rep;
    }
    if (k == 0) { // self-dual orthant
        const int yb = rep.new_aux_block(n);
        for (int i = 0; i < n; ++i) rep.add_nonneg(LinExpr::variable(yb + i));
        rep.set_output_map(var_range(yb, n));
        return rep;
    }

    bool polar = use_polar(s, n, k);
    if (polar && k > n - 2) {
        if (s == Strategy::PolarBased)
            throw strategy_error("build_orthant_dual: polar strategy requires k <= n-2");
        polar = false;
    }

    const MatrixXd v = symlin::complement_basis(n).V;
    if (polar) {
        // w = diag(Y), Y >= 0, V^T Y V in the dual of psd_deriv(n-1, k).
        const int yb = rep.new_aux_block(sym_vec_dim(n));
        AffineMatrixMap psd(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) psd.add_coeff(yb + sym_vec_index(n, i, j), i, j, 1.0);
        rep.add_psd_block(std::move(psd));

        std::vector<LinExpr> image(sym_vec_dim(n - 1));
        for (int a = 0; a < n - 1; ++a)
            for (int b = a; b < n - 1; ++b) {
                LinExpr e; // (V^T Y V)_{ab}
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j) {
                        double coef = v(i, a) * v(j, b);
                        if (i != j) coef += v(j, a) * v(i, b);
                        e.add_term(yb + sym_vec_index(n, i, j), coef);
                    }
                image[sym_vec_index(n - 1, a, b)] = e;
            }
        rep.embed(build_psd_deriv_dual(n - 1, k, Strategy::PolarBased, tol), image);

        std::vector<LinExpr> out;
        for (int i = 0; i < n; ++i) out.push_back(LinExpr::variable(yb + sym_vec_index(n, i, i)));
        rep.set_output_map(std::move(out));
    } else {
        // w = diag(V Y V^T) with Y in the dual of psd_deriv(n-1, k-1).
        std::vector<LinExpr> yexprs =
            rep.absorb(build_psd_deriv_dual(n - 1, k - 1, Strategy::DerivativeBased, tol));
        std::vector<LinExpr> out(n);
        for (int i = 0; i < n; ++i) {
            LinExpr e;
            for (int a = 0; a < n - 1; ++a)
                for (int b = a; b < n - 1; ++b) {
                    const double coef = v(i, a) * v(i, b) * (a == b ? 1.0 : 2.0);
                    LinExpr piece = yexprs[sym_vec_index(n - 1, a, b)];
                    piece *= coef;
                    e += piece;
                }
            out[i] = e;
        }
        rep.set_output_map(std::move(out));
    }
    return rep;
}

SdpRepresentation build_psd_deriv_dual(int n, int k, Strategy s, const ToleranceConfig& tol) {
    check_nk(n, k, "build_psd_deriv_dual");
    if (s == Strategy::SocSimplified)
        throw strategy_error("build_psd_deriv_dual: SOC variants are not defined for dual cones");

    const int nx = sym_vec_dim(n);
    SdpRepresentation rep(nx, SdpRepresentation::Form::Projection);
    if (k == n) {
        rep.set_output_map(std::vector<LinExpr>(nx));
        return rep;
    }
    if (k == 0) { // self-dual PSD cone
        const int wb = rep.new_aux_block(nx);
        AffineMatrixMap psd(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) psd.add_coeff(wb + sym_vec_index(n, i, j), i, j, 1.0);
        rep.add_psd_block(std::move(psd));
        rep.set_output_map(var_range(wb, nx));
        return rep;
    }
    const bool polar = use_polar(s, n, k);
    if (polar && k == n - 1) {
        // Dual of the half-space: the ray {t I, t >= 0}.
        const int t = rep.new_aux();
        rep.add_nonneg(LinExpr::variable(t));
        std::vector<LinExpr> out(nx);
        for (int i = 0; i < n; ++i) out[sym_vec_index(n, i, i)] = LinExpr::variable(t);
        rep.set_output_map(std::move(out));
        return rep;
    }
    const Strategy chain = polar ? Strategy::PolarBased : Strategy::DerivativeBased;
    const int wb = rep.new_aux_block(nx);
    std::vector<LinExpr> yexprs = rep.absorb(build_orthant_dual(n, k, chain, tol));
    std::vector<LinExpr> image = var_range(wb, nx);
    image.insert(image.end(), yexprs.begin(), yexprs.end());
    rep.embed(build_schur_horn(n), image);
    rep.set_output_map(var_range(wb, nx));
    return rep;
}

namespace {

// Scaled pencil images G_i = B^{-1/2} A_i B^{-1/2} with B = A(e).
std::vector<SymMatrix> normalized_pencil(const Pencil& pencil, const ToleranceConfig& tol) {
    pencil.validate();
    const SymMatrix b = pencil.eval(pencil.e);
    const SymMatrix s = symlin::inv_sqrt_pd(b, tol);
    std::vector<SymMatrix> g;
    g.reserve(pencil.n());
    for (const auto& a : pencil.A)
        g.push_back(SymMatrix::from_full(s.mat() * a.mat() * s.mat(), 1e-9));
    return g;
}

} // namespace

SdpRepresentation build_spectrahedral_deriv(const Pencil& pencil, int k, Strategy s,
                                            const ToleranceConfig& tol) {
    if (k < 0 || k > pencil.m - 1)
        throw argument_error("build_spectrahedral_deriv: k out of range [0, m-1]");
    const std::vector<SymMatrix> g = normalized_pencil(pencil, tol);
    const int m = pencil.m;
    SdpRepresentation rep(pencil.n());
    std::vector<LinExpr> image(sym_vec_dim(m));
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            LinExpr e;
            for (int i = 0; i < pencil.n(); ++i) e.add_term(i, g[i](a, b));
            image[sym_vec_index(m, a, b)] = e;
        }
    rep.embed(build_psd_deriv(m, k, s, tol), image);
    return rep;
}

SdpRepresentation build_spectrahedral_deriv_dual(const Pencil& pencil, int k, Strategy s,
                                                 const ToleranceConfig& tol) {
    if (k < 0 || k > pencil.m - 1)
        throw argument_error("build_spectrahedral_deriv_dual: k out of range [0, m-1]");
    const std::vector<SymMatrix> g = normalized_pencil(pencil, tol);
    const int m = pencil.m;
    SdpRepresentation rep(pencil.n(), SdpRepresentation::Form::Projection);
    std::vector<LinExpr> yexprs = rep.absorb(build_psd_deriv_dual(m, k, s, tol));
    std::vector<LinExpr> out(pencil.n());
    for (int i = 0; i < pencil.n(); ++i) {
        LinExpr e; // <G_i, Y>
        for (int a = 0; a < m; ++a)
            for (int b = a; b < m; ++b) {
                LinExpr piece = yexprs[sym_vec_index(m, a, b)];
                piece *= g[i](a, b) * (a == b ? 1.0 : 2.0);
                e += piece;
            }
        out[i] = e;
    }
    rep.set_output_map(std::move(out));
    return rep;
}

SdpRepresentation build(const ConeSpec& spec, const ToleranceConfig& tol) {
    spec.validate();
    switch (spec.kind) {
        case ConeSpec::Kind::Orthant:
            return build_orthant(spec.n, spec.k, spec.strategy, tol);
        case ConeSpec::Kind::PsdDeriv:
            return build_psd_deriv(spec.n, spec.k, spec.strategy, tol);
        case ConeSpec::Kind::SpectrahedralDeriv:
            return build_spectrahedral_deriv(*spec.pencil, spec.k, spec.strategy, tol);
        case ConeSpec::Kind::Dual: {
            const ConeSpec& in = *spec.inner;
            switch (in.kind) {
                case ConeSpec::Kind::Orthant:
                    return build_orthant_dual(in.n, in.k, in.strategy, tol);
                case ConeSpec::Kind::PsdDeriv:
                    return build_psd_deriv_dual(in.n, in.k, in.strategy, tol);
                case ConeSpec::Kind::SpectrahedralDeriv:
                    return build_spectrahedral_deriv_dual(*in.pencil, in.k, in.strategy, tol);
                case ConeSpec::Kind::Dual:
                    return build(*in.inner, tol); // closed convex cones: C** = C
            }
        }
    }
    throw argument_error("build: unknown cone kind");
}

} // namespace hypcone::conelib
