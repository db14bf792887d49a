#include "hypcone/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hypcone::lmi {

// ---------------------------------------------------------------------------
// LinExpr

LinExpr LinExpr::variable(int idx, double coeff) {
    if (idx < 0) throw argument_error("LinExpr: negative variable index");
    LinExpr e;
    e.add_term(idx, coeff);
    return e;
}

void LinExpr::add_term(int var, double coeff) {
    if (var < 0) throw argument_error("LinExpr: negative variable index");
    if (coeff == 0.0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), var,
                               [](const auto& t, int v) { return t.first < v; });
    if (it != terms_.end() && it->first == var) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    } else {
        terms_.insert(it, {var, coeff});
    }
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    constant_ += o.constant_;
    for (const auto& [v, c] : o.terms_) add_term(v, c);
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    constant_ -= o.constant_;
    for (const auto& [v, c] : o.terms_) add_term(v, -c);
    return *this;
}

LinExpr& LinExpr::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        constant_ = 0.0;
        return *this;
    }
    constant_ *= s;
    for (auto& [v, c] : terms_) c *= s;
    return *this;
}

double LinExpr::eval(const VectorXd& y) const {
    double r = constant_;
    for (const auto& [v, c] : terms_) r += c * y(v);
    return r;
}

LinExpr LinExpr::substituted(const std::function<const LinExpr&(int)>& sub) const {
    LinExpr r(constant_);
    for (const auto& [v, c] : terms_) {
        LinExpr piece = sub(v);
        piece *= c;
        r += piece;
    }
    return r;
}

// ---------------------------------------------------------------------------
// AffineMatrixMap

void AffineMatrixMap::check_index(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
        throw argument_error("AffineMatrixMap: entry index out of range");
}

void AffineMatrixMap::add_entry(std::vector<Entry>& list, int i, int j, double v) {
    if (v == 0.0) return;
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(list.begin(), list.end(), std::make_pair(i, j),
                               [](const Entry& e, const std::pair<int, int>& p) {
                                   return std::make_pair(e.i, e.j) < p;
                               });
    if (it != list.end() && it->i == i && it->j == j) {
        it->value += v;
        if (it->value == 0.0) list.erase(it);
    } else {
        list.insert(it, Entry{i, j, v});
    }
}

std::vector<Entry>& AffineMatrixMap::coeff_entries(int var) {
    if (var < 0) throw argument_error("AffineMatrixMap: negative variable index");
    auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), var,
                               [](const auto& c, int v) { return c.first < v; });
    if (it == coeffs_.end() || it->first != var)
        it = coeffs_.insert(it, {var, {}});
    return it->second;
}

void AffineMatrixMap::add_const(int i, int j, double v) {
    check_index(i, j);
    add_entry(const_entries_, i, j, v);
}

void AffineMatrixMap::add_const(const SymMatrix& m) {
    if (m.dim() != dim_) throw argument_error("AffineMatrixMap: const block dimension mismatch");
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            add_const(i, j, m(i, j));
}

void AffineMatrixMap::add_coeff(int var, int i, int j, double v) {
    check_index(i, j);
    if (v == 0.0) return;
    add_entry(coeff_entries(var), i, j, v);
}

void AffineMatrixMap::add_coeff(int var, const SymMatrix& m) {
    if (m.dim() != dim_) throw argument_error("AffineMatrixMap: coeff block dimension mismatch");
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            add_coeff(var, i, j, m(i, j));
}

static SymMatrix entries_to_sym(const std::vector<Entry>& entries, int dim) {
    SymMatrix m(dim);
    for (const Entry& e : entries) m.set(e.i, e.j, e.value);
    return m;
}

SymMatrix AffineMatrixMap::const_block() const { return entries_to_sym(const_entries_, dim_); }

SymMatrix AffineMatrixMap::coeff_block(int var) const {
    auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), var,
                               [](const auto& c, int v) { return c.first < v; });
    if (it == coeffs_.end() || it->first != var) return SymMatrix(dim_);
    return entries_to_sym(it->second, dim_);
}

MatrixXd AffineMatrixMap::eval(const VectorXd& y) const {
    MatrixXd m = MatrixXd::Zero(dim_, dim_);
    for (const Entry& e : const_entries_) {
        m(e.i, e.j) += e.value;
        if (e.i != e.j) m(e.j, e.i) += e.value;
    }
    for (const auto& [var, entries] : coeffs_) {
        const double yv = y(var);
        for (const Entry& e : entries) {
            m(e.i, e.j) += yv * e.value;
            if (e.i != e.j) m(e.j, e.i) += yv * e.value;
        }
    }
    return m;
}

LinExpr AffineMatrixMap::entry_expr(int i, int j) const {
    check_index(i, j);
    if (i > j) std::swap(i, j);
    LinExpr e;
    for (const Entry& c : const_entries_)
        if (c.i == i && c.j == j) e.add_constant(c.value);
    for (const auto& [var, entries] : coeffs_)
        for (const Entry& c : entries)
            if (c.i == i && c.j == j) e.add_term(var, c.value);
    return e;
}

AffineMatrixMap AffineMatrixMap::substituted(const std::function<const LinExpr&(int)>& sub) const {
    AffineMatrixMap r(dim_);
    r.const_entries_ = const_entries_;
    for (const auto& [var, entries] : coeffs_) {
        const LinExpr& e = sub(var);
        for (const Entry& c : entries) {
            if (e.constant() != 0.0) add_entry(r.const_entries_, c.i, c.j, e.constant() * c.value);
            for (const auto& [w, a] : e.terms())
                r.add_coeff(w, c.i, c.j, a * c.value);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// SdpRepresentation

SdpRepresentation::SdpRepresentation(int primal_dim, Form form)
    : primal_dim_(primal_dim), form_(form) {
    if (primal_dim < 0) throw argument_error("SdpRepresentation: negative interface dimension");
}

SdpRepresentation new_representation(int primal_dim) { return SdpRepresentation(primal_dim); }

int SdpRepresentation::new_aux() {
    const int idx = var_count();
    ++aux_dim_;
    return idx;
}

int SdpRepresentation::new_aux_block(int count) {
    if (count < 0) throw argument_error("new_aux_block: negative count");
    const int idx = var_count();
    aux_dim_ += count;
    return idx;
}

void SdpRepresentation::check_expr(const LinExpr& e) const {
    if (e.max_var() >= var_count())
        throw argument_error("SdpRepresentation: expression references unallocated variable");
}

void SdpRepresentation::add_psd_block(AffineMatrixMap block) {
    if (block.max_var() >= var_count())
        throw argument_error("SdpRepresentation: block references unallocated variable");
    psd_blocks_.push_back(std::move(block));
}

void SdpRepresentation::add_nonneg(LinExpr expr) {
    check_expr(expr);
    nonneg_.push_back(std::move(expr));
}

void SdpRepresentation::add_equality(LinExpr expr) {
    check_expr(expr);
    equalities_.push_back(std::move(expr));
}

void SdpRepresentation::set_output_map(std::vector<LinExpr> exprs) {
    if (is_slice_form())
        throw argument_error("set_output_map: representation is slice-form");
    if (static_cast<int>(exprs.size()) != primal_dim_)
        throw argument_error("set_output_map: expression count must equal the interface dimension");
    for (const LinExpr& e : exprs)
        if (e.max_var() >= aux_dim_)
            throw argument_error("set_output_map: expression references unallocated variable");
    output_map_ = std::move(exprs);
}

int SdpRepresentation::size() const {
    int s = static_cast<int>(nonneg_.size());
    for (const auto& b : psd_blocks_) s += b.dim();
    return s;
}

namespace {

// Variable substitution table: cone var -> expression over host vars.
class SubstitutionTable {
public:
    SubstitutionTable(const std::vector<LinExpr>* image, int image_count, int fresh_base)
        : image_(image), image_count_(image_count), fresh_base_(fresh_base) {}

    const LinExpr& operator()(int v) const {
        if (v < image_count_) return (*image_)[v];
        const int fresh = fresh_base_ + (v - image_count_);
        auto it = cache_.find(fresh);
        if (it == cache_.end())
            it = cache_.emplace(fresh, LinExpr::variable(fresh)).first;
        return it->second;
    }

private:
    const std::vector<LinExpr>* image_;
    int image_count_;
    int fresh_base_;
    mutable std::map<int, LinExpr> cache_;
};

} // namespace

void SdpRepresentation::embed(const SdpRepresentation& cone, const std::vector<LinExpr>& image) {
    if (static_cast<int>(image.size()) != cone.primal_dim())
        throw argument_error("embed: image dimension does not match the cone's interface");
    if (!cone.is_slice_form() && !cone.output_map_)
        throw argument_error("embed: projection-form cone has no output map");
    for (const LinExpr& e : image) check_expr(e);

    const bool slice = cone.is_slice_form();
    const int substituted_count = slice ? cone.primal_dim() : 0;
    const int fresh_count = slice ? cone.aux_dim() : cone.var_count();
    const int base = new_aux_block(fresh_count);
    SubstitutionTable sub(&image, substituted_count, base);
    auto subfn = std::function<const LinExpr&(int)>(std::cref(sub));

    for (const auto& b : cone.psd_blocks_) add_psd_block(b.substituted(subfn));
    for (const auto& e : cone.nonneg_) add_nonneg(e.substituted(subfn));
    for (const auto& e : cone.equalities_) add_equality(e.substituted(subfn));
    if (!slice) {
        for (int j = 0; j < cone.primal_dim(); ++j)
            add_equality(image[j] - (*cone.output_map_)[j].substituted(subfn));
    }
}

std::vector<LinExpr> SdpRepresentation::absorb(const SdpRepresentation& cone) {
    if (!cone.is_slice_form() && !cone.output_map_)
        throw argument_error("absorb: projection-form cone has no output map");
    const int base = new_aux_block(cone.var_count());
    static const std::vector<LinExpr> no_image;
    SubstitutionTable sub(&no_image, 0, base);
    auto subfn = std::function<const LinExpr&(int)>(std::cref(sub));

    for (const auto& b : cone.psd_blocks_) add_psd_block(b.substituted(subfn));
    for (const auto& e : cone.nonneg_) add_nonneg(e.substituted(subfn));
    for (const auto& e : cone.equalities_) add_equality(e.substituted(subfn));

    std::vector<LinExpr> iface;
    iface.reserve(cone.primal_dim());
    if (cone.is_slice_form()) {
        for (int j = 0; j < cone.primal_dim(); ++j)
            iface.push_back(LinExpr::variable(base + j));
    } else {
        for (const LinExpr& e : *cone.output_map_)
            iface.push_back(e.substituted(subfn));
    }
    return iface;
}

MembershipProblem SdpRepresentation::freeze_membership_problem(const VectorXd& point) const {
    if (!is_slice_form())
        throw unsupported_form_error(
            "freeze_membership_problem: projection-form representation has no slice semantics");
    if (point.size() != primal_dim_)
        throw argument_error("freeze_membership_problem: point dimension mismatch");

    std::vector<LinExpr> table(var_count());
    for (int v = 0; v < primal_dim_; ++v) table[v] = LinExpr(point(v));
    for (int v = primal_dim_; v < var_count(); ++v)
        table[v] = LinExpr::variable(v - primal_dim_);
    auto subfn = std::function<const LinExpr&(int)>(
        [&table](int v) -> const LinExpr& { return table[v]; });

    MembershipProblem p;
    p.var_count = aux_dim_;
    for (const auto& b : psd_blocks_) p.psd_blocks.push_back(b.substituted(subfn));
    for (const auto& e : nonneg_) p.nonneg.push_back(e.substituted(subfn));
    for (const auto& e : equalities_) p.equalities.push_back(e.substituted(subfn));
    return p;
}

namespace {

// Canonical view: every nonneg scalar as a 1x1 block appended after the PSD
// blocks, so "scalar" and "1x1 block" compare equal.
std::vector<AffineMatrixMap> canonical_blocks(const SdpRepresentation& r) {
    std::vector<AffineMatrixMap> out;
    std::vector<LinExpr> scalars;
    for (const auto& b : r.psd_blocks()) {
        if (b.dim() == 1) {
            scalars.push_back(b.entry_expr(0, 0));
        } else {
            out.push_back(b);
        }
    }
    for (const auto& e : r.nonneg_scalars()) scalars.push_back(e);
    for (const auto& e : scalars) {
        AffineMatrixMap m(1);
        m.add_const(0, 0, e.constant());
        for (const auto& [v, c] : e.terms()) m.add_coeff(v, 0, 0, c);
        out.push_back(m);
    }
    return out;
}

} // namespace

bool SdpRepresentation::structurally_equal(const SdpRepresentation& o) const {
    return primal_dim_ == o.primal_dim_ && aux_dim_ == o.aux_dim_ && form_ == o.form_ &&
           canonical_blocks(*this) == canonical_blocks(o) && equalities_ == o.equalities_ &&
           output_map_ == o.output_map_;
}

} // namespace hypcone::lmi
