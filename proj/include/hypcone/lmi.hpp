#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypcone/errors.hpp"
#include "hypcone/symlin.hpp"

namespace hypcone::lmi {

using symlin::SymMatrix;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Affine scalar functional  constant + sum_i coeff_i * y_i  over a flat
/// variable vector. Terms are kept sorted by variable index with no
/// duplicates and no explicit zeros.
class LinExpr {
public:
    LinExpr() = default;
    explicit LinExpr(double c) : constant_(c) {}

    static LinExpr variable(int idx, double coeff = 1.0);

    double constant() const { return constant_; }
    const std::vector<std::pair<int, double>>& terms() const { return terms_; }
    bool is_constant() const { return terms_.empty(); }

    void add_term(int var, double coeff);
    void add_constant(double c) { constant_ += c; }

    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    LinExpr& operator*=(double s);

    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(double s, LinExpr a) { return a *= s; }

    double eval(const VectorXd& y) const;

    /// Largest variable index referenced, or -1 if constant.
    int max_var() const { return terms_.empty() ? -1 : terms_.back().first; }

    /// Applies var -> expression substitution.
    LinExpr substituted(const std::function<const LinExpr&(int)>& sub) const;

    bool operator==(const LinExpr& o) const = default;

private:
    double constant_ = 0.0;
    std::vector<std::pair<int, double>> terms_;
};

/// One (i,j,value) entry of a symmetric block, i <= j. The mirrored (j,i)
/// entry is implied.
struct Entry {
    int i = 0;
    int j = 0;
    double value = 0.0;
    bool operator==(const Entry&) const = default;
};

/// Symmetric-matrix-valued affine function of the flat variable vector:
/// const_block + sum over coeff blocks of y_var * block. Blocks are stored
/// as upper-triangle entry lists and kept sorted by variable index.
class AffineMatrixMap {
public:
    AffineMatrixMap() = default;
    explicit AffineMatrixMap(int dim) : dim_(dim) {
        if (dim < 1) throw argument_error("AffineMatrixMap: dimension must be positive");
    }

    int dim() const { return dim_; }

    void add_const(int i, int j, double v);
    void add_const(const SymMatrix& m);
    void add_coeff(int var, int i, int j, double v);
    void add_coeff(int var, const SymMatrix& m);

    const std::vector<Entry>& const_entries() const { return const_entries_; }
    const std::vector<std::pair<int, std::vector<Entry>>>& coeffs() const { return coeffs_; }

    SymMatrix const_block() const;
    SymMatrix coeff_block(int var) const;

    /// Evaluates the map at y (y must cover every referenced variable).
    MatrixXd eval(const VectorXd& y) const;

    int max_var() const { return coeffs_.empty() ? -1 : coeffs_.back().first; }

    /// Entry (i,j) of the map as an affine expression.
    LinExpr entry_expr(int i, int j) const;

    AffineMatrixMap substituted(const std::function<const LinExpr&(int)>& sub) const;

    bool operator==(const AffineMatrixMap& o) const = default;

private:
    std::vector<Entry>& coeff_entries(int var);
    static void add_entry(std::vector<Entry>& list, int i, int j, double v);
    void check_index(int i, int j) const;

    int dim_ = 1;
    std::vector<Entry> const_entries_;
    std::vector<std::pair<int, std::vector<Entry>>> coeffs_; // sorted by var
};

/// Residual feasibility problem produced by freezing the interface variables
/// of a slice-form representation; lives purely in the auxiliary variables.
struct MembershipProblem {
    int var_count = 0;
    std::vector<AffineMatrixMap> psd_blocks;
    std::vector<LinExpr> nonneg;     // >= 0
    std::vector<LinExpr> equalities; // == 0
};

/// A cone's lifted semidefinite description.
///
/// Slice form: variables [0, primal_dim) are the interface point itself and
/// [primal_dim, primal_dim + aux_dim) are auxiliary; a point belongs to the
/// cone iff with the interface fixed there exists an auxiliary assignment
/// satisfying all blocks and equalities.
///
/// Projection form: all aux_dim variables are internal and the cone is the
/// image of the feasible set under the affine output map into R^{primal_dim}.
class SdpRepresentation {
public:
    enum class Form { Slice, Projection };

    SdpRepresentation() = default;
    explicit SdpRepresentation(int primal_dim, Form form = Form::Slice);

    int primal_dim() const { return primal_dim_; }
    int aux_dim() const { return aux_dim_; }
    bool is_slice_form() const { return form_ == Form::Slice; }
    int var_count() const { return is_slice_form() ? primal_dim_ + aux_dim_ : aux_dim_; }

    const std::vector<AffineMatrixMap>& psd_blocks() const { return psd_blocks_; }
    const std::vector<LinExpr>& equalities() const { return equalities_; }
    const std::vector<LinExpr>& nonneg_scalars() const { return nonneg_; }
    const std::optional<std::vector<LinExpr>>& output_map() const { return output_map_; }

    /// Allocates one fresh internal variable; returns its index.
    int new_aux();
    /// Allocates `count` fresh internal variables; returns the first index.
    int new_aux_block(int count);

    void add_psd_block(AffineMatrixMap block);
    void add_nonneg(LinExpr expr);
    void add_equality(LinExpr expr);

    /// Records the output map of a projection-form representation (one
    /// expression per interface coordinate, over the internal variables).
    void set_output_map(std::vector<LinExpr> exprs);

    /// Total representation size: sum of PSD block dimensions, 1x1 scalars
    /// counting one each.
    int size() const;

    /// Appends `cone`'s description to this representation, substituting the
    /// given affine image (expressions over this representation's variables)
    /// for the cone's interface. Fresh auxiliaries are allocated for the
    /// cone's internal variables; for projection-form cones, equalities tie
    /// the image to the cone's output map.
    void embed(const SdpRepresentation& cone, const std::vector<LinExpr>& image);

    /// Appends `cone`'s description with every cone variable freshly
    /// allocated, and returns affine expressions (over this representation's
    /// variables) for the cone's interface point. Unlike embed, no equality
    /// constraints are introduced for projection-form cones.
    std::vector<LinExpr> absorb(const SdpRepresentation& cone);

    /// Fixes the interface variables to `point` and returns the residual
    /// feasibility problem over the auxiliary variables.
    MembershipProblem freeze_membership_problem(const VectorXd& point) const;

    /// Structural equality with 1x1 PSD blocks and nonneg scalars identified.
    bool structurally_equal(const SdpRepresentation& o) const;

private:
    void check_expr(const LinExpr& e) const;

    int primal_dim_ = 0;
    int aux_dim_ = 0;
    Form form_ = Form::Slice;
    std::vector<AffineMatrixMap> psd_blocks_;
    std::vector<LinExpr> equalities_;
    std::vector<LinExpr> nonneg_;
    std::optional<std::vector<LinExpr>> output_map_;
};

/// Empty representation of the full space R^{primal_dim}.
SdpRepresentation new_representation(int primal_dim);

/// JSON serialization of a representation (schema documented in README;
/// nonneg scalars are exported as 1x1 blocks).
std::string to_json(const SdpRepresentation& rep);
SdpRepresentation from_json(const std::string& text);

} // namespace hypcone::lmi
