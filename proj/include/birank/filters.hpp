#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "birank/lattice.hpp"
#include "birank/trigpoly.hpp"

namespace birank {

/// Matrix-valued function of xi, either exact (entries are TrigPoly2) or held
/// as samples on a frequency grid.
class FilterMatrixGrid {
  public:
    enum class Form { Translation, Coset };

    static FilterMatrixGrid exact(Form form, DigitSet digits,
                                  std::vector<std::vector<TrigPoly2>> entries);
    static FilterMatrixGrid sampled(Form form, FreqGrid grid, int rows, int cols,
                                    std::vector<Eigen::MatrixXcd> at_nodes);

    Form form() const { return form_; }
    bool is_exact() const { return exact_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const DigitSet& digits() const { return digits_; }
    const FreqGrid& grid() const { return grid_; }

    // Exact form only.
    Eigen::MatrixXcd eval_at(Vec2 xi) const;
    const TrigPoly2& entry(int r, int c) const { return entries_.at(r).at(c); }

    // Sampled form only; node index (ix, iy) on the stored grid.
    const Eigen::MatrixXcd& at_node(int ix, int iy) const;
    std::vector<Eigen::MatrixXcd>& mutable_nodes() { return at_nodes_; }

  private:
    Form form_ = Form::Translation;
    bool exact_ = true;
    int rows_ = 0, cols_ = 0;
    DigitSet digits_{DilationPair{2, 2}, TSpec{1, 0}, 2, 1, {{0, 0}, {1, 0}}};
    std::vector<std::vector<TrigPoly2>> entries_;
    FreqGrid grid_;
    std::vector<Eigen::MatrixXcd> at_nodes_;
};

/// Translation-form filter matrix: entry (l,i) is filters[l] translated by 2 pi T^-1 d_i.
FilterMatrixGrid translation_matrix(const std::vector<TrigPoly2>& filters, const DilationPair& d,
                                    const TSpec& t);

/// Coset filter matrix: entry (l,p) is the normalized coset partial sum mu_{f_l,p}.
FilterMatrixGrid coset_matrix(const std::vector<TrigPoly2>& filters, const DilationPair& d,
                              const TSpec& t);

/// The unitary phase matrix with U = U' D; D_{j,k} = e^{-i<xi,d_j>} (1/sqrt t) e^{-i<2 pi T^-1 d_k, d_j>}.
Eigen::MatrixXcd coset_phase_matrix(const DigitSet& ds, Vec2 xi);

struct UnitarityReport {
    enum class Verdict { Unitary, PartialIsometry, Neither };
    Verdict verdict = Verdict::Neither;
    double max_row_dev = 0.0;  // max over nodes of max |(M M* - I)_{ij}|
    double max_col_dev = 0.0;  // square matrices: max |(M* M - I)_{ij}|
    bool square = false;
    double tol = 1e-10;

    std::string verdict_name() const;
};

UnitarityReport check_unitarity(const FilterMatrixGrid& m, const FreqGrid& grid,
                                double tol = 1e-10);
UnitarityReport check_unitarity_constant(const Eigen::MatrixXcd& m, double tol = 1e-10);

/// Completes k orthonormal rows to a t x t unitary by Gram-Schmidt against the
/// standard basis in index order, skipping near-dependent candidates.
Eigen::MatrixXcd complete_constant(const Eigen::MatrixXcd& rows);
Eigen::MatrixXd complete_constant(const Eigen::MatrixXd& rows);

/// Fourth row orthogonal to three given rows of a 3x4 partial isometry,
/// via the conjugate generalized cross product. The phase is normalized so the
/// entry of largest magnitude is real positive (ties: lowest column index).
/// Throws if the rows are numerically rank deficient.
Eigen::RowVector4cd complete_fourth_row(const Eigen::Matrix<Cplx, 3, 4>& rows);

/// Pointwise unitary completion of a sampled 3x4 partial isometry field.
/// Throws with the node named if a node is rank deficient or fails the
/// partial-isometry precondition (deviation > pre_tol).
FilterMatrixGrid complete_pointwise(const FilterMatrixGrid& m, double pre_tol = 1e-8);

/// Dyadic detail filters: psiA = e^{-i xi1} conj(phiA(. + pi e1)), and the
/// symmetric psiB.
std::pair<TrigPoly2, TrigPoly2> detail_filters_dyadic(const TrigPoly2& phi_a,
                                                      const TrigPoly2& phi_b);

/// phiA(xi1, beta xi2) phiB(xi) - phiA(xi) phiB(alpha xi1, xi2); the zero
/// polynomial iff the intertwining relation holds identically.
TrigPoly2 intertwine_residual(const TrigPoly2& phi_a, const TrigPoly2& phi_b,
                              const DilationPair& d);

using FilterFn = std::function<Cplx(Vec2)>;

/// The four-term commuting-lattice functional f(xi) of the dyadic pair.
Cplx commuting_lattice_residual(const FilterFn& m_a, const FilterFn& m_b, Vec2 xi);
Cplx commuting_lattice_residual(const TrigPoly2& phi_a, const TrigPoly2& phi_b, Vec2 xi);

/// Separable filter pair from univariate factors (f1 in xi1, f2 in xi2).
std::pair<TrigPoly2, TrigPoly2> tensor_filters(const TrigPoly2& f1, const TrigPoly2& f2);

}  // namespace birank
