#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "birank/lattice.hpp"
#include "birank/trigpoly.hpp"

namespace birank {

/// A biscaled Haar-type wavelet family. Each member is an alpha x beta grid of
/// real coefficients; the function it represents is sqrt(alpha beta) times the
/// grid contracted against the indicator tiles of [0,1/alpha] x [0,1/beta]
/// translated by the digit lattice. Grids flattened in digit order form the
/// rows of an (alpha beta) x (alpha beta) orthogonal matrix.
struct HaarFamily {
    int alpha = 0;
    int beta = 0;
    Eigen::MatrixXd scaling;                // constant grid, entries 1/sqrt(alpha beta)
    std::vector<Eigen::MatrixXd> detail_a;  // alpha-1 grids
    std::vector<Eigen::MatrixXd> detail_b;  // beta-1 grids
    std::vector<Eigen::MatrixXd> wavelets;  // (alpha-1)(beta-1) grids

    int members() const { return alpha * beta; }
    // Rows: scaling, detail_a..., detail_b..., wavelets..., flattened in digit order.
    Eigen::MatrixXd family_matrix() const;
    // Rows of {scaling, detail_a..., detail_b...} only.
    Eigen::MatrixXd separable_rows() const;
};

Eigen::MatrixXd flatten_grid(const Eigen::MatrixXd& grid);
Eigen::MatrixXd unflatten_grid(const Eigen::VectorXd& row, int alpha, int beta);

/// The explicit triadic family with pinned coefficients.
HaarFamily latin_square_family();

/// Pinned fixtures: the 9x9 unitary, its first five rows, and the 3x3 constant
/// completion factor of the triadic coset matrix.
Eigen::MatrixXd latin33_unitary();
Eigen::MatrixXd latin33_partial_isometry();
Eigen::MatrixXd triadic_constant_completion();

/// Generalized biscaled Haar family via unitary completion of the constant
/// coset rows; (3,3) returns the pinned fixture family.
HaarFamily haar_family(int alpha, int beta);

/// Filter function (for T = AB) of each family member, in digit-translate form:
/// m_f = (1/sqrt(alpha beta)) sum_p grid_p e^{-i<xi, d_p>}.
std::vector<TrigPoly2> family_filters(const HaarFamily& fam);

/// Grid entries rendered in sqrt-fraction notation where recognizable.
std::string grid_to_latex(const Eigen::MatrixXd& grid);

}  // namespace birank
