#pragma once

#include <Eigen/Core>
#include <vector>

#include "birank/latin.hpp"

namespace birank {

/// Multi-level output of the biscaled analysis: per-level detail/wavelet
/// subbands plus one final approximation block.
struct SubbandTree {
    struct Level {
        std::vector<Eigen::MatrixXd> detail_a;  // alpha-1 arrays
        std::vector<Eigen::MatrixXd> detail_b;  // beta-1 arrays
        std::vector<Eigen::MatrixXd> wavelets;  // (alpha-1)(beta-1) arrays
    };
    int alpha = 0;
    int beta = 0;
    Eigen::Index rows = 0;  // original shape
    Eigen::Index cols = 0;
    std::vector<Level> levels;  // finest first
    Eigen::MatrixXd approx;

    int depth() const { return static_cast<int>(levels.size()); }
    std::size_t coefficient_count() const;
    double energy() const;  // squared Frobenius norm over all subbands
};

/// One pyramid step per level: alpha x beta blocks, flattened in digit order,
/// hit with the family matrix; recursion continues on the approximation band.
SubbandTree analyze(const Eigen::MatrixXd& x, const HaarFamily& fam, int depth);

/// Exact inverse of analyze up to floating error.
Eigen::MatrixXd synthesize(const SubbandTree& tree, const HaarFamily& fam);

/// Zeroes detail/wavelet coefficients with |c| <= threshold (the final
/// approximation is kept); returns the fraction of coefficients retained.
double threshold_tree(SubbandTree& tree, double threshold);

}  // namespace birank
