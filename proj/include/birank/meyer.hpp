#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "birank/lattice.hpp"
#include "birank/trigpoly.hpp"

namespace birank {

/// Squared corner values (b, c) with b + c = 1/(4 pi^2) - a - d and b c = a d,
/// b >= c. Requires a, d >= 0 and a + d < 1/(8 pi^2).
std::pair<double, double> solve_corner_values(double a, double d);

/// Specification of the corner-square data of a rank-2 Meyer profile.
struct MeyerCornerSpec {
    enum class Mode { PiecewiseConstant, Triangular, Tensor, Samples };
    Mode mode = Mode::PiecewiseConstant;

    // Piecewise-constant: squared values a (on K00 cap Xi0) and d (K11 cap Xi0);
    // b, c come from solve_corner_values unless explicitly overridden.
    double a = 1.0 / (64.0 * kPi * kPi);
    double d = 1.0 / (64.0 * kPi * kPi);
    bool explicit_bc = false;  // diagnostic hook: force b, c (used to break (d)/(g))
    double b = 0.0;
    double c = 0.0;

    // Triangular: squared value on the K00 upper triangle; the K10 upper
    // triangle carries 1/(4 pi^2) - tri_a.
    double tri_a = 1.0 / (8.0 * kPi * kPi);

    // Tensor: squared univariate band value p^2 on (2pi/3, 4pi/3);
    // q^2 = 1/(2 pi) - p^2 on the negative band. Both must be positive.
    double tensor_p2 = 1.0 / (4.0 * kPi);

    // Samples: user-supplied grid values.
    Eigen::MatrixXd samples;

    void validate() const;  // throws std::invalid_argument on violations

    static MeyerCornerSpec piecewise(double a, double d);
    static MeyerCornerSpec triangular(double tri_a);
    static MeyerCornerSpec tensor(double p2 = 1.0 / (4.0 * kPi));
};

enum class Region : std::uint8_t {
    Outside = 0,
    Central = 1,
    Corner = 2,
    BorderI = 3,
    BorderJ = 4,
    Unresolved = 5,
};

const char* region_name(Region r);

struct ProfileSample {
    double value = 0.0;
    Region region = Region::Outside;
};

// Numeric corner-square values derived from a MeyerCornerSpec.
struct CornerTables {
    double pc[2][2] = {{0, 0}, {0, 0}};  // Xi0 values indexed [s1][s2]
    double tri_up[2][2] = {{0, 0}, {0, 0}};
    double tri_lo[2][2] = {{0, 0}, {0, 0}};
    double band_p = 0.0;
    double band_q = 0.0;
};

/// Sampled candidate scaling-function transform theta = phi-hat on a frequency
/// grid, along with the exact evaluator it was sampled from.
class FreqProfile {
  public:
    FreqGrid grid;
    Eigen::MatrixXd values;  // values(ix, iy) = theta(node ix, node iy)
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> tags;
    MeyerCornerSpec spec;
    CornerTables tables;  // derived from spec by build_profile

    ProfileSample eval_at(Vec2 xi) const;
    double value_at(Vec2 xi) const { return eval_at(xi).value; }
    Region tag_at(int ix, int iy) const { return static_cast<Region>(tags(ix, iy)); }
    std::size_t unresolved_count() const;
};

FreqProfile build_profile(const MeyerCornerSpec& spec, const FreqGrid& grid);

struct OrthoReport {
    double max_dev = 0.0;  // max |S(xi) - 1/(4 pi^2)| over resolved fundamental-cell nodes
    std::size_t nodes_checked = 0;
    std::size_t nodes_skipped = 0;
};

OrthoReport orthonormality_sum(const FreqProfile& p);

enum class FilterDirection { A, B };

/// Filter value m^A_phi (or m^B_phi) at xi via the proof's case split, checking
/// all 2 pi Z^2 translates that land in the support square. `inconsistency`,
/// when non-null, receives the max disagreement between candidate values.
/// Throws if no translate determines the value (indicates a profile bug).
Cplx filter_quotient_at(const FreqProfile& p, FilterDirection dir, Vec2 xi,
                        double* inconsistency = nullptr);

struct QuotientField {
    FilterDirection dir = FilterDirection::A;
    std::vector<double> nodes;   // fundamental-cell coordinates (shared per axis)
    Eigen::MatrixXcd values;     // values(i, j) = m(nodes[i], nodes[j])
    double max_inconsistency = 0.0;
};

QuotientField filter_quotient(const FreqProfile& p, FilterDirection dir);

struct BmraReport {
    double s_max_dev = 0.0;
    double quotient_periodicity_a = 0.0;
    double quotient_periodicity_b = 0.0;
    double corner_d_residual = 0.0;
    double corner_g_residual = 0.0;
    double intertwine_max = 0.0;
    double commuting_f_max = 0.0;  // on L-rectangle nodes
    std::size_t unresolved_nodes = 0;

    double max_residual() const;
};

BmraReport verify_bmra(const FreqProfile& p);

/// True if xi lies in one of the four L rectangles.
bool in_l_rectangle(Vec2 xi);

/// Gram matrix of <phi, phi(.-k)> for |k|_inf <= window_radius by midpoint
/// quadrature; entry (k1 + K, k2 + K).
Eigen::MatrixXd translate_gram(const FreqProfile& p, int window_radius);

/// Normalized maximal 2x2 minor of the sampled profile (0 iff outer product).
double nonseparability_score(const FreqProfile& p);

struct WaveletSynthesis {
    FreqGrid grid;             // dilated grid: half extent doubled, 2n cells
    Eigen::MatrixXcd psi_hat;  // psi-hat(node) = m_psi(node/2) theta(node/2)
    double completion_unitarity_max = 0.0;
    double psi_norm = 0.0;  // frequency-domain quadrature norm
    std::size_t completed_nodes = 0;
};

/// Builds the 3x4 filter matrix of {phi, psi^A, psi^B} for T = AB from the
/// sampled quotient filters, completes it pointwise, and reads off psi-hat.
WaveletSynthesis synthesize_wavelet(const FreqProfile& p, bool skip_verify = false);

/// <psi, phi(.-k)> by frequency quadrature for |k|_inf <= window_radius.
Eigen::MatrixXcd wavelet_scaling_inners(const WaveletSynthesis& w, const FreqProfile& p,
                                        int window_radius);

/// Real-space psi on [-box_half, box_half]^2 with nx samples per axis, by
/// quadrature of the inverse transform.
Eigen::MatrixXcd wavelet_real_space(const WaveletSynthesis& w, double box_half, int nx);

}  // namespace birank
