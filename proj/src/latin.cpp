#include "birank/latin.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "birank/filters.hpp"

namespace birank {

Eigen::MatrixXd flatten_grid(const Eigen::MatrixXd& grid) {
    Eigen::MatrixXd row(1, grid.size());
    int c = 0;
    for (int i = 0; i < grid.rows(); ++i)
        for (int j = 0; j < grid.cols(); ++j) row(0, c++) = grid(i, j);
    return row;
}

Eigen::MatrixXd unflatten_grid(const Eigen::VectorXd& row, int alpha, int beta) {
    if (row.size() != static_cast<Eigen::Index>(alpha) * beta)
        throw std::invalid_argument("unflatten_grid: size mismatch");
    Eigen::MatrixXd grid(alpha, beta);
    int c = 0;
    for (int i = 0; i < alpha; ++i)
        for (int j = 0; j < beta; ++j) grid(i, j) = row(c++);
    return grid;
}

Eigen::MatrixXd HaarFamily::family_matrix() const {
    Eigen::MatrixXd m(members(), members());
    int r = 0;
    m.row(r++) = flatten_grid(scaling);
    for (const auto& g : detail_a) m.row(r++) = flatten_grid(g);
    for (const auto& g : detail_b) m.row(r++) = flatten_grid(g);
    for (const auto& g : wavelets) m.row(r++) = flatten_grid(g);
    return m;
}

Eigen::MatrixXd HaarFamily::separable_rows() const {
    Eigen::MatrixXd m(alpha + beta - 1, members());
    int r = 0;
    m.row(r++) = flatten_grid(scaling);
    for (const auto& g : detail_a) m.row(r++) = flatten_grid(g);
    for (const auto& g : detail_b) m.row(r++) = flatten_grid(g);
    return m;
}

namespace {

HaarFamily family_from_matrix(int alpha, int beta, const Eigen::MatrixXd& m) {
    HaarFamily fam;
    fam.alpha = alpha;
    fam.beta = beta;
    int r = 0;
    fam.scaling = unflatten_grid(m.row(r++), alpha, beta);
    for (int i = 1; i < alpha; ++i) fam.detail_a.push_back(unflatten_grid(m.row(r++), alpha, beta));
    for (int j = 1; j < beta; ++j) fam.detail_b.push_back(unflatten_grid(m.row(r++), alpha, beta));
    while (r < m.rows()) fam.wavelets.push_back(unflatten_grid(m.row(r++), alpha, beta));
    return fam;
}

}  // namespace

Eigen::MatrixXd latin33_unitary() {
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0), s10 = std::sqrt(10.0),
                 s15 = std::sqrt(15.0);
    Eigen::MatrixXd u(9, 9);
    u.row(0) << 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3;
    u.row(1) << s2 / 6, s2 / 6, s2 / 6, s2 / 6, s2 / 6, s2 / 6, -s2 / 3, -s2 / 3, -s2 / 3;
    u.row(2) << s6 / 6, s6 / 6, s6 / 6, -s6 / 6, -s6 / 6, -s6 / 6, 0, 0, 0;
    u.row(3) << s2 / 6, s2 / 6, -s2 / 3, s2 / 6, s2 / 6, -s2 / 3, s2 / 6, s2 / 6, -s2 / 3;
    u.row(4) << s6 / 6, -s6 / 6, 0, s6 / 6, -s6 / 6, 0, s6 / 6, -s6 / 6, 0;
    u.row(5) << s10 / 6, -s10 / 30, -2 * s10 / 15, -2 * s10 / 15, -s10 / 30, s10 / 6, -s10 / 30,
        s10 / 15, -s10 / 30;
    u.row(6) << 0, -s15 / 30, s15 / 30, -2 * s15 / 15, 2 * s15 / 15, 0, 2 * s15 / 15, -s15 / 10,
        -s15 / 30;
    u.row(7) << s15 / 15, -s15 / 6, s15 / 10, 0, s15 / 15, -s15 / 15, -s15 / 15, s15 / 10,
        -s15 / 30;
    u.row(8) << s10 / 10, 0, -s10 / 10, 0, s10 / 10, -s10 / 10, -s10 / 10, -s10 / 10, s10 / 5;
    return u;
}

Eigen::MatrixXd latin33_partial_isometry() { return latin33_unitary().topRows(5); }

Eigen::MatrixXd triadic_constant_completion() {
    const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0), s2 = std::sqrt(2.0);
    Eigen::MatrixXd u(3, 3);
    u.row(0) << 1 / s3, 1 / s3, 1 / s3;
    u.row(1) << 1 / s6, 1 / s6, -2 / s6;
    u.row(2) << 1 / s2, -1 / s2, 0;
    return u;
}

HaarFamily latin_square_family() { return family_from_matrix(3, 3, latin33_unitary()); }

HaarFamily haar_family(int alpha, int beta) {
    DilationPair d(alpha, beta);  // validates alpha, beta >= 2
    if (alpha == 3 && beta == 3) return latin_square_family();
    const int t = alpha * beta;
    Eigen::MatrixXd row_a(1, alpha), row_b(1, beta);
    row_a.setConstant(1.0 / std::sqrt(static_cast<double>(alpha)));
    row_b.setConstant(1.0 / std::sqrt(static_cast<double>(beta)));
    Eigen::MatrixXd ua = complete_constant(row_a);
    Eigen::MatrixXd ub = complete_constant(row_b);

    Eigen::MatrixXd partial(alpha + beta - 1, t);
    int r = 0;
    partial.row(r++) = flatten_grid(ua.row(0).transpose() * ub.row(0));
    for (int l = 1; l < alpha; ++l)
        partial.row(r++) = flatten_grid(ua.row(l).transpose() * ub.row(0));
    for (int m = 1; m < beta; ++m)
        partial.row(r++) = flatten_grid(ua.row(0).transpose() * ub.row(m));
    return family_from_matrix(alpha, beta, complete_constant(partial));
}

std::vector<TrigPoly2> family_filters(const HaarFamily& fam) {
    Eigen::MatrixXd m = fam.family_matrix();
    double inv_sqrt_t = 1.0 / std::sqrt(static_cast<double>(fam.members()));
    std::vector<TrigPoly2> filters;
    filters.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        std::vector<TrigPoly2::Term> terms;
        int c = 0;
        for (int i = 0; i < fam.alpha; ++i)
            for (int j = 0; j < fam.beta; ++j)
                terms.push_back({-i, -j, m(r, c++) * inv_sqrt_t});
        filters.push_back(TrigPoly2::from_terms(terms));
    }
    return filters;
}

namespace {

// v as q*sqrt(num)/den for the small surds of the triadic fixture, else decimal.
std::string latex_entry(double v) {
    const int nums[] = {1, 2, 3, 5, 6, 10, 15};
    for (int num : nums)
        for (int den = 1; den <= 30; ++den) {
            double cand = std::sqrt(static_cast<double>(num)) / den;
            for (int sgn : {1, -1})
                if (std::abs(v - sgn * cand) < 1e-12) {
                    std::ostringstream os;
                    if (sgn < 0) os << "-";
                    if (num == 1 && den == 1) return sgn < 0 ? "-1" : "1";
                    if (num == 1)
                        os << "\\tfrac{1}{" << den << "}";
                    else if (den == 1)
                        os << "\\sqrt{" << num << "}";
                    else
                        os << "\\tfrac{\\sqrt{" << num << "}}{" << den << "}";
                    return os.str();
                }
        }
    if (std::abs(v) < 1e-14) return "0";
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

std::string grid_to_latex(const Eigen::MatrixXd& grid) {
    std::ostringstream os;
    os << "\\begin{bmatrix}\n";
    for (int i = 0; i < grid.rows(); ++i) {
        for (int j = 0; j < grid.cols(); ++j) {
            os << latex_entry(grid(i, j));
            if (j + 1 < grid.cols()) os << " & ";
        }
        os << (i + 1 < grid.rows() ? " \\\\\n" : "\n");
    }
    os << "\\end{bmatrix}\n";
    return os.str();
}

}  // namespace birank
