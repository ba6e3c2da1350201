#include <cmath>
#include <random>

#include "birank/filters.hpp"
#include "birank/latin.hpp"
#include "doctest.h"

using namespace birank;

TEST_CASE("pinned triadic family matches the published coefficients") {
    HaarFamily fam = latin_square_family();
    REQUIRE(fam.alpha == 3);
    REQUIRE(fam.beta == 3);
    REQUIRE(fam.wavelets.size() == 4);

    const double s10 = std::sqrt(10.0);
    Eigen::MatrixXd psi4(3, 3);
    psi4 << 1, 0, -1, 0, 1, -1, -1, -1, 2;
    psi4 *= s10 / 10.0;
    CHECK((fam.wavelets[3] - psi4).cwiseAbs().maxCoeff() < 1e-15);

    Eigen::MatrixXd psi1(3, 3);
    psi1 << 5, -1, -4, -4, -1, 5, -1, 2, -1;
    psi1 *= s10 / 30.0;
    CHECK((fam.wavelets[0] - psi1).cwiseAbs().maxCoeff() < 1e-15);

    // All six pairwise entrywise dot products vanish.
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double dot = (fam.wavelets[i].array() * fam.wavelets[j].array()).sum();
            CHECK(std::abs(dot) < 1e-13);
        }
}

TEST_CASE("family matrix orthogonality and the partial isometry") {
    HaarFamily fam = latin_square_family();
    Eigen::MatrixXd m = fam.family_matrix();
    CHECK((m * m.transpose() - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() <= 1e-12);
    Eigen::MatrixXd five = fam.separable_rows();
    CHECK((five * five.transpose() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK((five - latin33_partial_isometry()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("haar_family (2,2) is the checkerboard") {
    HaarFamily fam = haar_family(2, 2);
    REQUIRE(fam.wavelets.size() == 1);
    Eigen::MatrixXd w = fam.wavelets[0];
    Eigen::MatrixXd checker(2, 2);
    checker << 0.5, -0.5, -0.5, 0.5;
    double diff_plus = (w - checker).cwiseAbs().maxCoeff();
    double diff_minus = (w + checker).cwiseAbs().maxCoeff();
    CHECK(std::min(diff_plus, diff_minus) < 1e-12);
}

TEST_CASE("haar_family (3,3) returns the pinned fixture") {
    Eigen::MatrixXd a = haar_family(3, 3).family_matrix();
    CHECK((a - latin33_unitary()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("haar_family sweep: unitarity, counts, structure") {
    for (int alpha = 2; alpha <= 5; ++alpha)
        for (int beta = 2; beta <= 5; ++beta) {
            HaarFamily fam = haar_family(alpha, beta);
            const int t = alpha * beta;
            REQUIRE(static_cast<int>(fam.wavelets.size()) == (alpha - 1) * (beta - 1));
            Eigen::MatrixXd m = fam.family_matrix();
            CHECK((m * m.transpose() - Eigen::MatrixXd::Identity(t, t)).cwiseAbs().maxCoeff() <=
                  1e-12);
            // Scaling grid constant.
            CHECK((fam.scaling.array() - 1.0 / std::sqrt(static_cast<double>(t)))
                      .abs()
                      .maxCoeff() < 1e-14);
            // detailA rows constant along j; detailB constant along i.
            for (const auto& g : fam.detail_a)
                for (int i = 0; i < alpha; ++i)
                    for (int j = 1; j < beta; ++j) CHECK(std::abs(g(i, j) - g(i, 0)) < 1e-13);
            for (const auto& g : fam.detail_b)
                for (int j = 0; j < beta; ++j)
                    for (int i = 1; i < alpha; ++i) CHECK(std::abs(g(i, j) - g(0, j)) < 1e-13);
            // Wavelet grids sum to zero (orthogonal to the constant row).
            for (const auto& g : fam.wavelets) CHECK(std::abs(g.sum()) < 1e-12);
        }
}

TEST_CASE("(2,3) family: two wavelets, unitary 6x6, U = U'D") {
    HaarFamily fam = haar_family(2, 3);
    REQUIRE(fam.wavelets.size() == 2);
    Eigen::MatrixXd m = fam.family_matrix();
    CHECK((m * m.transpose() - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-12);

    DilationPair d(2, 3);
    std::vector<TrigPoly2> filters = family_filters(fam);
    FilterMatrixGrid tm = translation_matrix(filters, d, {1, 1});
    FilterMatrixGrid um = coset_matrix(filters, d, {1, 1});
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int t = 0; t < 20; ++t) {
        Vec2 xi{u(rng), u(rng)};
        Eigen::MatrixXcd lhs = tm.eval_at(xi);
        Eigen::MatrixXcd rhs = um.eval_at(xi) * coset_phase_matrix(um.digits(), xi);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
    // Lemma 2.7 route: the full translation matrix is unitary a.e.
    UnitarityReport rep = check_unitarity(tm, FreqGrid(kPi, 10));
    CHECK(rep.verdict == UnitarityReport::Verdict::Unitary);
    CHECK(rep.max_row_dev <= 1e-12);

    CHECK_THROWS_WITH(haar_family(1, 3), "alpha must be >= 2");
}

TEST_CASE("latex rendering of surd grids") {
    std::string tex = grid_to_latex(latin_square_family().wavelets[3]);
    CHECK(tex.find("\\tfrac{\\sqrt{10}}{10}") != std::string::npos);
    CHECK(tex.find("\\tfrac{\\sqrt{10}}{5}") != std::string::npos);
}
