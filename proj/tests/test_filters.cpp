#include <cmath>
#include <random>

#include "birank/filters.hpp"
#include "birank/latin.hpp"
#include "doctest.h"

using namespace birank;

namespace {

TrigPoly2 triadic_filter() {
    return TrigPoly2::filter_term(0, 0, 1.0 / 3) + TrigPoly2::filter_term(1, 0, 1.0 / 3) +
           TrigPoly2::filter_term(2, 0, 1.0 / 3);
}

Vec2 random_xi(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-kPi, kPi);
    return {u(rng), u(rng)};
}

// Random conjugate-mirror (paraunitary) univariate lowpass via the lattice
// factorization: |m(xi)|^2 + |m(xi + pi)|^2 = 1 by construction.
TrigPoly2 random_cqf(std::mt19937& rng, int axis, int stages) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    auto w = [&](int k) {  // e^{-i k (2 xi)} on the chosen axis
        return axis == 1 ? TrigPoly2::filter_term(2 * k, 0, 1.0)
                         : TrigPoly2::filter_term(0, 2 * k, 1.0);
    };
    double t0 = ang(rng);
    TrigPoly2 p = TrigPoly2::constant(std::cos(t0));
    TrigPoly2 q = TrigPoly2::constant(std::sin(t0));
    for (int s = 1; s <= stages; ++s) {
        double t = ang(rng);
        TrigPoly2 dq = w(1) * q;
        TrigPoly2 np = p * std::cos(t) - dq * std::sin(t);
        TrigPoly2 nq = p * std::sin(t) + dq * std::cos(t);
        p = np;
        q = nq;
    }
    TrigPoly2 e = axis == 1 ? TrigPoly2::filter_term(1, 0, 1.0) : TrigPoly2::filter_term(0, 1, 1.0);
    return (p + e * q) * Cplx{1.0 / std::sqrt(2.0), 0.0};
}

TrigPoly2 random_poly2(std::mt19937& rng, int deg = 2) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    std::vector<TrigPoly2::Term> terms;
    for (int j = -deg; j <= deg; ++j)
        for (int k = -deg; k <= deg; ++k)
            if (keep(rng) < 0.4) terms.push_back({j, k, Cplx{u(rng), u(rng)}});
    return TrigPoly2::from_terms(terms);
}

}  // namespace

TEST_CASE("translation matrix rows") {
    DilationPair triadic(3, 3);
    FilterMatrixGrid m = translation_matrix({triadic_filter()}, triadic, {1, 0});
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols() == 3);
    // Unit row almost everywhere (Lemma 2.7 for the triadic Haar filter).
    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
        Eigen::MatrixXcd row = m.eval_at(random_xi(rng));
        CHECK(std::abs(row.squaredNorm() - 1.0) < 1e-13);
    }
    // Column 0 equals the untranslated filter.
    CHECK(TrigPoly2::approx_equal(m.entry(0, 0), triadic_filter()));

    DilationPair dyadic(2, 2);
    TrigPoly2 haar = TrigPoly2::filter_term(0, 0, 0.5) + TrigPoly2::filter_term(1, 0, 0.5);
    FilterMatrixGrid md = translation_matrix({haar}, dyadic, {1, 0});
    Eigen::MatrixXcd at0 = md.eval_at({0.0, 0.0});
    CHECK(std::abs(at0(0, 0) - Cplx{1, 0}) < 1e-15);
    CHECK(std::abs(at0(0, 1)) < 1e-15);

    CHECK_THROWS_WITH(translation_matrix({haar, haar, haar}, dyadic, {1, 0}),
                      "more filters than cosets");
}

TEST_CASE("coset matrix and the U = U'D factorization") {
    DilationPair triadic(3, 3);
    FilterMatrixGrid cm = coset_matrix({triadic_filter()}, triadic, {1, 0});
    // Constant coset row [1/sqrt3, 1/sqrt3, 1/sqrt3].
    for (int p = 0; p < 3; ++p) {
        CHECK(cm.entry(0, p).num_terms() == 1);
        CHECK(std::abs(cm.entry(0, p).coeff(0, 0) - 1.0 / std::sqrt(3.0)) < 1e-15);
    }

    // Single-coefficient filter c(0) = t gives the coset row [sqrt t, 0, ...].
    TrigPoly2 one = TrigPoly2::constant(1.0);  // m_f = (1/t) c(0) = 1
    FilterMatrixGrid cs = coset_matrix({one}, triadic, {1, 1});
    CHECK(std::abs(cs.entry(0, 0).coeff(0, 0) - 3.0) < 1e-15);
    for (int p = 1; p < 9; ++p) CHECK(cs.entry(0, p).empty());

    // Full triadic bank: U = U' D at 20 random xi.
    HaarFamily fam = latin_square_family();
    std::vector<TrigPoly2> filters = family_filters(fam);
    FilterMatrixGrid tm = translation_matrix(filters, triadic, {1, 1});
    FilterMatrixGrid um = coset_matrix(filters, triadic, {1, 1});
    std::mt19937 rng(17);
    for (int t = 0; t < 20; ++t) {
        Vec2 xi = random_xi(rng);
        Eigen::MatrixXcd lhs = tm.eval_at(xi);
        Eigen::MatrixXcd rhs = um.eval_at(xi) * coset_phase_matrix(um.digits(), xi);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("check_unitarity verdicts") {
    Eigen::MatrixXd five = latin33_partial_isometry();
    UnitarityReport r5 = check_unitarity_constant(five.cast<Cplx>());
    CHECK(r5.verdict == UnitarityReport::Verdict::PartialIsometry);
    CHECK(r5.max_row_dev <= 1e-12);

    Eigen::MatrixXd nine = latin33_unitary();
    UnitarityReport r9 = check_unitarity_constant(nine.cast<Cplx>());
    CHECK(r9.verdict == UnitarityReport::Verdict::Unitary);
    CHECK(r9.max_row_dev <= 1e-12);
    CHECK(r9.max_col_dev <= 1e-12);

    Eigen::MatrixXcd bad = nine.cast<Cplx>();
    bad.row(2) *= 2.0;
    UnitarityReport rb = check_unitarity_constant(bad);
    CHECK(rb.verdict == UnitarityReport::Verdict::Neither);
    CHECK(rb.max_row_dev == doctest::Approx(3.0).epsilon(1e-9));

    // Grid-evaluated version on an exact translation matrix.
    DilationPair triadic(3, 3);
    FilterMatrixGrid tm = translation_matrix(family_filters(latin_square_family()), triadic, {1, 1});
    UnitarityReport rg = check_unitarity(tm, FreqGrid(kPi, 16));
    CHECK(rg.verdict == UnitarityReport::Verdict::Unitary);
    CHECK(rg.max_row_dev <= 1e-12);
}

TEST_CASE("complete_constant") {
    Eigen::MatrixXd row(1, 3);
    row.setConstant(1.0 / std::sqrt(3.0));
    Eigen::MatrixXd u = complete_constant(row);
    CHECK((u.row(0) - row.row(0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(check_unitarity_constant(u.cast<Cplx>()).verdict == UnitarityReport::Verdict::Unitary);

    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 4);
    Eigen::MatrixXd ue = complete_constant(eye);
    CHECK((ue - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

    // Random orthonormal 3x6 input: completion unitary, first rows unchanged.
    std::mt19937 rng(29);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd raw(3, 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) raw(i, j) = Cplx{g(rng), g(rng)};
    // Orthonormalize rows with the completer itself applied to a unit seed row.
    Eigen::MatrixXcd rows(3, 6);
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXcd v = raw.row(i).transpose();
        for (int j = 0; j < i; ++j) v -= rows.row(j).dot(v) * rows.row(j).transpose();
        rows.row(i) = (v / v.norm()).transpose();
    }
    Eigen::MatrixXcd uc = complete_constant(rows);
    CHECK(check_unitarity_constant(uc).max_row_dev < 1e-12);
    CHECK((uc.topRows(3) - rows).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd notorth(2, 3);
    notorth << 1, 0, 0, 0.6, 0.8, 0.1;
    CHECK_THROWS(complete_constant(notorth));
}

TEST_CASE("complete_fourth_row") {
    Eigen::Matrix<Cplx, 3, 4> rows = Eigen::Matrix<Cplx, 3, 4>::Zero();
    rows(0, 0) = 1.0;
    rows(1, 1) = 1.0;
    rows(2, 2) = 1.0;
    Eigen::RowVector4cd r = complete_fourth_row(rows);
    CHECK(std::abs(r(3) - Cplx{1, 0}) < 1e-15);  // phase normalized to +1
    CHECK(std::abs(r(0)) < 1e-15);

    // Random 3x4 partial isometries: |det| of the completion is 1.
    std::mt19937 rng(31);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        Eigen::MatrixXcd raw(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) raw(i, j) = Cplx{g(rng), g(rng)};
        // Gram-Schmidt to a unitary, then take the first three rows.
        Eigen::MatrixXcd q(4, 4);
        for (int i = 0; i < 4; ++i) {
            Eigen::VectorXcd v = raw.row(i).transpose();
            for (int j = 0; j < i; ++j) v -= q.row(j).dot(v) * q.row(j).transpose();
            q.row(i) = (v / v.norm()).transpose();
        }
        Eigen::Matrix<Cplx, 3, 4> three = q.topRows(3);
        Eigen::Matrix4cd full;
        full.topRows(3) = three;
        full.row(3) = complete_fourth_row(three);
        CHECK(std::abs(std::abs(full.determinant()) - 1.0) < 1e-12);
        CHECK(check_unitarity_constant(full).max_row_dev < 1e-12);
    }

    Eigen::Matrix<Cplx, 3, 4> degenerate = Eigen::Matrix<Cplx, 3, 4>::Zero();
    degenerate(0, 0) = 1.0;
    degenerate(1, 0) = 1.0;
    degenerate(2, 1) = 1.0;
    CHECK_THROWS(complete_fourth_row(degenerate));
}

TEST_CASE("dyadic detail filters") {
    TrigPoly2 haar = TrigPoly2::filter_term(0, 0, 0.5) + TrigPoly2::filter_term(1, 0, 0.5);
    auto [psi_a, psi_b] = detail_filters_dyadic(haar, TrigPoly2::filter_term(0, 0, 0.5) +
                                                          TrigPoly2::filter_term(0, 1, 0.5));
    TrigPoly2 expect = TrigPoly2::filter_term(1, 0, 0.5) + TrigPoly2::filter_term(0, 0, -0.5);
    CHECK(TrigPoly2::approx_equal(psi_a, expect));

    auto [pa1, pb1] = detail_filters_dyadic(TrigPoly2::constant(1.0), TrigPoly2::constant(1.0));
    CHECK(TrigPoly2::approx_equal(pa1, TrigPoly2::filter_term(1, 0, 1.0)));
    CHECK(TrigPoly2::approx_equal(pb1, TrigPoly2::filter_term(0, 1, 1.0)));

    // {phi, psi^A} has a unitary 2x2 translation matrix for random CQF filters.
    DilationPair dyadic(2, 2);
    std::mt19937 rng(37);
    for (int t = 0; t < 10; ++t) {
        TrigPoly2 phi = random_cqf(rng, 1, 3);
        auto [pa, pb] = detail_filters_dyadic(phi, phi);
        FilterMatrixGrid m = translation_matrix({phi, pa}, dyadic, {1, 0});
        UnitarityReport rep = check_unitarity(m, FreqGrid(kPi, 12));
        CHECK(rep.verdict == UnitarityReport::Verdict::Unitary);
        CHECK(rep.max_row_dev < 1e-12);
    }
}

TEST_CASE("intertwining residual") {
    DilationPair dyadic(2, 2);
    std::mt19937 rng(41);
    // Separable pairs: identically zero.
    for (int t = 0; t < 10; ++t) {
        auto [fa, fb] = tensor_filters(random_cqf(rng, 1, 2), random_cqf(rng, 2, 2));
        CHECK(intertwine_residual(fa, fb, dyadic).is_zero(1e-12));
    }
    // Diagonal-coupled counterexample.
    TrigPoly2 a = TrigPoly2::constant(1.0) + TrigPoly2::filter_term(1, 1, 1.0);
    TrigPoly2 res = intertwine_residual(a, TrigPoly2::constant(1.0), dyadic);
    CHECK(std::abs(res.eval({kPi / 2, kPi / 2})) > 0.1);
    // Triadic pair of the Latin-square family (single-variable filters).
    DilationPair triadic(3, 3);
    TrigPoly2 ta = TrigPoly2::filter_term(0, 0, 1.0 / 3) + TrigPoly2::filter_term(1, 0, 1.0 / 3) +
                   TrigPoly2::filter_term(2, 0, 1.0 / 3);
    TrigPoly2 tb = TrigPoly2::filter_term(0, 0, 1.0 / 3) + TrigPoly2::filter_term(0, 1, 1.0 / 3) +
                   TrigPoly2::filter_term(0, 2, 1.0 / 3);
    CHECK(intertwine_residual(ta, tb, triadic).is_zero(1e-14));
}

TEST_CASE("commuting lattice functional") {
    std::mt19937 rng(43);
    // Separable pairs annihilate f.
    for (int t = 0; t < 10; ++t) {
        TrigPoly2 fa = random_cqf(rng, 1, 3), fb = random_cqf(rng, 2, 3);
        for (int s = 0; s < 10; ++s)
            CHECK(std::abs(commuting_lattice_residual(fa, fb, random_xi(rng))) < 1e-12);
    }
    // Sign symmetries for arbitrary (nonseparable, non-unitary) filters.
    for (int t = 0; t < 10; ++t) {
        TrigPoly2 fa = random_poly2(rng), fb = random_poly2(rng);
        for (int s = 0; s < 5; ++s) {
            Vec2 xi = random_xi(rng);
            Cplx f0 = commuting_lattice_residual(fa, fb, xi);
            Cplx f1 = commuting_lattice_residual(fa, fb, {xi.x + kPi, xi.y});
            Cplx f2 = commuting_lattice_residual(fa, fb, {xi.x + kPi, xi.y + kPi});
            double scale = 1.0 + std::abs(f0);
            CHECK(std::abs(f1 + f0) / scale < 1e-11);
            CHECK(std::abs(f2 - f0) / scale < 1e-11);
        }
    }
}

TEST_CASE("tensor_filters validation and triadic reproduction") {
    TrigPoly2 f1 = TrigPoly2::filter_term(0, 0, 1.0 / 3) + TrigPoly2::filter_term(1, 0, 1.0 / 3) +
                   TrigPoly2::filter_term(2, 0, 1.0 / 3);
    TrigPoly2 f2 = TrigPoly2::filter_term(0, 0, 1.0 / 3) + TrigPoly2::filter_term(0, 1, 1.0 / 3) +
                   TrigPoly2::filter_term(0, 2, 1.0 / 3);
    auto [pa, pb] = tensor_filters(f1, f2);
    CHECK(TrigPoly2::approx_equal(pa, f1));
    CHECK(TrigPoly2::approx_equal(pb, f2));
    CHECK_THROWS(tensor_filters(f2, f1));

    auto [ta, tb] = tensor_filters(TrigPoly2::constant(1.0), TrigPoly2::constant(1.0));
    CHECK(intertwine_residual(ta, tb, DilationPair(2, 2)).is_zero());
}
