#include "birank/separability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "birank/filters.hpp"
#include "birank/lattice.hpp"

namespace birank {

SupportBox support_box(const TrigPoly2& p) {
    SupportBox b;
    if (!p.support_box(b.l1, b.m1, b.l2, b.m2))
        throw std::invalid_argument("support_box: zero polynomial");
    return b;
}

bool is_univariate(const TrigPoly2& p, int axis) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("is_univariate: axis must be 1 or 2");
    SupportBox b = support_box(p);
    return axis == 1 ? (b.l2 == 0 && b.m2 == 0) : (b.l1 == 0 && b.m1 == 0);
}

Lemma61Verdict check_lemma61(const TrigPoly2& a, const TrigPoly2& b, int alpha, int beta) {
    if (a.empty() || b.empty()) throw std::invalid_argument("check_lemma61: zero polynomial");
    if (alpha < 2 || beta < 2) throw std::invalid_argument("check_lemma61: need alpha, beta >= 2");
    Lemma61Verdict v;
    v.residual = a.substitute_scale(1, beta) * b - a * b.substitute_scale(alpha, 1);
    v.holds = v.residual.is_zero();
    if (v.holds) v.conclusion_verified = is_univariate(a, 1) && is_univariate(b, 2);
    return v;
}

namespace {

TrigPoly2 random_int_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    std::vector<TrigPoly2::Term> terms;
    for (int j = -max_degree; j <= max_degree; ++j)
        for (int k = -max_degree; k <= max_degree; ++k) {
            if (keep(rng) > 0.18) continue;
            int c = coeff(rng);
            if (c != 0) terms.push_back({j, k, static_cast<double>(c)});
        }
    return TrigPoly2::from_terms(terms);
}

}  // namespace

FuzzReport fuzz_lemma61(int trials, std::uint64_t seed, int alpha, int beta, int max_degree) {
    std::mt19937_64 rng(seed);
    FuzzReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        TrigPoly2 a = random_int_poly(rng, max_degree);
        TrigPoly2 b = random_int_poly(rng, max_degree);
        if (a.empty() || b.empty()) continue;
        Lemma61Verdict v = check_lemma61(a, b, alpha, beta);
        if (!v.holds) continue;
        ++rep.zero_residual_pairs;
        if (!v.conclusion_verified) {
            ++rep.counterexamples;
            rep.dumped.push_back("a:\n" + a.to_text() + "b:\n" + b.to_text());
        }
    }
    return rep;
}

double max_minor_score(const Eigen::MatrixXd& values) {
    const Eigen::Index rows = values.rows(), cols = values.cols();
    if (rows < 2 || cols < 2) return 0.0;
    double max_entry = values.cwiseAbs().maxCoeff();
    if (max_entry <= 0.0) return 0.0;

    Eigen::Index max_r = 0, max_c = 0;
    values.cwiseAbs().maxCoeff(&max_r, &max_c);

    constexpr Eigen::Index kCap = 192;
    auto make_index = [&](Eigen::Index count, Eigen::Index pinned) {
        std::vector<Eigen::Index> idx;
        if (count <= kCap) {
            idx.resize(count);
            for (Eigen::Index i = 0; i < count; ++i) idx[i] = i;
            return idx;
        }
        Eigen::Index stride = (count + kCap - 1) / kCap;
        for (Eigen::Index i = 0; i < count; i += stride) idx.push_back(i);
        if (std::find(idx.begin(), idx.end(), pinned) == idx.end()) idx.push_back(pinned);
        std::sort(idx.begin(), idx.end());
        return idx;
    };
    std::vector<Eigen::Index> ri = make_index(rows, max_r), ci = make_index(cols, max_c);

    Eigen::MatrixXd sub(static_cast<Eigen::Index>(ri.size()), static_cast<Eigen::Index>(ci.size()));
    for (std::size_t i = 0; i < ri.size(); ++i)
        for (std::size_t j = 0; j < ci.size(); ++j)
            sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values(ri[i], ci[j]);

    const Eigen::Index m = sub.rows(), n = sub.cols();
    double best = 0.0;
    for (Eigen::Index r1 = 0; r1 + 1 < m; ++r1)
        for (Eigen::Index r2 = r1 + 1; r2 < m; ++r2) {
            for (Eigen::Index c1 = 0; c1 + 1 < n; ++c1) {
                double x = sub(r1, c1), y = sub(r2, c1);
                for (Eigen::Index c2 = c1 + 1; c2 < n; ++c2) {
                    double det = x * sub(r2, c2) - sub(r1, c2) * y;
                    double mag = std::abs(det);
                    if (mag > best) best = mag;
                }
            }
        }
    return best / (max_entry * max_entry);
}

SeparabilityCertificate separability_certificate(const Eigen::MatrixXd& phi_hat_samples) {
    SeparabilityCertificate cert;
    cert.score = max_minor_score(phi_hat_samples);
    cert.separable = cert.score <= 1e-10;
    return cert;
}

}  // namespace birank
