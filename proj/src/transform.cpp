#include "birank/transform.hpp"

#include <stdexcept>
#include <string>

#include "birank/parallel.hpp"

namespace birank {

std::size_t SubbandTree::coefficient_count() const {
    std::size_t n = static_cast<std::size_t>(approx.size());
    for (const auto& lv : levels) {
        for (const auto& m : lv.detail_a) n += m.size();
        for (const auto& m : lv.detail_b) n += m.size();
        for (const auto& m : lv.wavelets) n += m.size();
    }
    return n;
}

double SubbandTree::energy() const {
    double e = approx.squaredNorm();
    for (const auto& lv : levels) {
        for (const auto& m : lv.detail_a) e += m.squaredNorm();
        for (const auto& m : lv.detail_b) e += m.squaredNorm();
        for (const auto& m : lv.wavelets) e += m.squaredNorm();
    }
    return e;
}

namespace {

void one_level(const Eigen::MatrixXd& x, const HaarFamily& fam, const Eigen::MatrixXd& f,
               Eigen::MatrixXd& approx, SubbandTree::Level& level) {
    const int a = fam.alpha, b = fam.beta, t = a * b;
    const Eigen::Index bm = x.rows() / a, bn = x.cols() / b;
    approx.resize(bm, bn);
    level.detail_a.assign(a - 1, Eigen::MatrixXd(bm, bn));
    level.detail_b.assign(b - 1, Eigen::MatrixXd(bm, bn));
    level.wavelets.assign((a - 1) * (b - 1), Eigen::MatrixXd(bm, bn));

    parallel_for(static_cast<std::size_t>(bm), [&](std::size_t bi_s) {
        Eigen::Index bi = static_cast<Eigen::Index>(bi_s);
        Eigen::VectorXd v(t), y(t);
        for (Eigen::Index bj = 0; bj < bn; ++bj) {
            int c = 0;
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < b; ++j) v(c++) = x(bi * a + i, bj * b + j);
            y.noalias() = f * v;
            int r = 0;
            approx(bi, bj) = y(r++);
            for (auto& m : level.detail_a) m(bi, bj) = y(r++);
            for (auto& m : level.detail_b) m(bi, bj) = y(r++);
            for (auto& m : level.wavelets) m(bi, bj) = y(r++);
        }
    });
}

}  // namespace

SubbandTree analyze(const Eigen::MatrixXd& x, const HaarFamily& fam, int depth) {
    if (depth < 1) throw std::invalid_argument("analyze: depth must be >= 1");
    Eigen::Index need_r = 1, need_c = 1;
    for (int k = 0; k < depth; ++k) {
        need_r *= fam.alpha;
        need_c *= fam.beta;
    }
    if (x.rows() % need_r != 0 || x.cols() % need_c != 0)
        throw std::invalid_argument(
            "analyze: shape " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
            " not divisible by alpha^depth x beta^depth = " + std::to_string(need_r) + "x" +
            std::to_string(need_c));

    SubbandTree tree;
    tree.alpha = fam.alpha;
    tree.beta = fam.beta;
    tree.rows = x.rows();
    tree.cols = x.cols();
    Eigen::MatrixXd f = fam.family_matrix();
    Eigen::MatrixXd current = x;
    for (int k = 0; k < depth; ++k) {
        SubbandTree::Level level;
        Eigen::MatrixXd next;
        one_level(current, fam, f, next, level);
        tree.levels.push_back(std::move(level));
        current = std::move(next);
    }
    tree.approx = std::move(current);
    return tree;
}

Eigen::MatrixXd synthesize(const SubbandTree& tree, const HaarFamily& fam) {
    if (tree.alpha != fam.alpha || tree.beta != fam.beta)
        throw std::invalid_argument("synthesize: family does not match tree");
    const int a = fam.alpha, b = fam.beta, t = a * b;
    Eigen::MatrixXd ft = fam.family_matrix().transpose();
    Eigen::MatrixXd current = tree.approx;
    for (auto it = tree.levels.rbegin(); it != tree.levels.rend(); ++it) {
        const auto& level = *it;
        const Eigen::Index bm = current.rows(), bn = current.cols();
        for (const auto& m : level.detail_a)
            if (m.rows() != bm || m.cols() != bn)
                throw std::invalid_argument("synthesize: subband shape mismatch");
        for (const auto& m : level.detail_b)
            if (m.rows() != bm || m.cols() != bn)
                throw std::invalid_argument("synthesize: subband shape mismatch");
        for (const auto& m : level.wavelets)
            if (m.rows() != bm || m.cols() != bn)
                throw std::invalid_argument("synthesize: subband shape mismatch");
        if (static_cast<int>(level.detail_a.size()) != a - 1 ||
            static_cast<int>(level.detail_b.size()) != b - 1 ||
            static_cast<int>(level.wavelets.size()) != (a - 1) * (b - 1))
            throw std::invalid_argument("synthesize: subband count mismatch");

        Eigen::MatrixXd out(bm * a, bn * b);
        const Eigen::MatrixXd& approx = current;
        parallel_for(static_cast<std::size_t>(bm), [&](std::size_t bi_s) {
            Eigen::Index bi = static_cast<Eigen::Index>(bi_s);
            Eigen::VectorXd v(t), y(t);
            for (Eigen::Index bj = 0; bj < bn; ++bj) {
                int r = 0;
                y(r++) = approx(bi, bj);
                for (const auto& m : level.detail_a) y(r++) = m(bi, bj);
                for (const auto& m : level.detail_b) y(r++) = m(bi, bj);
                for (const auto& m : level.wavelets) y(r++) = m(bi, bj);
                v.noalias() = ft * y;
                int c = 0;
                for (int i = 0; i < a; ++i)
                    for (int j = 0; j < b; ++j) out(bi * a + i, bj * b + j) = v(c++);
            }
        });
        current = std::move(out);
    }
    if (current.rows() != tree.rows || current.cols() != tree.cols)
        throw std::invalid_argument("synthesize: tree shape metadata inconsistent");
    return current;
}

double threshold_tree(SubbandTree& tree, double threshold) {
    std::size_t total = tree.coefficient_count();
    std::size_t kept = static_cast<std::size_t>(tree.approx.size());
    auto apply = [&](Eigen::MatrixXd& m) {
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (std::abs(m(i, j)) > threshold)
                    ++kept;
                else
                    m(i, j) = 0.0;
            }
    };
    for (auto& lv : tree.levels) {
        for (auto& m : lv.detail_a) apply(m);
        for (auto& m : lv.detail_b) apply(m);
        for (auto& m : lv.wavelets) apply(m);
    }
    return static_cast<double>(kept) / static_cast<double>(total);
}

}  // namespace birank
