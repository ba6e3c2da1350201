#include "birank/filters.hpp"

#include <cmath>
#include <stdexcept>

namespace birank {

FilterMatrixGrid FilterMatrixGrid::exact(Form form, DigitSet digits,
                                         std::vector<std::vector<TrigPoly2>> entries) {
    FilterMatrixGrid m;
    m.form_ = form;
    m.exact_ = true;
    m.digits_ = std::move(digits);
    m.entries_ = std::move(entries);
    m.rows_ = static_cast<int>(m.entries_.size());
    m.cols_ = m.rows_ ? static_cast<int>(m.entries_[0].size()) : 0;
    return m;
}

FilterMatrixGrid FilterMatrixGrid::sampled(Form form, FreqGrid grid, int rows, int cols,
                                           std::vector<Eigen::MatrixXcd> at_nodes) {
    if (at_nodes.size() != static_cast<std::size_t>(grid.n) * grid.n)
        throw std::invalid_argument("sampled FilterMatrixGrid: node count mismatch");
    FilterMatrixGrid m;
    m.form_ = form;
    m.exact_ = false;
    m.rows_ = rows;
    m.cols_ = cols;
    m.grid_ = grid;
    m.at_nodes_ = std::move(at_nodes);
    return m;
}

Eigen::MatrixXcd FilterMatrixGrid::eval_at(Vec2 xi) const {
    if (!exact_) throw std::logic_error("eval_at requires the exact form");
    Eigen::MatrixXcd out(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out(r, c) = entries_[r][c].eval(xi);
    return out;
}

const Eigen::MatrixXcd& FilterMatrixGrid::at_node(int ix, int iy) const {
    if (exact_) throw std::logic_error("at_node requires the sampled form");
    return at_nodes_[static_cast<std::size_t>(ix) * grid_.n + iy];
}

FilterMatrixGrid translation_matrix(const std::vector<TrigPoly2>& filters, const DilationPair& d,
                                    const TSpec& t) {
    if (filters.empty()) throw std::invalid_argument("translation_matrix: no filters");
    DigitSet ds = digits_for(d, t.m, t.n);
    if (static_cast<std::int64_t>(filters.size()) > ds.det())
        throw std::invalid_argument("more filters than cosets");
    std::vector<std::vector<TrigPoly2>> entries(filters.size());
    for (std::size_t l = 0; l < filters.size(); ++l) {
        entries[l].reserve(ds.digits.size());
        for (const auto& dig : ds.digits) {
            Vec2 shift{2.0 * kPi * dig[0] / static_cast<double>(ds.tx),
                       2.0 * kPi * dig[1] / static_cast<double>(ds.ty)};
            entries[l].push_back(filters[l].translate(shift));
        }
    }
    return FilterMatrixGrid::exact(FilterMatrixGrid::Form::Translation, std::move(ds),
                                   std::move(entries));
}

FilterMatrixGrid coset_matrix(const std::vector<TrigPoly2>& filters, const DilationPair& d,
                              const TSpec& t) {
    if (filters.empty()) throw std::invalid_argument("coset_matrix: no filters");
    DigitSet ds = digits_for(d, t.m, t.n);
    if (static_cast<std::int64_t>(filters.size()) > ds.det())
        throw std::invalid_argument("more filters than cosets");
    double sqrt_t = std::sqrt(static_cast<double>(ds.det()));
    std::vector<std::vector<TrigPoly2>> entries(filters.size());
    // Stored key (j,k) represents c_f(-(j,k))/t; the coset sum over E_p keeps
    // keys congruent to -d_p and strips the digit phase:
    //   mu_{f,p}(xi) = sqrt(t) * sum_k v_{-(d_p + T k)} e^{-i<xi, T k>}.
    for (std::size_t l = 0; l < filters.size(); ++l) {
        std::vector<TrigPoly2> row(ds.digits.size());
        std::vector<std::vector<TrigPoly2::Term>> acc(ds.digits.size());
        for (const auto& term : filters[l].sorted_terms()) {
            int k1 = -term.j, k2 = -term.k;  // paper-convention frequency
            int p = coset_index(ds, {k1, k2});
            int q1 = (k1 - ds.digits[p][0]) / static_cast<int>(ds.tx);
            int q2 = (k2 - ds.digits[p][1]) / static_cast<int>(ds.ty);
            acc[p].push_back({-static_cast<int>(ds.tx) * q1, -static_cast<int>(ds.ty) * q2,
                              term.c * sqrt_t});
        }
        for (std::size_t p = 0; p < acc.size(); ++p) row[p] = TrigPoly2::from_terms(acc[p]);
        entries[l] = std::move(row);
    }
    return FilterMatrixGrid::exact(FilterMatrixGrid::Form::Coset, std::move(ds),
                                   std::move(entries));
}

Eigen::MatrixXcd coset_phase_matrix(const DigitSet& ds, Vec2 xi) {
    int t = static_cast<int>(ds.det());
    double inv_sqrt_t = 1.0 / std::sqrt(static_cast<double>(t));
    Eigen::MatrixXcd D(t, t);
    for (int j = 0; j < t; ++j) {
        const auto& dj = ds.digits[j];
        Cplx lead = std::polar(inv_sqrt_t, -(xi.x * dj[0] + xi.y * dj[1]));
        for (int k = 0; k < t; ++k) {
            const auto& dk = ds.digits[k];
            double inner = 2.0 * kPi * (static_cast<double>(dk[0]) * dj[0] / ds.tx +
                                        static_cast<double>(dk[1]) * dj[1] / ds.ty);
            D(j, k) = lead * std::polar(1.0, -inner);
        }
    }
    return D;
}

std::string UnitarityReport::verdict_name() const {
    switch (verdict) {
        case Verdict::Unitary: return "unitary";
        case Verdict::PartialIsometry: return "partial-isometry";
        default: return "neither";
    }
}

namespace {

UnitarityReport accumulate_report(bool square, double row_dev, double col_dev, double tol) {
    UnitarityReport rep;
    rep.square = square;
    rep.max_row_dev = row_dev;
    rep.max_col_dev = col_dev;
    rep.tol = tol;
    if (row_dev <= tol && (!square || col_dev <= tol))
        rep.verdict = square ? UnitarityReport::Verdict::Unitary
                             : UnitarityReport::Verdict::PartialIsometry;
    else
        rep.verdict = UnitarityReport::Verdict::Neither;
    return rep;
}

void node_devs(const Eigen::MatrixXcd& m, double& row_dev, double& col_dev) {
    Eigen::MatrixXcd gram = m * m.adjoint();
    gram.diagonal().array() -= 1.0;
    row_dev = std::max(row_dev, gram.cwiseAbs().maxCoeff());
    if (m.rows() == m.cols()) {
        Eigen::MatrixXcd gram2 = m.adjoint() * m;
        gram2.diagonal().array() -= 1.0;
        col_dev = std::max(col_dev, gram2.cwiseAbs().maxCoeff());
    }
}

}  // namespace

UnitarityReport check_unitarity(const FilterMatrixGrid& m, const FreqGrid& grid, double tol) {
    double row_dev = 0.0, col_dev = 0.0;
    bool square = (m.rows() == m.cols());
    if (m.is_exact()) {
        for (int ix = 0; ix < grid.n; ++ix)
            for (int iy = 0; iy < grid.n; ++iy)
                node_devs(m.eval_at({grid.node(ix), grid.node(iy)}), row_dev, col_dev);
    } else {
        const FreqGrid& g = m.grid();
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy) node_devs(m.at_node(ix, iy), row_dev, col_dev);
    }
    return accumulate_report(square, row_dev, col_dev, tol);
}

UnitarityReport check_unitarity_constant(const Eigen::MatrixXcd& m, double tol) {
    double row_dev = 0.0, col_dev = 0.0;
    node_devs(m, row_dev, col_dev);
    return accumulate_report(m.rows() == m.cols(), row_dev, col_dev, tol);
}

Eigen::MatrixXcd complete_constant(const Eigen::MatrixXcd& rows) {
    const Eigen::Index k = rows.rows(), t = rows.cols();
    if (k > t) throw std::invalid_argument("complete_constant: more rows than columns");
    if (check_unitarity_constant(rows, 1e-10).max_row_dev > 1e-10)
        throw std::invalid_argument("complete_constant: input rows are not orthonormal");
    Eigen::MatrixXcd u(t, t);
    u.topRows(k) = rows;
    Eigen::Index have = k;
    for (Eigen::Index cand = 0; cand < t && have < t; ++cand) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(t);
        v(cand) = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index r = 0; r < have; ++r)
                v -= u.row(r).dot(v) * u.row(r).transpose();
        double nrm = v.norm();
        if (nrm <= 1e-8) continue;  // near-dependent candidate
        u.row(have++) = (v / nrm).transpose();
    }
    if (have != t) throw std::runtime_error("complete_constant: completion failed");
    return u;
}

Eigen::MatrixXd complete_constant(const Eigen::MatrixXd& rows) {
    Eigen::MatrixXcd u = complete_constant(Eigen::MatrixXcd(rows.cast<Cplx>()));
    if (u.imag().cwiseAbs().maxCoeff() > 1e-14)
        throw std::runtime_error("complete_constant: real input produced complex completion");
    return u.real();
}

Eigen::RowVector4cd complete_fourth_row(const Eigen::Matrix<Cplx, 3, 4>& rows) {
    Eigen::Matrix<Cplx, 3, 4> m = rows.conjugate();
    Eigen::RowVector4cd r;
    double sign = 1.0;
    for (int drop = 0; drop < 4; ++drop) {
        Eigen::Matrix3cd minor;
        int cc = 0;
        for (int c = 0; c < 4; ++c) {
            if (c == drop) continue;
            minor.col(cc++) = m.col(c);
        }
        r(drop) = sign * minor.determinant();
        sign = -sign;
    }
    double nrm = r.norm();
    if (nrm < 1e-6) throw std::runtime_error("rank-deficient rows: no unitary completion");
    r /= nrm;
    // Phase: entry of largest magnitude becomes real positive; ties by lowest index.
    int best = 0;
    double best_mag = std::abs(r(0));
    for (int c = 1; c < 4; ++c) {
        double mag = std::abs(r(c));
        if (mag > best_mag * (1.0 + 1e-9)) {
            best = c;
            best_mag = mag;
        }
    }
    r *= std::conj(r(best)) / std::abs(r(best));
    return r;
}

FilterMatrixGrid complete_pointwise(const FilterMatrixGrid& m, double pre_tol) {
    if (m.is_exact() || m.rows() != 3 || m.cols() != 4)
        throw std::invalid_argument("complete_pointwise expects a sampled 3x4 matrix field");
    const FreqGrid& g = m.grid();
    std::vector<Eigen::MatrixXcd> out(static_cast<std::size_t>(g.n) * g.n);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy) {
            const Eigen::MatrixXcd& at = m.at_node(ix, iy);
            UnitarityReport pre = check_unitarity_constant(at, pre_tol);
            if (pre.max_row_dev > pre_tol)
                throw std::runtime_error("complete_pointwise: node (" + std::to_string(ix) +
                                         "," + std::to_string(iy) +
                                         ") is not a partial isometry");
            Eigen::Matrix<Cplx, 3, 4> three = at;
            Eigen::MatrixXcd full(4, 4);
            full.topRows(3) = at;
            try {
                full.row(3) = complete_fourth_row(three);
            } catch (const std::exception& e) {
                throw std::runtime_error("complete_pointwise: node (" + std::to_string(ix) +
                                         "," + std::to_string(iy) + "): " + e.what());
            }
            out[static_cast<std::size_t>(ix) * g.n + iy] = std::move(full);
        }
    return FilterMatrixGrid::sampled(m.form(), g, 4, 4, std::move(out));
}

std::pair<TrigPoly2, TrigPoly2> detail_filters_dyadic(const TrigPoly2& phi_a,
                                                      const TrigPoly2& phi_b) {
    TrigPoly2 psi_a = TrigPoly2::filter_term(1, 0, 1.0) * phi_a.translate({kPi, 0.0}).conjugate();
    TrigPoly2 psi_b = TrigPoly2::filter_term(0, 1, 1.0) * phi_b.translate({0.0, kPi}).conjugate();
    return {psi_a, psi_b};
}

TrigPoly2 intertwine_residual(const TrigPoly2& phi_a, const TrigPoly2& phi_b,
                              const DilationPair& d) {
    return phi_a.substitute_scale(1, d.beta) * phi_b -
           phi_a * phi_b.substitute_scale(d.alpha, 1);
}

Cplx commuting_lattice_residual(const FilterFn& m_a, const FilterFn& m_b, Vec2 xi) {
    const double x = xi.x, y = xi.y;
    auto A = [&](double a, double b, int s1, int s2) { return m_a({s1 * x + a, s2 * y + b}); };
    auto B = [&](double a, double b, int s1, int s2) { return m_b({s1 * x + a, s2 * y + b}); };
    using std::conj;
    return A(kPi, 0, 1, 2) * A(0, 0, 1, 1) * conj(B(0, 0, 1, 1) * B(0, kPi, 2, 1)) -
           A(0, 0, 1, 2) * A(kPi, 0, 1, 1) * conj(B(kPi, 0, 1, 1) * B(0, kPi, 2, 1)) -
           A(kPi, 0, 1, 2) * A(0, kPi, 1, 1) * conj(B(0, kPi, 1, 1) * B(0, 0, 2, 1)) +
           A(0, 0, 1, 2) * A(kPi, kPi, 1, 1) * conj(B(kPi, kPi, 1, 1) * B(0, 0, 2, 1));
}

Cplx commuting_lattice_residual(const TrigPoly2& phi_a, const TrigPoly2& phi_b, Vec2 xi) {
    return commuting_lattice_residual(FilterFn([&](Vec2 p) { return phi_a.eval(p); }),
                                      FilterFn([&](Vec2 p) { return phi_b.eval(p); }), xi);
}

std::pair<TrigPoly2, TrigPoly2> tensor_filters(const TrigPoly2& f1, const TrigPoly2& f2) {
    int jl, jh, kl, kh;
    if (f1.support_box(jl, jh, kl, kh) && (kl != 0 || kh != 0))
        throw std::invalid_argument("tensor_filters: first factor must depend on xi1 only");
    if (f2.support_box(jl, jh, kl, kh) && (jl != 0 || jh != 0))
        throw std::invalid_argument("tensor_filters: second factor must depend on xi2 only");
    return {f1, f2};
}

}  // namespace birank
