#include "birank/meyer.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "birank/filters.hpp"
#include "birank/parallel.hpp"
#include "birank/separability.hpp"

namespace birank {

namespace {

constexpr double kC13 = kPi / 3.0;
constexpr double kC23 = 2.0 * kPi / 3.0;
constexpr double kC43 = 4.0 * kPi / 3.0;
constexpr double kInv2Pi = 1.0 / (2.0 * kPi);
constexpr double kQuarterSq = 1.0 / (4.0 * kPi * kPi);
// Split lines inside corner squares sit at least h/2 from every legitimately
// derived sample coordinate, so a fixed snap window makes the side choice
// deterministic across the different float paths that reach the same point.
constexpr double kGeomSnap = 1e-9;
constexpr int kMaxDoublings = 52;
constexpr double kZeroTol = 1e-13;

double wrap_pi(double v) { return std::remainder(v, 2.0 * kPi); }

CornerTables make_tables(const MeyerCornerSpec& spec) {
    CornerTables t;
    switch (spec.mode) {
        case MeyerCornerSpec::Mode::PiecewiseConstant: {
            double b, c;
            if (spec.explicit_bc) {
                b = spec.b;
                c = spec.c;
            } else {
                auto bc = solve_corner_values(spec.a, spec.d);
                b = bc.first;
                c = bc.second;
            }
            t.pc[0][0] = std::sqrt(spec.a);
            t.pc[1][0] = std::sqrt(b);
            t.pc[0][1] = std::sqrt(c);
            t.pc[1][1] = std::sqrt(spec.d);
            break;
        }
        case MeyerCornerSpec::Mode::Triangular: {
            double av = std::sqrt(spec.tri_a);
            double bv = std::sqrt(kQuarterSq - spec.tri_a);
            t.tri_up[0][0] = av;
            t.tri_up[1][0] = bv;
            t.tri_lo[0][1] = bv;
            t.tri_lo[1][1] = av;
            break;
        }
        case MeyerCornerSpec::Mode::Tensor: {
            t.band_p = std::sqrt(spec.tensor_p2);
            t.band_q = std::sqrt(kInv2Pi - spec.tensor_p2);
            break;
        }
        case MeyerCornerSpec::Mode::Samples:
            break;
    }
    return t;
}

struct CornerSample {
    double value = 0.0;
    bool unresolved = false;
};

CornerSample corner_value(MeyerCornerSpec::Mode mode, const CornerTables& t, Vec2 eta) {
    int s1 = eta.x > 0 ? 1 : 0, s2 = eta.y > 0 ? 1 : 0;
    double u1 = std::clamp(eta.x - (s1 ? kC23 : -kC43), 0.0, 2.0 * kC13);
    double u2 = std::clamp(eta.y - (s2 ? kC23 : -kC43), 0.0, 2.0 * kC13);
    switch (mode) {
        case MeyerCornerSpec::Mode::PiecewiseConstant: {
            bool xi0 = u1 < kC13 + kGeomSnap;  // the split line counts as Xi0
            return {xi0 ? t.pc[s1][s2] : t.pc[1 - s1][1 - s2], false};
        }
        case MeyerCornerSpec::Mode::Triangular: {
            if (std::abs(u1 - u2) < kGeomSnap) return {t.tri_up[s1][s2], true};
            return {u2 > u1 ? t.tri_up[s1][s2] : t.tri_lo[s1][s2], false};
        }
        case MeyerCornerSpec::Mode::Tensor:
            return {(s1 ? t.band_p : t.band_q) * (s2 ? t.band_p : t.band_q), false};
        case MeyerCornerSpec::Mode::Samples:
            break;
    }
    return {0.0, true};
}

ProfileSample eval_formulas(MeyerCornerSpec::Mode mode, const CornerTables& t, Vec2 xi) {
    double ax = std::abs(xi.x), ay = std::abs(xi.y);
    if (ax >= kC43 || ay >= kC43) return {0.0, Region::Outside};
    bool x_out = ax > kC23, y_out = ay > kC23;
    if (!x_out && !y_out) return {kInv2Pi, Region::Central};
    if (x_out && y_out) {
        CornerSample cs = corner_value(mode, t, xi);
        return {cs.value, cs.unresolved ? Region::Unresolved : Region::Corner};
    }
    // Border: double the inner coordinate until it lands in [pi/3, 2pi/3).
    bool vertical = y_out;  // xi2 in the outer band: I_(i,j,0) / J_(0,j)
    double inner = vertical ? xi.x : xi.y;
    int r = 0;
    while (std::abs(inner) < kC13 && r < kMaxDoublings) {
        inner *= 2.0;
        ++r;
    }
    if (std::abs(inner) < kC13)
        return {kInv2Pi / std::sqrt(2.0), Region::Unresolved};  // exact-axis point
    double mx = vertical ? inner : xi.x;
    double my = vertical ? xi.y : inner;
    int i = mx < 0 ? 1 : 0, j = my < 0 ? 1 : 0;
    Vec2 t1 = vertical ? Vec2{2.0 * mx, my} : Vec2{mx, 2.0 * my};
    Vec2 t2 = vertical ? Vec2{t1.x, t1.y - 2.0 * kPi * (j ? -1.0 : 1.0)}
                       : Vec2{t1.x - 2.0 * kPi * (i ? -1.0 : 1.0), t1.y};
    CornerSample c1 = corner_value(mode, t, t1), c2 = corner_value(mode, t, t2);
    double den = c1.value * c1.value + c2.value * c2.value;
    if (den <= 0.0) return {0.0, Region::Unresolved};
    Region reg = (r == 0) ? Region::BorderI : Region::BorderJ;
    if (c1.unresolved || c2.unresolved) reg = Region::Unresolved;
    return {kInv2Pi * c1.value / std::sqrt(den), reg};
}

Region classify_region(Vec2 xi) {
    double ax = std::abs(xi.x), ay = std::abs(xi.y);
    if (ax >= kC43 || ay >= kC43) return Region::Outside;
    bool x_out = ax > kC23, y_out = ay > kC23;
    if (!x_out && !y_out) return Region::Central;
    if (x_out && y_out) return Region::Corner;
    double inner = y_out ? ax : ay;
    return inner >= kC13 ? Region::BorderI : Region::BorderJ;
}

}  // namespace

std::pair<double, double> solve_corner_values(double a, double d) {
    if (a < 0.0 || d < 0.0) throw std::invalid_argument("corner values must be nonnegative");
    if (!(a + d < 1.0 / (8.0 * kPi * kPi)))
        throw std::invalid_argument("corner values must satisfy a + d < 1/(8 pi^2)");
    double sum = kQuarterSq - a - d;
    double prod = a * d;
    double disc = sum * sum - 4.0 * prod;
    if (disc < 0.0) throw std::logic_error("solve_corner_values: negative discriminant");
    double b = 0.5 * (sum + std::sqrt(disc));
    double c = b > 0.0 ? prod / b : 0.0;
    return {b, c};
}

void MeyerCornerSpec::validate() const {
    switch (mode) {
        case Mode::PiecewiseConstant:
            if (explicit_bc) {
                if (b < 0.0 || c < 0.0)
                    throw std::invalid_argument("explicit corner values must be nonnegative");
                if (a < 0.0 || d < 0.0)
                    throw std::invalid_argument("corner values must be nonnegative");
            } else {
                solve_corner_values(a, d);  // validates a, d, and the sum bound
                if (a < 1e-12 || d < 1e-12)
                    throw std::invalid_argument(
                        "piecewise-constant mode needs a, d > 0 (the transform must be "
                        "nonzero on the corner squares)");
            }
            break;
        case Mode::Triangular:
            if (!(tri_a > 0.0) || !(tri_a < kQuarterSq))
                throw std::invalid_argument("triangular value must lie in (0, 1/(4 pi^2))");
            break;
        case Mode::Tensor:
            if (!(tensor_p2 > 0.0) || !(tensor_p2 < kInv2Pi))
                throw std::invalid_argument("tensor band value must lie in (0, 1/(2 pi))");
            break;
        case Mode::Samples:
            if (samples.size() == 0)
                throw std::invalid_argument("samples mode needs a nonempty array");
            break;
    }
}

MeyerCornerSpec MeyerCornerSpec::piecewise(double a, double d) {
    MeyerCornerSpec s;
    s.mode = Mode::PiecewiseConstant;
    s.a = a;
    s.d = d;
    return s;
}

MeyerCornerSpec MeyerCornerSpec::triangular(double tri_a) {
    MeyerCornerSpec s;
    s.mode = Mode::Triangular;
    s.tri_a = tri_a;
    return s;
}

MeyerCornerSpec MeyerCornerSpec::tensor(double p2) {
    MeyerCornerSpec s;
    s.mode = Mode::Tensor;
    s.tensor_p2 = p2;
    return s;
}

const char* region_name(Region r) {
    switch (r) {
        case Region::Outside: return "outside";
        case Region::Central: return "central";
        case Region::Corner: return "corner";
        case Region::BorderI: return "border-I";
        case Region::BorderJ: return "border-J";
        case Region::Unresolved: return "unresolved";
    }
    return "?";
}

ProfileSample FreqProfile::eval_at(Vec2 xi) const {
    if (spec.mode == MeyerCornerSpec::Mode::Samples) {
        int ix = grid.cell_of(xi.x), iy = grid.cell_of(xi.y);
        if (ix < 0 || iy < 0) return {0.0, Region::Outside};
        return {values(ix, iy), static_cast<Region>(tags(ix, iy))};
    }
    return eval_formulas(spec.mode, tables, xi);
}

std::size_t FreqProfile::unresolved_count() const {
    std::size_t n = 0;
    for (Eigen::Index i = 0; i < tags.rows(); ++i)
        for (Eigen::Index j = 0; j < tags.cols(); ++j)
            if (static_cast<Region>(tags(i, j)) == Region::Unresolved) ++n;
    return n;
}

FreqProfile build_profile(const MeyerCornerSpec& spec, const FreqGrid& grid) {
    spec.validate();
    FreqProfile p;
    p.grid = grid;
    p.spec = spec;
    p.values.resize(grid.n, grid.n);
    p.tags.resize(grid.n, grid.n);
    if (spec.mode == MeyerCornerSpec::Mode::Samples) {
        if (spec.samples.rows() != grid.n || spec.samples.cols() != grid.n)
            throw std::invalid_argument("samples shape does not match the grid");
        p.values = spec.samples;
        for (int ix = 0; ix < grid.n; ++ix)
            for (int iy = 0; iy < grid.n; ++iy)
                p.tags(ix, iy) =
                    static_cast<std::uint8_t>(classify_region({grid.node(ix), grid.node(iy)}));
        return p;
    }
    p.tables = make_tables(spec);
    parallel_for(static_cast<std::size_t>(grid.n), [&](std::size_t ix_s) {
        int ix = static_cast<int>(ix_s);
        double x = grid.node(ix);
        for (int iy = 0; iy < grid.n; ++iy) {
            ProfileSample s = eval_formulas(spec.mode, p.tables, {x, grid.node(iy)});
            p.values(ix, iy) = s.value;
            p.tags(ix, iy) = static_cast<std::uint8_t>(s.region);
        }
    });
    return p;
}

OrthoReport orthonormality_sum(const FreqProfile& p) {
    std::vector<int> idx;
    for (int i = 0; i < p.grid.n; ++i)
        if (std::abs(p.grid.node(i)) < kPi) idx.push_back(i);
    OrthoReport rep;
    std::vector<double> row_max(idx.size(), 0.0);
    std::vector<std::size_t> row_skip(idx.size(), 0), row_count(idx.size(), 0);
    parallel_for(idx.size(), [&](std::size_t a) {
        double x = p.grid.node(idx[a]);
        for (std::size_t b = 0; b < idx.size(); ++b) {
            double y = p.grid.node(idx[b]);
            double s = 0.0;
            bool skip = false;
            for (int k1 = -1; k1 <= 1 && !skip; ++k1)
                for (int k2 = -1; k2 <= 1 && !skip; ++k2) {
                    ProfileSample v = p.eval_at({x - 2.0 * kPi * k1, y - 2.0 * kPi * k2});
                    if (v.region == Region::Unresolved) skip = true;
                    s += v.value * v.value;
                }
            if (skip) {
                ++row_skip[a];
                continue;
            }
            ++row_count[a];
            row_max[a] = std::max(row_max[a], std::abs(s - kQuarterSq));
        }
    });
    for (std::size_t a = 0; a < idx.size(); ++a) {
        rep.max_dev = std::max(rep.max_dev, row_max[a]);
        rep.nodes_checked += row_count[a];
        rep.nodes_skipped += row_skip[a];
    }
    return rep;
}

Cplx filter_quotient_at(const FreqProfile& p, FilterDirection dir, Vec2 xi,
                        double* inconsistency) {
    Vec2 w{wrap_pi(xi.x), wrap_pi(xi.y)};
    double vals[9];
    double ranks[9];
    int count = 0;
    for (int k1 = -1; k1 <= 1; ++k1)
        for (int k2 = -1; k2 <= 1; ++k2) {
            Vec2 eta{w.x + 2.0 * kPi * k1, w.y + 2.0 * kPi * k2};
            if (std::abs(eta.x) >= kC43 || std::abs(eta.y) >= kC43) continue;
            double off = std::abs(dir == FilterDirection::A ? eta.x : eta.y);
            if (off > kC23) {  // numerator support forces zero
                vals[count] = 0.0;
                ranks[count++] = 1e30;
                continue;
            }
            Vec2 num = dir == FilterDirection::A ? Vec2{2.0 * eta.x, eta.y}
                                                 : Vec2{eta.x, 2.0 * eta.y};
            if (std::abs(eta.x) < kC23 && std::abs(eta.y) < kC23) {
                vals[count] = 2.0 * kPi * p.eval_at(num).value;
                ranks[count++] = 1e30;
                continue;
            }
            double den = p.eval_at(eta).value;
            if (den > kZeroTol) {
                vals[count] = p.eval_at(num).value / den;
                ranks[count++] = den;
            }
        }
    if (count == 0)
        throw std::runtime_error("filter quotient undefined at (" + std::to_string(xi.x) + ", " +
                                 std::to_string(xi.y) + ")");
    if (inconsistency) {
        double inc = 0.0;
        for (int i = 0; i < count; ++i)
            for (int j = i + 1; j < count; ++j)
                inc = std::max(inc, std::abs(vals[i] - vals[j]));
        *inconsistency = std::max(*inconsistency, inc);
    }
    int best = 0;
    for (int i = 1; i < count; ++i)
        if (ranks[i] > ranks[best]) best = i;
    return Cplx{vals[best], 0.0};
}

QuotientField filter_quotient(const FreqProfile& p, FilterDirection dir) {
    QuotientField f;
    f.dir = dir;
    std::vector<int> idx;
    for (int i = 0; i < p.grid.n; ++i)
        if (std::abs(p.grid.node(i)) < kPi) idx.push_back(i);
    f.nodes.resize(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) f.nodes[i] = p.grid.node(idx[i]);
    f.values.resize(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
    std::vector<double> row_inc(idx.size(), 0.0);
    parallel_for(idx.size(), [&](std::size_t a) {
        for (std::size_t b = 0; b < idx.size(); ++b)
            f.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                filter_quotient_at(p, dir, {f.nodes[a], f.nodes[b]}, &row_inc[a]);
    });
    for (double v : row_inc) f.max_inconsistency = std::max(f.max_inconsistency, v);
    return f;
}

double BmraReport::max_residual() const {
    double m = s_max_dev;
    m = std::max(m, quotient_periodicity_a);
    m = std::max(m, quotient_periodicity_b);
    m = std::max(m, corner_d_residual);
    m = std::max(m, corner_g_residual);
    m = std::max(m, intertwine_max);
    m = std::max(m, commuting_f_max);
    return m;
}

bool in_l_rectangle(Vec2 xi) {
    double ax = std::abs(xi.x), ay = std::abs(xi.y);
    return ax > kC13 && ax < kC23 && ay > kC13 && ay < kC23;
}

BmraReport verify_bmra(const FreqProfile& p) {
    BmraReport rep;
    rep.unresolved_nodes = p.unresolved_count();
    rep.s_max_dev = orthonormality_sum(p).max_dev;

    // Corner conditions (d) and (g) on the K11 representatives.
    std::vector<int> corner_idx, cell_idx;
    for (int i = 0; i < p.grid.n; ++i) {
        double v = p.grid.node(i);
        if (v > kC23 && v < kC43) corner_idx.push_back(i);
        if (std::abs(v) < kPi) cell_idx.push_back(i);
    }
    std::vector<double> dres(corner_idx.size(), 0.0), gres(corner_idx.size(), 0.0);
    parallel_for(corner_idx.size(), [&](std::size_t a) {
        double x = p.grid.node(corner_idx[a]);
        for (int ib : corner_idx) {
            double y = p.grid.node(ib);
            ProfileSample s11 = p.eval_at({x, y});
            ProfileSample s01 = p.eval_at({x - 2.0 * kPi, y});
            ProfileSample s10 = p.eval_at({x, y - 2.0 * kPi});
            ProfileSample s00 = p.eval_at({x - 2.0 * kPi, y - 2.0 * kPi});
            if (s11.region == Region::Unresolved || s01.region == Region::Unresolved ||
                s10.region == Region::Unresolved || s00.region == Region::Unresolved)
                continue;
            double sum = s11.value * s11.value + s01.value * s01.value + s10.value * s10.value +
                         s00.value * s00.value;
            dres[a] = std::max(dres[a], std::abs(sum - kQuarterSq));
            double lhs = s11.value * s00.value, rhs = s01.value * s10.value;
            gres[a] = std::max(gres[a], std::abs(lhs * lhs - rhs * rhs));
        }
    });
    for (std::size_t a = 0; a < corner_idx.size(); ++a) {
        rep.corner_d_residual = std::max(rep.corner_d_residual, dres[a]);
        rep.corner_g_residual = std::max(rep.corner_g_residual, gres[a]);
    }

    // Quotient filters: periodicity consistency plus the intertwining relation.
    std::vector<double> inc_a(cell_idx.size(), 0.0), inc_b(cell_idx.size(), 0.0),
        twine(cell_idx.size(), 0.0);
    parallel_for(cell_idx.size(), [&](std::size_t a) {
        double x = p.grid.node(cell_idx[a]);
        for (int ib : cell_idx) {
            double y = p.grid.node(ib);
            Cplx qa = filter_quotient_at(p, FilterDirection::A, {x, y}, &inc_a[a]);
            Cplx qb = filter_quotient_at(p, FilterDirection::B, {x, y}, &inc_b[a]);
            Cplx qa_b = filter_quotient_at(p, FilterDirection::A, {x, 2.0 * y}, &inc_a[a]);
            Cplx qb_a = filter_quotient_at(p, FilterDirection::B, {2.0 * x, y}, &inc_b[a]);
            twine[a] = std::max(twine[a], std::abs(qa_b * qb - qa * qb_a));
        }
    });
    for (std::size_t a = 0; a < cell_idx.size(); ++a) {
        rep.quotient_periodicity_a = std::max(rep.quotient_periodicity_a, inc_a[a]);
        rep.quotient_periodicity_b = std::max(rep.quotient_periodicity_b, inc_b[a]);
        rep.intertwine_max = std::max(rep.intertwine_max, twine[a]);
    }

    // Commuting-lattice functional on the L rectangles.
    std::vector<int> l_idx;
    for (int i = 0; i < p.grid.n; ++i) {
        double v = std::abs(p.grid.node(i));
        if (v > kC13 && v < kC23) l_idx.push_back(i);
    }
    FilterFn ma = [&](Vec2 v) { return filter_quotient_at(p, FilterDirection::A, v); };
    FilterFn mb = [&](Vec2 v) { return filter_quotient_at(p, FilterDirection::B, v); };
    std::vector<double> fres(l_idx.size(), 0.0);
    parallel_for(l_idx.size(), [&](std::size_t a) {
        double x = p.grid.node(l_idx[a]);
        for (int ib : l_idx)
            fres[a] = std::max(fres[a],
                               std::abs(commuting_lattice_residual(ma, mb, {x, p.grid.node(ib)})));
    });
    for (double v : fres) rep.commuting_f_max = std::max(rep.commuting_f_max, v);
    return rep;
}

Eigen::MatrixXd translate_gram(const FreqProfile& p, int window_radius) {
    const int K = window_radius, n = p.grid.n;
    const double h = p.grid.spacing();
    Eigen::MatrixXd sq = p.values.array().square();
    Eigen::MatrixXcd px(n, 2 * K + 1), py(n, 2 * K + 1);
    for (int i = 0; i < n; ++i)
        for (int k = -K; k <= K; ++k) {
            px(i, k + K) = std::polar(1.0, p.grid.node(i) * k);
            py(i, k + K) = std::polar(1.0, p.grid.node(i) * k);
        }
    Eigen::MatrixXcd g = px.transpose() * sq.cast<Cplx>() * py;
    return (h * h * g).real();
}

double nonseparability_score(const FreqProfile& p) { return max_minor_score(p.values); }

namespace {

Eigen::Matrix<Cplx, 3, 4> filter_bank_rows(const FreqProfile& p, Vec2 w) {
    const Vec2 shifts[4] = {{0.0, 0.0}, {kPi, 0.0}, {0.0, kPi}, {kPi, kPi}};
    Eigen::Matrix<Cplx, 3, 4> m;
    for (int c = 0; c < 4; ++c) {
        Vec2 z{w.x + shifts[c].x, w.y + shifts[c].y};
        Cplx qa = filter_quotient_at(p, FilterDirection::A, z);
        Cplx qb = filter_quotient_at(p, FilterDirection::B, z);
        Cplx qa_shift = filter_quotient_at(p, FilterDirection::A, {z.x + kPi, 2.0 * z.y});
        Cplx qb_shift = filter_quotient_at(p, FilterDirection::B, {2.0 * z.x, z.y + kPi});
        Cplx qa_b = filter_quotient_at(p, FilterDirection::A, {z.x, 2.0 * z.y});
        m(0, c) = qa_b * qb;
        m(1, c) = std::polar(1.0, -z.x) * std::conj(qa_shift) * qb;
        m(2, c) = std::polar(1.0, -z.y) * std::conj(qb_shift) * qa;
    }
    return m;
}

}  // namespace

WaveletSynthesis synthesize_wavelet(const FreqProfile& p, bool skip_verify) {
    if (!skip_verify) {
        BmraReport rep = verify_bmra(p);
        if (rep.max_residual() > 1e-6)
            throw std::runtime_error("synthesize_wavelet: profile fails BMRA verification, "
                                     "max residual " +
                                     std::to_string(rep.max_residual()));
    }
    WaveletSynthesis w;
    w.grid = FreqGrid(2.0 * p.grid.half_extent, 2 * p.grid.n);
    const int n = w.grid.n;
    w.psi_hat.setZero(n, n);
    std::vector<double> row_dev(n, 0.0);
    std::vector<std::size_t> row_done(n, 0);
    std::mutex fail_mutex;
    std::vector<std::string> failures;
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t ix_s) {
        int ix = static_cast<int>(ix_s);
        double x = w.grid.node(ix);
        for (int iy = 0; iy < n; ++iy) {
            Vec2 eta{x / 2.0, w.grid.node(iy) / 2.0};
            double theta = p.eval_at(eta).value;
            if (theta <= kZeroTol) continue;
            Vec2 wr{wrap_pi(eta.x), wrap_pi(eta.y)};
            Eigen::Matrix<Cplx, 3, 4> rows = filter_bank_rows(p, wr);
            Eigen::Matrix<Cplx, 4, 4> full;
            full.topRows(3) = rows;
            try {
                full.row(3) = complete_fourth_row(rows);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                if (failures.size() < 8)
                    failures.push_back("node (" + std::to_string(ix) + "," + std::to_string(iy) +
                                       "): " + e.what());
                continue;
            }
            Eigen::Matrix4cd gram = full * full.adjoint();
            gram.diagonal().array() -= 1.0;
            row_dev[ix] = std::max(row_dev[ix], gram.cwiseAbs().maxCoeff());
            ++row_done[ix];
            w.psi_hat(ix, iy) = full(3, 0) * theta;
        }
    });
    if (!failures.empty()) {
        std::string msg = "synthesize_wavelet: completion failed at nodes:";
        for (const auto& f : failures) msg += "\n  " + f;
        throw std::runtime_error(msg);
    }
    for (int ix = 0; ix < n; ++ix) {
        w.completion_unitarity_max = std::max(w.completion_unitarity_max, row_dev[ix]);
        w.completed_nodes += row_done[ix];
    }
    double h = w.grid.spacing();
    w.psi_norm = std::sqrt(w.psi_hat.squaredNorm() * h * h);
    return w;
}

Eigen::MatrixXcd wavelet_scaling_inners(const WaveletSynthesis& w, const FreqProfile& p,
                                        int window_radius) {
    const int K = window_radius, n = w.grid.n;
    Eigen::MatrixXcd weighted(n, n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t ix) {
        double x = w.grid.node(static_cast<int>(ix));
        for (int iy = 0; iy < n; ++iy)
            weighted(static_cast<Eigen::Index>(ix), iy) =
                w.psi_hat(static_cast<Eigen::Index>(ix), iy) *
                p.eval_at({x, w.grid.node(iy)}).value;
    });
    Eigen::MatrixXcd px(n, 2 * K + 1), py(n, 2 * K + 1);
    for (int i = 0; i < n; ++i)
        for (int k = -K; k <= K; ++k) {
            px(i, k + K) = std::polar(1.0, w.grid.node(i) * k);
            py(i, k + K) = std::polar(1.0, w.grid.node(i) * k);
        }
    double h = w.grid.spacing();
    return h * h * (px.transpose() * weighted * py);
}

Eigen::MatrixXcd wavelet_real_space(const WaveletSynthesis& w, double box_half, int nx) {
    const int n = w.grid.n;
    Eigen::MatrixXcd px(nx, n), py(n, nx);
    for (int a = 0; a < nx; ++a) {
        double xv = -box_half + (2.0 * box_half) * a / (nx - 1);
        for (int i = 0; i < n; ++i) {
            px(a, i) = std::polar(1.0, xv * w.grid.node(i));
            py(i, a) = std::polar(1.0, xv * w.grid.node(i));
        }
    }
    double h = w.grid.spacing();
    return (h * h / (2.0 * kPi)) * (px * w.psi_hat * py);
}

}  // namespace birank
