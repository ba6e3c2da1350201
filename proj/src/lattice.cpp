#include "birank/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace birank {

namespace {

std::int64_t ipow(int base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > (1LL << 40)) throw std::invalid_argument("dilation power too large");
    }
    return r;
}

int mod_pos(int v, std::int64_t m) {
    int r = static_cast<int>(v % m);
    return r < 0 ? r + static_cast<int>(m) : r;
}

}  // namespace

DilationPair::DilationPair(int a, int b) : alpha(a), beta(b) {
    if (a < 2) throw std::invalid_argument("alpha must be >= 2");
    if (b < 2) throw std::invalid_argument("beta must be >= 2");
}

DigitSet digits_for(const DilationPair& d, int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("digits_for: powers must be nonnegative");
    if (m == 0 && n == 0)
        throw std::invalid_argument("identity dilation has a single trivial coset");
    DigitSet ds{d, TSpec{m, n}, ipow(d.alpha, m), ipow(d.beta, n), {}};
    ds.digits.reserve(static_cast<std::size_t>(ds.tx * ds.ty));
    for (int x = 0; x < ds.tx; ++x)
        for (int y = 0; y < ds.ty; ++y) ds.digits.push_back({x, y});
    return ds;
}

int coset_index(const DilationPair& d, const TSpec& t, std::array<int, 2> k) {
    std::int64_t tx = ipow(d.alpha, t.m), ty = ipow(d.beta, t.n);
    return mod_pos(k[0], tx) * static_cast<int>(ty) + mod_pos(k[1], ty);
}

int coset_index(const DigitSet& ds, std::array<int, 2> k) {
    return coset_index(ds.dilation, ds.t, k);
}

FreqGrid::FreqGrid(double L, int samples) : half_extent(L), n(samples) {
    if (!(L > 0.0)) throw std::invalid_argument("FreqGrid: half extent must be positive");
    if (samples < 1) throw std::invalid_argument("FreqGrid: need at least one sample per axis");
}

int FreqGrid::cell_of(double x) const {
    if (x < -half_extent || x >= half_extent) return -1;
    int i = static_cast<int>(std::floor((x + half_extent) / spacing()));
    return i < 0 ? 0 : (i >= n ? n - 1 : i);
}

}  // namespace birank
