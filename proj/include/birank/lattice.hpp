#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace birank {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// The commuting dilation pair A = diag(alpha,1), B = diag(1,beta).
struct DilationPair {
    int alpha;
    int beta;
    DilationPair(int a, int b);
};

/// T = A^m B^n = diag(alpha^m, beta^n).
struct TSpec {
    int m = 0;
    int n = 0;
};

struct DigitSet {
    DilationPair dilation;
    TSpec t;
    std::int64_t tx = 1;  // alpha^m
    std::int64_t ty = 1;  // beta^n
    // Lexicographically ordered digits {0..tx-1} x {0..ty-1}, d0 = (0,0).
    std::vector<std::array<int, 2>> digits;

    std::int64_t det() const { return tx * ty; }
};

/// Digits for T = A^m B^n. Throws for m = n = 0.
DigitSet digits_for(const DilationPair& d, int m, int n);

/// Index i with k in d_i + T Z^2.
int coset_index(const DilationPair& d, const TSpec& t, std::array<int, 2> k);
int coset_index(const DigitSet& ds, std::array<int, 2> k);

/// Uniform grid of cell midpoints over [-L, L]^2.
struct FreqGrid {
    double half_extent = 4.0 * kPi / 3.0;
    int n = 256;

    FreqGrid() = default;
    FreqGrid(double L, int samples);

    double spacing() const { return 2.0 * half_extent / n; }
    double node(int i) const { return -half_extent + (i + 0.5) * spacing(); }
    // Index of the cell containing x, or -1 when outside [-L, L].
    int cell_of(double x) const;
};

}  // namespace birank
