#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace birank {

using Cplx = std::complex<double>;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Finite bivariate Laurent trigonometric polynomial sum c_{j,k} e^{i(j xi1 + k xi2)}.
///
/// Filters in the e^{-i<xi,k>} convention are stored with negated keys, so the
/// stored object evaluates identically to the filter function it represents.
/// Values are immutable after construction; all operations return new objects.
class TrigPoly2 {
  public:
    // Coefficients below this magnitude are pruned (canonical form).
    static constexpr double kPruneTol = 1e-15;
    // Coefficientwise equality tolerance for identity checks.
    static constexpr double kEqTol = 1e-12;

    struct Term {
        int j = 0;
        int k = 0;
        Cplx c;
    };

    TrigPoly2() = default;

    static TrigPoly2 zero() { return TrigPoly2{}; }
    static TrigPoly2 constant(Cplx c);
    // Single term c in the e^{+i(j xi1 + k xi2)} evaluation convention.
    static TrigPoly2 term(int j, int k, Cplx c);
    // Single filter term c e^{-i(k1 xi1 + k2 xi2)}: stored at key (-k1,-k2).
    static TrigPoly2 filter_term(int k1, int k2, Cplx c);
    static TrigPoly2 from_terms(const std::vector<Term>& terms);

    Cplx eval(Vec2 xi) const;
    TrigPoly2 substitute_scale(int s1, int s2) const;  // q(xi) = p(s1 xi1, s2 xi2)
    TrigPoly2 translate(Vec2 shift) const;             // q(xi) = p(xi + shift)
    TrigPoly2 conjugate() const;

    TrigPoly2 operator+(const TrigPoly2& o) const;
    TrigPoly2 operator-(const TrigPoly2& o) const;
    TrigPoly2 operator*(const TrigPoly2& o) const;
    TrigPoly2 operator*(Cplx s) const;
    TrigPoly2 operator-() const;

    Cplx coeff(int j, int k) const;
    std::size_t num_terms() const { return coeffs_.size(); }
    bool empty() const { return coeffs_.empty(); }
    double mass() const;      // sum of |c|
    double max_coeff() const; // max of |c|

    bool is_zero(double tol = kEqTol) const;
    static bool approx_equal(const TrigPoly2& a, const TrigPoly2& b, double tol = kEqTol);

    // Terms sorted lexicographically by (j,k).
    std::vector<Term> sorted_terms() const;

    // Smallest box [j_lo,j_hi]x[k_lo,k_hi] containing the support; false if empty.
    bool support_box(int& j_lo, int& j_hi, int& k_lo, int& k_hi) const;

    // Text form: one line per term, "j k re im", sorted lexicographically by (j,k).
    std::string to_text() const;
    static TrigPoly2 from_text(const std::string& text);

  private:
    static std::uint64_t pack(int j, int k);
    static void unpack(std::uint64_t key, int& j, int& k);
    void insert_acc(int j, int k, Cplx c);
    void prune();

    std::unordered_map<std::uint64_t, Cplx> coeffs_;
};

TrigPoly2 operator*(Cplx s, const TrigPoly2& p);

}  // namespace birank
