#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "birank/trigpoly.hpp"

namespace birank {

/// Minimal rectangle [L1,M1]x[L2,M2] containing a TrigPoly2's support.
struct SupportBox {
    int l1 = 0, m1 = 0, l2 = 0, m2 = 0;
};

SupportBox support_box(const TrigPoly2& p);  // throws for the zero polynomial

/// True iff p depends only on the given axis (support degenerate in the other).
bool is_univariate(const TrigPoly2& p, int axis);

struct Lemma61Verdict {
    bool holds = false;                // intertwining residual is the zero polynomial
    TrigPoly2 residual;                // a(xi1,beta xi2) b(xi) - a(xi) b(alpha xi1, xi2)
    bool conclusion_verified = false;  // when holds: a univariate in xi1, b in xi2
};

Lemma61Verdict check_lemma61(const TrigPoly2& a, const TrigPoly2& b, int alpha, int beta);

struct FuzzReport {
    int trials = 0;
    int zero_residual_pairs = 0;
    int counterexamples = 0;  // zero residual with non-univariate factors: falsifies the lemma
    std::vector<std::string> dumped;  // text serialization of any counterexample pair
};

/// Randomized search for counterexamples: integer-coefficient pairs supported
/// in [-max_degree, max_degree]^2. Any zero-residual pair must have univariate
/// factors; anything else is reported as a counterexample.
FuzzReport fuzz_lemma61(int trials, std::uint64_t seed, int alpha, int beta, int max_degree = 3);

/// Largest |2x2 minor| of the array divided by its largest |entry| squared.
/// Arrays larger than 192 per axis are searched over a strided index subset
/// that always includes the row/column of the maximal entry.
double max_minor_score(const Eigen::MatrixXd& values);

struct SeparabilityCertificate {
    bool separable = false;
    double score = 0.0;
};

/// Outer-product test via the normalized maximal 2x2 minor.
SeparabilityCertificate separability_certificate(const Eigen::MatrixXd& phi_hat_samples);

}  // namespace birank
