#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "birank/trigpoly.hpp"

namespace birank {

// --- CSV (RFC 4180 style, '.' decimal separator) ---

void write_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_csv(const std::string& path);

// Complex matrix as interleaved (re,im) entries, row-major.
std::string matrix_csv(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd parse_matrix_csv(const std::string& text, int rows, int cols);

// Sampled matrix field: one xi-node per section, "# node ix iy xi1 xi2" headers.
struct SampledMatrixSection {
    int ix = 0;
    int iy = 0;
    Vec2 xi;
    Eigen::MatrixXcd matrix;
};
void write_sampled_matrices(const std::string& path, const std::vector<SampledMatrixSection>& sections);

// --- PGM (P5, 8-bit or 16-bit big-endian) ---

struct PgmImage {
    int width = 0;
    int height = 0;
    int maxval = 255;
    std::vector<std::uint16_t> pixels;  // row-major

    std::uint16_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

PgmImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const PgmImage& img);

Eigen::MatrixXd pgm_to_matrix(const PgmImage& img);
PgmImage matrix_to_pgm(const Eigen::MatrixXd& m, int maxval);  // clamps and rounds

// Linear min-max scaling to a 16-bit heatmap; a constant array maps to mid-gray.
PgmImage heatmap(const Eigen::MatrixXd& values);

}  // namespace birank
