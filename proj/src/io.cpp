#include "birank/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace birank {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

void write_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) f << ",";
            f << fmt(m(r, c));
        }
        f << "\r\n";
    }
}

Eigen::MatrixXd read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for read: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(f, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw std::runtime_error("ragged CSV: " + path);
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    return m;
}

std::string matrix_csv(const Eigen::MatrixXcd& m) {
    std::ostringstream os;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) os << ",";
            os << fmt(m(r, c).real()) << "," << fmt(m(r, c).imag());
        }
        os << "\r\n";
    }
    return os.str();
}

Eigen::MatrixXcd parse_matrix_csv(const std::string& text, int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    std::istringstream is(text);
    std::string line;
    int r = 0;
    while (std::getline(is, line) && r < rows) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ls(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        if (static_cast<int>(vals.size()) != 2 * cols)
            throw std::runtime_error("matrix CSV row has wrong width");
        for (int c = 0; c < cols; ++c) m(r, c) = Cplx{vals[2 * c], vals[2 * c + 1]};
        ++r;
    }
    if (r != rows) throw std::runtime_error("matrix CSV has too few rows");
    return m;
}

void write_sampled_matrices(const std::string& path, const std::vector<SampledMatrixSection>& sections) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    for (const auto& s : sections) {
        f << "# node " << s.ix << " " << s.iy << " " << fmt(s.xi.x) << " " << fmt(s.xi.y) << "\r\n";
        f << matrix_csv(s.matrix);
    }
}

namespace {

int pgm_token(std::istream& in) {
    // Skips whitespace and '#' comments, then reads one nonnegative integer.
    for (;;) {
        int ch = in.peek();
        if (ch == '#') {
            std::string junk;
            std::getline(in, junk);
        } else if (std::isspace(ch)) {
            in.get();
        } else {
            break;
        }
    }
    int v = -1;
    in >> v;
    if (v < 0) throw std::runtime_error("bad PGM header token");
    return v;
}

}  // namespace

PgmImage read_pgm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for read: " + path);
    char m0 = 0, m1 = 0;
    f.get(m0);
    f.get(m1);
    if (m0 != 'P' || m1 != '5') throw std::runtime_error("not a binary PGM (P5): " + path);
    PgmImage img;
    img.width = pgm_token(f);
    img.height = pgm_token(f);
    img.maxval = pgm_token(f);
    if (img.maxval <= 0 || img.maxval > 65535) throw std::runtime_error("bad PGM maxval");
    f.get();  // single whitespace after maxval
    std::size_t count = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(count);
    if (img.maxval < 256) {
        std::vector<unsigned char> raw(count);
        f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (!f) throw std::runtime_error("truncated PGM: " + path);
        for (std::size_t i = 0; i < count; ++i) img.pixels[i] = raw[i];
    } else {
        std::vector<unsigned char> raw(2 * count);
        f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(2 * count));
        if (!f) throw std::runtime_error("truncated PGM: " + path);
        for (std::size_t i = 0; i < count; ++i)
            img.pixels[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
    }
    return img;
}

void write_pgm(const std::string& path, const PgmImage& img) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    f << "P5\n" << img.width << " " << img.height << "\n" << img.maxval << "\n";
    std::size_t count = static_cast<std::size_t>(img.width) * img.height;
    if (img.maxval < 256) {
        std::vector<unsigned char> raw(count);
        for (std::size_t i = 0; i < count; ++i) raw[i] = static_cast<unsigned char>(img.pixels[i]);
        f.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(count));
    } else {
        std::vector<unsigned char> raw(2 * count);
        for (std::size_t i = 0; i < count; ++i) {
            raw[2 * i] = static_cast<unsigned char>(img.pixels[i] >> 8);
            raw[2 * i + 1] = static_cast<unsigned char>(img.pixels[i] & 0xff);
        }
        f.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(2 * count));
    }
}

Eigen::MatrixXd pgm_to_matrix(const PgmImage& img) {
    Eigen::MatrixXd m(img.height, img.width);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) m(r, c) = img.at(r, c);
    return m;
}

PgmImage matrix_to_pgm(const Eigen::MatrixXd& m, int maxval) {
    PgmImage img;
    img.width = static_cast<int>(m.cols());
    img.height = static_cast<int>(m.rows());
    img.maxval = maxval;
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            double v = std::round(m(r, c));
            v = std::min(static_cast<double>(maxval), std::max(0.0, v));
            img.pixels[static_cast<std::size_t>(r) * img.width + c] = static_cast<std::uint16_t>(v);
        }
    return img;
}

PgmImage heatmap(const Eigen::MatrixXd& values) {
    double lo = values.minCoeff(), hi = values.maxCoeff();
    Eigen::MatrixXd scaled(values.rows(), values.cols());
    if (hi - lo < 1e-300) {
        scaled.setConstant(32768.0);
    } else {
        scaled = (values.array() - lo) * (65535.0 / (hi - lo));
    }
    return matrix_to_pgm(scaled, 65535);
}

}  // namespace birank
