#include "birank/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace birank {

std::uint64_t TrigPoly2::pack(int j, int k) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(j)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(k));
}

void TrigPoly2::unpack(std::uint64_t key, int& j, int& k) {
    j = static_cast<std::int32_t>(key >> 32);
    k = static_cast<std::int32_t>(key & 0xffffffffu);
}

void TrigPoly2::insert_acc(int j, int k, Cplx c) {
    auto [it, inserted] = coeffs_.try_emplace(pack(j, k), c);
    if (!inserted) it->second += c;
}

void TrigPoly2::prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = (std::abs(it->second) < kPruneTol) ? coeffs_.erase(it) : std::next(it);
}

TrigPoly2 TrigPoly2::constant(Cplx c) { return term(0, 0, c); }

TrigPoly2 TrigPoly2::term(int j, int k, Cplx c) {
    TrigPoly2 p;
    p.insert_acc(j, k, c);
    p.prune();
    return p;
}

TrigPoly2 TrigPoly2::filter_term(int k1, int k2, Cplx c) { return term(-k1, -k2, c); }

TrigPoly2 TrigPoly2::from_terms(const std::vector<Term>& terms) {
    TrigPoly2 p;
    for (const auto& t : terms) p.insert_acc(t.j, t.k, t.c);
    p.prune();
    return p;
}

Cplx TrigPoly2::eval(Vec2 xi) const {
    Cplx acc{0.0, 0.0};
    for (const auto& [key, c] : coeffs_) {
        int j, k;
        unpack(key, j, k);
        acc += c * std::polar(1.0, j * xi.x + k * xi.y);
    }
    return acc;
}

TrigPoly2 TrigPoly2::substitute_scale(int s1, int s2) const {
    if (s1 < 1 || s2 < 1) throw std::invalid_argument("substitute_scale: scales must be >= 1");
    TrigPoly2 q;
    for (const auto& [key, c] : coeffs_) {
        int j, k;
        unpack(key, j, k);
        q.insert_acc(s1 * j, s2 * k, c);
    }
    q.prune();
    return q;
}

TrigPoly2 TrigPoly2::translate(Vec2 shift) const {
    TrigPoly2 q;
    for (const auto& [key, c] : coeffs_) {
        int j, k;
        unpack(key, j, k);
        q.insert_acc(j, k, c * std::polar(1.0, j * shift.x + k * shift.y));
    }
    q.prune();
    return q;
}

TrigPoly2 TrigPoly2::conjugate() const {
    TrigPoly2 q;
    for (const auto& [key, c] : coeffs_) {
        int j, k;
        unpack(key, j, k);
        q.insert_acc(-j, -k, std::conj(c));
    }
    return q;
}

TrigPoly2 TrigPoly2::operator+(const TrigPoly2& o) const {
    TrigPoly2 q = *this;
    for (const auto& [key, c] : o.coeffs_) {
        auto [it, inserted] = q.coeffs_.try_emplace(key, c);
        if (!inserted) it->second += c;
    }
    q.prune();
    return q;
}

TrigPoly2 TrigPoly2::operator-(const TrigPoly2& o) const {
    TrigPoly2 q = *this;
    for (const auto& [key, c] : o.coeffs_) {
        auto [it, inserted] = q.coeffs_.try_emplace(key, -c);
        if (!inserted) it->second -= c;
    }
    q.prune();
    return q;
}

TrigPoly2 TrigPoly2::operator*(const TrigPoly2& o) const {
    TrigPoly2 q;
    for (const auto& [ka, ca] : coeffs_) {
        int ja, kka;
        unpack(ka, ja, kka);
        for (const auto& [kb, cb] : o.coeffs_) {
            int jb, kkb;
            unpack(kb, jb, kkb);
            q.insert_acc(ja + jb, kka + kkb, ca * cb);
        }
    }
    q.prune();
    return q;
}

TrigPoly2 TrigPoly2::operator*(Cplx s) const {
    TrigPoly2 q;
    for (const auto& [key, c] : coeffs_) q.coeffs_.emplace(key, c * s);
    q.prune();
    return q;
}

TrigPoly2 TrigPoly2::operator-() const { return *this * Cplx{-1.0, 0.0}; }

TrigPoly2 operator*(Cplx s, const TrigPoly2& p) { return p * s; }

Cplx TrigPoly2::coeff(int j, int k) const {
    auto it = coeffs_.find(pack(j, k));
    return it == coeffs_.end() ? Cplx{0.0, 0.0} : it->second;
}

double TrigPoly2::mass() const {
    double m = 0.0;
    for (const auto& [key, c] : coeffs_) m += std::abs(c);
    return m;
}

double TrigPoly2::max_coeff() const {
    double m = 0.0;
    for (const auto& [key, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool TrigPoly2::is_zero(double tol) const { return max_coeff() <= tol; }

bool TrigPoly2::approx_equal(const TrigPoly2& a, const TrigPoly2& b, double tol) {
    return (a - b).is_zero(tol);
}

std::vector<TrigPoly2::Term> TrigPoly2::sorted_terms() const {
    std::vector<Term> out;
    out.reserve(coeffs_.size());
    for (const auto& [key, c] : coeffs_) {
        Term t;
        unpack(key, t.j, t.k);
        t.c = c;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
        return a.j != b.j ? a.j < b.j : a.k < b.k;
    });
    return out;
}

bool TrigPoly2::support_box(int& j_lo, int& j_hi, int& k_lo, int& k_hi) const {
    if (coeffs_.empty()) return false;
    bool first = true;
    for (const auto& [key, c] : coeffs_) {
        int j, k;
        unpack(key, j, k);
        if (first) {
            j_lo = j_hi = j;
            k_lo = k_hi = k;
            first = false;
        } else {
            j_lo = std::min(j_lo, j);
            j_hi = std::max(j_hi, j);
            k_lo = std::min(k_lo, k);
            k_hi = std::max(k_hi, k);
        }
    }
    return true;
}

std::string TrigPoly2::to_text() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& t : sorted_terms())
        os << t.j << " " << t.k << " " << t.c.real() << " " << t.c.imag() << "\n";
    return os.str();
}

TrigPoly2 TrigPoly2::from_text(const std::string& text) {
    TrigPoly2 p;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int j, k;
        double re, im;
        if (!(ls >> j >> k >> re >> im))
            throw std::invalid_argument("TrigPoly2::from_text: bad line: " + line);
        p.insert_acc(j, k, Cplx{re, im});
    }
    p.prune();
    return p;
}

}  // namespace birank
