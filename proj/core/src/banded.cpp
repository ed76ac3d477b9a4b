#include "slspec/banded.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace slspec {

BandedMatrix::BandedMatrix(int n, int bandwidth) : n_(n), bw_(bandwidth) {
    if (n < 1) throw std::invalid_argument("BandedMatrix: n must be >= 1");
    if (bandwidth < 0) throw std::invalid_argument("BandedMatrix: bandwidth must be >= 0");
    bands_.assign(static_cast<size_t>(2 * bw_ + 1) * n_, 0.0);
}

double BandedMatrix::at(int i, int j) const {
    const int d = j - i;
    if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("BandedMatrix::at");
    if (d < -bw_ || d > bw_) return 0.0;
    return bands_[idx(i, d)];
}

void BandedMatrix::set(int i, int j, double value) {
    const int d = j - i;
    if (i < 0 || i >= n_ || j < 0 || j >= n_ || d < -bw_ || d > bw_)
        throw std::out_of_range("BandedMatrix::set outside band");
    bands_[idx(i, d)] = value;
}

void BandedMatrix::add(int i, int j, double value) {
    const int d = j - i;
    if (i < 0 || i >= n_ || j < 0 || j >= n_ || d < -bw_ || d > bw_)
        throw std::out_of_range("BandedMatrix::add outside band");
    bands_[idx(i, d)] += value;
}

BandedMatrix BandedMatrix::scaled(double factor) const {
    BandedMatrix out = *this;
    for (double& v : out.bands_) v *= factor;
    return out;
}

double BandedMatrix::max_abs() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int d = -bw_; d <= bw_; ++d) {
            const int j = i + d;
            if (j < 0 || j >= n_) continue;
            m = std::max(m, std::fabs(bands_[idx(i, d)]));
        }
    return m;
}

bool BandedMatrix::is_symmetric(double rel_tol) const {
    const double scale = max_abs();
    for (int i = 0; i < n_; ++i)
        for (int d = 1; d <= bw_; ++d) {
            const int j = i + d;
            if (j >= n_) break;
            if (std::fabs(at(i, j) - at(j, i)) > rel_tol * std::max(1.0, scale)) return false;
        }
    return true;
}

std::vector<double> BandedMatrix::dense() const {
    std::vector<double> d(static_cast<size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i)
        for (int k = -bw_; k <= bw_; ++k) {
            const int j = i + k;
            if (j < 0 || j >= n_) continue;
            d[static_cast<size_t>(j) * n_ + i] = bands_[idx(i, k)];
        }
    return d;
}

std::vector<double> BandedMatrix::diagonal() const {
    std::vector<double> d(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) d[static_cast<size_t>(i)] = bands_[idx(i, 0)];
    return d;
}

std::vector<double> BandedMatrix::superdiagonal() const {
    if (bw_ < 1) return {};
    std::vector<double> d(static_cast<size_t>(n_ - 1));
    for (int i = 0; i + 1 < n_; ++i) d[static_cast<size_t>(i)] = bands_[idx(i, 1)];
    return d;
}

void BandedMatrix::write(std::ostream& out) const {
    out << n_ << ' ' << bw_ << '\n';
    char buf[32];
    for (int i = 0; i < n_; ++i) {
        for (int d = -bw_; d <= bw_; ++d) {
            const int j = i + d;
            const double v = (j < 0 || j >= n_) ? 0.0 : bands_[idx(i, d)];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << (d == bw_ ? '\n' : ' ');
        }
    }
}

BandedMatrix BandedMatrix::read(std::istream& in) {
    int n = 0, bw = 0;
    if (!(in >> n >> bw)) throw std::runtime_error("BandedMatrix::read: bad header");
    BandedMatrix m(n, bw);
    for (int i = 0; i < n; ++i)
        for (int d = -bw; d <= bw; ++d) {
            double v = 0.0;
            if (!(in >> v)) throw std::runtime_error("BandedMatrix::read: truncated data");
            const int j = i + d;
            if (j >= 0 && j < n) m.bands_[m.idx(i, d)] = v;
        }
    return m;
}

}  // namespace slspec
