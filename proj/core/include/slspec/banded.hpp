#pragma once

#include <iosfwd>
#include <vector>

namespace slspec {

/// Square banded matrix, band-major storage. Entries with |i - j| > bandwidth
/// are identically zero.
class BandedMatrix {
  public:
    BandedMatrix() = default;
    BandedMatrix(int n, int bandwidth);

    int size() const { return n_; }
    int bandwidth() const { return bw_; }

    double at(int i, int j) const;
    void set(int i, int j, double value);
    void add(int i, int j, double value);

    BandedMatrix scaled(double factor) const;
    bool is_symmetric(double rel_tol = 1e-12) const;
    double max_abs() const;

    /// Column-major dense copy (LAPACK layout).
    std::vector<double> dense() const;
    std::vector<double> diagonal() const;
    /// Superdiagonal (i, i+1); only meaningful entries returned.
    std::vector<double> superdiagonal() const;

    /// Text format: header "n eta", then one line per row with the 2*eta+1
    /// band entries for columns i-eta .. i+eta (zeros outside the matrix).
    void write(std::ostream& out) const;
    static BandedMatrix read(std::istream& in);

  private:
    int n_ = 0;
    int bw_ = 0;
    std::vector<double> bands_;  // bands_[(d+bw)*n + i] = entry (i, i+d)

    size_t idx(int i, int d) const { return static_cast<size_t>(d + bw_) * n_ + i; }
};

}  // namespace slspec
