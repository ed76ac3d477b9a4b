#pragma once

#include <span>
#include <vector>

namespace slspec {

/// B-spline basis of a given degree on an open uniform knot vector over
/// [0, 1] (end knots repeated degree+1 times), smoothness C^(degree-1).
class BSplineBasis {
  public:
    BSplineBasis(int degree, int spans);

    /// Basis sized so that removing the two boundary functions (Dirichlet)
    /// leaves exactly `dof` interior functions: spans = dof + 2 - degree.
    static BSplineBasis for_dirichlet_dof(int degree, int dof);

    int degree() const { return degree_; }
    int spans() const { return spans_; }
    int num_basis() const { return spans_ + degree_; }
    int dirichlet_dof() const { return num_basis() - 2; }

    double knot(int i) const { return knots_[static_cast<size_t>(i)]; }

    /// Value (deriv = 0) or first derivative (deriv = 1) of one basis
    /// function by Cox-de Boor recursion. Throws std::out_of_range for a bad
    /// index.
    double eval(int index, double x, int deriv = 0) const;

    /// Index e of the knot span containing x, e in [0, spans).
    int find_span(double x) const;
    /// Global index of the first basis function supported on span e.
    int first_basis_of_span(int e) const { return e; }
    /// Values and first derivatives of the degree+1 basis functions that are
    /// nonzero on span e, at x. Output spans must hold degree+1 entries.
    void basis_with_derivatives(int e, double x, std::span<double> values,
                                std::span<double> derivatives) const;

  private:
    double eval_order(int i, double x, int q) const;

    int degree_ = 1;
    int spans_ = 1;
    std::vector<double> knots_;
};

}  // namespace slspec
