#include "slspec/bspline.hpp"

#include <algorithm>
#include <stdexcept>

namespace slspec {

BSplineBasis::BSplineBasis(int degree, int spans) : degree_(degree), spans_(spans) {
    if (degree < 1) throw std::invalid_argument("BSplineBasis: degree must be >= 1");
    if (spans < 1) throw std::invalid_argument("BSplineBasis: spans must be >= 1");
    knots_.reserve(static_cast<size_t>(spans + 1 + 2 * degree));
    for (int i = 0; i < degree; ++i) knots_.push_back(0.0);
    for (int i = 0; i <= spans; ++i) knots_.push_back(static_cast<double>(i) / spans);
    for (int i = 0; i < degree; ++i) knots_.push_back(1.0);
}

BSplineBasis BSplineBasis::for_dirichlet_dof(int degree, int dof) {
    const int spans = dof + 2 - degree;
    if (spans < 1)
        throw std::invalid_argument("BSplineBasis: dof too small for the requested degree");
    return BSplineBasis(degree, spans);
}

int BSplineBasis::find_span(double x) const {
    int e = static_cast<int>(x * spans_);
    return std::clamp(e, 0, spans_ - 1);
}

double BSplineBasis::eval(int index, double x, int deriv) const {
    if (index < 0 || index >= num_basis()) throw std::out_of_range("BSplineBasis::eval index");
    if (deriv < 0 || deriv > 1) throw std::invalid_argument("BSplineBasis::eval: deriv must be 0 or 1");
    const int p = degree_;
    if (deriv == 1) {
        // N'_{i,p} = p/(t_{i+p}-t_i) N_{i,p-1} - p/(t_{i+p+1}-t_{i+1}) N_{i+1,p-1}
        double result = 0.0;
        const double dl = knot(index + p) - knot(index);
        if (dl != 0.0) result += p / dl * eval_order(index, x, p - 1);
        const double dr = knot(index + p + 1) - knot(index + 1);
        if (dr != 0.0) result -= p / dr * eval_order(index + 1, x, p - 1);
        return result;
    }
    return eval_order(index, x, p);
}

// Cox-de Boor value of N_{i,q} on this knot vector. The final knot closes
// the last nonempty span so x = 1 evaluates by left limit.
double BSplineBasis::eval_order(int i, double x, int q) const {
    const int num_knots = static_cast<int>(knots_.size());
    if (i < 0 || i + q + 1 >= num_knots) return 0.0;
    if (q == 0) {
        if (knot(i) <= x && x < knot(i + 1)) return 1.0;
        if (x == knots_.back() && knot(i) < knot(i + 1) && x == knot(i + 1)) return 1.0;
        return 0.0;
    }
    double value = 0.0;
    const double dl = knot(i + q) - knot(i);
    if (dl != 0.0) value += (x - knot(i)) / dl * eval_order(i, x, q - 1);
    const double dr = knot(i + q + 1) - knot(i + 1);
    if (dr != 0.0) value += (knot(i + q + 1) - x) / dr * eval_order(i + 1, x, q - 1);
    return value;
}

void BSplineBasis::basis_with_derivatives(int e, double x, std::span<double> values,
                                          std::span<double> derivatives) const {
    const int p = degree_;
    if (static_cast<int>(values.size()) < p + 1 || static_cast<int>(derivatives.size()) < p + 1)
        throw std::invalid_argument("basis_with_derivatives: output too small");
    const int sp = e + p;  // knot-array span index: t_sp <= x < t_{sp+1}

    // Triangular table of the nonzero functions, orders 0..p (NURBS-book
    // style, specialized to first derivatives).
    std::vector<double> left(static_cast<size_t>(p) + 1), right(static_cast<size_t>(p) + 1);
    std::vector<double> ndu(static_cast<size_t>(p + 1) * (p + 1));
    auto at = [p, &ndu](int r, int c) -> double& { return ndu[static_cast<size_t>(r) * (p + 1) + c]; };
    at(0, 0) = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[static_cast<size_t>(j)] = x - knot(sp + 1 - j);
        right[static_cast<size_t>(j)] = knot(sp + j) - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            at(j, r) = right[static_cast<size_t>(r + 1)] + left[static_cast<size_t>(j - r)];
            const double temp = at(r, j - 1) / at(j, r);
            at(r, j) = saved + right[static_cast<size_t>(r + 1)] * temp;
            saved = left[static_cast<size_t>(j - r)] * temp;
        }
        at(j, j) = saved;
    }
    for (int j = 0; j <= p; ++j) values[static_cast<size_t>(j)] = at(j, p);
    for (int r = 0; r <= p; ++r) {
        // derivative from the order p-1 row
        double d = 0.0;
        if (r > 0) d += at(r - 1, p - 1) / at(p, r - 1);
        if (r < p) d -= at(r, p - 1) / at(p, r);
        derivatives[static_cast<size_t>(r)] = p * d;
    }
}

}  // namespace slspec
