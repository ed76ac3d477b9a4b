#include "slspec/iga.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include <lapacke.h>

#include "slspec/bspline.hpp"
#include "slspec/quadrature.hpp"

namespace slspec {

namespace {

void require_positive_definite(const BandedMatrix& m) {
    const int n = m.size();
    const int kd = m.bandwidth();
    // LAPACK upper banded storage: ab[kd + i - j + j*ldab] = A(i,j)
    const int ldab = kd + 1;
    std::vector<double> ab(static_cast<size_t>(ldab) * n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = std::max(0, j - kd); i <= j; ++i)
            ab[static_cast<size_t>(j) * ldab + (kd + i - j)] = m.at(i, j);
    const int info = LAPACKE_dpbtrf(LAPACK_COL_MAJOR, 'U', n, kd, ab.data(), ldab);
    if (info != 0) throw std::runtime_error("assemble_iga: mass matrix is not positive definite");
}

}  // namespace

GalerkinPencil assemble_iga(const OperatorSpec& spec, const GridMap& map, int eta, int n) {
    if (eta < 1) throw std::invalid_argument("assemble_iga: eta must be >= 1");
    if (n < 1) throw std::invalid_argument("assemble_iga: n must be >= 1");
    const BSplineBasis basis = BSplineBasis::for_dirichlet_dof(eta, n);
    const int spans = basis.spans();
    const GaussRule rule = gauss_legendre(eta + 1);
    const double width = spec.b - spec.a;

    GalerkinPencil pencil;
    pencil.K = BandedMatrix(n, eta);
    pencil.M = BandedMatrix(n, eta);
    pencil.n = n;
    pencil.eta = eta;
    pencil.spans = spans;

    const double h = 1.0 / spans;
    std::vector<double> values(static_cast<size_t>(eta) + 1);
    std::vector<double> derivs(static_cast<size_t>(eta) + 1);
    for (int e = 0; e < spans; ++e) {
        const double s0 = e * h;
        for (size_t qp = 0; qp < rule.nodes.size(); ++qp) {
            const double s = s0 + 0.5 * h * (rule.nodes[qp] + 1.0);
            const double wq = 0.5 * h * rule.weights[qp];
            basis.basis_with_derivatives(e, s, values, derivs);

            const double u = spec.a + width * s;
            const double geom = map.tau(u);
            const double geom_prime = width * map.tau_prime(u);
            const double p_val = spec.p_extended(geom);

            const int gfirst = basis.first_basis_of_span(e);
            for (int li = 0; li <= eta; ++li) {
                const int di = gfirst + li - 1;  // Dirichlet: drop first/last basis function
                if (di < 0 || di >= n) continue;
                for (int lj = 0; lj <= eta; ++lj) {
                    const int dj = gfirst + lj - 1;
                    if (dj < 0 || dj >= n) continue;
                    pencil.K.add(di, dj,
                                 wq * p_val * derivs[static_cast<size_t>(li)] *
                                     derivs[static_cast<size_t>(lj)] / geom_prime);
                    pencil.M.add(di, dj,
                                 wq * values[static_cast<size_t>(li)] *
                                     values[static_cast<size_t>(lj)] * geom_prime);
                }
            }
        }
    }
    require_positive_definite(pencil.M);
    return pencil;
}

namespace {

struct InteriorStencil {
    std::vector<double> stiffness;  // cosine coefficients, index 0..eta, scaled by h
    std::vector<double> mass;       // scaled by 1/h
};

// Interior rows of the constant-coefficient pencil are Toeplitz (cardinal
// B-spline Gram stencils), so one assembly at a fixed size yields the exact
// spectral-variable factor for every n.
InteriorStencil extract_interior_stencil(int eta) {
    const int n0 = 6 * eta + 15;
    const OperatorSpec unit = OperatorSpec::diffusion(0.0, 1.0, [](double) { return 1.0; });
    const GalerkinPencil pencil = assemble_iga(unit, GridMap::identity(0.0, 1.0), eta, n0);
    const double h = 1.0 / pencil.spans;
    const int mid = n0 / 2;
    InteriorStencil st;
    st.stiffness.resize(static_cast<size_t>(eta) + 1);
    st.mass.resize(static_cast<size_t>(eta) + 1);
    for (int k = 0; k <= eta; ++k) {
        st.stiffness[static_cast<size_t>(k)] =
            0.5 * (pencil.K.at(mid, mid + k) + pencil.K.at(mid + k, mid)) * h;
        st.mass[static_cast<size_t>(k)] =
            0.5 * (pencil.M.at(mid, mid + k) + pencil.M.at(mid + k, mid)) / h;
    }
    return st;
}

const InteriorStencil& interior_stencil(int eta) {
    static std::mutex mutex;
    static std::map<int, InteriorStencil> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(eta);
    if (it == cache.end()) it = cache.emplace(eta, extract_interior_stencil(eta)).first;
    return it->second;
}

double cosine_series(const std::vector<double>& coef, double theta) {
    double s = coef[0];
    for (size_t k = 1; k < coef.size(); ++k)
        s += 2.0 * coef[k] * std::cos(static_cast<double>(k) * theta);
    return s;
}

}  // namespace

double iga_symbol_f(int eta, double theta) {
    if (eta < 1) throw std::invalid_argument("iga_symbol_f: eta must be >= 1");
    const double c = std::cos(theta);
    if (eta == 1) return 6.0 * (1.0 - c) / (2.0 + c);
    if (eta == 2) {
        const double c2 = std::cos(2.0 * theta);
        return 20.0 * (3.0 - 2.0 * c - c2) / (33.0 + 26.0 * c + c2);
    }
    const InteriorStencil& st = interior_stencil(eta);
    return cosine_series(st.stiffness, theta) / cosine_series(st.mass, theta);
}

void write_pencil(std::ostream& out, const GalerkinPencil& pencil) {
    pencil.K.write(out);
    pencil.M.write(out);
}

}  // namespace slspec
