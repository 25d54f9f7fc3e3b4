#include "nkl/spectral.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nkl/common.hpp"

namespace nkl {

std::vector<double> SpectralDecomposition::coefficients(const std::vector<double>& f) const {
    const int nn = n();
    if (static_cast<int>(f.size()) != nn) throw UsageError("coefficients: length mismatch");
    std::vector<double> u(nn);
    for (int i = 0; i < nn; ++i) u[i] = sqrt_w[i] * f[i];
    std::vector<double> c(nn);
    cblas_dgemv(CblasColMajor, CblasTrans, nn, nn, 1.0, psi.data(), nn, u.data(), 1, 0.0,
                c.data(), 1);
    return c;
}

SpectralDecomposition eigendecompose(const DiscreteOperator& op) {
    const int n = op.grid.n;
    SpectralDecomposition dec;
    dec.grid = op.grid;
    dec.bc = op.bc;
    dec.weights = op.weights;
    dec.sqrt_w.resize(n);
    for (int i = 0; i < n; ++i) dec.sqrt_w[i] = std::sqrt(op.weights[i]);
    dec.eigenvalues = op.diag;
    std::vector<double> e = op.sub;
    dec.psi.assign(static_cast<std::size_t>(n) * n, 0.0);
    lapack_int info = LAPACKE_dstedc(LAPACK_COL_MAJOR, 'I', n, dec.eigenvalues.data(), e.data(),
                                     dec.psi.data(), n);
    if (info != 0)
        throw NumericalDiagnostic("eigendecompose: dstedc failed with info=" +
                                  std::to_string(info));
    // Eigenvalues at the solver's noise floor are exact zeros of the assembled
    // operator (the conservative bottom mode); snap them so that fractional
    // powers do not amplify solver roundoff.
    const double scale = std::max(std::fabs(dec.eigenvalues.front()),
                                  std::fabs(dec.eigenvalues.back()));
    const double floor = 512.0 * std::numeric_limits<double>::epsilon() * scale;
    for (auto& lam : dec.eigenvalues)
        if (std::fabs(lam) <= floor) lam = 0.0;
    return dec;
}

std::vector<double> apply_function(const SpectralDecomposition& dec, const ScalarFn& g,
                                   const std::vector<double>& f) {
    const int n = dec.n();
    std::vector<double> c = dec.coefficients(f);
    for (int k = 0; k < n; ++k) {
        c[k] *= g(dec.eigenvalues[k]);
        if (!std::isfinite(c[k]))
            throw NumericalDiagnostic("apply_function: non-finite symbol value");
    }
    std::vector<double> u(n);
    cblas_dgemv(CblasColMajor, CblasNoTrans, n, n, 1.0, dec.psi.data(), n, c.data(), 1, 0.0,
                u.data(), 1);
    for (int i = 0; i < n; ++i) u[i] /= dec.sqrt_w[i];
    return u;
}

double quadratic_form(const SpectralDecomposition& dec, const ScalarFn& g,
                      const std::vector<double>& f) {
    const int n = dec.n();
    const std::vector<double> c = dec.coefficients(f);
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        const double gv = g(dec.eigenvalues[k]);
        if (!std::isfinite(gv)) throw NumericalDiagnostic("quadratic_form: non-finite symbol value");
        s += gv * c[k] * c[k];
    }
    return s;
}

double fractional_symbol(double lambda, double t, double alpha) {
    const double lam = std::max(lambda, 0.0);
    return std::exp(-t * std::pow(lam, alpha));
}

KernelMatrix kernel(const SpectralDecomposition& dec, double t, double alpha) {
    if (!(t > 0.0) || !(alpha > 0.0)) throw UsageError("kernel: t and alpha must be positive");
    const int n = dec.n();
    KernelMatrix K;
    K.t = t;
    K.alpha = alpha;
    K.n = n;

    // Modes with negligible symbol are dropped; eigenvalues ascend, so the
    // symbol decreases along k and the kept modes form a prefix.
    int kept = 0;
    std::vector<double> sq(n);
    for (int k = 0; k < n; ++k) {
        const double g = fractional_symbol(dec.eigenvalues[k], t, alpha);
        if (g < 1e-300) break;
        sq[k] = std::sqrt(g);
        kept = k + 1;
    }
    // Row-major M with M[i][k] = psi_k(i) sqrt(g_k), so Psi G Psi^T = M M^T.
    std::vector<double> M(static_cast<std::size_t>(n) * kept);
    for (int k = 0; k < kept; ++k) {
        const double* col = dec.psi.data() + static_cast<std::size_t>(k) * n;
        for (int i = 0; i < n; ++i) M[static_cast<std::size_t>(i) * kept + k] = col[i] * sq[k];
    }
    K.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    if (kept > 0)
        cblas_dsyrk(CblasRowMajor, CblasUpper, CblasNoTrans, n, kept, 1.0, M.data(), kept, 0.0,
                    K.values.data(), n);
    // Rescale the upper triangle to mu-coordinates and mirror it exactly.
    double mn = 0.0;
    bool first = true;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double v = K.values[static_cast<std::size_t>(i) * n + j];
            v /= dec.sqrt_w[i] * dec.sqrt_w[j];
            K.values[static_cast<std::size_t>(i) * n + j] = v;
            K.values[static_cast<std::size_t>(j) * n + i] = v;
            if (first || v < mn) {
                mn = v;
                first = false;
            }
        }
    }
    K.min_entry = mn;
    return K;
}

std::vector<double> kernel_diagonal(const SpectralDecomposition& dec, double t, double alpha) {
    const int n = dec.n();
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = fractional_symbol(dec.eigenvalues[k], t, alpha);
    std::vector<double> diag(n, 0.0);
    for (int k = 0; k < n; ++k) {
        if (g[k] < 1e-300) break;
        const double* col = dec.psi.data() + static_cast<std::size_t>(k) * n;
        for (int i = 0; i < n; ++i) diag[i] += g[k] * col[i] * col[i];
    }
    for (int i = 0; i < n; ++i) diag[i] /= dec.weights[i];
    return diag;
}

namespace {

void dense_from_tridiag(const DiscreteOperator& op, std::vector<double>& S) {
    const int n = op.grid.n;
    S.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) S[static_cast<std::size_t>(i) * n + i] = op.diag[i];
    for (int i = 0; i < n - 1; ++i) {
        S[static_cast<std::size_t>(i) * n + i + 1] = op.sub[i];
        S[static_cast<std::size_t>(i + 1) * n + i] = op.sub[i];
    }
}

}  // namespace

std::vector<double> matrix_exponential_oracle(const DiscreteOperator& op, double t) {
    const int n = op.grid.n;
    if (n > 400) throw UsageError("matrix_exponential_oracle: dense method capped at n = 400");
    if (t < 0.0) throw UsageError("matrix_exponential_oracle: t must be non-negative");
    const std::size_t nn = static_cast<std::size_t>(n) * n;

    std::vector<double> Z;
    dense_from_tridiag(op, Z);
    for (auto& v : Z) v *= -t;

    double norm_inf = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::fabs(Z[static_cast<std::size_t>(i) * n + j]);
        norm_inf = std::max(norm_inf, row);
    }
    if (!std::isfinite(norm_inf))
        throw NumericalDiagnostic("matrix_exponential_oracle: norm overflow");

    int s = 0;
    while (norm_inf > 0.9 && s < 60) {
        norm_inf *= 0.5;
        ++s;
    }
    const double scale = std::ldexp(1.0, -s);
    for (auto& v : Z) v *= scale;

    // Taylor polynomial of degree 20 by Horner: R = I + Z(I + Z/2(...)).
    const int degree = 20;
    std::vector<double> R(nn, 0.0), T(nn);
    for (int i = 0; i < n; ++i) R[static_cast<std::size_t>(i) * n + i] = 1.0;
    for (int j = degree; j >= 1; --j) {
        cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, n, n, n, 1.0 / j, Z.data(), n,
                    R.data(), n, 0.0, T.data(), n);
        R.swap(T);
        for (int i = 0; i < n; ++i) R[static_cast<std::size_t>(i) * n + i] += 1.0;
    }
    for (int q = 0; q < s; ++q) {
        cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, n, n, n, 1.0, R.data(), n,
                    R.data(), n, 0.0, T.data(), n);
        R.swap(T);
    }
    return R;
}

}  // namespace nkl
