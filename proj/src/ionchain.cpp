#include "trapcosmo/ionchain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "trapcosmo/errors.hpp"

namespace trapcosmo {

namespace {

constexpr double kHbar = 1.054571817e-34;  // J s
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Force residual r_m = u_m - sum_{j<m} d^-2 + sum_{j>m} d^-2.
std::vector<double> force_residual(const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    std::vector<double> r(u.begin(), u.end());
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < n; ++j) {
            if (j == m)
                continue;
            const double d = u[m] - u[j];
            r[m] -= std::copysign(1.0, d) / (d * d);
        }
    }
    return r;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

// The Jacobian of the force residual coincides with the coupling matrix.
std::vector<double> coupling_matrix_unchecked(const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double diag = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            const double d = std::abs(u[i] - u[j]);
            const double inv3 = 1.0 / (d * d * d);
            diag += 2.0 * inv3;
            a[static_cast<std::size_t>(i) * n + j] = -2.0 * inv3;
        }
        a[static_cast<std::size_t>(i) * n + i] = diag;
    }
    return a;
}

// In-place Gaussian elimination with partial pivoting; rhs becomes the
// solution. Dense n <= 32 only.
void solve_linear(std::vector<double> a, std::vector<double>& rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row) {
            if (std::abs(a[static_cast<std::size_t>(row) * n + col]) >
                std::abs(a[static_cast<std::size_t>(pivot) * n + col]))
                pivot = row;
        }
        if (a[static_cast<std::size_t>(pivot) * n + col] == 0.0)
            throw ConvergenceError("equilibrium_positions: singular Newton step");
        if (pivot != col) {
            for (int k = col; k < n; ++k)
                std::swap(a[static_cast<std::size_t>(col) * n + k],
                          a[static_cast<std::size_t>(pivot) * n + k]);
            std::swap(rhs[col], rhs[pivot]);
        }
        const double inv = 1.0 / a[static_cast<std::size_t>(col) * n + col];
        for (int row = col + 1; row < n; ++row) {
            const double factor = a[static_cast<std::size_t>(row) * n + col] * inv;
            if (factor == 0.0)
                continue;
            for (int k = col; k < n; ++k)
                a[static_cast<std::size_t>(row) * n + k] -=
                    factor * a[static_cast<std::size_t>(col) * n + k];
            rhs[row] -= factor * rhs[col];
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        double acc = rhs[row];
        for (int k = row + 1; k < n; ++k)
            acc -= a[static_cast<std::size_t>(row) * n + k] * rhs[k];
        rhs[row] = acc / a[static_cast<std::size_t>(row) * n + row];
    }
}

// Cyclic Jacobi diagonalization of a symmetric matrix. Returns eigenvalues in
// eval and eigenvectors in the columns of vec (row-major), unsorted.
void jacobi_eigensolve(std::vector<double> a, int n,
                       std::vector<double>& eval, std::vector<double>& vec) {
    auto at = [&a, n](int i, int j) -> double& {
        return a[static_cast<std::size_t>(i) * n + j];
    };
    vec.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        vec[static_cast<std::size_t>(i) * n + i] = 1.0;

    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            norm += at(i, j) * at(i, j);
    norm = std::sqrt(norm);
    const double threshold = 1e-14 * std::max(norm, 1.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                off += 2.0 * at(i, j) * at(i, j);
        if (std::sqrt(off) <= threshold)
            break;
        if (sweep == 99)
            throw ConvergenceError("normal_modes: Jacobi sweeps exhausted");

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) <= 1e-300)
                    continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = at(p, p);
                const double aqq = at(q, q);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k != p && k != q) {
                        const double akp = at(k, p);
                        const double akq = at(k, q);
                        at(k, p) = akp - s * (akq + tau * akp);
                        at(p, k) = at(k, p);
                        at(k, q) = akq + s * (akp - tau * akq);
                        at(q, k) = at(k, q);
                    }
                    double& vkp = vec[static_cast<std::size_t>(k) * n + p];
                    double& vkq = vec[static_cast<std::size_t>(k) * n + q];
                    const double vp = vkp;
                    const double vq = vkq;
                    vkp = vp - s * (vq + tau * vp);
                    vkq = vq + s * (vp - tau * vq);
                }
            }
        }
    }

    eval.resize(n);
    for (int i = 0; i < n; ++i)
        eval[i] = at(i, i);
}

}  // namespace

void IonChainConfig::validate() const {
    if (n_ions < 2 || n_ions > 32)
        throw DomainError("IonChainConfig: n_ions must be in [2, 32]");
    if (!(trap_frequency > 0.0))
        throw DomainError("IonChainConfig: trap_frequency must be positive");
    if (!(ion_mass > 0.0))
        throw DomainError("IonChainConfig: ion_mass must be positive");
}

std::vector<double> equilibrium_positions(int n_ions) {
    if (n_ions < 2 || n_ions > 32)
        throw DomainError("equilibrium_positions: n_ions must be in [2, 32]");

    const int n = n_ions;
    // Uniform seed at the known minimum-spacing scale ~ 2.018 N^-0.559.
    const double spacing = 2.018 / std::pow(static_cast<double>(n), 0.559);
    std::vector<double> u(n);
    for (int m = 0; m < n; ++m)
        u[m] = spacing * (m - 0.5 * (n - 1));

    std::vector<double> r = force_residual(u);
    double rnorm = max_abs(r);
    for (int iter = 0; iter < 100 && rnorm > 1e-13; ++iter) {
        std::vector<double> step = r;
        solve_linear(coupling_matrix_unchecked(u), step);

        double scale = 1.0;
        std::vector<double> trial(n);
        double trial_norm = rnorm;
        std::vector<double> trial_residual;
        for (int halving = 0; halving < 40; ++halving) {
            bool ordered = true;
            for (int m = 0; m < n; ++m)
                trial[m] = u[m] - scale * step[m];
            for (int m = 0; m + 1 < n; ++m)
                ordered = ordered && trial[m] < trial[m + 1];
            if (ordered) {
                trial_residual = force_residual(trial);
                trial_norm = max_abs(trial_residual);
                if (trial_norm < rnorm)
                    break;
            }
            scale *= 0.5;
        }
        if (trial_norm >= rnorm)
            throw ConvergenceError("equilibrium_positions: Newton stalled");
        u = trial;
        r = trial_residual;
        rnorm = trial_norm;
    }
    if (rnorm > 1e-13)
        throw ConvergenceError("equilibrium_positions: residual above tolerance");

    const double mean = std::accumulate(u.begin(), u.end(), 0.0) / n;
    for (double& x : u)
        x -= mean;
    return u;
}

std::vector<double> coupling_matrix(const std::vector<double>& positions) {
    const int n = static_cast<int>(positions.size());
    if (n < 2)
        throw DomainError("coupling_matrix: need at least two positions");
    for (int m = 0; m + 1 < n; ++m) {
        if (!(positions[m + 1] - positions[m] > 1e-9))
            throw DomainError("coupling_matrix: positions degenerate or unsorted at index " +
                              std::to_string(m));
    }
    return coupling_matrix_unchecked(positions);
}

NormalModes normal_modes(const IonChainConfig& config) {
    config.validate();
    NormalModes modes;
    modes.equilibrium_positions = equilibrium_positions(config.n_ions);
    const std::vector<double> a = coupling_matrix(modes.equilibrium_positions);

    const int n = config.n_ions;
    std::vector<double> eval;
    std::vector<double> vec;
    jacobi_eigensolve(a, n, eval, vec);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&eval](int i, int j) { return eval[i] < eval[j]; });

    modes.eigenvalues_mu.resize(n);
    modes.frequencies.resize(n);
    modes.mode_matrix_b.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int p = 0; p < n; ++p) {
        const int src = order[p];
        modes.eigenvalues_mu[p] = eval[src];
        if (!(eval[src] > 0.0))
            throw ConvergenceError("normal_modes: nonpositive eigenvalue");
        modes.frequencies[p] = std::sqrt(eval[src]);

        double sign = 1.0;
        for (int m = 0; m < n; ++m) {
            const double component = vec[static_cast<std::size_t>(m) * n + src];
            if (std::abs(component) > 1e-8) {
                sign = component > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (int m = 0; m < n; ++m)
            modes.mode_matrix_b[static_cast<std::size_t>(m) * n + p] =
                sign * vec[static_cast<std::size_t>(m) * n + src];
    }
    return modes;
}

double lamb_dicke(double wavenumber, double angle, const IonChainConfig& config) {
    config.validate();
    if (!(wavenumber > 0.0))
        throw DomainError("lamb_dicke: wavenumber must be positive");
    const double nu = kTwoPi * config.trap_frequency;
    const double c = std::cos(angle);
    return std::sqrt(kHbar * wavenumber * wavenumber * c * c /
                     (2.0 * config.ion_mass * nu));
}

Complex two_point_function(const NormalModes& modes, int ion_index, double lag) {
    const int n = modes.n();
    if (ion_index < 1 || ion_index > n)
        throw DomainError("two_point_function: ion_index out of range");
    const int m = ion_index - 1;
    Complex sum{0.0, 0.0};
    for (int p = 0; p < n; ++p) {
        const double bmp = modes.b(m, p);
        const double weight = bmp * bmp / std::sqrt(modes.eigenvalues_mu[p]);
        sum += weight * std::polar(1.0, -modes.frequencies[p] * lag);
    }
    return sum;
}

}  // namespace trapcosmo
