#pragma once

#include <vector>

#include "trapcosmo/numerics.hpp"

namespace trapcosmo {

struct IonChainConfig {
    int n_ions = 2;
    double trap_frequency = 1.0e6;    // axial secular frequency nu / 2 pi, Hz
    double ion_mass = 6.642156e-26;   // kg

    void validate() const;  // throws DomainError on violated invariants
    bool operator==(const IonChainConfig&) const = default;
};

// Eigenstructure of the linearized chain. All quantities dimensionless: the
// Coulomb length scale is 1 and frequencies are in units of the trap
// frequency nu. mode entry (m, p) is the component of mode p on ion m; as a
// matrix this is B^T in the A = B^T Lambda B factorization, so columns are
// eigenvectors and B^T B = I.
struct NormalModes {
    std::vector<double> equilibrium_positions;  // ascending
    std::vector<double> eigenvalues_mu;         // ascending, mu_1 = 1
    std::vector<double> mode_matrix_b;          // row-major n x n
    std::vector<double> frequencies;            // sqrt(mu_p)

    int n() const { return static_cast<int>(eigenvalues_mu.size()); }
    double b(int ion_m, int mode_p) const {  // both 0-based
        return mode_matrix_b[static_cast<std::size_t>(ion_m) * eigenvalues_mu.size() +
                             static_cast<std::size_t>(mode_p)];
    }
};

// Dimensionless equilibrium positions from the force balance
// u_m = sum_{j<m} (u_m - u_j)^-2 - sum_{j>m} (u_m - u_j)^-2,
// solved by damped Newton to residual <= 1e-13, recentred to zero mean.
std::vector<double> equilibrium_positions(int n_ions);

// Linearized coupling matrix: diagonal 1 + 2 sum |u_n - u_p|^-3, off-diagonal
// -2 |u_n - u_m|^-3. Row-major n x n. Gaps below 1e-9 raise DomainError.
std::vector<double> coupling_matrix(const std::vector<double>& positions);

// Full eigenstructure by cyclic Jacobi rotations. Eigenvalues ascending;
// eigenvector sign fixed so the first nonzero component is positive.
NormalModes normal_modes(const IonChainConfig& config);

// Lamb-Dicke parameter sqrt(hbar k^2 cos^2(theta) / (2 M nu)) with nu the
// angular trap frequency 2 pi * config.trap_frequency.
double lamb_dicke(double wavenumber, double angle, const IonChainConfig& config);

// Equal-time-lag mode correlation for ion ion_index (1-based):
// sum_p b^2 / sqrt(mu_p) * exp(-i sqrt(mu_p) * lag).
Complex two_point_function(const NormalModes& modes, int ion_index, double lag);

}  // namespace trapcosmo
