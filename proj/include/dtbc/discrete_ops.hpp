#ifndef DTBC_DISCRETE_OPS_HPP
#define DTBC_DISCRETE_OPS_HPP

#include <optional>
#include <span>
#include <utility>

#include "dtbc/problem.hpp"

namespace dtbc {

// Mesh functions are spans of J+1 nodal values W_0..W_J. Functions of H_0
// additionally have W_0 = 0.
using GridValues = std::span<const double>;

bool in_h0(GridValues w);

struct NormSet {
    double sigma;
    double theta;
    double c_theta; // 1 - 4 max(theta, 0)
    double K_sigma; // 2 (sigma + |1 - sigma|)
};

NormSet make_norm_set(double sigma, double theta);

// Difference quotients. backward_dx needs 1 <= j <= J, the other two
// 1 <= j <= J-1.
double backward_dx(const Mesh& mesh, GridValues w, int j);
double modified_forward_dx(const Mesh& mesh, GridValues w, int j);
double central_dx(const Mesh& mesh, GridValues w, int j);

// Three-point averages at an interior node 1 <= j <= J-1.
double avg_s_theta(const Mesh& mesh, GridValues w, double theta, int j);
double avg_s_hat(const Mesh& mesh, GridValues w, int j);
// C_theta[kappa] W at node j; kappa is a cell array (entries 1..J).
double c_theta_apply(const Mesh& mesh, GridValues kappa, GridValues w, double theta, int j);

struct BoundarySplit {
    double minus;
    std::optional<double> plus;
};

// s_theta^- W_J = theta W_{J-1} + (1/2 - theta) W_J, and s_theta^+ W_J when
// the ghost value W_{J+1} is supplied.
BoundarySplit split_s_theta_boundary(GridValues w, double theta, std::optional<double> w_next = std::nullopt);

// Mesh inner products: over omega_h (nodes 1..J-1, weights h_{j+1/2}),
// over the cell mesh (nodes 1..J, weights h_j), and over the closed mesh
// (omega_h plus the half-cell at x_J).
double inner_omega(const Mesh& mesh, GridValues v, GridValues w);
double inner_tilde(const Mesh& mesh, GridValues v, GridValues w);
double inner_bar(const Mesh& mesh, GridValues v, GridValues w);
double norm_omega(const Mesh& mesh, GridValues w);
double norm_tilde(const Mesh& mesh, GridValues w);
double norm_bar(const Mesh& mesh, GridValues w);

/// Bilinear form (U, W)_{C_theta[kappa]} = (C_theta[kappa] U, W)_omega
/// + kappa_J (s_theta^- U)_J W_J h_J on H_0. Symmetric; positive for
/// kappa > 0 and theta < 1/4. Rejects theta > 1/4.
double form_c_theta(const Mesh& mesh, GridValues u, GridValues w, GridValues kappa, double theta);

/// Energy form L(U, W) = (b dU, dW)_tilde + (C_theta[c] U, W)_omega
/// + c_inf (s_theta^- U)_J W_J h_J with backward differences d.
double form_l(const Mesh& mesh, GridValues u, GridValues w, GridValues b_h, GridValues c_h, double c_inf,
              double theta);

} // namespace dtbc

#endif // DTBC_DISCRETE_OPS_HPP
