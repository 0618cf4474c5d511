#include "dtbc/discrete_ops.hpp"

#include <cmath>
#include <string>

#include "dtbc/error.hpp"

namespace dtbc {

namespace {

double at(GridValues w, int j) { return w[static_cast<std::size_t>(j)]; }

void require_length(const Mesh& mesh, GridValues w, const char* who)
{
    if (w.size() != static_cast<std::size_t>(mesh.J()) + 1)
        throw ValidationError(std::string(who) + ": mesh function length does not match mesh");
}

void require_index(int j, int lo, int hi, const char* who)
{
    if (j < lo || j > hi)
        throw ValidationError(std::string(who) + ": index " + std::to_string(j) + " outside stencil range [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void require_theta(double theta, const char* who)
{
    if (!(theta <= 0.25))
        throw ValidationError(std::string(who) + ": theta must not exceed 1/4");
}

} // namespace

bool in_h0(GridValues w) { return !w.empty() && w[0] == 0.0; }

NormSet make_norm_set(double sigma, double theta)
{
    return NormSet{sigma, theta, 1.0 - 4.0 * std::max(theta, 0.0), 2.0 * (sigma + std::abs(1.0 - sigma))};
}

double backward_dx(const Mesh& mesh, GridValues w, int j)
{
    require_length(mesh, w, "backward_dx");
    require_index(j, 1, mesh.J(), "backward_dx");
    return (at(w, j) - at(w, j - 1)) / mesh.h(j);
}

double modified_forward_dx(const Mesh& mesh, GridValues w, int j)
{
    require_length(mesh, w, "modified_forward_dx");
    require_index(j, 1, mesh.J() - 1, "modified_forward_dx");
    return (at(w, j + 1) - at(w, j)) / mesh.h_half(j);
}

double central_dx(const Mesh& mesh, GridValues w, int j)
{
    require_length(mesh, w, "central_dx");
    require_index(j, 1, mesh.J() - 1, "central_dx");
    return (at(w, j + 1) - at(w, j - 1)) / (2.0 * mesh.h_half(j));
}

double avg_s_theta(const Mesh& mesh, GridValues w, double theta, int j)
{
    require_length(mesh, w, "avg_s_theta");
    require_index(j, 1, mesh.J() - 1, "avg_s_theta");
    const double hh = mesh.h_half(j);
    return theta * mesh.h(j) / hh * at(w, j - 1) + (1.0 - 2.0 * theta) * at(w, j) +
           theta * mesh.h(j + 1) / hh * at(w, j + 1);
}

double avg_s_hat(const Mesh& mesh, GridValues w, int j)
{
    require_length(mesh, w, "avg_s_hat");
    require_index(j, 1, mesh.J() - 1, "avg_s_hat");
    const double hh = mesh.h_half(j);
    return mesh.h(j) / (2.0 * hh) * at(w, j) + mesh.h(j + 1) / (2.0 * hh) * at(w, j + 1);
}

double c_theta_apply(const Mesh& mesh, GridValues kappa, GridValues w, double theta, int j)
{
    require_length(mesh, kappa, "c_theta_apply");
    const double hh = mesh.h_half(j);
    return theta * mesh.h(j) / hh * at(kappa, j) * at(w, j - 1) +
           (1.0 - 2.0 * theta) * avg_s_hat(mesh, kappa, j) * at(w, j) +
           theta * mesh.h(j + 1) / hh * at(kappa, j + 1) * at(w, j + 1);
}

BoundarySplit split_s_theta_boundary(GridValues w, double theta, std::optional<double> w_next)
{
    if (w.size() < 2)
        throw ValidationError("split_s_theta_boundary: need W_{J-1} and W_J");
    const double wj = w[w.size() - 1];
    const double wjm1 = w[w.size() - 2];
    BoundarySplit s{theta * wjm1 + (0.5 - theta) * wj, std::nullopt};
    if (w_next)
        s.plus = (0.5 - theta) * wj + theta * *w_next;
    return s;
}

double inner_omega(const Mesh& mesh, GridValues v, GridValues w)
{
    require_length(mesh, v, "inner_omega");
    require_length(mesh, w, "inner_omega");
    double sum = 0.0;
    for (int j = 1; j < mesh.J(); ++j)
        sum += at(v, j) * at(w, j) * mesh.h_half(j);
    return sum;
}

double inner_tilde(const Mesh& mesh, GridValues v, GridValues w)
{
    require_length(mesh, v, "inner_tilde");
    require_length(mesh, w, "inner_tilde");
    double sum = 0.0;
    for (int j = 1; j <= mesh.J(); ++j)
        sum += at(v, j) * at(w, j) * mesh.h(j);
    return sum;
}

double inner_bar(const Mesh& mesh, GridValues v, GridValues w)
{
    const int J = mesh.J();
    return inner_omega(mesh, v, w) + at(v, J) * at(w, J) * 0.5 * mesh.tail_step();
}

double norm_omega(const Mesh& mesh, GridValues w) { return std::sqrt(inner_omega(mesh, w, w)); }
double norm_tilde(const Mesh& mesh, GridValues w) { return std::sqrt(inner_tilde(mesh, w, w)); }
double norm_bar(const Mesh& mesh, GridValues w) { return std::sqrt(inner_bar(mesh, w, w)); }

double form_c_theta(const Mesh& mesh, GridValues u, GridValues w, GridValues kappa, double theta)
{
    require_theta(theta, "form_c_theta");
    require_length(mesh, u, "form_c_theta");
    require_length(mesh, w, "form_c_theta");
    require_length(mesh, kappa, "form_c_theta");
    const int J = mesh.J();
    double sum = 0.0;
    for (int j = 1; j < J; ++j)
        sum += c_theta_apply(mesh, kappa, u, theta, j) * at(w, j) * mesh.h_half(j);
    const double s_minus = theta * at(u, J - 1) + (0.5 - theta) * at(u, J);
    return sum + at(kappa, J) * s_minus * at(w, J) * mesh.h(J);
}

double form_l(const Mesh& mesh, GridValues u, GridValues w, GridValues b_h, GridValues c_h, double c_inf,
              double theta)
{
    require_theta(theta, "form_l");
    require_length(mesh, u, "form_l");
    require_length(mesh, w, "form_l");
    require_length(mesh, b_h, "form_l");
    require_length(mesh, c_h, "form_l");
    const int J = mesh.J();
    double stiffness = 0.0;
    for (int j = 1; j <= J; ++j)
        stiffness += at(b_h, j) * backward_dx(mesh, u, j) * backward_dx(mesh, w, j) * mesh.h(j);
    double reaction = 0.0;
    for (int j = 1; j < J; ++j)
        reaction += c_theta_apply(mesh, c_h, u, theta, j) * at(w, j) * mesh.h_half(j);
    const double s_minus = theta * at(u, J - 1) + (0.5 - theta) * at(u, J);
    return stiffness + reaction + c_inf * s_minus * at(w, J) * mesh.h(J);
}

} // namespace dtbc
