#pragma once

#include <optional>
#include <string>

namespace fwdsmile {

struct HestonParams {
    double v;
    double theta;
    double kappa;
    double xi;
    double rho;

    HestonParams(double v, double theta, double kappa, double xi, double rho);

    double mu() const { return 2.0 * kappa * theta / (xi * xi); }
};

enum class Regime { R1, R2, R3a, R3b, R4 };

std::string to_string(Regime r);

struct Interval {
    double lo;
    double hi;
    bool lo_closed;
    bool hi_closed;

    bool contains(double u) const;
    std::string str() const;
};

// Parameter set plus forward date with every regime constant precomputed.
// Immutable after construction.
class ForwardContext {
public:
    ForwardContext(const HestonParams& p, double t);

    const HestonParams& params() const { return p_; }
    double t() const { return t_; }
    double mu() const { return mu_; }
    double beta_t() const { return beta_; }
    double rho_minus() const { return rho_minus_; }
    double rho_plus() const { return rho_plus_; }
    double eta_const() const { return eta_; }
    double psi_const() const { return psi_; }
    bool has_nu() const { return nu_.has_value(); }
    double nu_const() const;  // throws InternalError when rho is in (rho-, rho+)
    double u_minus() const { return u_minus_; }
    double u_plus() const { return u_plus_; }
    // +-infinity at t = 0; empty when nu is undefined.
    std::optional<double> u_star_minus() const { return u_star_minus_; }
    std::optional<double> u_star_plus() const { return u_star_plus_; }
    Regime regime() const { return regime_; }
    const Interval& d_infinity() const { return d_inf_; }

    // kappa/xi; the correlation above which V(1) < 0.
    double rho_critical() const { return p_.kappa / p_.xi; }
    bool large_correlation() const { return p_.rho > rho_critical(); }

    // u*+ (R2) or u*- (R3a/R3b); DomainError otherwise.
    double critical_u(int side) const;

private:
    HestonParams p_;
    double t_;
    double mu_;
    double beta_;
    double rho_minus_;
    double rho_plus_;
    double eta_;
    double psi_;
    std::optional<double> nu_;
    double u_minus_;
    double u_plus_;
    std::optional<double> u_star_minus_;
    std::optional<double> u_star_plus_;
    Regime regime_;
    Interval d_inf_;
};

ForwardContext build_context(const HestonParams& p, double t);

}  // namespace fwdsmile
