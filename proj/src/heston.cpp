#include "fwdsmile/heston.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fwdsmile/errors.hpp"

namespace fwdsmile {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

HestonParams::HestonParams(double v_, double theta_, double kappa_, double xi_, double rho_)
    : v(v_), theta(theta_), kappa(kappa_), xi(xi_), rho(rho_) {
    if (!finite_positive(v)) throw ParamError("v must be positive");
    if (!finite_positive(theta)) throw ParamError("theta must be positive");
    if (!finite_positive(kappa)) throw ParamError("kappa must be positive");
    if (!finite_positive(xi)) throw ParamError("xi must be positive");
    if (!std::isfinite(rho) || std::abs(rho) >= 1.0) throw ParamError("rho must lie in (-1, 1)");
    if (!finite_positive(mu())) throw ParamError("2 kappa theta / xi^2 is not finite");
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::R1: return "R1";
        case Regime::R2: return "R2";
        case Regime::R3a: return "R3a";
        case Regime::R3b: return "R3b";
        case Regime::R4: return "R4";
    }
    return "?";
}

bool Interval::contains(double u) const {
    bool above = lo_closed ? u >= lo : u > lo;
    bool below = hi_closed ? u <= hi : u < hi;
    return above && below;
}

std::string Interval::str() const {
    std::ostringstream os;
    os.precision(17);
    os << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
    return os.str();
}

ForwardContext::ForwardContext(const HestonParams& p, double t) : p_(p), t_(t) {
    if (!std::isfinite(t) || t < 0.0) throw ParamError("forward date t must be >= 0");
    const double k = p.kappa, xi = p.xi, rho = p.rho;
    mu_ = p.mu();
    beta_ = xi * xi / (4.0 * k) * (-std::expm1(-k * t));

    const double E = std::exp(k * t);
    const double root = std::sqrt(16.0 * k * k * E * E + xi * xi * (1.0 - E) * (1.0 - E));
    const double scale = std::exp(-2.0 * k * t) / (8.0 * k);
    rho_minus_ = scale * (xi * (E * E - 1.0) - (E + 1.0) * root);
    rho_plus_ = scale * (xi * (E * E - 1.0) + (E + 1.0) * root);
    if (t == 0.0) {
        rho_minus_ = -1.0;
        rho_plus_ = 1.0;
    }

    eta_ = std::sqrt(xi * xi * (1.0 - rho * rho) + (2.0 * k - rho * xi) * (2.0 * k - rho * xi));
    const double den = 2.0 * xi * (1.0 - rho * rho);
    u_minus_ = (xi - 2.0 * k * rho - eta_) / den;
    u_plus_ = (xi - 2.0 * k * rho + eta_) / den;

    psi_ = xi * (E - 1.0) - 4.0 * k * rho * E;
    if (t > 0.0 && (rho <= rho_minus_ || rho >= rho_plus_)) {
        const double nu2 = psi_ * psi_ - 16.0 * k * k * E;
        nu_ = std::sqrt(std::max(nu2, 0.0));
        const double d2 = 2.0 * xi * std::expm1(k * t);
        u_star_minus_ = (psi_ - *nu_) / d2;
        u_star_plus_ = (psi_ + *nu_) / d2;
    } else if (t == 0.0) {
        u_star_minus_ = -kInf;
        u_star_plus_ = kInf;
    }

    const double rc = k / xi;
    if (t > 0.0 && rho < rho_minus_) {
        regime_ = Regime::R2;
    } else if (t > 0.0 && rho > rho_plus_) {
        regime_ = rho <= rc ? Regime::R3a : Regime::R3b;
    } else {
        regime_ = rho <= rc ? Regime::R1 : Regime::R4;
    }

    switch (regime_) {
        case Regime::R1: d_inf_ = {u_minus_, u_plus_, true, true}; break;
        case Regime::R2: d_inf_ = {u_minus_, *u_star_plus_, true, false}; break;
        case Regime::R3a: d_inf_ = {*u_star_minus_, u_plus_, false, true}; break;
        case Regime::R3b: d_inf_ = {*u_star_minus_, 1.0, false, true}; break;
        case Regime::R4: d_inf_ = {u_minus_, 1.0, false, true}; break;
    }
}

double ForwardContext::nu_const() const {
    if (!nu_) throw InternalError("nu is undefined for rho in (rho-, rho+)");
    return *nu_;
}

double ForwardContext::critical_u(int side) const {
    if (side > 0) {
        if (regime_ != Regime::R2) throw DomainError("u*+ is not a domain boundary in regime " + to_string(regime_));
        return *u_star_plus_;
    }
    if (regime_ != Regime::R3a && regime_ != Regime::R3b)
        throw DomainError("u*- is not a domain boundary in regime " + to_string(regime_));
    return *u_star_minus_;
}

ForwardContext build_context(const HestonParams& p, double t) { return ForwardContext(p, t); }

}  // namespace fwdsmile
