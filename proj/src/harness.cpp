#include "fwdsmile/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "fwdsmile/errors.hpp"
#include "fwdsmile/limit.hpp"
#include "fwdsmile/montecarlo.hpp"
#include "fwdsmile/price.hpp"
#include "fwdsmile/smile.hpp"

namespace fwdsmile {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(trim(s), &pos);
    } catch (const std::exception&) {
        throw ParamError("not a number: '" + s + "'");
    }
    if (pos != trim(s).size()) throw ParamError("not a number: '" + s + "'");
    return x;
}

long long parse_int(const std::string& s) {
    const double x = parse_double(s);
    if (x != std::floor(x)) throw ParamError("not an integer: '" + s + "'");
    return static_cast<long long>(x);
}

template <class F>
double guarded(F&& f, Table& tb, const std::string& what) {
    try {
        return f();
    } catch (const DomainError& e) {
        tb.notes.push_back(what + ": " + e.what());
    } catch (const DegenerateError& e) {
        tb.notes.push_back(what + ": " + e.what());
    } catch (const ConvergenceError& e) {
        tb.notes.push_back(what + ": " + e.what());
        ++tb.convergence_failures;
    }
    return kNaN;
}

std::string label(double k, double tau) {
    return "k=" + format_number(k) + " tau=" + format_number(tau);
}

double sqrt_or_nan(double x) { return x > 0.0 ? std::sqrt(x) : kNaN; }

}  // namespace

HestonParams parse_params(const std::string& csv) {
    const auto xs = parse_list(csv);
    if (xs.size() != 5) throw ParamError("--params expects v,theta,kappa,xi,rho");
    return HestonParams(xs[0], xs[1], xs[2], xs[3], xs[4]);
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
    return out;
}

void apply_config_entry(RunSpec& run, const std::string& key, const std::string& value) {
    if (key == "params") run.params = parse_params(value);
    else if (key == "t") run.t = parse_double(value);
    else if (key == "tau") run.taus = parse_list(value);
    else if (key == "k_min") run.k_min = parse_double(value);
    else if (key == "k_max") run.k_max = parse_double(value);
    else if (key == "k_count") run.k_count = static_cast<int>(parse_int(value));
    else if (key == "order") run.order = static_cast<int>(parse_int(value));
    else if (key == "out") run.out = value;
    else if (key == "mc_check") run.mc_check = value == "1" || value == "true" || value == "yes";
    else if (key == "damping") run.cfg.damping = parse_double(value);
    else if (key == "quad_rel_tol") run.cfg.quad_rel_tol = parse_double(value);
    else if (key == "quad_abs_tol") run.cfg.quad_abs_tol = parse_double(value);
    else if (key == "iv_tol") run.cfg.iv_tol = parse_double(value);
    else if (key == "iv_lo") run.cfg.iv_lo = parse_double(value);
    else if (key == "iv_hi") run.cfg.iv_hi = parse_double(value);
    else if (key == "saddle_tol") run.cfg.saddle_tol = parse_double(value);
    else if (key == "mc_paths") run.cfg.mc_paths = parse_int(value);
    else if (key == "mc_steps") run.cfg.mc_steps = static_cast<int>(parse_int(value));
    else if (key == "mc_seed") run.cfg.mc_seed = static_cast<std::uint64_t>(parse_int(value));
    else throw ParamError("unknown config key '" + key + "'");
}

void apply_config_file(RunSpec& run, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot read config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParamError(path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_config_entry(run, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void validate(const RunSpec& run) {
    if (!run.params) throw ParamError("model parameters are required (--params or config 'params')");
    if (!(run.t >= 0.0)) throw ParamError("t must be >= 0");
    if (run.taus.empty()) throw ParamError("at least one tau is required");
    for (double tau : run.taus)
        if (!(tau > 0.0) || !std::isfinite(tau)) throw ParamError("tau values must be positive");
    if (run.k_count < 1) throw ParamError("k_count must be >= 1");
    if (!std::isfinite(run.k_min) || !std::isfinite(run.k_max) || run.k_min > run.k_max)
        throw ParamError("require k_min <= k_max");
    if (run.order < 0 || run.order > 2) throw ParamError("order must be 0, 1 or 2");
}

std::vector<double> k_grid(const RunSpec& run) {
    std::vector<double> ks;
    if (run.k_count == 1) return {run.k_min};
    for (int i = 0; i < run.k_count; ++i)
        ks.push_back(run.k_min + (run.k_max - run.k_min) * i / (run.k_count - 1));
    return ks;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void Table::write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (const double* d = std::get_if<double>(&row[i])) os << format_number(*d);
            else os << std::get<std::string>(row[i]);
        }
        os << '\n';
    }
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw InternalError("no column named " + name);
}

double Table::num(std::size_t row, const std::string& name) const {
    return std::get<double>(rows.at(row).at(column(name)));
}

bool near_critical(const ForwardContext& ctx, double k, double* k_crit) {
    const TransitionStrikes tr = transition_strikes(ctx);
    for (double kc : {tr.k0, tr.k1, tr.k_crit}) {
        if (!std::isfinite(kc)) continue;
        if (std::abs(k - kc) < 0.05 * std::abs(kc)) {
            if (k_crit) *k_crit = kc;
            return true;
        }
    }
    return false;
}

std::string regime_report(const RunSpec& run) {
    validate(run);
    const ForwardContext ctx(*run.params, run.t);
    const TransitionStrikes tr = transition_strikes(ctx);
    std::ostringstream os;
    auto kv = [&](const std::string& k, double v) { os << k << "=" << format_number(v) << "\n"; };
    os << "regime=" << to_string(ctx.regime()) << "\n";
    kv("t", ctx.t());
    kv("mu", ctx.mu());
    kv("beta_t", ctx.beta_t());
    kv("rho_minus", ctx.rho_minus());
    kv("rho_plus", ctx.rho_plus());
    kv("kappa_over_xi", ctx.rho_critical());
    kv("u_minus", ctx.u_minus());
    kv("u_plus", ctx.u_plus());
    if (ctx.u_star_minus()) kv("u_star_minus", *ctx.u_star_minus());
    if (ctx.u_star_plus()) kv("u_star_plus", *ctx.u_star_plus());
    os << "d_infinity=" << ctx.d_infinity().str() << "\n";
    kv("k_V'(0)", tr.k0);
    kv("k_V'(1)", tr.k1);
    if (ctx.regime() == Regime::R2) kv("k_V'(u_star_plus)", tr.k_crit);
    if (ctx.regime() == Regime::R3a || ctx.regime() == Regime::R3b) kv("k_V'(u_star_minus)", tr.k_crit);
    for (double tau : run.taus) {
        const std::string s = "[tau=" + format_number(tau) + "]";
        kv("exp(tau*V'(0))" + s, std::exp(tau * tr.k0));
        kv("exp(tau*V'(1))" + s, std::exp(tau * tr.k1));
        if (std::isfinite(tr.k_crit)) kv("exp(tau*k_crit)" + s, std::exp(tau * tr.k_crit));
    }
    for (int a : {0, 1}) {
        try {
            const UpsilonValue up = upsilon(ctx, a);
            kv("upsilon(" + std::to_string(a) + ")", up.value);
            if (up.degenerate)
                os << "warning=degenerate strike V'(" << a << "): v = theta*Upsilon(" << a
                   << "), expansion excluded there\n";
        } catch (const DomainError&) {
            os << "upsilon(" << a << ")=undefined\n";
        }
    }
    return os.str();
}

Table price_table(const RunSpec& run) {
    validate(run);
    const ForwardContext ctx(*run.params, run.t);
    Table tb;
    tb.header = {"k", "tau", "combination", "intrinsic", "rate", "correction", "phi", "alpha", "price_asym",
                 "remainder_order"};
    if (run.mc_check) {
        tb.header.push_back("price_mc");
        tb.header.push_back("mc_std_error");
    }
    const auto ks = k_grid(run);
    for (double tau : run.taus) {
        std::vector<McEstimate> mc;
        if (run.mc_check)
            mc = mc_forward_call(*run.params, run.t, tau, ks, run.cfg.mc_paths, run.cfg.mc_steps, run.cfg.mc_seed);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const double k = ks[i];
            std::vector<Cell> row{k, tau};
            try {
                const ExpansionResult r = forward_call_asymptotic(ctx, k, tau);
                row.insert(row.end(), {to_string(r.combination.tag), r.intrinsic, r.rate, r.correction,
                                       r.combination.phi, r.combination.alpha, r.price, r.remainder_order});
            } catch (const DegenerateError& e) {
                tb.notes.push_back(label(k, tau) + ": " + e.what());
                row.insert(row.end(), {std::string("excluded"), kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN});
            }
            if (run.mc_check) {
                row.push_back(mc[i].price);
                row.push_back(mc[i].std_error);
            }
            tb.rows.push_back(std::move(row));
        }
    }
    return tb;
}

Table smile_table(const RunSpec& run) {
    validate(run);
    const ForwardContext ctx(*run.params, run.t);
    Table tb;
    tb.header = {"k", "tau", "combination", "v0", "v1", "lambda", "remainder", "sigma2", "iv"};
    for (double tau : run.taus) {
        for (double k : k_grid(run)) {
            std::vector<Cell> row{k, tau};
            try {
                const SmilePoint sp = forward_smile_asymptotic(ctx, k, tau);
                double iv = kNaN;
                if (run.order == 0) iv = std::sqrt(sp.v0);
                else if (run.order == 1) iv = sqrt_or_nan(sp.sigma2);
                else
                    iv = guarded([&] { return implied_vol(forward_call_asymptotic(ctx, k, tau).price, k, tau, run.cfg); },
                                 tb, label(k, tau));
                row.insert(row.end(), {to_string(sp.combination), sp.v0, sp.v1, sp.lambda, to_string(sp.remainder),
                                       sp.sigma2, iv});
            } catch (const DegenerateError& e) {
                tb.notes.push_back(label(k, tau) + ": " + e.what());
                row.insert(row.end(), {std::string("excluded"), v0_infty(ctx, k), kNaN, kNaN, std::string(""), kNaN,
                                       run.order == 0 ? std::sqrt(v0_infty(ctx, k)) : kNaN});
            }
            tb.rows.push_back(std::move(row));
        }
    }
    return tb;
}

Table svi_table(const RunSpec& run) {
    validate(run);
    const ForwardContext ctx(*run.params, run.t);
    Table tb;
    tb.header = {"k", "region", "a", "b", "r", "m", "s", "i0", "i1", "i2", "sigma2_svi", "v0", "residual"};
    for (double k : k_grid(run)) {
        const SviParams p = svi_limit_params(ctx, k);
        const double s2 = sigma2_svi(k, p);
        const double v0 = v0_infty(ctx, k);
        tb.rows.push_back({k, to_string(p.region), p.a, p.b, p.r, p.m, p.s, p.i0, p.i1, p.i2, s2, v0, s2 - v0});
    }
    return tb;
}

namespace {

struct CompareRow {
    double price_ref, iv_ref, price_asym, iv_v0, iv_v1;
};

CompareRow compare_cell(const ForwardContext& ctx, double k, double tau, const PricingConfig& cfg, Table& tb) {
    const std::string lb = label(k, tau);
    CompareRow r{};
    r.price_ref = guarded([&] { return forward_call_fourier(ctx, k, tau, cfg); }, tb, lb + " reference");
    r.iv_ref = std::isnan(r.price_ref)
                   ? kNaN
                   : guarded([&] { return implied_vol(r.price_ref, k, tau, cfg); }, tb, lb + " reference iv");
    r.price_asym = guarded([&] { return forward_call_asymptotic(ctx, k, tau).price; }, tb, lb + " asymptotic");
    r.iv_v0 = std::sqrt(v0_infty(ctx, k));
    r.iv_v1 = guarded(
        [&] {
            const SmilePoint sp = forward_smile_asymptotic(ctx, k, tau);
            // Where no first-order smile term exists, invert the asymptotic price instead.
            if (sp.combination == SmileCombination::P1) return implied_vol(r.price_asym, k, tau, cfg);
            return sqrt_or_nan(sp.sigma2);
        },
        tb, lb + " first-order smile");
    return r;
}

}  // namespace

Table compare_table(const RunSpec& run) {
    validate(run);
    const ForwardContext ctx(*run.params, run.t);
    Table tb;
    tb.header = {"k", "tau", "price_ref", "iv_ref", "price_asym", "iv_v0", "iv_v1", "err_price", "err_iv0", "err_iv1"};
    const auto ks = k_grid(run);
    for (double tau : run.taus) {
        for (double k : ks) {
            double kc = 0.0;
            if (near_critical(ctx, k, &kc))
                tb.notes.push_back(label(k, tau) + ": near-critical (transition strike " + format_number(kc) + ")");
            const CompareRow r = compare_cell(ctx, k, tau, run.cfg, tb);
            tb.rows.push_back({k, tau, r.price_ref, r.iv_ref, r.price_asym, r.iv_v0, r.iv_v1,
                               r.price_asym - r.price_ref, r.iv_v0 - r.iv_ref, r.iv_v1 - r.iv_ref});
        }
        if (run.mc_check) {
            const auto mc =
                mc_forward_call(*run.params, run.t, tau, ks, run.cfg.mc_paths, run.cfg.mc_steps, run.cfg.mc_seed);
            for (const auto& m : mc) {
                const double ref = forward_call_fourier(ctx, m.k, tau, run.cfg);
                tb.notes.push_back(label(m.k, tau) + ": monte-carlo " + format_number(m.price) + " +- " +
                                   format_number(m.std_error) + ", reference " + format_number(ref) + ", z=" +
                                   format_number((ref - m.price) / m.std_error));
            }
        }
    }
    return tb;
}

std::vector<std::string> figure_names() {
    return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

namespace {

RunSpec preset(double v, double theta, double kappa, double xi, double rho, double t, double tau, double k_min,
               double k_max, int k_count, const PricingConfig& cfg) {
    RunSpec r;
    r.params = HestonParams(v, theta, kappa, xi, rho);
    r.t = t;
    r.taus = {tau};
    r.k_min = k_min;
    r.k_max = k_max;
    r.k_count = k_count;
    r.cfg = cfg;
    return r;
}

Table lmgf_figure(const ForwardContext& ctx) {
    Table tb;
    tb.header = {"u", "V", "V_plus_H_over_tau2", "V_plus_H_over_tau5", "V_plus_H_over_tau10"};
    const double lo = ctx.u_minus(), hi = *ctx.u_star_plus();
    const int n = 200;
    for (int i = 1; i < n; ++i) {
        const double u = lo + (hi - lo) * i / n;
        const double V = eval_V(ctx, u).V, H = eval_H(ctx, u).H;
        tb.rows.push_back({u, V, V + H / 2.0, V + H / 5.0, V + H / 10.0});
    }
    return tb;
}

Table hprime_figure(const ForwardContext& ctx) {
    Table tb;
    tb.header = {"panel", "u", "Hprime_over_tau2", "Hprime_over_tau5", "Hprime_over_tau10"};
    const int n = 200;
    auto panel = [&](const std::string& name, double lo, double hi) {
        for (int i = 1; i < n; ++i) {
            const double u = lo + (hi - lo) * i / n;
            const double h = eval_H(ctx, u).H1;
            tb.rows.push_back({name, u, h / 2.0, h / 5.0, h / 10.0});
        }
    };
    panel("a", ctx.u_minus(), *ctx.u_star_plus());
    panel("b", 0.0, 1.0);
    return tb;
}

}  // namespace

Table reproduce_figure(const std::string& name, const PricingConfig& cfg) {
    if (name == "fig1") {
        // Limiting spot (t = 0) and forward (t = 0.5) smiles against strike exp(k tau), tau = 2.
        const HestonParams p(0.1, 0.1, 2.0, 1.0, -0.9);
        const ForwardContext spot(p, 0.0), fwd(p, 0.5);
        const double tau = 2.0;
        Table tb;
        tb.header = {"k", "strike", "iv_spot", "iv_forward", "region_spot", "region_forward"};
        const int n = 41;
        for (int i = 0; i < n; ++i) {
            const double K = 0.4 + 1.6 * i / (n - 1);
            const double k = std::log(K) / tau;
            const SviParams ps = svi_limit_params(spot, k), pf = svi_limit_params(fwd, k);
            tb.rows.push_back({k, K, std::sqrt(sigma2_svi(k, ps)), std::sqrt(sigma2_svi(k, pf)),
                               to_string(ps.region), to_string(pf.region)});
        }
        return tb;
    }
    if (name == "fig2") return compare_table(preset(0.07, 0.07, 1.5, 0.34, -0.25, 1.0, 5.0, -0.14, 0.14, 15, cfg));
    if (name == "fig3") return compare_table(preset(0.07, 0.07, 1.5, 0.65, -0.8, 1.0, 5.0, -0.1, 0.35, 19, cfg));
    if (name == "fig4") {
        RunSpec r = preset(0.07, 0.07, 1.5, 0.65, -0.8, 1.0, 5.0, 0.0, 0.0, 1, cfg);
        const ForwardContext ctx(*r.params, r.t);
        const double kc = transition_strikes(ctx).k_crit;
        r.k_min = r.k_max = kc;
        r.taus.clear();
        for (int tau = 2; tau <= 20; ++tau) r.taus.push_back(tau);
        return compare_table(r);
    }
    if (name == "fig5") return compare_table(preset(0.07, 0.07, 0.1, 0.6, 0.5, 0.0, 10.0, -0.1, 0.15, 26, cfg));
    if (name == "fig6") return compare_table(preset(0.07, 0.07, 0.1, 0.6, 0.5, 0.0, 20.0, -0.1, 0.15, 26, cfg));
    if (name == "fig7") return lmgf_figure(ForwardContext(HestonParams(0.07, 0.07, 1.5, 0.65, -0.8), 1.0));
    if (name == "fig8") return hprime_figure(ForwardContext(HestonParams(0.07, 0.07, 1.5, 0.65, -0.8), 1.0));
    throw ParamError("unknown figure '" + name + "' (expected fig1..fig8)");
}

}  // namespace fwdsmile
