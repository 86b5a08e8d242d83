#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fwdsmile/errors.hpp"
#include "fwdsmile/harness.hpp"

using namespace fwdsmile;

namespace {

// Returns the exit status: 3 when any cell hit a convergence failure.
int emit(const Table& tb, const std::string& out) {
    for (const auto& n : tb.notes) std::cerr << "warning: " << n << "\n";
    if (out.empty()) {
        tb.write_csv(std::cout);
    } else {
        std::ofstream os(out);
        if (!os) throw ParamError("cannot write '" + out + "'");
        tb.write_csv(os);
    }
    return tb.convergence_failures > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large-maturity forward smile asymptotics for the Heston model"};
    app.require_subcommand(1);

    std::string params, config, out;
    double t = 0.0, k_min = 0.0, k_max = 0.0;
    int k_count = 0, order = 1;
    std::vector<double> taus;
    bool mc_check = false;

    auto* o_params = app.add_option("--params", params, "v,theta,kappa,xi,rho");
    auto* o_t = app.add_option("--t", t, "forward-start date");
    auto* o_tau = app.add_option("--tau", taus, "maturity after the start date (repeatable)")->take_all()->delimiter(',')
                      ->allow_extra_args(false);
    auto* o_kmin = app.add_option("--k-min", k_min, "smallest log-strike / tau");
    auto* o_kmax = app.add_option("--k-max", k_max, "largest log-strike / tau");
    auto* o_kcount = app.add_option("--k-count", k_count, "number of strikes");
    auto* o_order = app.add_option("--order", order, "smile order: 0, 1, or 2 (inverted asymptotic price)")
                        ->check(CLI::IsMember({0, 1, 2}));
    auto* o_out = app.add_option("--out", out, "CSV output path (stdout when omitted)");
    app.add_option("--config", config, "flat key=value file; flags override it");
    auto* o_mc = app.add_flag("--mc-check", mc_check, "cross-check against Monte Carlo");

    app.add_subcommand("regime", "regime, moment domain and transition strikes")->fallthrough();
    app.add_subcommand("price", "asymptotic forward-start call prices")->fallthrough();
    app.add_subcommand("smile", "asymptotic forward implied variance")->fallthrough();
    app.add_subcommand("svi", "limiting smile in SVI form")->fallthrough();
    app.add_subcommand("compare", "asymptotics against the Fourier reference")->fallthrough();
    auto* repro = app.add_subcommand("reproduce", "regenerate a figure's data")->fallthrough();
    std::string figure;
    repro->add_option("figure", figure, "fig1..fig8")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunSpec run;
        if (!config.empty()) apply_config_file(run, config);
        if (o_params->count()) run.params = parse_params(params);
        if (o_t->count()) run.t = t;
        if (o_tau->count()) run.taus = taus;
        if (o_kmin->count()) run.k_min = k_min;
        if (o_kmax->count()) run.k_max = k_max;
        if (o_kcount->count()) run.k_count = k_count;
        if (o_order->count()) run.order = order;
        if (o_out->count()) run.out = out;
        if (o_mc->count()) run.mc_check = true;

        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "regime") {
            const std::string rep = regime_report(run);
            if (run.out.empty()) std::cout << rep;
            else {
                std::ofstream os(run.out);
                if (!os) throw ParamError("cannot write '" + run.out + "'");
                os << rep;
            }
        } else if (cmd == "price") {
            return emit(price_table(run), run.out);
        } else if (cmd == "smile") {
            return emit(smile_table(run), run.out);
        } else if (cmd == "svi") {
            return emit(svi_table(run), run.out);
        } else if (cmd == "compare") {
            return emit(compare_table(run), run.out);
        } else if (cmd == "reproduce") {
            return emit(reproduce_figure(figure, run.cfg), run.out);
        }
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
