#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fwdsmile/heston.hpp"
#include "fwdsmile/reference.hpp"

namespace fwdsmile {

struct RunSpec {
    std::optional<HestonParams> params;
    double t = 0.0;
    std::vector<double> taus{5.0};
    double k_min = -0.5;
    double k_max = 0.5;
    int k_count = 21;
    int order = 1;
    std::string out;
    PricingConfig cfg;
    bool mc_check = false;
};

HestonParams parse_params(const std::string& csv);

std::vector<double> parse_list(const std::string& csv);

// Flat "key = value" file; '#' starts a comment. Unknown keys raise ParamError.
void apply_config_file(RunSpec& run, const std::string& path);

void apply_config_entry(RunSpec& run, const std::string& key, const std::string& value);

void validate(const RunSpec& run);

std::vector<double> k_grid(const RunSpec& run);

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;  // diagnostics kept out of the CSV body
    int convergence_failures = 0;    // cells left NaN because a solver did not converge

    void write_csv(std::ostream& os) const;
    std::size_t column(const std::string& name) const;
    double num(std::size_t row, const std::string& name) const;
};

std::string format_number(double x);

std::string regime_report(const RunSpec& run);
Table price_table(const RunSpec& run);
Table smile_table(const RunSpec& run);
Table svi_table(const RunSpec& run);
Table compare_table(const RunSpec& run);

// Strikes within 5% of a transition strike, where expansions may break down.
bool near_critical(const ForwardContext& ctx, double k, double* k_crit = nullptr);

std::vector<std::string> figure_names();
Table reproduce_figure(const std::string& name, const PricingConfig& cfg = {});

}  // namespace fwdsmile
