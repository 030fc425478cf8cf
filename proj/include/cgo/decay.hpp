#pragma once

// Per-tau norm samples with a least-squares log-log slope, compared against a
// predicted upper-bound exponent.

#include <ostream>
#include <string>
#include <vector>

namespace cgo {

struct DecayReport {
    std::string label;
    std::vector<double> parameter_values;  // tau, strictly increasing, all > 1
    std::vector<double> norm_samples;
    double fitted_exponent = 0.0;
    double fit_residual = 0.0;  // rms of log residuals
    double predicted_exponent = 0.0;
    bool degenerate = false;  // some sample is zero, no slope

    // fitted <= predicted + tolerance; degenerate reports never pass.
    bool within_upper_bound(double tolerance) const;
    bool strictly_decreasing() const;
};

struct LogLogFit {
    double slope;
    double intercept;
    double residual;
};

// Least-squares fit of log y against log x. Throws invalid_exponent on fewer
// than two points or non-positive values.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Fills fitted_exponent / fit_residual / degenerate from the samples.
DecayReport make_decay_report(std::string label, std::vector<double> taus, std::vector<double> norms,
                              double predicted_exponent);

// Ladder tau0 * 2^k, k = 0..count-1.
std::vector<double> geometric_ladder(double tau0, std::size_t count);

void write_decay_csv(std::ostream& os, const DecayReport& report);
std::string decay_summary_json(const DecayReport& report);

}  // namespace cgo
