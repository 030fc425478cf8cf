#include "cgo/decay.hpp"

#include <cmath>
#include <iomanip>
#include "json.hpp"

#include "cgo/error.hpp"

namespace cgo {

bool DecayReport::within_upper_bound(double tolerance) const {
    return !degenerate && std::isfinite(fitted_exponent) && fitted_exponent <= predicted_exponent + tolerance;
}

bool DecayReport::strictly_decreasing() const {
    for (std::size_t i = 1; i < norm_samples.size(); ++i)
        if (!(norm_samples[i] < norm_samples[i - 1])) return false;
    return !norm_samples.empty();
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::invalid_exponent, "log-log fit needs >= 2 points");
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorCode::invalid_exponent, "log-log fit needs positive data");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::log(y[i]) - (intercept + slope * std::log(x[i]));
        ss += r * r;
    }
    return {slope, intercept, std::sqrt(ss / m)};
}

DecayReport make_decay_report(std::string label, std::vector<double> taus, std::vector<double> norms,
                              double predicted_exponent) {
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 1.0)) throw Error(ErrorCode::invalid_exponent, "decay ladder values must exceed 1");
        if (i > 0 && !(taus[i] > taus[i - 1]))
            throw Error(ErrorCode::invalid_exponent, "decay ladder must be strictly increasing");
    }
    DecayReport r;
    r.label = std::move(label);
    r.parameter_values = std::move(taus);
    r.norm_samples = std::move(norms);
    r.predicted_exponent = predicted_exponent;
    for (double v : r.norm_samples)
        if (!(v > 0.0)) r.degenerate = true;
    if (!r.degenerate && r.parameter_values.size() >= 2) {
        const LogLogFit fit = fit_loglog(r.parameter_values, r.norm_samples);
        r.fitted_exponent = fit.slope;
        r.fit_residual = fit.residual;
    } else {
        r.degenerate = true;
        r.fitted_exponent = std::nan("");
    }
    return r;
}

std::vector<double> geometric_ladder(double tau0, std::size_t count) {
    std::vector<double> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(tau0 * std::ldexp(1.0, static_cast<int>(k)));
    return out;
}

void write_decay_csv(std::ostream& os, const DecayReport& report) {
    os << "tau,norm\n" << std::setprecision(17);
    for (std::size_t i = 0; i < report.parameter_values.size(); ++i)
        os << report.parameter_values[i] << ',' << report.norm_samples[i] << '\n';
}

std::string decay_summary_json(const DecayReport& report) {
    nlohmann::json j;
    j["label"] = report.label;
    j["fitted_exponent"] = report.degenerate ? nlohmann::json(nullptr) : nlohmann::json(report.fitted_exponent);
    j["predicted_exponent"] = report.predicted_exponent;
    j["residual"] = report.fit_residual;
    j["degenerate"] = report.degenerate;
    return j.dump(2);
}

}  // namespace cgo
