#pragma once

// Viscosity / mobility coefficient families. Both kinds are globally bounded
// above and below by positive constants; the smooth-monotone kind is strictly
// increasing with bounded slope:
//
//   constant:        s -> value
//   smooth-monotone: s -> c0 + (c1 - c0) * (1 + tanh(s)) / 2
//
// validate_a1 samples value and slope and reports the observed ranges against
// the declared bounds.

#include <string>

namespace nspfc {

struct CoefficientFamily {
    enum class Kind { constant, smooth_monotone };

    Kind kind = Kind::constant;
    double value = 1.0;  // constant kind
    double c0 = 0.0;     // lower bound
    double c1 = 0.0;     // upper bound
    double c2 = 0.0;     // slope cap; defaults to (c1 - c0)/2, the tanh supremum

    double operator()(double s) const;
    double slope(double s) const;

    double lower_bound() const { return kind == Kind::constant ? value : c0; }
    double upper_bound() const { return kind == Kind::constant ? value : c1; }

    static CoefficientFamily constant(double v);
    static CoefficientFamily smooth_monotone(double c0, double c1, double c2 = 0.0);
};

struct A1Report {
    bool ok = false;
    double min_value = 0.0;
    double max_value = 0.0;
    double min_slope = 0.0;
    double max_slope = 0.0;
    std::string message; // names the violated bound when !ok
};

// Samples value and a centered finite-difference slope at sample_count points
// of s in [-10, 10]. Slope positivity is waived for the constant kind.
A1Report validate_a1(const CoefficientFamily& fam, int sample_count = 201);

// validate_a1 + throw ConfigError on violation.
void require_a1(const CoefficientFamily& fam, const std::string& name);

} // namespace nspfc
