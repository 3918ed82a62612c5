#include "nspfc/coefficients.hpp"

#include <cmath>

#include "nspfc/errors.hpp"

namespace nspfc {

double CoefficientFamily::operator()(double s) const {
    if (kind == Kind::constant)
        return value;
    return c0 + (c1 - c0) * 0.5 * (1.0 + std::tanh(s));
}

double CoefficientFamily::slope(double s) const {
    if (kind == Kind::constant)
        return 0.0;
    const double t = std::tanh(s);
    return (c1 - c0) * 0.5 * (1.0 - t * t);
}

CoefficientFamily CoefficientFamily::constant(double v) {
    CoefficientFamily f;
    f.kind = Kind::constant;
    f.value = v;
    return f;
}

CoefficientFamily CoefficientFamily::smooth_monotone(double c0, double c1, double c2) {
    CoefficientFamily f;
    f.kind = Kind::smooth_monotone;
    f.c0 = c0;
    f.c1 = c1;
    f.c2 = c2 > 0.0 ? c2 : (c1 - c0) * 0.5;
    return f;
}

A1Report validate_a1(const CoefficientFamily& fam, int sample_count) {
    A1Report rep;
    if (sample_count < 100) {
        rep.message = "sample_count must be >= 100";
        return rep;
    }

    const bool constant = fam.kind == CoefficientFamily::Kind::constant;
    if (constant && !(fam.value > 0.0)) {
        rep.message = "constant family violates lower bound: value must be positive";
        return rep;
    }
    if (!constant) {
        if (!(fam.c0 > 0.0)) {
            rep.message = "smooth-monotone family violates (A1) lower bound: c0 must be positive";
            return rep;
        }
        if (!(fam.c1 >= fam.c0)) {
            rep.message = "smooth-monotone family violates (A1): c1 must be >= c0";
            return rep;
        }
        if (!(fam.c2 > 0.0)) {
            rep.message = "smooth-monotone family violates (A1): slope cap c2 must be positive";
            return rep;
        }
    }

    const double lo = -10.0, hi = 10.0, h = 1e-5;
    rep.min_value = rep.max_value = fam(lo);
    rep.min_slope = rep.max_slope = (fam(lo + h) - fam(lo - h)) / (2.0 * h);
    for (int i = 0; i < sample_count; ++i) {
        const double s = lo + (hi - lo) * i / (sample_count - 1);
        const double v = fam(s);
        const double d = (fam(s + h) - fam(s - h)) / (2.0 * h);
        rep.min_value = std::min(rep.min_value, v);
        rep.max_value = std::max(rep.max_value, v);
        rep.min_slope = std::min(rep.min_slope, d);
        rep.max_slope = std::max(rep.max_slope, d);
    }

    const double lower = fam.lower_bound();
    const double upper = fam.upper_bound();
    if (rep.min_value < lower - 1e-12) {
        rep.message = "sampled value below declared lower bound";
        return rep;
    }
    if (rep.max_value > upper + 1e-12) {
        rep.message = "sampled value above declared upper bound";
        return rep;
    }
    if (!constant) {
        if (!(rep.min_slope > 0.0)) {
            rep.message = "sampled slope not strictly positive";
            return rep;
        }
        if (rep.max_slope > fam.c2 + 1e-9) {
            rep.message = "sampled slope exceeds declared cap c2";
            return rep;
        }
    }
    rep.ok = true;
    rep.message = "ok";
    return rep;
}

void require_a1(const CoefficientFamily& fam, const std::string& name) {
    const A1Report rep = validate_a1(fam);
    if (!rep.ok)
        throw ConfigError(name + ": " + rep.message);
}

} // namespace nspfc
