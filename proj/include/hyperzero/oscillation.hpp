#ifndef HYPERZERO_OSCILLATION_HPP
#define HYPERZERO_OSCILLATION_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dde.hpp"
#include "errors.hpp"

namespace hyperzero {

enum class OscStatus { Oscillatory, AtMostOneZero };
enum class OscReason { None, DEnonneg, EtaGeqOne, AtildeNegative, ParamCondition };

struct OscillationVerdict {
    OscStatus status{OscStatus::Oscillatory};
    OscReason reason{OscReason::None};
    std::string condition;  // named condition, e.g. "C3" or "c-a>1 fails"

    bool oscillatory() const { return status == OscStatus::Oscillatory; }
};

namespace detail {

// Sample grid packed toward singular endpoints: log-spaced toward a lone
// singular end, logit-spaced when both ends are singular (F21 on (0,1)).
inline std::vector<double> sign_check_grid(const DDESystem& dde, double x_lo, double x_hi,
                                           int n = 256) {
    double lo = std::max(x_lo, dde.x_dom_lo);
    double hi = std::min(x_hi, dde.x_dom_hi);
    double span = hi - lo;
    if (lo <= dde.x_dom_lo) lo = dde.x_dom_lo + 1e-12 * std::max(span, 1e-30);
    if (hi >= dde.x_dom_hi) hi = dde.x_dom_hi - 1e-12 * std::max(span, 1e-30);
    std::vector<double> g;
    g.reserve(n);
    bool both = std::isfinite(dde.x_dom_hi);
    if (both) {
        // logit transform on (x_dom_lo, x_dom_hi) = (0,1)
        double slo = std::log(lo / (1.0 - lo)), shi = std::log(hi / (1.0 - hi));
        for (int i = 0; i < n; ++i) {
            double s = slo + (shi - slo) * i / (n - 1.0);
            g.push_back(1.0 / (1.0 + std::exp(-s)));
        }
    } else {
        double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i < n; ++i)
            g.push_back(std::exp(llo + (lhi - llo) * i / (n - 1.0)));
    }
    return g;
}

} // namespace detail

// Pointwise gates of the oscillation theorem: any of
//   (1) d*e >= 0 throughout, (2) |eta| >= 1 throughout, (3) A~ < 0 throughout
// proves at most one zero on the interval. Checked on a 256-point grid
// packed toward singular endpoints; the cataloged eta and A~ have at most
// one extremum there, so the grid cannot straddle-miss a sign excursion.
inline OscillationVerdict check_pointwise(const DDESystem& dde, double x_lo, double x_hi) {
    auto grid = detail::sign_check_grid(dde, x_lo, x_hi);
    bool de_nonneg = true;
    for (double x : grid)
        if (dde.neg_de(x) > 0.0) { de_nonneg = false; break; }
    if (de_nonneg)
        return {OscStatus::AtMostOneZero, OscReason::DEnonneg, "d*e >= 0 on the interval"};

    bool eta_big = true;
    for (double x : grid)
        if (std::abs(dde.eta(x)) < 1.0) { eta_big = false; break; }
    if (eta_big)
        return {OscStatus::AtMostOneZero, OscReason::EtaGeqOne, "|eta| >= 1 on the interval"};

    bool at_neg = true;
    for (double x : grid)
        if (dde.A_tilde(x) >= 0.0) { at_neg = false; break; }
    if (at_neg)
        return {OscStatus::AtMostOneZero, OscReason::AtildeNegative, "A~ < 0 on the interval"};

    return {OscStatus::Oscillatory, OscReason::None, ""};
}

// Parameter-only oscillation conditions per canonical subinterval. The
// boundary cases (equalities) resolve to AtMostOneZero; an isolated zero is
// still findable through the oracle path.
inline OscillationVerdict check_parameters(const FunctionSpec& spec, double lo, double hi,
                                           bool arg_negated = false) {
    auto no = [](const std::string& cond) {
        return OscillationVerdict{OscStatus::AtMostOneZero, OscReason::ParamCondition, cond};
    };
    auto yes = [](const std::string& cond) {
        return OscillationVerdict{OscStatus::Oscillatory, OscReason::ParamCondition, cond};
    };
    switch (spec.family) {
        case Family::F01:
            // On the negated axis (argument < 0) solutions always oscillate.
            if (arg_negated) return yes("0F1 negative argument axis");
            return no("0F1 positive argument axis");
        case Family::F11: {
            double a = spec.a, c = spec.c;
            if (lo >= 0.0) {
                if (c - a > 1.0 && a < 0.0) return yes("c-a>1 and a<0");
                return no(c - a > 1.0 ? "a<0 fails" : "c-a>1 fails");
            }
            if (hi <= 0.0) {
                if (c - a < 0.0 && a > 1.0) return yes("c-a<0 and a>1");
                return no(c - a < 0.0 ? "a>1 fails" : "c-a<0 fails");
            }
            throw SingularInterval("1F1 interval must not straddle x = 0");
        }
        case Family::F21: {
            double a = spec.a, b = spec.b, c = spec.c;
            bool C1 = a < 0 && b < 0 && c - a > 1 && c - b > 1;
            bool C2 = a > 1 && b > 1 && c - a < 0 && c - b < 0;
            bool C3 = a < 0 && b > 1 && c - a > 1 && c - b < 0;
            bool C4 = a > 1 && b < 0 && c - a < 0 && c - b > 1;
            bool C5 = a < 0 && b < 0 && c - a < 0 && c - b < 0;
            bool C6 = a > 1 && b > 1 && c - a > 1 && c - b > 1;
            if (hi <= 0.0) {
                if (C1) return yes("C1");
                if (C2) return yes("C2");
                return no("C1,C2 fail");
            }
            if (lo >= 0.0 && hi <= 1.0) {
                if (C3) return yes("C3");
                if (C4) return yes("C4");
                return no("C3,C4 fail");
            }
            if (lo >= 1.0) {
                if (C5) return yes("C5");
                if (C6) return yes("C6");
                return no("C5,C6 fail");
            }
            throw SingularInterval("2F1 interval must lie inside (-inf,0), (0,1) or (1,inf)");
        }
    }
    return yes("");
}

// Which of C1..C6 holds, if any (used by the exclusivity property test).
inline std::vector<int> matching_gauss_conditions(double a, double b, double c) {
    std::vector<int> out;
    if (a < 0 && b < 0 && c - a > 1 && c - b > 1) out.push_back(1);
    if (a > 1 && b > 1 && c - a < 0 && c - b < 0) out.push_back(2);
    if (a < 0 && b > 1 && c - a > 1 && c - b < 0) out.push_back(3);
    if (a > 1 && b < 0 && c - a < 0 && c - b > 1) out.push_back(4);
    if (a < 0 && b < 0 && c - a < 0 && c - b < 0) out.push_back(5);
    if (a > 1 && b > 1 && c - a > 1 && c - b > 1) out.push_back(6);
    return out;
}

} // namespace hyperzero

#endif // HYPERZERO_OSCILLATION_HPP
