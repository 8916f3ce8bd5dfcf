#ifndef HYPERZERO_SELECTOR_HPP
#define HYPERZERO_SELECTOR_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dde.hpp"
#include "errors.hpp"
#include "oscillation.hpp"

namespace hyperzero {

enum class UserFamily { F01, F11, F21, F20 };

inline const char* family_name(UserFamily f) {
    switch (f) {
        case UserFamily::F01: return "0F1";
        case UserFamily::F11: return "1F1";
        case UserFamily::F21: return "2F1";
        default: return "2F0";
    }
}

// A user problem: which family, its parameters, the real interval, and for
// 0F1 whether the argument convention is y(x) = 0F1(;c;-x) with x > 0.
struct Problem {
    UserFamily family{UserFamily::F01};
    double a{0.0}, b{0.0}, c{0.0};
    double lo{0.0}, hi{0.0};
    bool arg_negated{false};
};

// The problem mapped onto a canonical interval: (0,inf) for F01/F11,
// (0,1) for F21. All cataloged maps multiply the function by a factor
// without real zeros, so the zero sets correspond exactly through pullback.
struct NormalizedProblem {
    FunctionSpec spec;
    bool arg_negated{false};
    double lo{0.0}, hi{0.0};                  // canonical interval
    std::function<double(double)> pullback;   // canonical x -> user x
    bool pullback_increasing{true};
    bool zeros_exact{true};
    std::string note;
};

namespace detail {

inline bool straddles(double lo, double hi, double p) { return lo < p && hi > p; }

} // namespace detail

inline NormalizedProblem normalize(const Problem& prob) {
    NormalizedProblem np;
    np.pullback = [](double t) { return t; };
    const double inf = std::numeric_limits<double>::infinity();
    if (!(prob.hi > prob.lo)) throw Error("empty interval");

    switch (prob.family) {
        case UserFamily::F01: {
            np.spec = {Family::F01, 0.0, 0.0, prob.c};
            if (prob.arg_negated) {
                if (prob.lo < 0.0) throw SingularInterval("negated 0F1 interval must have x >= 0");
                np.arg_negated = true;
                np.lo = prob.lo;
                np.hi = prob.hi;
                np.note = "identity (negated argument convention)";
            } else if (prob.hi <= 0.0) {
                // negative axis given directly: flip to the negated convention
                np.arg_negated = true;
                np.lo = -prob.hi;
                np.hi = -prob.lo;
                np.pullback = [](double t) { return -t; };
                np.pullback_increasing = false;
                np.note = "x -> -x";
            } else if (prob.lo >= 0.0) {
                np.arg_negated = false;
                np.lo = prob.lo;
                np.hi = prob.hi;
                np.note = "identity (positive axis, non-oscillatory)";
            } else {
                throw SingularInterval("0F1 interval must not straddle x = 0");
            }
            return np;
        }
        case UserFamily::F11: {
            if (detail::straddles(prob.lo, prob.hi, 0.0))
                throw SingularInterval("1F1 interval must not straddle x = 0");
            if (prob.lo >= 0.0) {
                np.spec = {Family::F11, prob.a, 0.0, prob.c};
                np.lo = prob.lo;
                np.hi = prob.hi;
                np.note = "identity";
            } else {
                // M(a,c,x) = e^x M(c-a, c, -x)
                np.spec = {Family::F11, prob.c - prob.a, 0.0, prob.c};
                np.lo = -prob.hi;
                np.hi = -prob.lo;
                np.pullback = [](double t) { return -t; };
                np.pullback_increasing = false;
                np.note = "Kummer reflection (c-a, c) at -x";
            }
            return np;
        }
        case UserFamily::F21: {
            double a = prob.a, b = prob.b, c = prob.c;
            if (prob.lo >= 0.0 && prob.hi <= 1.0) {
                np.spec = {Family::F21, a, b, c};
                np.lo = prob.lo;
                np.hi = prob.hi;
                np.note = "identity";
            } else if (prob.hi <= 0.0) {
                // y(a,b;c;x) = (1-x)^-a psi(a, c-b; c; x/(x-1)), u = x/(x-1)
                np.spec = {Family::F21, a, c - b, c};
                auto map_u = [](double x) { return x / (x - 1.0); };
                np.lo = (prob.hi == 0.0) ? 0.0 : map_u(prob.hi);
                np.hi = std::isinf(prob.lo) ? 1.0 : map_u(prob.lo);
                np.pullback = [](double u) { return u / (u - 1.0); };
                np.pullback_increasing = false;
                np.note = "(a, c-b; c) at x/(x-1)";
            } else if (prob.lo >= 1.0) {
                // y(a,b;c;x) = x^-a psi(a, a+1-c; a+b+1-c; 1-1/x), u = 1-1/x
                np.spec = {Family::F21, a, a + 1.0 - c, a + b + 1.0 - c};
                auto map_u = [](double x) { return 1.0 - 1.0 / x; };
                np.lo = (prob.lo == 1.0) ? 0.0 : map_u(prob.lo);
                np.hi = std::isinf(prob.hi) ? 1.0 : map_u(prob.hi);
                np.pullback = [](double u) { return 1.0 / (1.0 - u); };
                np.pullback_increasing = true;
                np.note = "(a, a+1-c; a+b+1-c) at 1-1/x";
            } else {
                throw SingularInterval("2F1 interval must lie inside (-inf,0), (0,1) or (1,inf)");
            }
            return np;
        }
        case UserFamily::F20: {
            // 2F0(a,b;;x) relates to the confluent equation through
            // w(x) = |x|^-a y(a, 1+a-b, -1/x). Only terminating series are
            // evaluated, so a (or b, the series is symmetric) must be a
            // non-positive integer.
            double a = prob.a, b = prob.b;
            bool pa = detail::is_nonpositive_integer(a);
            bool pb = detail::is_nonpositive_integer(b);
            if (pa && pb && b > a) std::swap(a, b);   // smaller degree truncates first
            else if (!pa && pb) std::swap(a, b);
            else if (!pa && !pb)
                throw UnsupportedSolutionBranch(
                    "non-terminating 2F0 requires the irregular confluent solution");
            if (detail::straddles(prob.lo, prob.hi, 0.0))
                throw SingularInterval("2F0 interval must not straddle x = 0");
            double cm = 1.0 + a - b;
            if (prob.hi <= 0.0) {
                // x < 0: zeros of M(a, 1+a-b, t) at t = -1/x > 0
                np.spec = {Family::F11, a, 0.0, cm};
                np.lo = (prob.hi == 0.0) ? std::numeric_limits<double>::infinity() : -1.0 / prob.hi;
                np.hi = std::isinf(prob.lo) ? 0.0 : -1.0 / prob.lo;
                std::swap(np.lo, np.hi);
                if (std::isinf(np.hi)) {
                    // the polynomial's zeros are bounded by the Laguerre range
                    np.hi = 4.0 * std::abs(a) + 2.0 * std::max(0.0, cm) + 50.0;
                }
                np.pullback = [](double t) { return -1.0 / t; };
                np.pullback_increasing = true;
                np.note = "2F0 -> (a, 1+a-b) at -1/x";
            } else {
                // x > 0: fold the Kummer reflection in as well
                np.spec = {Family::F11, cm - a, 0.0, cm};
                np.lo = (prob.hi == std::numeric_limits<double>::infinity()) ? 0.0 : 1.0 / prob.hi;
                np.hi = (prob.lo == 0.0)
                            ? 4.0 * std::abs(a) + 2.0 * std::max(0.0, cm) + 50.0
                            : 1.0 / prob.lo;
                np.pullback = [](double u) { return 1.0 / u; };
                np.pullback_increasing = false;
                np.note = "2F0 -> (1-b, 1+a-b) at 1/x";
            }
            return np;
        }
    }
    throw Error("unreachable");
}

// One piece of the selection: a canonical sub-interval and the DDE to use
// there, with the admissible alternatives ordered by increasing sup D.
struct DDEChoice {
    double lo{0.0}, hi{0.0};
    DDEDirection primary;
    std::vector<DDEDirection> fallbacks;
};

// Admissible alternatives for `spec` on [lo,hi] ordered by increasing
// sup of D = |d e| (the selection metric: smaller D means larger x-advance
// per pi/2 step in z).
inline std::vector<DDEDirection> ranked_directions(const FunctionSpec& spec, double lo, double hi) {
    struct Entry { DDEDirection d; double supd; };
    std::vector<Entry> entries;
    for (const auto& d : cataloged_directions(spec.family)) {
        try {
            DDESystem dde(spec, d);
            double clo = std::max(lo, dde.x_dom_lo), chi = std::min(hi, dde.x_dom_hi);
            double span = std::max(chi - clo, 1e-30);
            if (clo <= dde.x_dom_lo) clo = dde.x_dom_lo + 1e-6 * span;
            if (chi >= dde.x_dom_hi) chi = dde.x_dom_hi - 1e-6 * span;
            double s = 0.0;
            for (int i = 0; i <= 16; ++i) {
                double x = clo + (chi - clo) * i / 16.0;
                s = std::max(s, dde.D(x));
            }
            entries.push_back({d, s});
        } catch (const Error&) {
            // degenerate or non-oscillatory here: not admissible
        }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.supd < b.supd; });
    std::vector<DDEDirection> out;
    for (auto& e : entries) out.push_back(e.d);
    return out;
}

// Regime rules: F01 switches to the m=2 DDE for nu > 100 below the A~
// maximum x_m = (nu^2-1)/2; F11 uses (1,1) below x = c-a and (1,0) above,
// with (0,-1) replacing (1,1) near c = 1; F21 on (0,1) uses (1,1,1) with
// (0,0,-1) as the degenerate-parameter replacement.
inline std::vector<DDEChoice> select_dde(const NormalizedProblem& np, double lo, double hi) {
    const double band = 1e-8;
    const FunctionSpec& s = np.spec;
    std::vector<DDEChoice> plan;

    auto push = [&](double plo, double phi, DDEDirection d) {
        if (!(phi > plo)) return;
        DDEChoice ch;
        ch.lo = plo;
        ch.hi = phi;
        ch.primary = d;
        for (const auto& alt : ranked_directions(s, plo, phi))
            if (!(alt == d)) ch.fallbacks.push_back(alt);
        plan.push_back(ch);
    };

    switch (s.family) {
        case Family::F01: {
            double nu = s.c - 1.0;
            double xm = 0.5 * (nu * nu - 1.0);
            if (nu > 100.0 && lo < xm) {
                double seam = std::min(hi, xm);
                push(lo, seam, dir::f01_m2);
                if (hi > xm) push(xm, hi, dir::f01_m1);
            } else {
                push(lo, hi, dir::f01_m1);
            }
            break;
        }
        case Family::F11: {
            DDEDirection low_dir = (std::abs(s.c - 1.0) < band) ? dir::f11_0m1 : dir::f11_11;
            double seam = s.c - s.a;
            if (seam > lo && seam < hi) {
                push(lo, seam, low_dir);
                push(seam, hi, dir::f11_10);
            } else if (hi <= seam) {
                push(lo, hi, low_dir);
            } else {
                push(lo, hi, dir::f11_10);
            }
            break;
        }
        case Family::F21: {
            bool degenerate = std::abs(s.c - 1.0) < band || std::abs(s.a - 1.0) < band ||
                              std::abs(s.b - 1.0) < band;
            push(lo, hi, degenerate ? dir::f21_00m1 : dir::f21_111);
            break;
        }
    }

    // a primary may still be inadmissible (degenerate parameters); promote
    // the best-ranked alternative, and give up only when nothing is left
    for (auto& ch : plan) {
        try {
            DDESystem probe(s, ch.primary);
            (void)probe;
        } catch (const Error&) {
            if (ch.fallbacks.empty())
                throw NoAdmissibleDDE("no cataloged DDE is admissible for these parameters");
            ch.primary = ch.fallbacks.front();
            ch.fallbacks.erase(ch.fallbacks.begin());
        }
    }
    return plan;
}

inline std::vector<DDEChoice> select_dde(const NormalizedProblem& np) {
    return select_dde(np, np.lo, np.hi);
}

} // namespace hyperzero

#endif // HYPERZERO_SELECTOR_HPP
