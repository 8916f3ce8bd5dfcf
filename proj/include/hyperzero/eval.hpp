#ifndef HYPERZERO_EVAL_HPP
#define HYPERZERO_EVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hyperzero {

enum class Family { F01, F11, F21 };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::F01: return "0F1";
        case Family::F11: return "1F1";
        default: return "2F1";
    }
}

// Which hypergeometric series is being evaluated. `a` is unused for F01 and
// `b` only applies to F21. These are the problem parameters after the family
// index has been absorbed (a = alpha + k*n etc.).
struct FunctionSpec {
    Family family{Family::F01};
    double a{0.0};
    double b{0.0};
    double c{0.0};
};

struct EvalResult {
    double value{0.0};
    double derivative{0.0};
    double cancellation{1.0};  // largest-magnitude intermediate over |value|, >= 1
    int terms_used{0};
    bool precision_loss{false};
};

inline constexpr double kCancellationBudget = 1e8;
inline constexpr int kMaxSeriesTerms = 10000;
inline constexpr double kSeriesEps = 2.220446049250313e-16;  // 2^-52

namespace detail {

inline bool is_nonpositive_integer(double v) {
    return v <= 0.0 && v == std::floor(v) && v > -1.0e9;
}

// Degree of the terminating series, or -1 when it does not terminate.
inline int poly_degree(const FunctionSpec& s) {
    switch (s.family) {
        case Family::F01:
            return -1;
        case Family::F11:
            return is_nonpositive_integer(s.a) ? static_cast<int>(-s.a) : -1;
        case Family::F21: {
            bool pa = is_nonpositive_integer(s.a);
            bool pb = is_nonpositive_integer(s.b);
            if (pa && pb) return static_cast<int>(-std::max(s.a, s.b));
            if (pa) return static_cast<int>(-s.a);
            if (pb) return static_cast<int>(-s.b);
            return -1;
        }
    }
    return -1;
}

inline double clamp_cancellation(double biggest, double value) {
    if (value == 0.0 || !std::isfinite(value)) return std::numeric_limits<double>::infinity();
    return std::max(1.0, biggest / std::abs(value));
}

struct PolyEval {
    double value{0.0};
    double derivative{0.0};
    double envelope{1.0};
    int steps{0};
};

} // namespace detail

// Direct power series with term-wise differentiated derivative. Stops after
// three consecutive terms below 2^-52 of the partial sum (robust against a
// lone vanishing term) or at the term cap.
inline EvalResult eval(const FunctionSpec& s, double x, double budget = kCancellationBudget) {
    if (s.family == Family::F21 && detail::poly_degree(s) < 0 && std::abs(x) >= 1.0)
        throw Error("2F1 series argument |x| >= 1 for a non-terminating series");

    double sum = 1.0, term = 1.0, max_term = 1.0;
    double dsum = 0.0, dterm = 0.0;
    int k = 0, used = 1, small_run = 0;
    while (k < kMaxSeriesTerms) {
        double num = 1.0;
        if (s.family == Family::F11) num = s.a + k;
        if (s.family == Family::F21) num = (s.a + k) * (s.b + k);
        if (num == 0.0) break;  // terminating series: all further terms vanish
        double den_c = s.c + k;
        if (den_c == 0.0)
            throw PoleAtParameter("series pole: c = " + std::to_string(s.c) +
                                  " reaches a vanishing Pochhammer factor at term " +
                                  std::to_string(k + 1));
        double ratio = num / (den_c * (k + 1));
        double dnext = (k == 0) ? num / den_c : dterm / static_cast<double>(k) * x * num / den_c;
        term *= x * ratio;
        dterm = dnext;
        ++k;
        ++used;
        sum += term;
        dsum += dterm;
        max_term = std::max(max_term, std::abs(term));
        small_run = (std::abs(term) <= kSeriesEps * std::abs(sum)) ? small_run + 1 : 0;
        if (small_run >= 3) break;
    }

    EvalResult r;
    r.value = sum;
    r.derivative = dsum;
    r.terms_used = used;
    r.cancellation = detail::clamp_cancellation(max_term, sum);
    r.precision_loss = r.cancellation > budget;
    return r;
}

namespace detail {

// M(-j; c; x) for j = 0..n by the contiguous recurrence in the first
// parameter (the classical fixed-weight Laguerre degree recurrence):
//   (c+k) M(-k-1) = (2k+c-x) M(-k) - k M(-k+1)
// with the derivative carried through the differentiated relation.
inline PolyEval hyp1f1_poly(int n, double c, double x) {
    PolyEval out;
    if (n <= 0) {
        out.value = 1.0;
        return out;
    }
    if (c == 0.0) throw PoleAtParameter("1F1 polynomial with c = 0");
    double m_prev = 1.0, dm_prev = 0.0;
    double m = 1.0 - x / c, dm = -1.0 / c;
    double env = std::max(1.0, std::abs(m));
    for (int k = 1; k < n; ++k) {
        double den = c + k;
        if (den == 0.0)
            throw PoleAtParameter("1F1 polynomial recurrence pole at c = " + std::to_string(c));
        double A = 2.0 * k + c - x;
        double m_next = (A * m - k * m_prev) / den;
        double dm_next = (A * dm - m - k * dm_prev) / den;
        m_prev = m;
        dm_prev = dm;
        m = m_next;
        dm = dm_next;
        env = std::max(env, std::abs(m));
    }
    out.value = m;
    out.derivative = dm;
    out.envelope = env;
    out.steps = n;
    return out;
}

// 2F1(-j, j+sigma; c; x) for j = 0..n along the degree direction
// (a,b) -> (a-1, b+1), i.e. the Jacobi-type three-term recurrence with
// alpha = c-1, beta = sigma-c. Steps whose three-term denominator nearly
// vanishes (sigma close to 1-j or (3-2j)) are patched by the direct series.
inline PolyEval hyp2f1_poly(int n, double b_at_n, double c, double x) {
    PolyEval out;
    if (n <= 0) {
        out.value = 1.0;
        return out;
    }
    const double sigma = b_at_n - n;
    if (c == 0.0) throw PoleAtParameter("2F1 polynomial with c = 0");

    auto series_patch = [&](int j, double& f, double& df) {
        FunctionSpec fs{Family::F21, static_cast<double>(-j), j + sigma, c};
        EvalResult r = eval(fs, x);
        f = r.value;
        df = r.derivative;
    };

    double f_prev = 1.0, df_prev = 0.0;  // j = 0
    double f = 1.0 - (1.0 + sigma) * x / c, df = -(1.0 + sigma) / c;  // j = 1
    double env = std::max(1.0, std::abs(f));
    const double alpha = c - 1.0, beta = sigma - c;
    const double ab2 = alpha * alpha - beta * beta;
    const double t = 1.0 - 2.0 * x;
    for (int j = 2; j <= n; ++j) {
        double p1 = 2.0 * j + sigma - 1.0;
        double p0 = 2.0 * j + sigma - 3.0;
        double pm = 2.0 * j + sigma - 2.0;
        double g1 = j + sigma - 1.0;
        double f_next, df_next;
        if (std::abs(g1) < 0.05 || std::abs(p0) < 0.05) {
            series_patch(j, f_next, df_next);
        } else {
            double cj1 = c + j - 1.0, cj2 = c + j - 2.0;
            if (cj1 == 0.0 || cj2 == 0.0)
                throw PoleAtParameter("2F1 polynomial recurrence pole at c = " + std::to_string(c));
            double A = 2.0 * j * g1 * p0;
            double B = pm * (p1 * p0 * t + ab2);
            double dB = -2.0 * pm * p1 * p0;
            double C = 2.0 * (j + c - 2.0) * (j + sigma - c - 1.0) * p1;
            double r1 = j / cj1;
            double r2 = j * (j - 1.0) / (cj1 * cj2);
            f_next = (B * r1 * f - C * r2 * f_prev) / A;
            df_next = (B * r1 * df + dB * r1 * f - C * r2 * df_prev) / A;
        }
        f_prev = f;
        df_prev = df;
        f = f_next;
        df = df_next;
        env = std::max(env, std::abs(f));
    }
    out.value = f;
    out.derivative = df;
    out.envelope = env;
    out.steps = n;
    return out;
}

// 0F1(;c;-X) for X > 0 by Miller's backward recurrence in c:
//   f(k-1) = f(k) - X/((k-1)k) f(k+1),
// seeded above the raised parameter c_norm >= 1.25 X + 20 where the direct
// series is cancellation-free, and normalized against it. The family is
// minimal in the increasing-c direction (Bessel J in the order), so the
// downward pass is stable and the seed error decays by ~1/X per step.
inline EvalResult hyp0f1_miller(double c, double X, double budget) {
    const double c_need = 1.25 * X + 20.0;
    const int K = static_cast<int>(std::ceil(std::max(0.0, c_need - c)));
    const int buffer = 10;

    // normalization series at c + K: first term ratio X/(c+K) <= 0.8
    FunctionSpec top{Family::F01, 0.0, 0.0, c + K};
    EvalResult norm = eval(top, -X, budget);
    if (norm.cancellation > budget)
        throw RecurrenceUnstable("0F1 backward recurrence: normalization series unusable at c' = " +
                                 std::to_string(c + K));

    double fp1 = 0.0;      // f~(kappa+1)
    double f0 = 1.0;       // f~(kappa)
    double f_norm = 0.0;   // f~ at c + K
    double f_c = 0.0, f_c1 = 0.0;
    const double osc_top = c + std::ceil(2.0 * std::sqrt(X)) + 2.0;  // turning-point order
    double env_tilde = 0.0;
    for (int i = K + buffer; i >= 1; --i) {
        double kappa = c + i;  // computing f~(kappa - 1)
        if (std::abs(kappa) < 1e-8 || std::abs(kappa - 1.0) < 1e-8)
            throw RecurrenceUnstable("0F1 backward recurrence passes through a parameter pole near c = " +
                                     std::to_string(kappa));
        double fm1 = f0 - X / ((kappa - 1.0) * kappa) * fp1;
        fp1 = f0;
        f0 = fm1;
        if (i - 1 == K) f_norm = f0;
        if (i - 1 == 1) f_c1 = f0;
        if (kappa - 1.0 <= osc_top) env_tilde = std::max(env_tilde, std::abs(f0));
    }
    f_c = f0;
    if (f_norm == 0.0 || !std::isfinite(f_norm))
        throw RecurrenceUnstable("0F1 backward recurrence lost its normalization value");
    const double lambda = norm.value / f_norm;

    EvalResult r;
    r.value = lambda * f_c;
    r.derivative = lambda * f_c1 / c;  // d/dw 0F1(;c;w) = 0F1(;c+1;w)/c at w = -X
    r.terms_used = K + buffer;
    double envelope = std::max(std::abs(lambda) * env_tilde, std::abs(r.value));
    r.cancellation = clamp_cancellation(std::max(envelope, std::abs(r.value)), r.value);
    r.precision_loss = r.cancellation > budget;
    return r;
}

inline EvalResult from_poly(const PolyEval& p, double budget) {
    EvalResult r;
    r.value = p.value;
    r.derivative = p.derivative;
    r.terms_used = p.steps;
    r.cancellation = clamp_cancellation(p.envelope, p.value);
    r.precision_loss = r.cancellation > budget;
    return r;
}

} // namespace detail

// Cancellation-safe evaluation: polynomial cases go through the degree
// recurrences, oscillatory 0F1 arguments through the backward recurrence,
// everything else falls back to the plain series.
inline EvalResult eval_stable(const FunctionSpec& s, double x, double budget = kCancellationBudget) {
    switch (s.family) {
        case Family::F01: {
            EvalResult ser = eval(s, x, budget);
            if (x >= 0.0 || ser.cancellation <= 100.0) return ser;
            return detail::hyp0f1_miller(s.c, -x, budget);
        }
        case Family::F11: {
            int n = detail::poly_degree(s);
            if (n >= 0 && n <= 200000) return detail::from_poly(detail::hyp1f1_poly(n, s.c, x), budget);
            return eval(s, x, budget);
        }
        case Family::F21: {
            int n = detail::poly_degree(s);
            if (n >= 0 && n <= 200000) {
                // use whichever upper parameter terminates at degree n
                double b_other = (detail::is_nonpositive_integer(s.a) &&
                                  static_cast<int>(-s.a) == n)
                                     ? s.b
                                     : s.a;
                return detail::from_poly(detail::hyp2f1_poly(n, b_other, s.c, x), budget);
            }
            return eval(s, x, budget);
        }
    }
    return {};
}

} // namespace hyperzero

#endif // HYPERZERO_EVAL_HPP
