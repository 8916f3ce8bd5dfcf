#ifndef HYPERZERO_FPI_HPP
#define HYPERZERO_FPI_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dde.hpp"
#include "oscillation.hpp"

namespace hyperzero {

inline constexpr double kHalfPi = 1.5707963267948966;

enum class StepPolicy { FixedHalfPi, Improved };
enum class SweepMode { Forward, Backward, Expansive };

struct FpiConfig {
    double tol_z{1e-13};
    int max_iter_per_zero{100};
    long max_zeros{1000000};
    StepPolicy step_policy{StepPolicy::Improved};
    double budget{kCancellationBudget};
    // Cut off interval ends where a pointwise gate proves at most one zero;
    // those ends are handled by a sign scan instead of marching the FPI
    // through a zero-free edge branch. Disabled by `compare` so iteration
    // counts reflect the raw iterations.
    bool trim_nonoscillatory{true};
};

struct ZeroRecord {
    double x{0.0};
    double z{0.0};
    int iterations{0};
    double residual{0.0};    // |y_n| / largest-term scale at the zero
    DDEDirection dde;
    bool bisected{false};    // found by the edge sign scan, not the FPI
};

struct SweepPlan {
    SweepMode mode{SweepMode::Forward};
    double z_lo{0.0}, z_hi{0.0};
    double z_start{0.0};
    double split_z{std::numeric_limits<double>::quiet_NaN()};
    StepPolicy step_policy{StepPolicy::Improved};
};

struct NoConvergence : Error {
    std::vector<ZeroRecord> partial;
    NoConvergence(const std::string& msg, std::vector<ZeroRecord> p)
        : Error(msg), partial(std::move(p)) {}
};

// H(z) for the i = -1 ratio: sign(d) sqrt(-e/d) y_n / y_{n-1} evaluated at
// x(z), written as sqrt(-d e)/d * ratio. Returns a signed infinity when the
// contrast value vanishes; arctan handles it.
inline double ratio_H(const DDESystem& dde, double z, double budget = kCancellationBudget) {
    double x = dde.x_of_z(z);
    auto [p, q] = eval_pair(dde, x, budget);
    if (p.value == 0.0 && q.value == 0.0) return 0.0;  // cannot happen for independent pairs
    double K = dde.dz_dx(x) / dde.coeffs(x).d;
    return K * p.value / q.value;
}

enum class FpiStatus { Converged, ExitLow, ExitHigh, NoConvergence };

struct FpiResult {
    double z{0.0};
    int iterations{0};
    FpiStatus status{FpiStatus::NoConvergence};
    std::vector<double> trace;  // all iterates including the start value
};

// Iterates T(z) = z - arctan(H(z)) until |T(z)-z| < tol_z. Counts only the
// productive applications (the final confirming step is free, so the exact
// eta = 0 case reports one iteration per zero). The iterate moves toward
// the zero of its H-branch monotonically after at most one overshoot of
// less than pi/2, so crossing an exit bound in the direction of motion
// proves the branch zero lies beyond it.
inline FpiResult fixed_point(const DDESystem& dde, double z0, const FpiConfig& cfg,
                             double exit_lo = -std::numeric_limits<double>::infinity(),
                             double exit_hi = std::numeric_limits<double>::infinity()) {
    exit_lo = std::max(exit_lo, dde.z_dom_lo);
    exit_hi = std::min(exit_hi, dde.z_dom_hi);
    // per-zero convergence budget plus a traversal allowance: an iterate
    // marching toward an exit bound moves a bounded z-distance per step, so
    // wide zero-free stretches need iterations proportional to the span
    long cap = cfg.max_iter_per_zero;
    if (std::isfinite(exit_hi - exit_lo)) cap += static_cast<long>(4.0 * (exit_hi - exit_lo));
    FpiResult r;
    r.trace.push_back(z0);
    double z = z0;
    for (long it = 0; it <= cap; ++it) {
        if (z <= exit_lo || !std::isfinite(z)) {
            r.z = z;
            r.status = FpiStatus::ExitLow;
            return r;
        }
        if (z >= exit_hi) {
            r.z = z;
            r.status = FpiStatus::ExitHigh;
            return r;
        }
        double step = std::atan(ratio_H(dde, z, cfg.budget));
        double zn = z - step;
        r.trace.push_back(zn);
        if (std::abs(step) < cfg.tol_z * std::max(1.0, std::abs(zn))) {
            r.z = zn;
            r.status = FpiStatus::Converged;
            return r;
        }
        ++r.iterations;
        z = zn;
    }
    r.z = z;
    r.status = FpiStatus::NoConvergence;
    return r;
}

namespace detail {

// Theorem gate for the improved step: eta * dA~/dz > 0 sampled across the
// span of the previous gap and the projected landing; an identically
// constant A~ also passes (the improved step is then exact).
inline bool improved_step_gate(const DDESystem& dde, double z_from, double z_to) {
    double lo = std::min(z_from, z_to), hi = std::max(z_from, z_to);
    bool all_pos = true;
    double max_adz = 0.0;
    for (int i = 0; i <= 16; ++i) {
        double z = lo + (hi - lo) * i / 16.0;
        if (z <= dde.z_dom_lo || z >= dde.z_dom_hi) return false;
        double x = dde.x_of_z(z);
        double adz = dde.A_tilde_dz(x);
        max_adz = std::max(max_adz, std::abs(adz));
        if (dde.eta(x) * adz <= 0.0) all_pos = false;
    }
    return all_pos || max_adz < 1e-9;
}

inline double residual_at(const DDESystem& dde, double x, double budget) {
    EvalResult p = eval_stable(dde.spec, dde.arg_negated() ? -x : x, budget);
    if (!std::isfinite(p.cancellation)) return 0.0;
    return 1.0 / p.cancellation;
}

struct Segment {
    double z_lo, z_hi;
    int dir;          // +1 forward, -1 backward
    double z_start;
    StepPolicy policy;
};

} // namespace detail

// Next starting value after a converged zero: the improved step (previous
// gap) under the theorem gate, otherwise the provably safe pi/2.
inline double next_start(const ZeroRecord& prev, const ZeroRecord* prev2, const DDESystem& dde,
                         const SweepPlan& plan) {
    double dir = (plan.mode == SweepMode::Backward) ? -1.0 : 1.0;
    if (plan.step_policy == StepPolicy::Improved && prev2) {
        double gap = std::abs(prev.z - prev2->z);
        if (gap > 0.0 && detail::improved_step_gate(dde, prev2->z, prev.z + dir * gap))
            return prev.z + dir * gap;
    }
    return prev.z + dir * kHalfPi;
}

struct SweepZeroDetail {
    ZeroRecord rec;
    std::vector<double> trace;
    bool improved_used{false};
};

struct SweepOutcome {
    std::vector<SweepZeroDetail> zeros;  // sorted ascending in z, deduplicated
    SweepPlan plan;
    int precision_flags{0};
    std::vector<std::pair<double, double>> trimmed;  // z-intervals handled by sign scan
};

namespace detail {

inline std::pair<double, double> clamped_x_range(const DDESystem& dde, double x_lo, double x_hi) {
    double span = std::max(x_hi - x_lo, 1e-30);
    double lo = std::max(x_lo, dde.x_dom_lo);
    double hi = std::min(x_hi, dde.x_dom_hi);
    if (lo <= dde.x_dom_lo) lo = dde.x_dom_lo + 1e-12 * span;
    if (hi >= dde.x_dom_hi) hi = dde.x_dom_hi - 1e-12 * span;
    return {lo, hi};
}

// Sign scan + bisection on a z-subinterval that a pointwise gate certified
// to hold at most one zero.
inline std::optional<ZeroRecord> scan_isolated(const DDESystem& dde, double z_lo, double z_hi,
                                               const FpiConfig& cfg, int points = 96) {
    if (!(z_hi > z_lo)) return std::nullopt;
    auto f = [&](double z) {
        double x = dde.x_of_z(z);
        EvalResult p = eval_stable(dde.spec, dde.arg_negated() ? -x : x, cfg.budget);
        return p.value;
    };
    double prev_z = z_lo, prev_f = f(prev_z);
    for (int i = 1; i < points; ++i) {
        double z = z_lo + (z_hi - z_lo) * i / (points - 1.0);
        double fz = f(z);
        if (prev_f == 0.0) {
            ZeroRecord rec{dde.x_of_z(prev_z), prev_z, 0, 0.0, dde.direction, true};
            return rec;
        }
        if (prev_f * fz < 0.0) {
            double a = prev_z, b = z, fa = prev_f;
            for (int k = 0; k < 200 && (b - a) > cfg.tol_z; ++k) {
                double m = 0.5 * (a + b), fm = f(m);
                if (fm == 0.0) { a = b = m; break; }
                if (fa * fm < 0.0) b = m;
                else { a = m; fa = fm; }
            }
            double zr = 0.5 * (a + b);
            ZeroRecord rec{dde.x_of_z(zr), zr, 0, residual_at(dde, dde.x_of_z(zr), cfg.budget),
                           dde.direction, true};
            return rec;
        }
        prev_z = z;
        prev_f = fz;
    }
    return std::nullopt;
}

// Split [z_lo, z_hi] at eta sign changes; each piece gets the sweep
// direction its eta sign dictates (forward where eta <= 0, backward where
// eta > 0) and starts at the end the direction leaves from.
inline std::vector<Segment> plan_segments(const DDESystem& dde, double z_lo, double z_hi,
                                          StepPolicy policy, double tol_z) {
    const int n = 256;
    std::vector<double> zs(n), etas(n);
    for (int i = 0; i < n; ++i) {
        zs[i] = z_lo + (z_hi - z_lo) * i / (n - 1.0);
        etas[i] = dde.eta(dde.x_of_z(zs[i]));
    }
    std::vector<double> crossings;
    for (int i = 0; i + 1 < n; ++i) {
        if (etas[i] == 0.0) continue;
        if (etas[i] * etas[i + 1] < 0.0) {
            double a = zs[i], b = zs[i + 1], fa = etas[i];
            for (int k = 0; k < 60; ++k) {
                double m = 0.5 * (a + b);
                double fm = dde.eta(dde.x_of_z(m));
                if (fa * fm <= 0.0) b = m;
                else { a = m; fa = fm; }
            }
            crossings.push_back(0.5 * (a + b));
        }
    }
    if (auto xr = dde.eta_root_closed_form()) {
        double zr = dde.z_of_x(*xr);
        if (zr > z_lo && zr < z_hi && crossings.size() == 1) crossings[0] = zr;
    }

    StepPolicy pol = (crossings.size() > 1) ? StepPolicy::FixedHalfPi : policy;
    std::vector<double> cuts{z_lo};
    cuts.insert(cuts.end(), crossings.begin(), crossings.end());
    cuts.push_back(z_hi);

    std::vector<Segment> segs;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s;
        s.z_lo = cuts[i];
        s.z_hi = cuts[i + 1];
        if (!(s.z_hi > s.z_lo)) continue;
        double zm = 0.5 * (s.z_lo + s.z_hi);
        double em = dde.eta(dde.x_of_z(zm));
        s.dir = (em > 0.0) ? -1 : +1;
        s.z_start = (s.dir > 0) ? s.z_lo : s.z_hi;
        // seeds at interior split points move off the eta root by 2 tol
        if (i > 0 && s.dir > 0) s.z_start += 2.0 * tol_z;
        if (i + 1 < cuts.size() - 1 && s.dir < 0) s.z_start -= 2.0 * tol_z;
        s.policy = pol;
        segs.push_back(s);
    }
    return segs;
}

inline void run_segment(const DDESystem& dde, const Segment& seg, const FpiConfig& cfg,
                        SweepOutcome& out, std::vector<SweepZeroDetail>& zeros) {
    const double slack = kHalfPi + 0.1;
    const double dir = seg.dir;
    double seed = seg.z_start;
    std::optional<double> prev, prev2;
    SweepPlan plan;  // local plan view for next_start
    plan.mode = (dir > 0) ? SweepMode::Forward : SweepMode::Backward;
    plan.step_policy = seg.policy;
    plan.z_lo = seg.z_lo;
    plan.z_hi = seg.z_hi;

    auto in_segment = [&](double z) { return z >= seg.z_lo && z <= seg.z_hi; };
    long found = 0;
    while (found < cfg.max_zeros) {
        if (!in_segment(seed)) break;
        FpiResult fr = fixed_point(dde, seed, cfg, seg.z_lo - slack, seg.z_hi + slack);
        if (fr.status == FpiStatus::NoConvergence) {
            std::vector<ZeroRecord> partial;
            for (auto& zd : zeros) partial.push_back(zd.rec);
            throw NoConvergence("fixed point exceeded max_iter_per_zero at seed z = " +
                                    std::to_string(seed),
                                std::move(partial));
        }
        bool ahead_exit = (dir > 0) ? (fr.status == FpiStatus::ExitHigh)
                                    : (fr.status == FpiStatus::ExitLow);
        bool behind_exit = (fr.status != FpiStatus::Converged) && !ahead_exit;
        if (ahead_exit) break;
        if (behind_exit) {
            seed += dir * kHalfPi;
            continue;
        }
        double zstar = fr.z;
        double x = dde.x_of_z(zstar);
        double res = residual_at(dde, x, cfg.budget);
        bool genuine = res < 1e-8;
        if (!genuine) {
            // converged to a spurious fixed point at a domain edge (the
            // transformed ratio K vanishes there). Behind the sweep it is
            // the start edge: advance the seed. Ahead it is the tail edge:
            // nothing further this way.
            if ((zstar - seed) * dir < 0.0) {
                seed += dir * kHalfPi;
                continue;
            }
            break;
        }
        if ((dir > 0 && zstar > seg.z_hi) || (dir < 0 && zstar < seg.z_lo)) break;
        if ((dir > 0 && zstar < seg.z_lo) || (dir < 0 && zstar > seg.z_hi)) {
            seed += dir * kHalfPi;  // boundary branch zero behind the segment
            continue;
        }
        if (prev && (zstar - *prev) * dir <= 2.0 * cfg.tol_z * std::max(1.0, std::abs(zstar))) {
            // landed back on (or behind) the previous zero: the seed sat on
            // a contrast singularity. Advance the seed instead of stopping.
            double base = (dir > 0) ? std::max(seed, *prev + kHalfPi) : std::min(seed, *prev - kHalfPi);
            seed = base + dir * kHalfPi;
            continue;
        }

        SweepZeroDetail zd;
        zd.rec = ZeroRecord{x, zstar, fr.iterations, res, dde.direction, false};
        zd.trace = std::move(fr.trace);
        ++found;

        ZeroRecord prev_rec{dde.x_of_z(zstar), zstar, 0, 0.0, dde.direction, false};
        if (prev) {
            ZeroRecord prev2_rec{0.0, *prev, 0, 0.0, dde.direction, false};
            double nz = next_start(prev_rec, &prev2_rec, dde, plan);
            zd.improved_used = std::abs((nz - zstar) - dir * kHalfPi) > 1e-12;
            seed = nz;
        } else {
            seed = next_start(prev_rec, nullptr, dde, plan);
        }
        prev2 = prev;
        prev = zstar;
        zeros.push_back(std::move(zd));
    }
}

} // namespace detail

// Enumerates all zeros of the problem function on the x-interval using the
// plan dictated by the sign of eta: forward where eta <= 0, backward where
// eta > 0, both directions from the eta root when it changes sign inside.
inline SweepOutcome sweep_detail(const DDESystem& dde, double x_lo, double x_hi,
                                 const FpiConfig& cfg) {
    SweepOutcome out;
    auto [lo, hi] = detail::clamped_x_range(dde, x_lo, x_hi);
    if (!(hi > lo)) return out;
    double z_lo = dde.z_of_x(lo), z_hi = dde.z_of_x(hi);
    double nudge = 1e-9 * (z_hi - z_lo);
    z_lo += nudge;
    z_hi -= nudge;
    if (!(z_hi > z_lo)) return out;

    std::vector<SweepZeroDetail> zeros;

    double core_lo = z_lo, core_hi = z_hi;
    bool whole_trimmed = false;
    if (cfg.trim_nonoscillatory) {
        // Cut off the ends where A~ < 0 or |eta| >= 1 certify at most one
        // zero; sweep only the core and sign-scan the cut pieces.
        const int n = 256;
        auto gated = [&](double z) {
            double x = dde.x_of_z(z);
            return dde.A_tilde(x) < 0.0 || std::abs(dde.eta(x)) >= 1.0;
        };
        int i0 = 0, i1 = n - 1;
        std::vector<double> zs(n);
        for (int i = 0; i < n; ++i) zs[i] = z_lo + (z_hi - z_lo) * i / (n - 1.0);
        while (i0 < n && gated(zs[i0])) ++i0;
        while (i1 >= 0 && gated(zs[i1])) --i1;
        if (i0 > i1) {
            // entire interval gated: at most one zero, pure scan
            whole_trimmed = true;
            out.trimmed.push_back({z_lo, z_hi});
            if (auto rec = detail::scan_isolated(dde, z_lo, z_hi, cfg))
                zeros.push_back({*rec, {}, false});
        } else {
            core_lo = zs[std::max(0, i0 - 1)];
            core_hi = zs[std::min(n - 1, i1 + 1)];
            if (core_lo > z_lo) {
                out.trimmed.push_back({z_lo, core_lo});
                if (auto rec = detail::scan_isolated(dde, z_lo, core_lo, cfg))
                    zeros.push_back({*rec, {}, false});
            }
            if (core_hi < z_hi) {
                out.trimmed.push_back({core_hi, z_hi});
                if (auto rec = detail::scan_isolated(dde, core_hi, z_hi, cfg))
                    zeros.push_back({*rec, {}, false});
            }
        }
    }

    if (core_lo <= core_hi && !whole_trimmed) {
        auto segs = detail::plan_segments(dde, core_lo, core_hi, cfg.step_policy, cfg.tol_z);
        out.plan.z_lo = core_lo;
        out.plan.z_hi = core_hi;
        out.plan.step_policy = segs.empty() ? cfg.step_policy : segs.front().policy;
        if (segs.size() >= 2) {
            out.plan.mode = SweepMode::Expansive;
            out.plan.split_z = segs[0].z_hi;
            out.plan.z_start = segs[0].z_hi;
        } else if (!segs.empty()) {
            out.plan.mode = (segs[0].dir > 0) ? SweepMode::Forward : SweepMode::Backward;
            out.plan.z_start = segs[0].z_start;
        }
        for (auto& seg : segs) detail::run_segment(dde, seg, cfg, out, zeros);
    }

    std::sort(zeros.begin(), zeros.end(),
              [](const SweepZeroDetail& a, const SweepZeroDetail& b) { return a.rec.z < b.rec.z; });
    // merge duplicates within 4 tol_z keeping the smaller residual
    std::vector<SweepZeroDetail> dedup;
    for (auto& zd : zeros) {
        if (!dedup.empty() && std::abs(zd.rec.z - dedup.back().rec.z) <
                                  4.0 * cfg.tol_z * std::max(1.0, std::abs(zd.rec.z))) {
            if (zd.rec.residual < dedup.back().rec.residual) dedup.back() = std::move(zd);
        } else {
            dedup.push_back(std::move(zd));
        }
    }
    out.zeros = std::move(dedup);
    return out;
}

inline std::vector<ZeroRecord> sweep(const DDESystem& dde, double x_lo, double x_hi,
                                     const FpiConfig& cfg = {}) {
    auto outcome = sweep_detail(dde, x_lo, x_hi, cfg);
    std::vector<ZeroRecord> recs;
    recs.reserve(outcome.zeros.size());
    for (auto& zd : outcome.zeros) recs.push_back(zd.rec);
    return recs;
}

} // namespace hyperzero

#endif // HYPERZERO_FPI_HPP
