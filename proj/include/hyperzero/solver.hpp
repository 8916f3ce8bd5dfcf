#ifndef HYPERZERO_SOLVER_HPP
#define HYPERZERO_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fpi.hpp"
#include "oracle.hpp"
#include "selector.hpp"

namespace hyperzero {

struct DdeUse {
    double lo{0.0}, hi{0.0};  // canonical sub-interval
    std::string dde;          // direction or "oracle"
};

struct RunReport {
    std::vector<ZeroRecord> records;  // sorted ascending in user x
    long total_iterations{0};
    std::vector<DdeUse> dde_used;
    std::vector<std::string> warnings;
};

namespace detail {

inline void pull_back_and_merge(const NormalizedProblem& np, const Problem& prob,
                                std::vector<ZeroRecord>& recs, RunReport& rep) {
    for (auto& r : recs) {
        double xu = np.pullback(r.x);
        if (!(xu > prob.lo && xu < prob.hi)) continue;  // strictly inside the user interval
        ZeroRecord out = r;
        out.x = xu;
        rep.records.push_back(out);
    }
}

} // namespace detail

// Full pipeline: normalize onto the canonical interval, gate by the
// parameter conditions, pick the DDE per regime, sweep (or fall back to the
// isolated-zero scan), pull the zeros back to user coordinates.
inline RunReport find_zeros(const Problem& prob, const FpiConfig& cfg = {},
                            std::optional<DDEDirection> dde_override = std::nullopt,
                            const OracleConfig& ocfg = {}) {
    NormalizedProblem np = normalize(prob);
    RunReport rep;
    std::vector<ZeroRecord> canonical;

    OscillationVerdict verdict = check_parameters(np.spec, np.lo, np.hi, np.arg_negated);
    bool oscillatory = verdict.oscillatory();

    if (!oscillatory && !dde_override) {
        if (auto z = isolated_zero(np, np.lo, np.hi, ocfg)) {
            ZeroRecord r;
            r.x = *z;
            r.z = *z;
            r.bisected = true;
            EvalResult v = eval_stable(np.spec, np.arg_negated ? -*z : *z, cfg.budget);
            r.residual = std::isfinite(v.cancellation) ? 1.0 / v.cancellation : 0.0;
            canonical.push_back(r);
        }
        rep.dde_used.push_back({np.lo, np.hi, "oracle (" + verdict.condition + ")"});
        detail::pull_back_and_merge(np, prob, canonical, rep);
        return rep;
    }

    std::vector<DDEChoice> plan;
    if (dde_override) {
        DDEChoice ch;
        ch.lo = np.lo;
        ch.hi = np.hi;
        ch.primary = *dde_override;
        plan.push_back(ch);
    } else {
        plan = select_dde(np);
        // overlap interior seams so a zero sitting exactly on one cannot
        // fall between the pieces; duplicates merge below
        for (size_t i = 0; i + 1 < plan.size(); ++i) {
            double overlap = 1e-8 * (np.hi - np.lo);
            plan[i].hi += overlap;
            plan[i + 1].lo -= overlap;
        }
    }

    for (const auto& piece : plan) {
        DDESystem dde(np.spec, piece.primary);
        auto pointwise = check_pointwise(dde, piece.lo, piece.hi);
        if (!pointwise.oscillatory()) {
            if (auto z = isolated_zero(np, piece.lo, piece.hi, ocfg)) {
                ZeroRecord r;
                r.x = *z;
                r.z = dde.z_of_x(*z);
                r.dde = piece.primary;
                r.bisected = true;
                EvalResult v = eval_stable(np.spec, np.arg_negated ? -*z : *z, cfg.budget);
                r.residual = std::isfinite(v.cancellation) ? 1.0 / v.cancellation : 0.0;
                canonical.push_back(r);
            }
            rep.dde_used.push_back(
                {piece.lo, piece.hi, "oracle (" + pointwise.condition + ")"});
            continue;
        }
        try {
            auto recs = sweep(dde, piece.lo, piece.hi, cfg);
            canonical.insert(canonical.end(), recs.begin(), recs.end());
            rep.dde_used.push_back({piece.lo, piece.hi, to_string(piece.primary)});
        } catch (NoConvergence& nc) {
            canonical.insert(canonical.end(), nc.partial.begin(), nc.partial.end());
            nc.partial = canonical;
            throw;
        }
    }

    std::sort(canonical.begin(), canonical.end(),
              [](const ZeroRecord& a, const ZeroRecord& b) { return a.x < b.x; });
    std::vector<ZeroRecord> merged;
    for (auto& r : canonical) {
        if (!merged.empty() &&
            std::abs(r.x - merged.back().x) < 4.0 * cfg.tol_z * std::max(1.0, std::abs(r.x))) {
            if (r.residual < merged.back().residual) merged.back() = r;
        } else {
            merged.push_back(r);
        }
    }

    detail::pull_back_and_merge(np, prob, merged, rep);
    std::sort(rep.records.begin(), rep.records.end(),
              [](const ZeroRecord& a, const ZeroRecord& b) { return a.x < b.x; });
    for (const auto& r : rep.records) {
        rep.total_iterations += r.iterations;
        if (r.residual >= 1e-8)
            rep.warnings.push_back("residual above 1e-8 at x = " + std::to_string(r.x));
    }
    return rep;
}

} // namespace hyperzero

#endif // HYPERZERO_SOLVER_HPP
