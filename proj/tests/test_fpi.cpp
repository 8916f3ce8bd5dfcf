#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hyperzero/fpi.hpp"
#include "hyperzero/oracle.hpp"

using namespace hyperzero;

namespace {

// bisection oracle on a plain callable
double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++i) {
        double m = 0.5 * (a + b), fm = f(m);
        if (fm == 0) return m;
        if (fa * fm < 0) b = m;
        else { a = m; fa = fm; }
    }
    return 0.5 * (a + b);
}

} // namespace

TEST_CASE("ratio_H is tan z for the half-integer Bessel system") {
    DDESystem dde({Family::F01, 0, 0, 1.5}, dir::f01_m1);
    CHECK(ratio_H(dde, 0.7) == Catch::Approx(std::tan(0.7)).epsilon(1e-10));
    CHECK(ratio_H(dde, 2.5) == Catch::Approx(std::tan(2.5)).epsilon(1e-10));
    // H vanishes at a zero of y_n
    CHECK(std::abs(ratio_H(dde, M_PI)) < 1e-12);
}

TEST_CASE("ratio_H assembled from independently evaluated pieces") {
    DDESystem dde({Family::F11, -2, 0, 1.5}, dir::f11_11);
    double x = 1.0, z = dde.z_of_x(x);
    auto p = eval_stable(dde.spec, x);
    auto q = eval_stable(dde.contrast_spec(), x);
    auto cf = dde.coeffs(x);
    double sign_d = cf.d > 0 ? 1.0 : -1.0;
    double want = sign_d * std::sqrt(-cf.e / cf.d) * p.value / q.value;
    CHECK(ratio_H(dde, z) == Catch::Approx(want).epsilon(1e-12));
}

TEST_CASE("fixed point snaps exactly when eta = 0") {
    DDESystem dde({Family::F01, 0, 0, 1.5}, dir::f01_m1);
    FpiConfig cfg;
    auto r1 = fixed_point(dde, 2.0, cfg);
    CHECK(r1.status == FpiStatus::Converged);
    CHECK(r1.z == Catch::Approx(M_PI).margin(1e-12));
    CHECK(r1.iterations == 1);
    auto r2 = fixed_point(dde, 5.5, cfg);
    CHECK(r2.z == Catch::Approx(2 * M_PI).margin(1e-12));
}

TEST_CASE("fixed point matches a quadratic oracle root") {
    // smallest zero of 1F1(-2; 1.5; x): bisection on 1 - 4x/3 + 4x^2/15
    auto quad = [](double x) { return 1.0 - 4.0 * x / 3.0 + 4.0 * x * x / 15.0; };
    double want = bisect(quad, 0.5, 2.0);
    DDESystem dde({Family::F11, -2, 0, 1.5}, dir::f11_11);
    FpiConfig cfg;
    auto r = fixed_point(dde, dde.z_of_x(0.5), cfg);
    CHECK(r.status == FpiStatus::Converged);
    CHECK(std::abs(dde.x_of_z(r.z) - want) / want < 1e-12);
}

TEST_CASE("next_start policies") {
    DDESystem dde({Family::F01, 0, 0, 1.5}, dir::f01_m1);
    SweepPlan plan;
    plan.mode = SweepMode::Forward;
    plan.step_policy = StepPolicy::Improved;
    ZeroRecord prev{0, 2 * M_PI, 0, 0, dde.direction, false};
    // no prev2: pi/2 step
    CHECK(next_start(prev, nullptr, dde, plan) == Catch::Approx(2 * M_PI + M_PI / 2));
    // A~ constant: improved step equals the previous gap and lands on 3 pi
    ZeroRecord prev2{0, M_PI, 0, 0, dde.direction, false};
    CHECK(next_start(prev, &prev2, dde, plan) == Catch::Approx(3 * M_PI).margin(1e-12));
    // backward sweep steps by -pi/2
    plan.mode = SweepMode::Backward;
    plan.step_policy = StepPolicy::FixedHalfPi;
    CHECK(next_start(prev, nullptr, dde, plan) == Catch::Approx(2 * M_PI - M_PI / 2));
}

TEST_CASE("sweep enumerates the half-integer Bessel zeros exactly") {
    DDESystem dde({Family::F01, 0, 0, 1.5}, dir::f01_m1);
    auto recs = sweep(dde, 0.0, 30.0, FpiConfig{});
    REQUIRE(recs.size() == 3);
    double want[] = {M_PI * M_PI / 4, M_PI * M_PI, 9 * M_PI * M_PI / 4};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(recs[i].x - want[i]) / want[i] < 1e-13);
        CHECK(recs[i].iterations <= 2);
        CHECK(recs[i].residual < 1e-8);
    }
}

TEST_CASE("sweep matches the oracle for an extreme Laguerre case") {
    FunctionSpec s{Family::F11, -50, 0, 1e-4};
    DDESystem dde(s, dir::f11_11);
    auto recs = sweep(dde, 0.0, 50.0, FpiConfig{});
    auto oracle = brute_force_zeros(s, false, 0.0, 50.0);
    REQUIRE(recs.size() == oracle.size());
    for (size_t i = 0; i < recs.size(); ++i)
        CHECK(std::abs(recs[i].x - oracle[i]) / oracle[i] < 1e-10);
}

TEST_CASE("expansive sweep: the two 0F1 systems agree pairwise") {
    // nu = 120 > 100: the m=2 system sweeps expansively around its eta root
    FunctionSpec s{Family::F01, 0, 0, 121};
    DDESystem m1(s, dir::f01_m1);
    DDESystem m2(s, dir::f01_m2);
    FpiConfig cfg;
    auto r1 = sweep(m1, 0.0, 12000.0, cfg);
    auto r2 = sweep(m2, 0.0, 12000.0, cfg);
    REQUIRE(r1.size() == r2.size());
    REQUIRE(r1.size() > 5);
    for (size_t i = 0; i < r1.size(); ++i)
        CHECK(std::abs(r1[i].x - r2[i].x) / r2[i].x < 1e-9);
    // x_eta = (nu-1)^2/2 lies inside, so the plan is expansive
    auto outcome = sweep_detail(m2, 0.0, 12000.0, cfg);
    CHECK(outcome.plan.mode == SweepMode::Expansive);
}

TEST_CASE("sweep invariants: monotone, bracketing, interlacing, quadratic") {
    FunctionSpec s{Family::F11, -20, 0, 1.3};
    DDESystem dde(s, dir::f11_11);
    FpiConfig cfg;
    auto outcome = sweep_detail(dde, 0.0, 90.0, cfg);
    REQUIRE(outcome.zeros.size() == 20);

    // records sorted strictly ascending with gaps above the merge tolerance
    for (size_t i = 1; i < outcome.zeros.size(); ++i)
        CHECK(outcome.zeros[i].rec.z - outcome.zeros[i - 1].rec.z >
              4 * cfg.tol_z * std::max(1.0, std::abs(outcome.zeros[i].rec.z)));

    // bracketing: y_n changes sign across [x-delta, x+delta]
    for (const auto& zd : outcome.zeros) {
        double delta = 10.0 * cfg.tol_z * std::max(1.0, std::abs(zd.rec.z)) / dde.dz_dx(zd.rec.x);
        double lo = eval_stable(s, zd.rec.x - delta).value;
        double hi = eval_stable(s, zd.rec.x + delta).value;
        CHECK(lo * hi < 0.0);
    }

    // interlacing: exactly one contrast sign change between consecutive zeros
    auto cs = dde.contrast_spec();
    for (size_t i = 1; i < outcome.zeros.size(); ++i) {
        double a = outcome.zeros[i - 1].rec.x, b = outcome.zeros[i].rec.x;
        int changes = 0;
        double prev = eval_stable(cs, a + 1e-9 * (b - a)).value;
        for (int k = 1; k <= 64; ++k) {
            double x = a + (b - a) * (k / 65.0);
            double v = eval_stable(cs, x).value;
            if (prev * v < 0) ++changes;
            prev = v;
        }
        CHECK(changes == 1);
    }

    // quadratic convergence with constant <= 2 max(1, |eta(x*)|)
    for (const auto& zd : outcome.zeros) {
        if (zd.rec.bisected || zd.trace.size() < 4) continue;
        double zstar = zd.rec.z;
        double C = 2.0 * std::max(1.0, std::abs(dde.eta(zd.rec.x)));
        double floor_err = 64.0 * 2.22e-16 * std::max(1.0, std::abs(zstar));
        std::vector<double> errs;
        for (double zk : zd.trace) errs.push_back(std::abs(zk - zstar));
        size_t n = errs.size();
        for (size_t k = (n >= 4 ? n - 4 : 0); k + 1 < n; ++k) {
            if (errs[k] == 0.0) continue;
            double bound = std::max(C * errs[k] * errs[k], floor_err);
            CHECK(errs[k + 1] <= bound * 1.0000001);
        }
    }
}

TEST_CASE("duplicate suppression and open-interval filtering") {
    DDESystem dde({Family::F01, 0, 0, 1.5}, dir::f01_m1);
    // interval border exactly on a zero: x = pi^2/4 excluded when it is an endpoint
    double border = M_PI * M_PI / 4;
    auto recs = sweep(dde, border, 30.0, FpiConfig{});
    for (const auto& r : recs) CHECK(r.x > border);
}

TEST_CASE("empty interval between zeros yields no records") {
    DDESystem dde({Family::F01, 0, 0, 1.5}, dir::f01_m1);
    auto recs = sweep(dde, 3.0, 9.0, FpiConfig{});  // between pi^2/4 and pi^2
    CHECK(recs.empty());
}

TEST_CASE("raw sweeps reproduce the slow-first-zero phenomenon") {
    FpiConfig raw;
    raw.trim_nonoscillatory = false;
    raw.max_iter_per_zero = 20000;
    FunctionSpec s{Family::F11, -50, 0, 1e-4};
    DDESystem d11(s, dir::f11_11);
    DDESystem d10(s, dir::f11_10);
    auto r11 = sweep(d11, 0.0, 250.0, raw);
    auto r10 = sweep(d10, 0.0, 250.0, raw);
    REQUIRE(r11.size() == 50);
    REQUIRE(r10.size() == 50);
    CHECK(std::abs(r11[0].x - r10[0].x) / r10[0].x < 1e-9);
    CHECK(r10[0].iterations > 5 * r11[0].iterations);
}
