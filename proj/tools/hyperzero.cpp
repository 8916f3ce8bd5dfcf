// hyperzero: real zeros of 0F1, 1F1, 2F1 (and terminating 2F0) on an
// interval, by globally convergent fixed-point iterations on the
// transformed variable of the optimal difference-differential system.
//
//   hyperzero find    --family 1F1 --params a=-50,c=1 --interval 0,250
//   hyperzero compare --family 1F1 --params a=-50,c=1e-4 \
//                     --dde 1,0 --dde 1,1 --interval 0,250
//   hyperzero oracle  --family 2F1 --params a=-4,b=4,c=0.5 --interval 0,1
//
// Exit codes: 0 success, 2 invalid arguments, 3 no convergence,
// 4 unsupported solution branch.

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperzero/solver.hpp"

namespace {

using namespace hyperzero;

struct CommonArgs {
    std::string family;
    std::string params;
    std::string interval;
    bool arg_negated = false;
    double tol = 1e-13;
    int max_iter = 0;  // 0 = subcommand default
    std::string format = "csv";
    int grid = 20000;
    std::vector<std::string> ddes;
};

std::map<std::string, double> parse_params(const std::string& s) {
    std::map<std::string, double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--params", "expected key=value");
        std::string key = item.substr(0, eq);
        out[key] = std::stod(item.substr(eq + 1));
    }
    return out;
}

UserFamily parse_family(const std::string& s) {
    if (s == "0F1") return UserFamily::F01;
    if (s == "1F1") return UserFamily::F11;
    if (s == "2F1") return UserFamily::F21;
    if (s == "2F0") return UserFamily::F20;
    throw CLI::ValidationError("--family", "must be one of 0F1, 1F1, 2F1, 2F0");
}

Problem build_problem(const CommonArgs& args) {
    Problem p;
    p.family = parse_family(args.family);
    auto kv = parse_params(args.params);
    auto take = [&](const char* key, bool required) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            if (required)
                throw CLI::ValidationError("--params", std::string("missing ") + key);
            return 0.0;
        }
        double v = it->second;
        kv.erase(it);
        return v;
    };
    switch (p.family) {
        case UserFamily::F01: p.c = take("c", true); break;
        case UserFamily::F11:
            p.a = take("a", true);
            p.c = take("c", true);
            break;
        case UserFamily::F21:
            p.a = take("a", true);
            p.b = take("b", true);
            p.c = take("c", true);
            break;
        case UserFamily::F20:
            p.a = take("a", true);
            p.b = take("b", true);
            break;
    }
    if (!kv.empty())
        throw CLI::ValidationError("--params", "unknown key " + kv.begin()->first);

    auto comma = args.interval.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--interval", "expected lo,hi");
    p.lo = std::stod(args.interval.substr(0, comma));
    p.hi = std::stod(args.interval.substr(comma + 1));
    if (!(p.hi > p.lo)) throw CLI::ValidationError("--interval", "expected lo < hi");
    p.arg_negated = args.arg_negated;
    return p;
}

DDEDirection parse_dde(const std::string& s, UserFamily fam) {
    std::vector<int> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(std::stoi(item));
    DDEDirection d;
    switch (fam) {
        case UserFamily::F01:
            if (parts.size() != 1) throw CLI::ValidationError("--dde", "0F1 takes m");
            d = {Family::F01, 0, 0, parts[0]};
            break;
        case UserFamily::F11:
        case UserFamily::F20:
            if (parts.size() != 2) throw CLI::ValidationError("--dde", "1F1 takes k,m");
            d = {Family::F11, parts[0], 0, parts[1]};
            break;
        case UserFamily::F21:
            if (parts.size() != 3) throw CLI::ValidationError("--dde", "2F1 takes k,l,m");
            d = {Family::F21, parts[0], parts[1], parts[2]};
            break;
    }
    return d;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_find_report(const RunReport& rep, const std::string& format) {
    if (format == "json") {
        std::printf("{\n  \"records\": [\n");
        for (size_t i = 0; i < rep.records.size(); ++i) {
            const auto& r = rep.records[i];
            std::printf("    {\"index\": %zu, \"x\": %s, \"z\": %s, \"iterations\": %d, "
                        "\"residual\": %s, \"dde\": \"%s\"}%s\n",
                        i, fmt(r.x).c_str(), fmt(r.z).c_str(), r.iterations,
                        fmt(r.residual).c_str(),
                        r.bisected ? "bisection" : to_string(r.dde).c_str(),
                        i + 1 < rep.records.size() ? "," : "");
        }
        std::printf("  ],\n  \"total_iterations\": %ld,\n  \"dde_used\": [",
                    rep.total_iterations);
        for (size_t i = 0; i < rep.dde_used.size(); ++i)
            std::printf("%s\"%s\"", i ? ", " : "", rep.dde_used[i].dde.c_str());
        std::printf("],\n  \"warnings\": [");
        for (size_t i = 0; i < rep.warnings.size(); ++i)
            std::printf("%s\"%s\"", i ? ", " : "", rep.warnings[i].c_str());
        std::printf("]\n}\n");
        return;
    }
    std::printf("index,x,z,iterations,residual,dde\n");
    for (size_t i = 0; i < rep.records.size(); ++i) {
        const auto& r = rep.records[i];
        std::printf("%zu,%s,%s,%d,%s,%s\n", i, fmt(r.x).c_str(), fmt(r.z).c_str(), r.iterations,
                    fmt(r.residual).c_str(),
                    r.bisected ? "bisection" : to_string(r.dde).c_str());
    }
    for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int run_find(const CommonArgs& args) {
    Problem p = build_problem(args);
    FpiConfig cfg;
    cfg.tol_z = args.tol;
    cfg.max_iter_per_zero = args.max_iter > 0 ? args.max_iter : 100;
    OracleConfig ocfg;
    ocfg.grid_points = args.grid;
    std::optional<DDEDirection> override;
    if (args.ddes.size() > 1)
        throw CLI::ValidationError("--dde", "find takes at most one override");
    if (args.ddes.size() == 1) override = parse_dde(args.ddes[0], p.family);
    auto rep = find_zeros(p, cfg, override, ocfg);
    print_find_report(rep, args.format);
    return 0;
}

int run_compare(const CommonArgs& args) {
    Problem p = build_problem(args);
    if (args.ddes.size() < 2)
        throw CLI::ValidationError("--dde", "compare needs two or more --dde flags");
    FpiConfig cfg;
    cfg.tol_z = args.tol;
    cfg.max_iter_per_zero = args.max_iter > 0 ? args.max_iter : 20000;
    cfg.trim_nonoscillatory = false;  // measure the raw iteration counts

    NormalizedProblem np = normalize(p);
    std::vector<std::vector<ZeroRecord>> runs;
    for (const auto& ds : args.ddes) {
        DDEDirection d = parse_dde(ds, p.family);
        DDESystem dde(np.spec, d);  // DegenerateDirection -> exit 2
        runs.push_back(sweep(dde, np.lo, np.hi, cfg));
    }

    // match zeros across runs by position (1e-8 relative)
    if (args.format == "json") std::printf("[\n");
    else {
        std::printf("zero_index,x");
        for (size_t j = 0; j < runs.size(); ++j) std::printf(",iters_dde%zu", j + 1);
        std::printf(",ratio\n");
    }
    size_t emitted = 0;
    for (size_t i = 0; i < runs[0].size(); ++i) {
        const auto& base = runs[0][i];
        std::vector<int> iters{base.iterations};
        bool matched = true;
        for (size_t j = 1; j < runs.size(); ++j) {
            const ZeroRecord* hit = nullptr;
            for (const auto& r : runs[j])
                if (std::abs(r.x - base.x) <= 1e-8 * std::max(1.0, std::abs(base.x))) {
                    hit = &r;
                    break;
                }
            if (!hit) { matched = false; break; }
            iters.push_back(hit->iterations);
        }
        if (!matched) continue;
        double xu = np.pullback(base.x);
        double ratio = iters.size() > 1 && iters[1] > 0
                           ? static_cast<double>(iters[0]) / iters[1]
                           : 0.0;
        if (args.format == "json") {
            std::printf("  {\"zero_index\": %zu, \"x\": %s", emitted, fmt(xu).c_str());
            for (size_t j = 0; j < iters.size(); ++j)
                std::printf(", \"iters_dde%zu\": %d", j + 1, iters[j]);
            std::printf(", \"ratio\": %s}%s\n", fmt(ratio).c_str(),
                        i + 1 < runs[0].size() ? "," : "");
        } else {
            std::printf("%zu,%s", emitted, fmt(xu).c_str());
            for (int it : iters) std::printf(",%d", it);
            std::printf(",%s\n", fmt(ratio).c_str());
        }
        ++emitted;
    }
    if (args.format == "json") std::printf("]\n");
    return 0;
}

int run_oracle(const CommonArgs& args) {
    Problem p = build_problem(args);
    OracleConfig ocfg;
    ocfg.grid_points = args.grid;
    NormalizedProblem np = normalize(p);
    auto zs = brute_force_zeros(np, np.lo, np.hi, ocfg);
    std::vector<double> user;
    for (double z : zs) {
        double xu = np.pullback(z);
        if (xu > p.lo && xu < p.hi) user.push_back(xu);
    }
    std::sort(user.begin(), user.end());
    if (args.format == "json") {
        std::printf("[");
        for (size_t i = 0; i < user.size(); ++i)
            std::printf("%s%s", i ? ", " : "", fmt(user[i]).c_str());
        std::printf("]\n");
    } else {
        std::printf("index,x\n");
        for (size_t i = 0; i < user.size(); ++i)
            std::printf("%zu,%s\n", i, fmt(user[i]).c_str());
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_grid) {
    cmd->add_option("--family", args.family, "0F1, 1F1, 2F1 or 2F0")->required();
    cmd->add_option("--params", args.params, "comma list of key=value, e.g. a=-50,c=1")
        ->required();
    cmd->add_option("--interval", args.interval, "lo,hi (open endpoints)")->required();
    cmd->add_flag("--arg-negated", args.arg_negated,
                  "0F1 convention y(x) = 0F1(;c;-x) with x > 0");
    cmd->add_option("--tol", args.tol, "convergence tolerance in z (relative)");
    cmd->add_option("--max-iter", args.max_iter, "max fixed-point iterations per zero");
    cmd->add_option("--format", args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--dde", args.ddes,
                    "DDE direction: m for 0F1, k,m for 1F1, k,l,m for 2F1 "
                    "(repeatable in compare, optional override in find)");
    if (with_grid) cmd->add_option("--grid", args.grid, "oracle grid points");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"real zeros of hypergeometric functions"};
    app.require_subcommand(1);

    CommonArgs fargs, cargs, oargs;
    CLI::App* cmd_find = app.add_subcommand("find", "enumerate all zeros on an interval");
    add_common(cmd_find, fargs, true);
    CLI::App* cmd_compare =
        app.add_subcommand("compare", "per-zero iteration counts for two or more DDEs");
    add_common(cmd_compare, cargs, false);
    CLI::App* cmd_oracle = app.add_subcommand("oracle", "brute-force sign-scan zeros");
    add_common(cmd_oracle, oargs, true);

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(cmd_find)) return run_find(fargs);
        if (app.got_subcommand(cmd_compare)) return run_compare(cargs);
        if (app.got_subcommand(cmd_oracle)) return run_oracle(oargs);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hyperzero::NoConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const hyperzero::UnsupportedSolutionBranch& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const hyperzero::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
