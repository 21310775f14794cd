#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "parclust/generator.hpp"
#include "parclust/io.hpp"
#include "parclust/kcenter.hpp"
#include "parclust/oracle.hpp"
#include "parclust/parity_fl.hpp"

namespace fs = std::filesystem;
using namespace parclust;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSizeGuard = 3;

SolverConfig::Mode parse_mode(const std::string &mode) {
    if (mode == "auto") return SolverConfig::Mode::auto_dispatch;
    if (mode == "all-even") return SolverConfig::Mode::all_even;
    if (mode == "general") return SolverConfig::Mode::general;
    throw CLI::ValidationError("--mode", "must be auto, all-even, or general");
}

int run_solve_fl(const std::string &path, const SolverConfig &cfg) {
    Instance inst = parse_fl_instance(slurp(path));
    auto report = validate_instance(inst);
    if (!report.ok()) {
        std::cerr << report.describe(inst);
        return kExitBadInput;
    }
    Solution sol = solve_fl(inst, cfg);
    std::cout << serialize_fl_solution(inst, sol);
    return kExitOk;
}

int run_solve_kcenter(const std::string &path, bool linear_scan) {
    KCenterInstance inst = parse_kcenter_instance(slurp(path));
    auto res = solve_kcenter(inst, linear_scan);
    if (!res) throw InfeasibleError("no parity-feasible center set of size at most k exists");
    std::cout << serialize_kcenter_solution(inst, *res);
    return kExitOk;
}

int run_oracle(const std::string &path, const std::string &problem) {
    nlohmann::json out;
    if (problem == "fl") {
        Instance inst = parse_fl_instance(slurp(path));
        auto res = exact_fl(inst);
        if (!res) throw InfeasibleError("no parity-feasible solution exists");
        out["optimum"] = to_double(res->optimum_value);
        nlohmann::json open = nlohmann::json::array();
        for (int fi : res->witness.open) open.push_back(inst.facilities[fi].id);
        out["open"] = open;
        out["enumerated"] = res->enumeration_size;
    } else if (problem == "kcenter") {
        KCenterInstance inst = parse_kcenter_instance(slurp(path));
        auto res = exact_kcenter(inst);
        if (!res) throw InfeasibleError("no parity-feasible solution exists");
        out["optimum"] = res->radius;
        nlohmann::json centers = nlohmann::json::array();
        for (int v : res->centers) centers.push_back(inst.ids[v]);
        out["centers"] = centers;
        out["enumerated"] = res->enumeration_size;
    } else {
        throw CLI::ValidationError("--problem", "must be fl or kcenter");
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_gen(const std::string &problem, const GenParams &params) {
    if (problem == "fl")
        std::cout << serialize_fl_instance(generate_fl_instance(params));
    else if (problem == "kcenter")
        std::cout << serialize_kcenter_instance(generate_kcenter_instance(params));
    else
        throw CLI::ValidationError("--problem", "must be fl or kcenter");
    return kExitOk;
}

int run_verify(const std::string &path) {
    std::string text = slurp(path);
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        std::cerr << "input is not valid JSON\n";
        return kExitBadInput;
    }
    if (j.contains("facilities")) {
        Instance inst = parse_fl_instance(text);
        auto report = validate_instance(inst);
        if (!report.ok()) {
            std::cerr << report.describe(inst);
            return kExitBadInput;
        }
        std::cout << "ok: " << inst.nf() << " facilities, " << inst.nd() << " clients\n";
        return kExitOk;
    }
    if (j.contains("nodes")) {
        KCenterInstance kc = parse_kcenter_instance(text);
        // reuse the rational validator on the node metric
        Instance shim;
        shim.clients = kc.ids;
        shim.dist.assign(kc.n(), std::vector<Rat>(kc.n()));
        for (int a = 0; a < kc.n(); ++a)
            for (int b = 0; b < kc.n(); ++b) shim.dist[a][b] = rat_from_double(kc.d(a, b));
        auto report = validate_instance(shim);
        if (!report.ok()) {
            std::cerr << report.describe(shim);
            return kExitBadInput;
        }
        std::cout << "ok: " << kc.n() << " nodes, k=" << kc.k << "\n";
        return kExitOk;
    }
    std::cerr << "file is neither a facility-location nor a k-center instance\n";
    return kExitBadInput;
}

struct BenchRecord {
    std::string instance, solver, params;
    double value = 0.0;
    std::optional<double> oracle, ratio;
    double ms = 0.0;
    std::uint64_t seed = 0;
};

int run_bench(const std::string &suite, const std::string &out_path, std::uint64_t seed) {
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(suite))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (const char *cap = std::getenv("PARCLUST_THREADS")) threads = std::max(1, std::atoi(cap));
    threads = std::max(1, std::min<int>(threads, static_cast<int>(files.size())));

    std::vector<BenchRecord> records(files.size());
    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    auto worker = [&]() {
        for (size_t i = next++; i < files.size(); i = next++) {
            BenchRecord &rec = records[i];
            rec.instance = files[i].filename().string();
            rec.seed = seed;
            try {
                std::string text = slurp(files[i].string());
                auto j = nlohmann::json::parse(text);
                auto start = std::chrono::steady_clock::now();
                if (j.contains("facilities")) {
                    Instance inst = parse_fl_instance(text);
                    SolverConfig cfg;
                    cfg.seed = seed;
                    Solution sol = solve_fl(inst, cfg);
                    rec.solver = "fl";
                    rec.params = "mode=auto;trials=" + std::to_string(cfg.trials);
                    rec.value = to_double(solution_cost(inst, sol));
                    try {
                        if (auto o = exact_fl(inst)) {
                            rec.oracle = to_double(o->optimum_value);
                            if (*rec.oracle > 0) rec.ratio = rec.value / *rec.oracle;
                        }
                    } catch (const SizeGuardError &) {
                    }
                } else {
                    KCenterInstance inst = parse_kcenter_instance(text);
                    auto res = solve_kcenter(inst);
                    if (!res) throw InfeasibleError("infeasible");
                    rec.solver = "kcenter";
                    rec.params = "k=" + std::to_string(inst.k);
                    rec.value = res->realized;
                    try {
                        if (auto o = exact_kcenter(inst)) {
                            rec.oracle = o->radius;
                            if (*rec.oracle > 0) rec.ratio = rec.value / *rec.oracle;
                        }
                    } catch (const SizeGuardError &) {
                    }
                }
                rec.ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                std::cerr << rec.instance << ": " << e.what() << "\n";
                rec.solver = "error";
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return kExitBadInput;
    }
    out << "instance,solver,value,oracle,ratio,ms,seed,params\n";
    for (const auto &r : records) {
        out << r.instance << "," << r.solver << "," << r.value << ",";
        if (r.oracle) out << *r.oracle;
        out << ",";
        if (r.ratio) out << *r.ratio;
        out << "," << r.ms << "," << r.seed << "," << r.params << "\n";
    }
    std::cerr << "wrote " << records.size() << " records to " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"parity-constrained clustering toolkit"};
    app.require_subcommand(1);

    std::string file, mode = "auto", problem = "fl", suite, out_path = "results.csv";
    std::string geometry = "euclidean", mix = "1:1:1";
    int trials = 16;
    std::uint64_t seed = 0;
    bool linear_scan = false, feasible_only = false;
    GenParams gp;

    auto *solve_fl_cmd = app.add_subcommand("solve-fl", "approximate a facility-location instance");
    solve_fl_cmd->add_option("file", file)->required();
    solve_fl_cmd->add_option("--mode", mode);
    solve_fl_cmd->add_option("--trials", trials);
    solve_fl_cmd->add_option("--seed", seed);

    auto *solve_kc_cmd = app.add_subcommand("solve-kcenter", "approximate a k-center instance");
    solve_kc_cmd->add_option("file", file)->required();
    solve_kc_cmd->add_flag("--linear-scan", linear_scan);

    auto *oracle_cmd = app.add_subcommand("oracle", "exact optimum by bounded enumeration");
    oracle_cmd->add_option("file", file)->required();
    oracle_cmd->add_option("--problem", problem)->required();

    auto *gen_cmd = app.add_subcommand("gen", "emit a random instance on stdout");
    gen_cmd->add_option("--problem", problem);
    gen_cmd->add_option("--nf", gp.nf);
    gen_cmd->add_option("--nd", gp.nd);
    gen_cmd->add_option("--k", gp.k);
    gen_cmd->add_option("--geometry", geometry);
    gen_cmd->add_option("--parity-mix", mix);
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_flag("--feasible-only", feasible_only);

    auto *bench_cmd = app.add_subcommand("bench", "run a suite and write a CSV report");
    bench_cmd->add_option("--suite", suite)->required();
    bench_cmd->add_option("--out", out_path);
    bench_cmd->add_option("--seed", seed);

    auto *verify_cmd = app.add_subcommand("verify", "validate an instance file");
    verify_cmd->add_option("file", file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_fl_cmd->parsed()) {
            SolverConfig cfg;
            cfg.mode = parse_mode(mode);
            cfg.trials = trials;
            cfg.seed = seed;
            return run_solve_fl(file, cfg);
        }
        if (solve_kc_cmd->parsed()) return run_solve_kcenter(file, linear_scan);
        if (oracle_cmd->parsed()) return run_oracle(file, problem);
        if (gen_cmd->parsed()) {
            gp.geometry = geometry;
            gp.seed = seed;
            gp.feasible_only = feasible_only;
            parse_parity_mix(mix, gp);
            return run_gen(problem, gp);
        }
        if (bench_cmd->parsed()) return run_bench(suite, out_path, seed);
        if (verify_cmd->parsed()) return run_verify(file);
    } catch (const InfeasibleError &e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const SizeGuardError &e) {
        std::cerr << e.what() << "\n";
        return kExitSizeGuard;
    } catch (const CLI::Error &e) {
        return app.exit(e);
    } catch (const std::exception &e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
