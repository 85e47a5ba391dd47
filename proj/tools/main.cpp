// Batch driver: `yangian verify ...` and `yangian correspondence ...`.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "config.hpp"
#include "suites.hpp"
#include "yangian/correspondence.hpp"

using namespace yangian;
using namespace yangian::cli;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInconsistent = 3 };

nlohmann::json to_json(const Record& r) {
    return {{"suite", r.suite},     {"relation", r.relation}, {"indices", r.indices}, {"config", r.config},
            {"verdict", r.verdict}, {"residual", r.residual}, {"millis", r.millis},   {"detail", r.detail}};
}

int write_report(const std::string& path, const RunConfig& rc, const std::vector<Record>& records) {
    if (path.empty()) return kPass;
    nlohmann::json j;
    j["config"] = rc.summary();
    j["suites"] = rc.suites;
    j["seed"] = rc.seed ? nlohmann::json(*rc.seed) : nlohmann::json(nullptr);
    j["records"] = nlohmann::json::array();
    std::size_t pass = 0;
    for (const auto& r : records) {
        j["records"].push_back(to_json(r));
        pass += r.verdict == "PASS";
    }
    j["summary"] = {{"checks", records.size()}, {"pass", pass}, {"fail", records.size() - pass}};
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write report " << path << "\n";
        return kUsage;
    }
    out << j.dump(2) << "\n";
    return kPass;
}

int run_verify(RunConfig rc, bool verbose) {
    std::vector<Task> tasks;
    try {
        rc.oracle.validate();
        tasks = plan(rc);
    } catch (const ConfigError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    }
    if (tasks.empty()) {
        std::cerr << "usage: nothing selected\n";
        return kUsage;
    }
    std::cout << "config: " << rc.summary() << "\n";
    auto records = execute(tasks, rc);
    bool all = true, inconsistent = false;
    for (const auto& r : records) {
        std::cout << r.verdict << "  " << r.suite << "  " << r.relation << "  " << r.indices << "  residual " << r.residual
                  << "  " << r.millis << " ms\n";
        if (verbose || r.verdict != "PASS") std::cout << "    " << r.detail << "\n";
        all = all && r.verdict == "PASS";
        inconsistent = inconsistent || r.inconsistency;
    }
    std::size_t pass = std::count_if(records.begin(), records.end(), [](const Record& r) { return r.verdict == "PASS"; });
    std::cout << pass << "/" << records.size() << " checks passed\n";
    if (int w = write_report(rc.report, rc, records); w != kPass) return w;
    if (inconsistent) {
        std::cerr << "internal inconsistency detected; see the ERROR records above\n";
        return kInconsistent;
    }
    return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-boson Yangian double verification engine"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string config_path, suite, N, k, hbar, L, window, relations, variant, reading, report, seed, threads;
    bool verbose = false;
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--config", config_path, "key = value configuration file");
    verify->add_option("--suite", suite, "comma list: ope-lemmas, linear-relations, oracle-relations (oracle), "
                                         "n2-reduction, correspondence, screening-check, or all");
    verify->add_option("--N", N, "rank N of sl_N");
    verify->add_option("--k", k, "level, rational p/q");
    verify->add_option("--hbar", hbar, "hbar for the oracle, rational p/q");
    verify->add_option("--L", L, "oracle level cutoff");
    verify->add_option("--window", window, "exponent window lo:hi");
    verify->add_option("--relations", relations, "comma list, e.g. y3,y6");
    verify->add_option("--variant", variant, "standard or alternate");
    verify->add_option("--en-reading", reading, "printed, corrected, or first=+|-,middle=+|-,tail-a=on|off");
    verify->add_option("--report", report, "JSON report path");
    verify->add_option("--seed", seed, "seed for the extra randomized kets");
    verify->add_option("--threads", threads, "worker threads (default: all cores)");
    verify->add_flag("-v,--verbose", verbose, "print details for passing checks too");

    bool corr_all = false;
    std::vector<int> corr_rel;
    auto* corr = app.add_subcommand("correspondence", "map the q-affine relations onto the Yangian ones");
    corr->add_flag("--all", corr_all, "all eight relations");
    corr->add_option("--relation", corr_rel, "q relation number 1..8")->check(CLI::Range(1, 8));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    if (*corr) {
        if (!corr_all && corr_rel.empty()) {
            std::cerr << "usage: give --all or --relation\n";
            return kUsage;
        }
        if (corr_all) corr_rel = {1, 2, 3, 4, 5, 6, 7, 8};
        int mapped = 0;
        for (int q : corr_rel) {
            auto r = correspond_relation(q);
            std::cout << r.str();
            mapped += r.pass();
        }
        std::cout << mapped << " of " << corr_rel.size() << " relations mapped\n";
        return mapped == static_cast<int>(corr_rel.size()) ? kPass : kFail;
    }

    try {
        if (!config_path.empty()) apply_file(rc, read_config_file(config_path));
        const std::pair<const char*, std::string*> flags[] = {
            {"suite", &suite},         {"N", &N},         {"k", &k},         {"hbar", &hbar},
            {"L", &L},                 {"window", &window}, {"relations", &relations}, {"variant", &variant},
            {"en-reading", &reading},  {"report", &report}, {"seed", &seed}, {"threads", &threads}};
        for (const auto& [key, value] : flags)
            if (!value->empty()) apply_key(rc, key, *value);
        if (rc.suites.empty()) throw ConfigError("no suite selected (--suite)");
        if (rc.suites.size() == 1 && rc.suites[0] == "all") rc.suites = known_suites();
    } catch (const Error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    }
    return run_verify(rc, verbose);
}
