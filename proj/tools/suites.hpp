#pragma once

#include <functional>
#include <string>
#include <vector>

#include "config.hpp"

namespace yangian::cli {

struct Record {
    std::string suite;
    std::string relation;
    std::string indices;
    std::string config;
    std::string verdict;   // PASS, FAIL or ERROR
    std::string residual;  // "1" or "0" when clean
    std::string detail;
    long long millis = 0;
    bool inconsistency = false;  // an internal invariant broke
};

struct Task {
    std::string suite, relation, indices;
    std::function<Record()> run;  // fills verdict, residual, detail
};

const std::vector<std::string>& known_suites();

// Expands the selected suites into independent checks, in report order.
std::vector<Task> plan(const RunConfig& rc);

// Runs the checks on a worker pool; results come back in plan order.
std::vector<Record> execute(const std::vector<Task>& tasks, const RunConfig& rc);

}  // namespace yangian::cli
