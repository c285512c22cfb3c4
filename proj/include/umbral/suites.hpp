#pragma once

#include "umbral/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace umbral::suites {

struct SuiteOptions {
    std::optional<Rational> qorder; // override where meaningful
    std::optional<Half> m_filter;   // ez-omega: restrict to one index
    std::optional<long long> n_filter;
    std::optional<std::string> lambency_filter;
    std::optional<std::string> class_filter;
    long long budget = 10'000'000;
};

struct SuiteItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    bool pass = true;
    std::vector<SuiteItem> items;
};

using SuiteFn = std::function<SuiteResult(const SuiteOptions&)>;

/// Registry order is report order; names double as CLI suite ids. The
/// registry is the verification checklist in executable form.
const std::vector<std::pair<std::string, SuiteFn>>& registry();

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

/// All suites in registry order.
std::vector<SuiteResult> run_all(const SuiteOptions& opts);

} // namespace umbral::suites
