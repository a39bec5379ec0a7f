#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace qsf {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    /// Sample set the residual was maximized over.
    std::string detail;
};

struct VerifyOptions {
    /// Restrict q-dependent samples to this value; otherwise each target uses its own grid.
    std::optional<double> q;
    /// Run targets on worker threads; results are always sorted by name.
    bool parallel = true;
};

/// Targets: "relations", "haar", "cg", "lemma1", "composition", "all".
/// Throws DomainError on an unknown target.
std::vector<CheckResult> run_verify(std::string_view target, const VerifyOptions& opts = {});

const std::vector<std::string>& verify_targets();

/// Individual suites.
std::vector<CheckResult> verify_relations(const std::vector<double>& qs);
std::vector<CheckResult> verify_haar(const std::vector<double>& qs);
std::vector<CheckResult> verify_cg(const std::vector<double>& qs, int max_twice = 6);
std::vector<CheckResult> verify_lemma1(const std::vector<double>& qs);
std::vector<CheckResult> verify_composition_suite(const std::vector<double>& qs);

nlohmann::json to_json(const std::vector<CheckResult>& r, double tol);

}  // namespace qsf
