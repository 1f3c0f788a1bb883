#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dagger::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

/// Runs every acceptance criterion in order. `progress` (if set) is called
/// after each one, e.g. to print a line as soon as it finishes.
std::vector<CriterionResult> run_all(unsigned long seed = 20240601,
                                     const std::function<void(const CriterionResult&)>& progress = {});

std::string format_line(const CriterionResult& r);

}  // namespace dagger::acceptance
