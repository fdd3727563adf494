#pragma once

#include <string>
#include <utility>
#include <vector>

#include "point.hpp"

namespace sponge {

/// One failed law instance: which law, and the witness points.
struct AxiomViolation {
    std::string axiom;
    PointSet witnesses;
    std::string detail;
};

/// Result of an axiom/property check. `passed` iff `violations` is empty.
/// `diagnostics` carries informational verdicts that do not affect `passed`
/// (e.g. whether a cone is closed under addition).
struct AxiomReport {
    std::vector<AxiomViolation> violations;
    std::vector<std::pair<std::string, bool>> diagnostics;
    std::string note;

    bool passed() const { return violations.empty(); }

    void fail(std::string axiom, PointSet witnesses = {}, std::string detail = "") {
        violations.push_back({std::move(axiom), std::move(witnesses), std::move(detail)});
    }

    void diagnose(std::string name, bool ok) {
        diagnostics.emplace_back(std::move(name), ok);
    }

    void merge(const AxiomReport& other) {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
        diagnostics.insert(diagnostics.end(), other.diagnostics.begin(),
                           other.diagnostics.end());
    }
};

}  // namespace sponge
