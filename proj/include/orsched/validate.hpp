#pragma once

#include <string>
#include <vector>

#include "orsched/model.hpp"

namespace orsched {

enum class ViolationKind {
    kMachineOverlap,
    kResourceOverflow,
    kMachineCountExceeded,
    kUnknownJob,
    kDuplicateJob,
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    Time time = 0;  // first offending time for this kind
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;  // at most one per kind, ordered by kind

    bool ok() const { return violations.empty(); }
    bool has(ViolationKind kind) const;
    std::string to_string() const;
};

/// Checks machine exclusivity, the resource limit, the machine count and job
/// identity. Machine indices outside [0, m) count as MACHINE_COUNT_EXCEEDED.
/// Partial schedules are fine; see Schedule::covers_all_jobs for completeness.
ValidationReport validate(const Schedule& schedule);

}  // namespace orsched
