#pragma once

#include <span>
#include <vector>

#include "orsched/model.hpp"
#include "orsched/ratio.hpp"

namespace orsched {

/// Light: 3*req <= capacity. Medium: 2*req <= capacity < 3*req. Heavy: 2*req > capacity.
/// Throws std::invalid_argument if req is outside [0, capacity].
JobClass classify(const Job& job, Units capacity);

/// Sum of req over `jobs`, divided by capacity.
Ratio total_requirement(std::span<const Job> jobs, Units capacity);

/// Sum of the min(m, |jobs|) largest req values, divided by capacity.
Ratio top_m_requirement(std::span<const Job> jobs, int m, Units capacity);

/// Integer numerator of top_m_requirement.
Units top_m_sum(std::vector<Units> reqs, int m);

struct Breakpoint {
    Time time = 0;
    Units usage = 0;  // holds on [time, next breakpoint)

    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Right-continuous step function t -> total requirement of active jobs.
///
/// Breakpoints sit exactly at the distinct start and completion times of the
/// assignments. Usage before the first breakpoint and after the last is zero.
class ResourceProfile {
public:
    ResourceProfile() = default;
    explicit ResourceProfile(std::vector<Breakpoint> breakpoints) : points_(std::move(breakpoints)) {}

    Units usage_at(Time t) const;
    std::span<const Breakpoint> breakpoints() const { return points_; }
    Units peak() const;

private:
    std::vector<Breakpoint> points_;
};

/// Throws std::invalid_argument if an assignment names a job the instance lacks.
ResourceProfile resource_profile(const Schedule& schedule);

/// Ids of jobs with start <= t < completion, ascending.
std::vector<JobId> active_jobs(const Schedule& schedule, Time t);

/// Latest completion; 0 for an empty schedule.
Time makespan(const Schedule& schedule);

/// max(sum p / m, sum p*req / capacity).
Ratio lower_bound(const Instance& instance);

}  // namespace orsched
