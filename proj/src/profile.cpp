#include "orsched/profile.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace orsched {

JobClass classify(const Job& job, Units capacity) {
    if (job.req < 0 || job.req > capacity) {
        throw std::invalid_argument("job " + std::to_string(job.id) + ": requirement outside [0, capacity]");
    }
    if (2 * job.req > capacity) return JobClass::kHeavy;
    if (3 * job.req > capacity) return JobClass::kMedium;
    return JobClass::kLight;
}

Ratio total_requirement(std::span<const Job> jobs, Units capacity) {
    Ratio::Int sum = 0;
    for (const Job& j : jobs) sum += j.req;
    return Ratio(sum, capacity);
}

Units top_m_sum(std::vector<Units> reqs, int m) {
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::max(m, 0)), reqs.size());
    std::nth_element(reqs.begin(), reqs.begin() + static_cast<std::ptrdiff_t>(k), reqs.end(), std::greater<>());
    Units sum = 0;
    for (std::size_t i = 0; i < k; ++i) sum += reqs[i];
    return sum;
}

Ratio top_m_requirement(std::span<const Job> jobs, int m, Units capacity) {
    std::vector<Units> reqs;
    reqs.reserve(jobs.size());
    for (const Job& j : jobs) reqs.push_back(j.req);
    return Ratio(top_m_sum(std::move(reqs), m), capacity);
}

Units ResourceProfile::usage_at(Time t) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](Time value, const Breakpoint& b) { return value < b.time; });
    if (it == points_.begin()) return 0;
    return std::prev(it)->usage;
}

Units ResourceProfile::peak() const {
    Units best = 0;
    for (const Breakpoint& b : points_) best = std::max(best, b.usage);
    return best;
}

ResourceProfile resource_profile(const Schedule& schedule) {
    const Instance& inst = schedule.instance();
    std::vector<std::pair<Time, Units>> deltas;
    deltas.reserve(schedule.size() * 2);
    for (const Assignment& a : schedule.assignments()) {
        const Job* job = inst.find(a.job_id);
        if (job == nullptr) throw std::invalid_argument("unknown job id " + std::to_string(a.job_id));
        deltas.emplace_back(a.start, job->req);
        deltas.emplace_back(a.completion, -job->req);
    }
    std::sort(deltas.begin(), deltas.end());

    std::vector<Breakpoint> points;
    Units usage = 0;
    for (std::size_t i = 0; i < deltas.size();) {
        const Time t = deltas[i].first;
        for (; i < deltas.size() && deltas[i].first == t; ++i) usage += deltas[i].second;
        points.push_back({t, usage});
    }
    return ResourceProfile(std::move(points));
}

std::vector<JobId> active_jobs(const Schedule& schedule, Time t) {
    std::vector<JobId> out;
    for (const Assignment& a : schedule.assignments()) {
        if (a.active_at(t)) out.push_back(a.job_id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Time makespan(const Schedule& schedule) {
    Time best = 0;
    for (const Assignment& a : schedule.assignments()) best = std::max(best, a.completion);
    return best;
}

Ratio lower_bound(const Instance& instance) {
    Ratio::Int work = 0;
    Ratio::Int resource_work = 0;
    for (const Job& j : instance.jobs()) {
        work += j.p;
        resource_work += static_cast<Ratio::Int>(j.p) * j.req;
    }
    return std::max(Ratio(work, instance.machines()), Ratio(resource_work, instance.capacity()));
}

}  // namespace orsched
