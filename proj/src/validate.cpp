#include "orsched/validate.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>

namespace orsched {

namespace {

struct FirstHit {
    std::optional<Time> time;
    std::string detail;

    void offer(Time t, std::string what) {
        if (!time || t < *time) {
            time = t;
            detail = std::move(what);
        }
    }
};

std::string id_str(JobId id) { return std::to_string(id); }

}  // namespace

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::kMachineOverlap: return "MACHINE_OVERLAP";
        case ViolationKind::kResourceOverflow: return "RESOURCE_OVERFLOW";
        case ViolationKind::kMachineCountExceeded: return "MACHINE_COUNT_EXCEEDED";
        case ViolationKind::kUnknownJob: return "UNKNOWN_JOB";
        case ViolationKind::kDuplicateJob: return "DUPLICATE_JOB";
    }
    return "?";
}

bool ValidationReport::has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const {
    if (ok()) return "ok\n";
    std::string out;
    for (const Violation& v : violations) {
        out += orsched::to_string(v.kind);
        out += " at t=" + std::to_string(v.time) + ": " + v.detail + "\n";
    }
    return out;
}

ValidationReport validate(const Schedule& schedule) {
    const Instance& inst = schedule.instance();
    const int m = inst.machines();

    FirstHit unknown, duplicate, overlap, overflow, count;

    std::unordered_map<JobId, Time> seen;
    std::vector<const Assignment*> known;
    known.reserve(schedule.size());
    for (const Assignment& a : schedule.assignments()) {
        const Job* job = inst.find(a.job_id);
        if (job == nullptr) {
            unknown.offer(a.start, "job " + id_str(a.job_id) + " is not in the instance");
            continue;
        }
        if (auto [it, fresh] = seen.emplace(a.job_id, a.start); !fresh) {
            duplicate.offer(std::max(it->second, a.start), "job " + id_str(a.job_id) + " assigned more than once");
        }
        if (a.machine < 0 || a.machine >= m) {
            count.offer(a.start, "job " + id_str(a.job_id) + " on machine " + std::to_string(a.machine) +
                                     " outside [0, " + std::to_string(m) + ")");
        }
        known.push_back(&a);
    }

    // Per-machine exclusivity.
    std::map<int, std::vector<const Assignment*>> per_machine;
    for (const Assignment* a : known) per_machine[a->machine].push_back(a);
    for (auto& [machine, list] : per_machine) {
        std::sort(list.begin(), list.end(), [](const Assignment* x, const Assignment* y) {
            return x->start != y->start ? x->start < y->start : x->job_id < y->job_id;
        });
        Time busy_until = std::numeric_limits<Time>::min();
        JobId holder = -1;
        for (const Assignment* a : list) {
            if (a->completion <= a->start) continue;
            if (a->start < busy_until) {
                overlap.offer(a->start, "jobs " + id_str(holder) + " and " + id_str(a->job_id) + " overlap on machine " +
                                            std::to_string(machine));
            }
            if (a->completion > busy_until) {
                busy_until = a->completion;
                holder = a->job_id;
            }
        }
    }

    // Sweep for resource usage and concurrent job count.
    struct Delta {
        Time t;
        Units req;
        int jobs;
    };
    std::vector<Delta> deltas;
    deltas.reserve(known.size() * 2);
    for (const Assignment* a : known) {
        if (a->completion <= a->start) continue;
        const Units req = inst.find(a->job_id)->req;
        deltas.push_back({a->start, req, 1});
        deltas.push_back({a->completion, -req, -1});
    }
    std::sort(deltas.begin(), deltas.end(), [](const Delta& x, const Delta& y) { return x.t < y.t; });
    Units usage = 0;
    int active = 0;
    for (std::size_t i = 0; i < deltas.size();) {
        const Time t = deltas[i].t;
        for (; i < deltas.size() && deltas[i].t == t; ++i) {
            usage += deltas[i].req;
            active += deltas[i].jobs;
        }
        if (usage > inst.capacity()) {
            overflow.offer(t, "usage " + std::to_string(usage) + " exceeds capacity " + std::to_string(inst.capacity()));
        }
        if (active > m) {
            count.offer(t, std::to_string(active) + " jobs active on " + std::to_string(m) + " machines");
        }
    }

    ValidationReport report;
    auto emit = [&report](ViolationKind kind, const FirstHit& hit) {
        if (hit.time) report.violations.push_back({kind, *hit.time, hit.detail});
    };
    emit(ViolationKind::kMachineOverlap, overlap);
    emit(ViolationKind::kResourceOverflow, overflow);
    emit(ViolationKind::kMachineCountExceeded, count);
    emit(ViolationKind::kUnknownJob, unknown);
    emit(ViolationKind::kDuplicateJob, duplicate);
    return report;
}

}  // namespace orsched
