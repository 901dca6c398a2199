#include "orsched/model.hpp"

#include <algorithm>

namespace orsched {

const char* to_string(JobClass c) {
    switch (c) {
        case JobClass::kLight: return "light";
        case JobClass::kMedium: return "medium";
        case JobClass::kHeavy: return "heavy";
    }
    return "?";
}

Instance::Instance() : data_(std::make_shared<const Data>()) {}

Instance::Instance(int machines, Units capacity, std::vector<Job> jobs) {
    if (machines < 1) throw std::invalid_argument("instance needs at least one machine");
    if (capacity < 1) throw std::invalid_argument("resource capacity must be positive");
    auto data = std::make_shared<Data>();
    data->machines = machines;
    data->capacity = capacity;
    data->index.reserve(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& j = jobs[i];
        if (j.id < 0) throw std::invalid_argument("job id must be non-negative");
        if (j.p < 1) throw std::invalid_argument("job " + std::to_string(j.id) + ": processing time must be >= 1");
        if (j.req < 0 || j.req > capacity) {
            throw std::invalid_argument("job " + std::to_string(j.id) + ": requirement outside [0, capacity]");
        }
        if (!data->index.emplace(j.id, i).second) {
            throw std::invalid_argument("duplicate job id " + std::to_string(j.id));
        }
    }
    data->jobs = std::move(jobs);
    data_ = std::move(data);
}

Instance Instance::from_pairs(int machines, Units capacity, const std::vector<std::pair<Time, Units>>& jobs) {
    std::vector<Job> out;
    out.reserve(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        out.push_back(Job{static_cast<JobId>(i), jobs[i].first, jobs[i].second});
    }
    return Instance(machines, capacity, std::move(out));
}

std::optional<std::size_t> Instance::index_of(JobId id) const {
    auto it = data_->index.find(id);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
}

const Job* Instance::find(JobId id) const {
    auto idx = index_of(id);
    return idx ? &data_->jobs[*idx] : nullptr;
}

Instance Instance::with_jobs(std::vector<Job> jobs) const { return Instance(machines(), capacity(), std::move(jobs)); }

void Schedule::add(JobId id, int machine, Time start) {
    const Job* job = instance_.find(id);
    assignments_.push_back(Assignment{id, machine, start, start + (job ? job->p : 0)});
}

const Assignment* Schedule::find(JobId id) const {
    auto it = std::find_if(assignments_.begin(), assignments_.end(), [id](const Assignment& a) { return a.job_id == id; });
    return it == assignments_.end() ? nullptr : &*it;
}

std::vector<const Assignment*> Schedule::by_index() const {
    std::vector<const Assignment*> out(instance_.size(), nullptr);
    for (const Assignment& a : assignments_) {
        if (auto idx = instance_.index_of(a.job_id); idx && out[*idx] == nullptr) out[*idx] = &a;
    }
    return out;
}

bool Schedule::covers_all_jobs() const {
    if (assignments_.size() != instance_.size()) return false;
    std::vector<bool> seen(instance_.size(), false);
    for (const Assignment& a : assignments_) {
        auto idx = instance_.index_of(a.job_id);
        if (!idx || seen[*idx]) return false;
        seen[*idx] = true;
    }
    return true;
}

Schedule Schedule::sorted() const {
    Schedule out(instance_);
    out.assignments_ = assignments_;
    std::stable_sort(out.assignments_.begin(), out.assignments_.end(),
                     [](const Assignment& a, const Assignment& b) { return a.job_id < b.job_id; });
    return out;
}

}  // namespace orsched
