#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace orsched {

using JobId = std::int64_t;
using Time = std::int64_t;   // integer ticks
using Units = std::int64_t;  // integer resource units

/// Thrown for malformed input text; carries the 1-based line number (0 if unknown).
class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Job {
    JobId id = 0;
    Time p = 1;
    Units req = 0;

    friend bool operator==(const Job&, const Job&) = default;
};

enum class JobClass { kLight, kMedium, kHeavy };

const char* to_string(JobClass c);

/// Problem input: identical machines, one renewable resource, a job list.
///
/// Immutable once built. Copies share the underlying job storage, so passing an
/// Instance by value is cheap and safe across threads.
class Instance {
public:
    /// Empty instance with one machine and one resource unit.
    Instance();
    /// Throws std::invalid_argument unless machines >= 1, capacity >= 1, every
    /// job has p >= 1 and 0 <= req <= capacity, and ids are unique and non-negative.
    Instance(int machines, Units capacity, std::vector<Job> jobs);

    /// Jobs given as (p, req) pairs get ids 0..n-1 in order.
    static Instance from_pairs(int machines, Units capacity, const std::vector<std::pair<Time, Units>>& jobs);

    int machines() const { return data_->machines; }
    Units capacity() const { return data_->capacity; }
    std::span<const Job> jobs() const { return data_->jobs; }
    std::size_t size() const { return data_->jobs.size(); }
    bool empty() const { return data_->jobs.empty(); }
    const Job& job(std::size_t index) const { return data_->jobs[index]; }

    std::optional<std::size_t> index_of(JobId id) const;
    const Job* find(JobId id) const;

    /// Same machines and capacity, different job list.
    Instance with_jobs(std::vector<Job> jobs) const;

private:
    struct Data {
        int machines = 1;
        Units capacity = 1;
        std::vector<Job> jobs;
        std::unordered_map<JobId, std::size_t> index;
    };
    std::shared_ptr<const Data> data_;
};

/// One job placed on one machine. The job occupies [start, completion).
struct Assignment {
    JobId job_id = 0;
    int machine = 0;
    Time start = 0;
    Time completion = 0;

    bool active_at(Time t) const { return start <= t && t < completion; }
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// A possibly partial set of assignments for an instance.
///
/// Feasibility is not enforced on insertion; use validate(). The raw list may
/// even contain unknown or repeated job ids (e.g. when read from a file), which
/// validate() reports.
class Schedule {
public:
    Schedule() = default;
    explicit Schedule(Instance instance) : instance_(std::move(instance)) {}

    const Instance& instance() const { return instance_; }

    /// Completion is start + p of the job; for ids unknown to the instance it is start.
    void add(JobId id, int machine, Time start);
    /// Appends the assignment verbatim.
    void add(const Assignment& a) { assignments_.push_back(a); }

    std::span<const Assignment> assignments() const { return assignments_; }
    std::size_t size() const { return assignments_.size(); }
    bool empty() const { return assignments_.empty(); }

    /// First assignment of the given job, or nullptr.
    const Assignment* find(JobId id) const;

    /// Assignment per instance job index (nullptr where unassigned).
    std::vector<const Assignment*> by_index() const;

    /// True iff every instance job appears exactly once and nothing else does.
    bool covers_all_jobs() const;

    /// Assignments ordered by job id.
    Schedule sorted() const;

private:
    Instance instance_;
    std::vector<Assignment> assignments_;
};

}  // namespace orsched
