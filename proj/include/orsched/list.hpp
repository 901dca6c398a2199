#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orsched/model.hpp"

namespace orsched::list {

enum class Policy { kLpt, kHrr, kLrr, kRand };

struct OrderPolicy {
    Policy kind = Policy::kLpt;
    std::uint64_t seed = 0;  // RAND only

    static OrderPolicy lpt() { return {Policy::kLpt, 0}; }
    static OrderPolicy hrr() { return {Policy::kHrr, 0}; }
    static OrderPolicy lrr() { return {Policy::kLrr, 0}; }
    static OrderPolicy rand(std::uint64_t seed) { return {Policy::kRand, seed}; }
};

std::string to_string(const OrderPolicy& policy);

/// LPT: p descending. HRR: req descending. LRR: req ascending. Ties by id.
/// RAND: Fisher-Yates over the id-sorted jobs, from the last index down, with
/// SplitMix64(seed).next() % (i + 1).
std::vector<JobId> order_jobs(const Instance& instance, const OrderPolicy& policy);

enum class ScanMode {
    kAuto,     // indexed for HRR and LRR, linear otherwise
    kLinear,   // scan the remaining list front to back at every event
    kIndexed,  // req-ordered lookup; HRR and LRR only
};

/// Greedy list scheduling. At time 0 and at every completion time (all
/// completions at that time applied first), repeatedly start the first job of
/// the remaining list that fits in the free resource, on the lowest-index free
/// machine, until no machine is free or nothing fits.
/// Throws std::invalid_argument for kIndexed with LPT or RAND.
Schedule list_schedule(const Instance& instance, const OrderPolicy& policy, ScanMode mode = ScanMode::kAuto);

/// Same rule for an explicit list of job ids (a permutation of the instance's ids).
Schedule list_schedule_order(const Instance& instance, const std::vector<JobId>& order);

}  // namespace orsched::list
