#pragma once

#include <cstdint>

#include "orsched/model.hpp"
#include "orsched/ratio.hpp"

namespace orsched::oracle {

struct OracleResult {
    Time opt = 0;  // exact optimum when exhausted, best found otherwise
    Schedule optimal_schedule;
    std::uint64_t nodes_explored = 0;
    bool exhausted = false;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 20'000'000;

/// Depth-first branch and bound over event times. Every start is 0 or some
/// completion time; at each event the search picks which pending jobs to start.
/// Prunes with a load bound on the remaining work and breaks symmetry between
/// jobs with equal (p, req). Meant for n up to about 10.
/// Throws std::invalid_argument if node_budget is 0 or n > 64.
OracleResult optimal_makespan(const Instance& instance, std::uint64_t node_budget = kDefaultNodeBudget);

/// algo_makespan / opt. Throws std::invalid_argument unless the search was
/// exhausted and opt > 0.
Ratio ratio(const Instance& instance, Time algo_makespan, const OracleResult& oracle);

}  // namespace orsched::oracle
