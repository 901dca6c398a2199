#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>

#include "orsched/list.hpp"
#include "orsched/splitmix.hpp"

namespace orsched::list {

namespace {

std::vector<std::size_t> order_indices(const Instance& inst, const OrderPolicy& policy) {
    std::vector<std::size_t> idx(inst.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto by_id = [&](std::size_t a, std::size_t b) { return inst.job(a).id < inst.job(b).id; };
    std::sort(idx.begin(), idx.end(), by_id);

    switch (policy.kind) {
        case Policy::kLpt:
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return inst.job(a).p > inst.job(b).p; });
            break;
        case Policy::kHrr:
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return inst.job(a).req > inst.job(b).req; });
            break;
        case Policy::kLrr:
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return inst.job(a).req < inst.job(b).req; });
            break;
        case Policy::kRand: {
            SplitMix64 rng(policy.seed);
            for (std::size_t i = idx.size(); i-- > 1;) {
                std::swap(idx[i], idx[static_cast<std::size_t>(rng.next() % (i + 1))]);
            }
            break;
        }
    }
    return idx;
}

// Remaining list as a doubly linked list over list positions.
class LinearPicker {
public:
    LinearPicker(const Instance& inst, std::vector<std::size_t> order)
        : inst_(inst), order_(std::move(order)), next_(order_.size() + 1), prev_(order_.size() + 1) {
        // Node 0 is the head sentinel; list position k lives at node k + 1.
        for (std::size_t k = 0; k <= order_.size(); ++k) {
            next_[k] = k + 1;
            prev_[k] = k == 0 ? 0 : k - 1;
        }
    }

    std::optional<std::size_t> pick(Units avail) {
        for (std::size_t node = next_[0]; node <= order_.size(); node = next_[node]) {
            const std::size_t index = order_[node - 1];
            if (inst_.job(index).req <= avail) {
                next_[prev_[node]] = next_[node];
                if (next_[node] <= order_.size()) prev_[next_[node]] = prev_[node];
                return index;
            }
        }
        return std::nullopt;
    }

private:
    const Instance& inst_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> next_;
    std::vector<std::size_t> prev_;
};

// HRR: the first fitting job in list order is the one with the largest
// req <= avail, earliest list position among equals.
class HrrPicker {
public:
    HrrPicker(const Instance& inst, const std::vector<std::size_t>& order) : order_(order) {
        for (std::size_t k = 0; k < order.size(); ++k) {
            keys_.emplace(inst.job(order[k]).req, -static_cast<std::int64_t>(k));
        }
    }

    std::optional<std::size_t> pick(Units avail) {
        auto it = keys_.upper_bound({avail, std::numeric_limits<std::int64_t>::max()});
        if (it == keys_.begin()) return std::nullopt;
        --it;
        const auto pos = static_cast<std::size_t>(-it->second);
        keys_.erase(it);
        return order_[pos];
    }

private:
    std::vector<std::size_t> order_;
    std::set<std::pair<Units, std::int64_t>> keys_;
};

// LRR: list order is req ascending, so the head fits or nothing does.
class LrrPicker {
public:
    LrrPicker(const Instance& inst, const std::vector<std::size_t>& order) : order_(order) {
        for (std::size_t k = 0; k < order.size(); ++k) {
            keys_.emplace(inst.job(order[k]).req, static_cast<std::int64_t>(k));
        }
    }

    std::optional<std::size_t> pick(Units avail) {
        if (keys_.empty() || keys_.begin()->first > avail) return std::nullopt;
        const auto pos = static_cast<std::size_t>(keys_.begin()->second);
        keys_.erase(keys_.begin());
        return order_[pos];
    }

private:
    std::vector<std::size_t> order_;
    std::set<std::pair<Units, std::int64_t>> keys_;
};

template <typename Picker>
Schedule simulate(const Instance& inst, Picker picker) {
    Schedule schedule(inst);
    std::size_t remaining = inst.size();
    std::set<int> free;
    for (int k = 0; k < inst.machines(); ++k) free.insert(k);

    struct Running {
        Time completion;
        int machine;
        Units req;
        bool operator>(const Running& o) const {
            return completion != o.completion ? completion > o.completion : machine > o.machine;
        }
    };
    std::priority_queue<Running, std::vector<Running>, std::greater<>> running;

    Units usage = 0;
    Time t = 0;
    while (remaining > 0) {
        while (!running.empty() && running.top().completion <= t) {
            usage -= running.top().req;
            free.insert(running.top().machine);
            running.pop();
        }
        while (!free.empty()) {
            auto index = picker.pick(inst.capacity() - usage);
            if (!index) break;
            const Job& job = inst.job(*index);
            const int machine = *free.begin();
            free.erase(free.begin());
            schedule.add(job.id, machine, t);
            usage += job.req;
            running.push({t + job.p, machine, job.req});
            --remaining;
        }
        if (remaining == 0) break;
        if (running.empty()) throw std::logic_error("list scheduler stalled with idle machines");
        t = running.top().completion;
    }
    return schedule;
}

}  // namespace

std::string to_string(const OrderPolicy& policy) {
    switch (policy.kind) {
        case Policy::kLpt: return "lpt";
        case Policy::kHrr: return "hrr";
        case Policy::kLrr: return "lrr";
        case Policy::kRand: return "rand";
    }
    return "?";
}

std::vector<JobId> order_jobs(const Instance& instance, const OrderPolicy& policy) {
    std::vector<JobId> ids;
    for (std::size_t index : order_indices(instance, policy)) ids.push_back(instance.job(index).id);
    return ids;
}

Schedule list_schedule(const Instance& instance, const OrderPolicy& policy, ScanMode mode) {
    const bool indexable = policy.kind == Policy::kHrr || policy.kind == Policy::kLrr;
    if (mode == ScanMode::kIndexed && !indexable) {
        throw std::invalid_argument("indexed scan needs the hrr or lrr policy");
    }
    auto order = order_indices(instance, policy);
    if (mode == ScanMode::kLinear || !indexable) return simulate(instance, LinearPicker(instance, std::move(order)));
    if (policy.kind == Policy::kHrr) return simulate(instance, HrrPicker(instance, order));
    return simulate(instance, LrrPicker(instance, order));
}

Schedule list_schedule_order(const Instance& instance, const std::vector<JobId>& order) {
    if (order.size() != instance.size()) throw std::invalid_argument("order must list every job once");
    std::vector<std::size_t> idx;
    std::vector<bool> seen(instance.size(), false);
    for (JobId id : order) {
        auto index = instance.index_of(id);
        if (!index || seen[*index]) throw std::invalid_argument("order must list every job once");
        seen[*index] = true;
        idx.push_back(*index);
    }
    return simulate(instance, LinearPicker(instance, std::move(idx)));
}

}  // namespace orsched::list
