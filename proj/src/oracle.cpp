#include "orsched/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "orsched/approx.hpp"
#include "orsched/list.hpp"
#include "orsched/profile.hpp"
#include "orsched/validate.hpp"

namespace orsched::oracle {

namespace {

Time ceil_div(__int128 a, __int128 b) { return static_cast<Time>((a + b - 1) / b); }

class Search {
public:
    Search(const Instance& inst, std::uint64_t budget) : inst_(inst), budget_(budget) {
        order_.resize(inst.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        // Long and resource-hungry jobs first; identical jobs end up adjacent.
        std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            const Job& x = inst.job(a);
            const Job& y = inst.job(b);
            if (x.p != y.p) return x.p > y.p;
            if (x.req != y.req) return x.req > y.req;
            return x.id < y.id;
        });
        for (std::size_t k = 0; k < order_.size(); ++k) {
            const Job& job = inst.job(order_[k]);
            p_.push_back(job.p);
            req_.push_back(job.req);
            twin_.push_back(k > 0 && p_[k - 1] == job.p && req_[k - 1] == job.req);
        }
        start_.assign(order_.size(), -1);
    }

    void seed(const Schedule& schedule) {
        const Time c = makespan(schedule);
        if (c >= best_) return;
        best_ = c;
        best_start_.assign(order_.size(), 0);
        for (std::size_t k = 0; k < order_.size(); ++k) {
            best_start_[k] = schedule.find(inst_.job(order_[k]).id)->start;
        }
    }

    void run() { event(0); }

    bool aborted() const { return aborted_; }
    std::uint64_t nodes() const { return nodes_; }
    Time best() const { return best_; }

    // Interval colouring: at most m jobs overlap, so the lowest free machine always exists.
    Schedule best_schedule() const {
        std::vector<std::size_t> ks(order_.size());
        std::iota(ks.begin(), ks.end(), std::size_t{0});
        std::sort(ks.begin(), ks.end(), [&](std::size_t a, std::size_t b) {
            if (best_start_[a] != best_start_[b]) return best_start_[a] < best_start_[b];
            return inst_.job(order_[a]).id < inst_.job(order_[b]).id;
        });
        std::vector<Time> machine_free(static_cast<std::size_t>(inst_.machines()), 0);
        Schedule out(inst_);
        for (std::size_t k : ks) {
            const Time s = best_start_[k];
            auto slot = std::find_if(machine_free.begin(), machine_free.end(), [&](Time f) { return f <= s; });
            if (slot == machine_free.end()) throw std::logic_error("oracle schedule exceeds the machine count");
            *slot = s + p_[k];
            out.add(inst_.job(order_[k]).id, static_cast<int>(slot - machine_free.begin()), s);
        }
        return out;
    }

private:
    void event(Time t) {
        if (aborted_) return;
        if (++nodes_ > budget_) {
            aborted_ = true;
            return;
        }
        const auto m = inst_.machines();
        Units usage = 0;
        int count = 0;
        Time max_c = t;
        Time max_pending_p = 0;
        __int128 work = 0;
        __int128 resource_work = 0;
        bool pending = false;
        for (std::size_t k = 0; k < order_.size(); ++k) {
            if (start_[k] < 0) {
                pending = true;
                max_pending_p = std::max(max_pending_p, p_[k]);
                work += p_[k];
                resource_work += static_cast<__int128>(p_[k]) * req_[k];
            } else if (start_[k] + p_[k] > t) {
                const Time left = start_[k] + p_[k] - t;
                usage += req_[k];
                ++count;
                max_c = std::max(max_c, start_[k] + p_[k]);
                work += left;
                resource_work += static_cast<__int128>(left) * req_[k];
            }
        }
        if (!pending) {
            if (max_c < best_) {
                best_ = max_c;
                best_start_ = start_;
            }
            return;
        }
        Time bound = std::max(max_c, t + max_pending_p);
        bound = std::max(bound, t + ceil_div(work, m));
        bound = std::max(bound, t + ceil_div(resource_work, inst_.capacity()));
        if (bound >= best_) return;
        choose(t, 0, usage, count);
    }

    // Enumerates each subset of pending jobs to start at t exactly once, in
    // increasing search position, then moves on to the next completion.
    void choose(Time t, std::size_t cursor, Units usage, int count) {
        for (std::size_t k = cursor; k < order_.size() && count < inst_.machines(); ++k) {
            if (start_[k] >= 0 || usage + req_[k] > inst_.capacity() || t + p_[k] >= best_) continue;
            // Identical jobs start in search order.
            if (twin_[k] && start_[k - 1] < 0) continue;
            start_[k] = t;
            choose(t, k + 1, usage + req_[k], count + 1);
            start_[k] = -1;
            if (aborted_) return;
        }
        Time next = -1;
        for (std::size_t k = 0; k < order_.size(); ++k) {
            if (start_[k] >= 0 && start_[k] + p_[k] > t && (next < 0 || start_[k] + p_[k] < next)) {
                next = start_[k] + p_[k];
            }
        }
        if (next >= 0) event(next);
    }

    const Instance& inst_;
    std::uint64_t budget_;
    std::vector<std::size_t> order_;
    std::vector<Time> p_;
    std::vector<Units> req_;
    std::vector<bool> twin_;
    std::vector<Time> start_;
    Time best_ = std::numeric_limits<Time>::max();
    std::vector<Time> best_start_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

}  // namespace

OracleResult optimal_makespan(const Instance& instance, std::uint64_t node_budget) {
    if (node_budget == 0) throw std::invalid_argument("node budget must be positive");
    if (instance.size() > 64) throw std::invalid_argument("oracle supports at most 64 jobs");

    OracleResult result;
    if (instance.empty()) {
        result.optimal_schedule = Schedule(instance);
        result.exhausted = true;
        return result;
    }

    Search search(instance, node_budget);
    search.seed(approx::apalg_s(instance).schedule);
    for (auto policy : {list::OrderPolicy::lpt(), list::OrderPolicy::hrr(), list::OrderPolicy::lrr()}) {
        search.seed(list::list_schedule(instance, policy));
    }

    // The incumbent is already optimal when it meets the load bound.
    const auto root_bound = std::max(lower_bound(instance).ceil(), static_cast<Ratio::Int>(0));
    Time max_p = 0;
    for (const Job& job : instance.jobs()) max_p = std::max(max_p, job.p);
    if (search.best() > std::max(static_cast<Time>(root_bound), max_p)) search.run();

    result.opt = search.best();
    result.optimal_schedule = search.best_schedule();
    result.nodes_explored = search.nodes();
    result.exhausted = !search.aborted();
    if (auto report = validate(result.optimal_schedule); !report.ok()) {
        throw std::logic_error("oracle produced an invalid schedule:\n" + report.to_string());
    }
    return result;
}

Ratio ratio(const Instance& instance, Time algo_makespan, const OracleResult& oracle) {
    if (!oracle.exhausted) throw std::invalid_argument("oracle search did not finish; its value is not the optimum");
    if (oracle.opt <= 0) {
        throw std::invalid_argument(instance.empty() ? "ratio is undefined for an empty instance"
                                                     : "oracle optimum must be positive");
    }
    return Ratio(algo_makespan, oracle.opt);
}

}  // namespace orsched::oracle
