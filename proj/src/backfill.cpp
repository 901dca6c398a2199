#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "orsched/approx.hpp"
#include "orsched/validate.hpp"

namespace orsched::approx {

namespace {

// Usage and active-job count as step functions plus per-machine occupancy.
class Timeline {
public:
    Timeline(int machines, Units capacity) : capacity_(capacity), machines_(static_cast<std::size_t>(machines)) {
        points_.emplace(0, Point{});
    }

    void add(const Assignment& a, Units req) { apply(a, req, +1); }
    void remove(const Assignment& a, Units req) { apply(a, req, -1); }

    // Earliest breakpoint t < limit where a job of length p and requirement req
    // fits on some machine; the machine is the lowest free index. Checking every
    // breakpoint finds the same time as checking only 0 and completion times,
    // because a fit at a pure start time also fits at the breakpoint before it.
    std::optional<std::pair<Time, int>> earliest(Time p, Units req, Time limit) const {
        const auto m = static_cast<int>(machines_.size());
        auto it = points_.begin();
        while (it != points_.end() && it->first < limit) {
            const Time t = it->first;
            auto bad = points_.end();
            for (auto w = it; w != points_.end() && w->first < t + p; ++w) {
                if (w->second.usage + req > capacity_ || w->second.count >= m) bad = w;
            }
            if (bad != points_.end()) {
                it = std::next(bad);
                continue;
            }
            if (auto machine = free_machine(t, t + p)) return std::make_pair(t, *machine);
            ++it;
        }
        return std::nullopt;
    }

private:
    struct Point {
        Units usage = 0;
        int count = 0;
        int refs = 0;
    };
    using PointMap = std::map<Time, Point>;

    PointMap::iterator touch(Time t) {
        auto it = points_.lower_bound(t);
        if (it != points_.end() && it->first == t) {
            ++it->second.refs;
            return it;
        }
        Point prev = std::prev(it)->second;
        return points_.emplace_hint(it, t, Point{prev.usage, prev.count, 1});
    }

    void release(PointMap::iterator it) {
        if (--it->second.refs == 0 && it->first != 0) points_.erase(it);
    }

    void apply(const Assignment& a, Units req, int sign) {
        auto first = touch(a.start);
        auto last = touch(a.completion);
        for (auto it = first; it != last; ++it) {
            it->second.usage += sign * req;
            it->second.count += sign;
        }
        auto& busy = machines_[static_cast<std::size_t>(a.machine)];
        if (sign > 0) {
            busy.emplace(a.start, a.completion);
            return;
        }
        busy.erase(a.start);
        // Undo this call's touches as well as the ones from add().
        release(last);
        release(first);
        release(points_.find(a.completion));
        release(points_.find(a.start));
    }

    std::optional<int> free_machine(Time from, Time to) const {
        for (std::size_t k = 0; k < machines_.size(); ++k) {
            const auto& busy = machines_[k];
            auto it = busy.lower_bound(to);
            if (it != busy.begin() && std::prev(it)->second > from) continue;
            return static_cast<int>(k);
        }
        return std::nullopt;
    }

    Units capacity_;
    PointMap points_;
    std::vector<std::map<Time, Time>> machines_;
};

}  // namespace

Schedule backfill(const Schedule& schedule) {
    const Instance& inst = schedule.instance();
    if (auto report = validate(schedule); !report.ok()) {
        throw std::invalid_argument("backfill needs a valid schedule:\n" + report.to_string());
    }
    if (!schedule.covers_all_jobs()) throw std::invalid_argument("backfill needs every job scheduled exactly once");

    std::vector<Assignment> placed(inst.size());
    for (const Assignment& a : schedule.assignments()) placed[*inst.index_of(a.job_id)] = a;

    Timeline timeline(inst.machines(), inst.capacity());
    for (std::size_t i = 0; i < placed.size(); ++i) timeline.add(placed[i], inst.job(i).req);

    std::vector<std::size_t> order(placed.size());
    for (bool moved = true; moved;) {
        moved = false;
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (placed[a].start != placed[b].start) return placed[a].start < placed[b].start;
            return placed[a].job_id < placed[b].job_id;
        });
        for (std::size_t index : order) {
            const Job& job = inst.job(index);
            Assignment& a = placed[index];
            timeline.remove(a, job.req);
            if (auto fit = timeline.earliest(job.p, job.req, a.start)) {
                a.start = fit->first;
                a.machine = fit->second;
                a.completion = a.start + job.p;
                moved = true;
            }
            timeline.add(a, job.req);
        }
    }

    Schedule out(inst);
    for (const Assignment& a : placed) out.add(a);
    return out;
}

}  // namespace orsched::approx
