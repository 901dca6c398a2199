#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "orsched/approx.hpp"

namespace orsched::approx {

BuildState::BuildState(Instance instance, Variant variant)
    : instance_(std::move(instance)),
      variant_(variant),
      placed_(instance_.size()),
      ignored_(instance_.size(), false),
      machines_(static_cast<std::size_t>(instance_.machines())) {
    points_.emplace(0, Point{});
}

BuildState::PointMap::iterator BuildState::touch(Time t) {
    auto it = points_.lower_bound(t);
    if (it != points_.end() && it->first == t) {
        ++it->second.refs;
        return it;
    }
    const Units usage = std::prev(it)->second.usage;
    return points_.emplace_hint(it, t, Point{usage, 1});
}

void BuildState::release(PointMap::iterator it) {
    if (--it->second.refs == 0 && it->first != 0) points_.erase(it);
}

void BuildState::occupy(std::size_t index) {
    const Assignment& a = *placed_[index];
    const Units req = instance_.job(index).req;
    auto first = touch(a.start);
    auto last = touch(a.completion);
    for (auto it = first; it != last; ++it) it->second.usage += req;
    auto& busy = machines_[static_cast<std::size_t>(a.machine)];
    auto pos = std::lower_bound(busy.begin(), busy.end(), a.start,
                                [](const Interval& x, Time t) { return x.start < t; });
    busy.insert(pos, Interval{a.start, a.completion});
}

void BuildState::vacate(std::size_t index) {
    const Assignment& a = *placed_[index];
    const Units req = instance_.job(index).req;
    auto first = points_.find(a.start);
    auto last = points_.find(a.completion);
    assert(first != points_.end() && last != points_.end());
    for (auto it = first; it != last; ++it) it->second.usage -= req;
    release(last);
    release(first);
    auto& busy = machines_[static_cast<std::size_t>(a.machine)];
    auto pos = std::lower_bound(busy.begin(), busy.end(), a.start,
                                [](const Interval& x, Time t) { return x.start < t; });
    assert(pos != busy.end() && pos->start == a.start);
    busy.erase(pos);
}

void BuildState::place(std::size_t index, int machine, Time start) {
    if (placed_[index]) throw std::logic_error("job already scheduled");
    const Job& job = instance_.job(index);
    if (machine < 0 || machine >= instance_.machines()) throw std::out_of_range("machine index");
    if (start < 0) throw std::invalid_argument("negative start");
    placed_[index] = Assignment{job.id, machine, start, start + job.p};
    occupy(index);
}

void BuildState::unschedule(std::size_t index) {
    if (!placed_[index]) return;
    if (!ignored_[index]) vacate(index);
    ignored_[index] = false;
    placed_[index].reset();
}

void BuildState::ignore(std::size_t index) {
    if (!placed_[index] || ignored_[index]) return;
    vacate(index);
    ignored_[index] = true;
}

Units BuildState::usage_at(Time t) const {
    auto it = points_.upper_bound(t);
    return std::prev(it)->second.usage;
}

Units BuildState::max_usage(Time from, Time to) const {
    auto it = std::prev(points_.upper_bound(from));
    Units best = it->second.usage;
    for (++it; it != points_.end() && it->first < to; ++it) best = std::max(best, it->second.usage);
    return best;
}

std::optional<int> BuildState::free_machine(Time from, Time to) const {
    for (std::size_t k = 0; k < machines_.size(); ++k) {
        const auto& busy = machines_[k];
        // Last interval starting before `to`; intervals on a machine are disjoint.
        auto it = std::lower_bound(busy.begin(), busy.end(), to,
                                   [](const Interval& x, Time t) { return x.start < t; });
        if (it != busy.begin() && std::prev(it)->completion > from) continue;
        return static_cast<int>(k);
    }
    return std::nullopt;
}

std::optional<int> BuildState::fitting_machine(std::size_t index, Time t) const {
    const Job& job = instance_.job(index);
    if (max_usage(t, t + job.p) + job.req > instance_.capacity()) return std::nullopt;
    return free_machine(t, t + job.p);
}

Time BuildState::next_below_two_thirds(Time t) const {
    auto it = std::prev(points_.upper_bound(t));
    if (!two_thirds(it->second.usage)) return t;
    for (++it; it != points_.end(); ++it) {
        if (!two_thirds(it->second.usage)) return it->first;
    }
    // Unreachable: usage after the last breakpoint is zero.
    throw std::logic_error("profile does not drop to zero");
}

std::optional<Time> BuildState::last_two_thirds_end() const {
    for (auto it = points_.rbegin(); it != points_.rend(); ++it) {
        if (two_thirds(it->second.usage)) {
            // The segment starting at this key ends at the next key, which exists
            // because usage returns to zero.
            return std::prev(it)->first;
        }
    }
    return std::nullopt;
}

std::optional<Time> BuildState::next_event_after(Time t) const {
    auto it = points_.upper_bound(t);
    if (it == points_.end()) return std::nullopt;
    return it->first;
}

std::vector<std::size_t> BuildState::active_at(Time t) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < placed_.size(); ++i) {
        if (placed_[i] && !ignored_[i] && placed_[i]->active_at(t)) out.push_back(i);
    }
    return out;
}

Time BuildState::max_completion(bool include_ignored) const {
    Time best = 0;
    for (std::size_t i = 0; i < placed_.size(); ++i) {
        if (placed_[i] && (include_ignored || !ignored_[i])) best = std::max(best, placed_[i]->completion);
    }
    return best;
}

std::vector<std::size_t> BuildState::unscheduled() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < placed_.size(); ++i) {
        if (!placed_[i]) out.push_back(i);
    }
    return out;
}

Schedule BuildState::snapshot(bool include_ignored) const {
    Schedule out(instance_);
    for (std::size_t i = 0; i < placed_.size(); ++i) {
        if (placed_[i] && (include_ignored || !ignored_[i])) out.add(*placed_[i]);
    }
    return out;
}

}  // namespace orsched::approx
