#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "orsched/approx.hpp"
#include "orsched/validate.hpp"

namespace orsched::approx {

namespace {

std::vector<std::size_t> jobs_of_class(const BuildState& state, JobClass cls) {
    std::vector<std::size_t> out;
    const Instance& inst = state.instance();
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (!state.is_scheduled(i) && classify(inst.job(i), inst.capacity()) == cls) out.push_back(i);
    }
    return out;
}

// Stable by id on equal req.
void sort_by_req(const Instance& inst, std::vector<std::size_t>& idx, bool descending) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const Job& x = inst.job(a);
        const Job& y = inst.job(b);
        if (x.req != y.req) return descending ? x.req > y.req : x.req < y.req;
        return x.id < y.id;
    });
}

std::vector<Job> jobs_at(const Instance& inst, const std::vector<std::size_t>& idx) {
    std::vector<Job> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(inst.job(i));
    return out;
}

// Earliest event time >= t where the job fits; always exists because every
// resource and machine is free after the last breakpoint.
std::pair<Time, int> earliest_fit(const BuildState& state, std::size_t index, Time t) {
    for (;;) {
        if (auto machine = state.fitting_machine(index, t)) return {t, *machine};
        auto next = state.next_event_after(t);
        if (!next) throw std::logic_error("job does not fit on an empty timeline");
        t = *next;
    }
}

Time gated_pass(BuildState& state, const std::vector<std::size_t>& order, Time t_s) {
    Time t_c = t_s;
    for (std::size_t index : order) {
        t_c = state.next_below_two_thirds(t_c);
        auto machine = state.fitting_machine(index, t_c);
        if (!machine) break;
        state.place(index, *machine, t_c);
    }
    return state.next_below_two_thirds(t_c);
}

Time monotone_pass(BuildState& state, const std::vector<std::size_t>& order, Time t_s) {
    Time last = t_s;
    for (std::size_t index : order) {
        auto [start, machine] = earliest_fit(state, index, last);
        state.place(index, machine, start);
        last = start;
    }
    return state.next_below_two_thirds(last);
}

std::vector<JobId> ids_of(const Instance& inst, const std::vector<std::size_t>& idx) {
    std::vector<JobId> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(inst.job(i).id);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string ApAlgTrace::to_key_value() const {
    std::ostringstream os;
    os << "t1=" << t1 << "\n"
       << "t2=" << t2 << "\n"
       << "t_g=" << t_g << "\n"
       << "t3=" << t3 << "\n"
       << "t4=" << t4 << "\n"
       << "step3_max_completion=" << step3_max_completion << "\n"
       << "unscheduled_step2=" << unscheduled_step2.size() << "\n"
       << "ignored_step3=" << ignored_step3.size() << "\n"
       << "unscheduled_step4=" << unscheduled_step4.size() << "\n"
       << "step4_pending=" << step4_pending_count << "\n"
       << "step4_pending_top_m=" << step4_pending_top_m << "\n"
       << "step4_gate_ok=" << (step4_gate_ok ? 1 : 0) << "\n";
    return os.str();
}

Time schedule_two_thirds(BuildState& state, std::span<const Job> candidates, Time t_s) {
    const Instance& inst = state.instance();
    std::vector<std::size_t> order;
    order.reserve(candidates.size());
    for (const Job& job : candidates) {
        auto idx = inst.index_of(job.id);
        if (!idx) throw std::invalid_argument("candidate job " + std::to_string(job.id) + " is not in the instance");
        if (state.is_scheduled(*idx)) {
            throw std::invalid_argument("candidate job " + std::to_string(job.id) + " is already scheduled");
        }
        order.push_back(*idx);
    }
    sort_by_req(inst, order, /*descending=*/true);
    return state.variant() == Variant::kStrict ? gated_pass(state, order, t_s) : monotone_pass(state, order, t_s);
}

Time step1_heavy(BuildState& state) {
    const Instance& inst = state.instance();
    auto heavy = jobs_of_class(state, JobClass::kHeavy);
    sort_by_req(inst, heavy, /*descending=*/true);
    Time t = 0;
    for (std::size_t index : heavy) {
        state.place(index, 0, t);
        t += inst.job(index).p;
    }
    state.trace().t1 = t;
    return t;
}

Time step2_light(BuildState& state, Time t1) {
    const Instance& inst = state.instance();
    Time t2 = 0;
    if (t1 > 0) {
        const auto lights = jobs_of_class(state, JobClass::kLight);
        const Time t_c = schedule_two_thirds(state, jobs_at(inst, lights), 0);
        t2 = std::min(t1, t_c);
        if (t1 == t2) {
            std::vector<std::size_t> dropped;
            for (std::size_t index : lights) {
                if (state.is_scheduled(index) && state.placement(index)->start >= t2) dropped.push_back(index);
            }
            for (std::size_t index : dropped) state.unschedule(index);
            state.trace().unscheduled_step2 = ids_of(inst, dropped);
        }
    }
    state.trace().t2 = t2;
    return t2;
}

StepThreeResult step3_medium(BuildState& state, Time t1, Time t2) {
    const Instance& inst = state.instance();

    std::vector<std::size_t> ignored;
    for (std::size_t index : state.active_at(t2)) {
        if (classify(inst.job(index), inst.capacity()) == JobClass::kLight) ignored.push_back(index);
    }
    for (std::size_t index : ignored) state.ignore(index);
    state.trace().ignored_step3 = ids_of(inst, ignored);

    auto mediums = jobs_of_class(state, JobClass::kMedium);
    sort_by_req(inst, mediums, /*descending=*/false);
    Time t = t2;
    for (std::size_t index : mediums) {
        auto [start, machine] = earliest_fit(state, index, t);
        state.place(index, machine, start);
        t = start;
    }

    // sup over an empty set, or over a busy region that ends before t2, is t2.
    Time t_g = std::max(t2, state.last_two_thirds_end().value_or(t2));
    if (t1 == t2) {
        const auto rest = jobs_of_class(state, JobClass::kLight);
        t_g = schedule_two_thirds(state, jobs_at(inst, rest), t_g);
    }

    StepThreeResult out{t_g, std::max(t_g, t1)};
    state.trace().t_g = out.t_g;
    state.trace().t3 = out.t3;
    state.trace().step3_max_completion = state.max_completion(/*include_ignored=*/true);
    return out;
}

Time step4_lpt(BuildState& state, Time t_g, Time t2, Time t3) {
    const Instance& inst = state.instance();
    if (t2 > t3 || t_g > t3) throw std::invalid_argument("step 4 needs t2 <= t3 and t_g <= t3");

    std::vector<std::size_t> reinstated;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (state.is_ignored(i)) reinstated.push_back(i);
    }
    const auto straddling = state.active_at(t_g);
    for (std::size_t index : reinstated) state.unschedule(index);
    for (std::size_t index : straddling) state.unschedule(index);

    std::vector<std::size_t> step4_ids = reinstated;
    step4_ids.insert(step4_ids.end(), straddling.begin(), straddling.end());
    state.trace().unscheduled_step4 = ids_of(inst, step4_ids);

    auto pending = state.unscheduled();
    std::vector<Units> reqs;
    reqs.reserve(pending.size());
    for (std::size_t index : pending) reqs.push_back(inst.job(index).req);
    const Units top = top_m_sum(reqs, inst.machines());
    auto& trace = state.trace();
    trace.step4_pending_top_m = top;
    trace.step4_pending_count = pending.size();
    trace.step4_gate_ok = top < inst.capacity();

    std::stable_sort(pending.begin(), pending.end(), [&](std::size_t a, std::size_t b) {
        const Job& x = inst.job(a);
        const Job& y = inst.job(b);
        return x.p != y.p ? x.p > y.p : x.id < y.id;
    });

    if (state.variant() == Variant::kStrict && !trace.step4_gate_ok) {
        throw std::logic_error("step 4: the m largest pending requirements reach the capacity");
    }
    // Plain LPT from t3: each job takes the machine that frees up first (lowest
    // index on ties). A medium blocked by the heavy chain can start at or after t_g
    // and run past t3; a job whose LPT slot would then overflow the resource goes
    // to its earliest feasible slot instead.
    std::vector<Time> avail(static_cast<std::size_t>(inst.machines()), t3);
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (const auto& a = state.placement(i); a && !state.is_ignored(i)) {
            auto& slot = avail[static_cast<std::size_t>(a->machine)];
            slot = std::max(slot, a->completion);
        }
    }
    std::set<std::pair<Time, int>> ready;
    for (int k = 0; k < inst.machines(); ++k) ready.emplace(avail[static_cast<std::size_t>(k)], k);
    for (std::size_t index : pending) {
        const Job& job = inst.job(index);
        auto [start, machine] = *ready.begin();
        if (state.max_usage(start, start + job.p) + job.req > inst.capacity()) {
            std::tie(start, machine) = earliest_fit(state, index, t3);
        }
        state.place(index, machine, start);
        auto& slot = avail[static_cast<std::size_t>(machine)];
        if (start + job.p > slot) {
            ready.erase({slot, machine});
            slot = start + job.p;
            ready.emplace(slot, machine);
        }
    }

    const Time t4 = std::max(t3, state.max_completion(/*include_ignored=*/false));
    trace.t4 = t4;
    return t4;
}

namespace {

ApAlgResult run(const Instance& instance, Variant variant) {
    BuildState state(instance, variant);
    const Time t1 = step1_heavy(state);
    const Time t2 = step2_light(state, t1);
    const auto [t_g, t3] = step3_medium(state, t1, t2);
    step4_lpt(state, t_g, t2, t3);

    Schedule schedule = state.snapshot();
    if (auto report = validate(schedule); !report.ok() || !schedule.covers_all_jobs()) {
        throw std::logic_error("approximation produced an invalid schedule:\n" + report.to_string());
    }
    return {std::move(schedule), state.trace()};
}

}  // namespace

ApAlgResult apalg(const Instance& instance) { return run(instance, Variant::kStrict); }

ApAlgResult apalg_h(const Instance& instance) { return run(instance, Variant::kHeuristic); }

ApAlgResult apalg_s(const Instance& instance) {
    ApAlgResult result = apalg(instance);
    result.schedule = backfill(result.schedule);
    return result;
}

}  // namespace orsched::approx
