#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orsched/model.hpp"
#include "orsched/profile.hpp"

/// The four-step approximation algorithm for identical machines sharing one
/// renewable resource, its backfilled variant (ApAlg-S) and its heuristic
/// variant (ApAlg-H).
///
/// Jobs are split into heavy (r > 1/2), medium (1/3 < r <= 1/2) and light
/// (r <= 1/3) with r = req / capacity. Step 1 chains the heavy jobs on machine 0,
/// step 2 packs light jobs beside them while at least 2/3 of the resource stays
/// busy, step 3 list-schedules the medium jobs, and step 4 re-places whatever is
/// left (plus the jobs straddling the end of the busy region) with LPT. All
/// threshold tests are integer cross-multiplications.
namespace orsched::approx {

enum class Variant {
    kStrict,     // the guaranteed algorithm
    kHeuristic,  // strict req order, no 2/3 gate, no early break
};

struct ApAlgTrace {
    Time t1 = 0;
    Time t2 = 0;
    Time t_g = 0;
    Time t3 = 0;
    Time t4 = 0;
    /// Latest completion over scheduled jobs (ignored ones included) when step 3 ends.
    Time step3_max_completion = 0;
    std::vector<JobId> unscheduled_step2;  // lights dropped when t1 == t2
    std::vector<JobId> ignored_step3;      // J(t2) intersected with the lights
    std::vector<JobId> unscheduled_step4;  // J(t_g) plus the reinstated ignored jobs
    /// Sum of the m largest req values over the jobs re-placed in step 4.
    Units step4_pending_top_m = 0;
    std::size_t step4_pending_count = 0;
    /// step4_pending_top_m < capacity.
    bool step4_gate_ok = true;

    /// Flat key=value lines, one per field; sets are reported by size.
    std::string to_key_value() const;
};

/// Partial schedule under construction.
///
/// Ignored jobs keep their recorded placement but contribute neither resource
/// usage nor machine occupancy to any query until they are unscheduled.
/// Queries take instance job indices, not ids.
class BuildState {
public:
    explicit BuildState(Instance instance, Variant variant = Variant::kStrict);

    const Instance& instance() const { return instance_; }
    Variant variant() const { return variant_; }
    ApAlgTrace& trace() { return trace_; }
    const ApAlgTrace& trace() const { return trace_; }

    /// Placed (ignored or not); the algorithm's "scheduled" set.
    bool is_scheduled(std::size_t index) const { return placed_[index].has_value(); }
    bool is_ignored(std::size_t index) const { return ignored_[index]; }
    const std::optional<Assignment>& placement(std::size_t index) const { return placed_[index]; }

    /// Requires the machine to be free over the job's interval.
    void place(std::size_t index, int machine, Time start);
    void unschedule(std::size_t index);
    void ignore(std::size_t index);

    Units usage_at(Time t) const;
    /// Max usage over [from, to); to > from.
    Units max_usage(Time from, Time to) const;
    /// Lowest-index machine with no non-ignored job overlapping [from, to).
    std::optional<int> free_machine(Time from, Time to) const;
    /// Machine the job could start on at t (free machine and enough resource throughout), if any.
    std::optional<int> fitting_machine(std::size_t index, Time t) const;

    /// min{ t' >= t : 3*usage(t') < 2*capacity }.
    Time next_below_two_thirds(Time t) const;
    /// End of the last maximal interval with 3*usage >= 2*capacity, if any.
    std::optional<Time> last_two_thirds_end() const;
    /// Smallest breakpoint strictly after t.
    std::optional<Time> next_event_after(Time t) const;

    /// Non-ignored jobs with start <= t < completion, ascending index.
    std::vector<std::size_t> active_at(Time t) const;
    /// Latest completion over placed jobs; ignored ones optional.
    Time max_completion(bool include_ignored) const;
    std::vector<std::size_t> unscheduled() const;

    /// Current placements as a Schedule.
    Schedule snapshot(bool include_ignored = true) const;

private:
    struct Point {
        Units usage = 0;
        int refs = 0;  // jobs starting or completing here
    };
    using PointMap = std::map<Time, Point>;
    struct Interval {
        Time start = 0;
        Time completion = 0;
    };

    PointMap::iterator touch(Time t);
    void release(PointMap::iterator it);
    void occupy(std::size_t index);
    void vacate(std::size_t index);
    bool two_thirds(Units usage) const { return 3 * usage >= 2 * instance_.capacity(); }

    Instance instance_;
    Variant variant_;
    std::vector<std::optional<Assignment>> placed_;
    std::vector<bool> ignored_;
    PointMap points_;                             // usage on [key, next key); key 0 always present
    std::vector<std::vector<Interval>> machines_;  // sorted by start, non-ignored only
    ApAlgTrace trace_;
};

/// The shared subroutine. Strict variant: candidates in weakly decreasing req
/// order; before each job, advance t_c to the first time >= t_c where less than
/// 2/3 of the resource is used, place the job there if it fits, else stop.
/// Heuristic variant: every candidate is placed at the earliest event time not
/// before the previous placement where it fits. Both return the first time at
/// or after the last t_c (heuristic: last placed start) using less than 2/3.
/// Candidates must be unscheduled jobs of the state's instance.
Time schedule_two_thirds(BuildState& state, std::span<const Job> candidates, Time t_s);

/// Heavy jobs back to back on machine 0 in weakly decreasing req; returns t1.
Time step1_heavy(BuildState& state);

/// Light packing beside the heavy chain; returns t2.
Time step2_light(BuildState& state, Time t1);

struct StepThreeResult {
    Time t_g = 0;
    Time t3 = 0;
};

/// Ignores J(t2) lights, list-schedules the mediums from t2, locates t_g.
StepThreeResult step3_medium(BuildState& state, Time t1, Time t2);

/// Re-places ignored jobs, J(t_g) and all unscheduled jobs with LPT from t3;
/// returns t4. Plain LPT (machine that frees up first, from t3); a job whose
/// LPT slot would overflow the resource, possible only when a kept job runs past
/// t3, takes its earliest feasible slot instead. The strict variant throws std::logic_error if the pending set needs a
/// full resource unit on m machines, which the construction rules out.
Time step4_lpt(BuildState& state, Time t_g, Time t2, Time t3);

struct ApAlgResult {
    Schedule schedule;
    ApAlgTrace trace;
};

ApAlgResult apalg(const Instance& instance);

/// Moves each job, in start order, to the earliest time no later than its
/// current start (0 or another job's completion) where it fits; repeats passes
/// until none moves. Throws std::invalid_argument unless the input is valid and
/// complete.
Schedule backfill(const Schedule& schedule);

/// apalg followed by backfill; the trace is the one from apalg.
ApAlgResult apalg_s(const Instance& instance);

ApAlgResult apalg_h(const Instance& instance);

}  // namespace orsched::approx
