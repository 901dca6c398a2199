#include <doctest.h>

#include <numeric>
#include <set>

#include "orsched/list.hpp"
#include "orsched/oracle.hpp"
#include "orsched/profile.hpp"
#include "orsched/validate.hpp"
#include "support/fuzz.hpp"

using namespace orsched;
using namespace orsched::list;

namespace {

bool same_assignments(const Schedule& a, const Schedule& b) {
    const Schedule x = a.sorted();
    const Schedule y = b.sorted();
    return std::equal(x.assignments().begin(), x.assignments().end(), y.assignments().begin(),
                      y.assignments().end());
}

// Reference SplitMix64 written out independently of the library header.
std::uint64_t ref_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// After all starts at each event, either every machine is busy or no remaining
// job of the list fits; otherwise the scheduler skipped a startable job.
void check_greedy(const Instance& inst, const std::vector<JobId>& order, const Schedule& s) {
    std::set<Time> events{0};
    for (const Assignment& a : s.assignments()) events.insert(a.completion);
    for (Time t : events) {
        Units usage = 0;
        int count = 0;
        for (const Assignment& a : s.assignments()) {
            if (a.active_at(t)) {
                usage += inst.find(a.job_id)->req;
                ++count;
            }
        }
        if (count >= inst.machines()) continue;
        for (JobId id : order) {
            if (s.find(id)->start > t) CHECK_MESSAGE(inst.find(id)->req > inst.capacity() - usage, "job ", id, " fits at ", t);
        }
    }
    // Starts happen only at events.
    for (const Assignment& a : s.assignments()) CHECK(events.count(a.start) == 1);
}

}  // namespace

TEST_SUITE("order") {
    TEST_CASE("policies") {
        const Instance by_p = Instance::from_pairs(2, 10, {{3, 0}, {2, 0}, {2, 0}});
        CHECK(order_jobs(by_p, OrderPolicy::lpt()) == std::vector<JobId>{0, 1, 2});
        const Instance by_req = Instance::from_pairs(2, 10, {{1, 4}, {1, 6}, {1, 5}});
        CHECK(order_jobs(by_req, OrderPolicy::hrr()) == std::vector<JobId>{1, 2, 0});
        CHECK(order_jobs(by_req, OrderPolicy::lrr()) == std::vector<JobId>{0, 2, 1});
        const Instance ties = Instance::from_pairs(2, 10, {{1, 5}, {2, 5}, {1, 5}});
        CHECK(order_jobs(ties, OrderPolicy::hrr()) == std::vector<JobId>{0, 1, 2});
        CHECK(order_jobs(ties, OrderPolicy::lpt()) == std::vector<JobId>{1, 0, 2});
    }

    TEST_CASE("random order is the reference Fisher-Yates shuffle") {
        for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xdeadbeefULL}) {
            const Instance inst = Instance::from_pairs(3, 10, std::vector<std::pair<Time, Units>>(17, {1, 1}));
            std::vector<JobId> expected(17);
            std::iota(expected.begin(), expected.end(), 0);
            std::uint64_t state = seed;
            for (std::size_t i = expected.size() - 1; i > 0; --i) {
                std::swap(expected[i], expected[ref_next(state) % (i + 1)]);
            }
            CHECK(order_jobs(inst, OrderPolicy::rand(seed)) == expected);
        }
    }

    TEST_CASE("reference generator matches the published first output") {
        std::uint64_t state = 1234567;
        CHECK(ref_next(state) == 6457827717110365317ULL);
        CHECK(SplitMix64(1234567).next() == 6457827717110365317ULL);
    }
}

TEST_SUITE("list schedule") {
    TEST_CASE("classic LPT trace") {
        const Instance inst = Instance::from_pairs(2, 10, {{3, 0}, {2, 0}, {2, 0}});
        const Schedule s = list_schedule(inst, OrderPolicy::lpt());
        CHECK(makespan(s) == 4);
        CHECK(*s.find(0) == Assignment{0, 0, 0, 3});
        CHECK(*s.find(1) == Assignment{1, 1, 0, 2});
        CHECK(*s.find(2) == Assignment{2, 1, 2, 4});
    }

    TEST_CASE("HRR skips a blocked job") {
        const Instance inst = Instance::from_pairs(2, 10, {{1, 6}, {1, 5}, {1, 4}});
        for (ScanMode mode : {ScanMode::kLinear, ScanMode::kIndexed}) {
            const Schedule s = list_schedule(inst, OrderPolicy::hrr(), mode);
            CHECK(s.find(0)->start == 0);
            CHECK(s.find(2)->start == 0);
            CHECK(s.find(1)->start == 1);
            CHECK(makespan(s) == 2);
        }
    }

    TEST_CASE("empty instance") {
        CHECK(list_schedule(Instance(), OrderPolicy::lpt()).empty());
        CHECK(makespan(list_schedule(Instance(), OrderPolicy::rand(3))) == 0);
    }

    TEST_CASE("indexed scan needs a requirement order") {
        CHECK_THROWS_AS(list_schedule(Instance(), OrderPolicy::lpt(), ScanMode::kIndexed), std::invalid_argument);
    }

    TEST_CASE("explicit order") {
        const Instance inst = Instance::from_pairs(1, 10, {{2, 1}, {3, 1}});
        const Schedule s = list_schedule_order(inst, {1, 0});
        CHECK(s.find(1)->start == 0);
        CHECK(s.find(0)->start == 3);
        CHECK_THROWS_AS(list_schedule_order(inst, {1, 1}), std::invalid_argument);
    }

    TEST_CASE("feasible, greedy, and identical across scan modes") {
        SplitMix64 rng(31);
        for (int i = 0; i < 500; ++i) {
            testing::Shape shape;
            shape.n_max = 40;
            shape.m_min = 1;
            shape.m_max = 6;
            shape.capacity = rng.between(1, 30);
            shape.req_max = shape.capacity;
            const Instance inst = testing::random_instance(rng, shape);
            const std::uint64_t seed = rng.next();
            for (OrderPolicy policy : {OrderPolicy::lpt(), OrderPolicy::hrr(), OrderPolicy::lrr(), OrderPolicy::rand(seed)}) {
                const Schedule s = list_schedule(inst, policy);
                REQUIRE(validate(s).ok());
                CHECK(s.covers_all_jobs());
                check_greedy(inst, order_jobs(inst, policy), s);
                CHECK(same_assignments(s, list_schedule(inst, policy, ScanMode::kLinear)));
                if (policy.kind == Policy::kHrr || policy.kind == Policy::kLrr) {
                    CHECK(same_assignments(s, list_schedule(inst, policy, ScanMode::kIndexed)));
                }
            }
            CHECK(same_assignments(list_schedule(inst, OrderPolicy::rand(seed)),
                                   list_schedule(inst, OrderPolicy::rand(seed))));
        }
    }
}

TEST_SUITE("list bounds") {
    TEST_CASE("LPT without resource demand stays within 4/3 - 1/(3m)") {
        SplitMix64 rng(37);
        for (int i = 0; i < 300; ++i) {
            testing::Shape shape;
            shape.n_min = 1;
            shape.req_max = 0;
            const Instance inst = testing::random_instance(rng, shape);
            const auto opt = oracle::optimal_makespan(inst);
            REQUIRE(opt.exhausted);
            const int m = inst.machines();
            CHECK(oracle::ratio(inst, makespan(list_schedule(inst, OrderPolicy::lpt())), opt) <=
                  Ratio(4, 3) - Ratio(1, 3 * m));
        }
    }

    TEST_CASE("any list stays within 3 - 3/m") {
        SplitMix64 rng(41);
        for (int i = 0; i < 300; ++i) {
            testing::Shape shape;
            shape.n_min = 1;
            const Instance inst = testing::random_instance(rng, shape);
            const auto opt = oracle::optimal_makespan(inst);
            REQUIRE(opt.exhausted);
            const int m = inst.machines();
            for (OrderPolicy policy : {OrderPolicy::lpt(), OrderPolicy::hrr(), OrderPolicy::lrr(), OrderPolicy::rand(i)}) {
                CHECK(oracle::ratio(inst, makespan(list_schedule(inst, policy)), opt) <= Ratio(3) - Ratio(3, m));
            }
        }
    }
}
