#include <doctest.h>

#include <sstream>

#include "orsched/io.hpp"
#include "orsched/list.hpp"
#include "orsched/profile.hpp"
#include "orsched/ratio.hpp"
#include "orsched/validate.hpp"
#include "support/fuzz.hpp"
#include "support/naive_oracle.hpp"

using namespace orsched;

namespace {

Instance w1() { return Instance::from_pairs(2, 10, {{2, 6}, {2, 6}, {2, 3}}); }

std::vector<Job> jobs_with_reqs(std::initializer_list<Units> reqs) {
    std::vector<Job> out;
    JobId id = 0;
    for (Units r : reqs) out.push_back(Job{id++, 1, r});
    return out;
}

}  // namespace

TEST_SUITE("ratio") {
    TEST_CASE("reduces and compares exactly") {
        CHECK(Ratio(6, 4) == Ratio(3, 2));
        CHECK(Ratio(-2, -4) == Ratio(1, 2));
        CHECK(Ratio(1, -3).denominator() == 3);
        CHECK(Ratio(1, 3) < Ratio(34, 100));
        CHECK(Ratio(2, 3) > Ratio(666666, 1000000));
        CHECK(Ratio(17, 6) - Ratio(1, 6) == Ratio(8, 3));
        CHECK(Ratio(7, 3).ceil() == 3);
        CHECK(Ratio(-7, 3).floor() == -3);
        CHECK_THROWS_AS(Ratio(1, 0), std::invalid_argument);
    }

    TEST_CASE("decimal rendering rounds half to even") {
        CHECK(Ratio(1, 8).to_decimal(2) == "0.12");
        CHECK(Ratio(3, 8).to_decimal(2) == "0.38");
        CHECK(Ratio(4, 3).to_decimal(6) == "1.333333");
        CHECK(Ratio(2).to_decimal(6) == "2.000000");
        CHECK(Ratio(4000001, 2000000).to_decimal(6) == "2.000000");  // 2.0000005
        CHECK(Ratio(4000003, 2000000).to_decimal(6) == "2.000002");  // 2.0000015
        CHECK(Ratio(-1, 8).to_decimal(2) == "-0.12");
        CHECK(Ratio(5, 2).to_string() == "5/2");
    }

    TEST_CASE("overflow is reported, not wrapped") {
        const Ratio big(static_cast<Ratio::Int>(1) << 100, 1);
        CHECK_THROWS_AS(big * big, std::overflow_error);
    }

    TEST_CASE("comparison agrees with cross multiplication on random values") {
        SplitMix64 rng(7);
        for (int i = 0; i < 2000; ++i) {
            const auto a = rng.between(-1000, 1000), b = rng.between(1, 1000);
            const auto c = rng.between(-1000, 1000), d = rng.between(1, 1000);
            CHECK((Ratio(a, b) < Ratio(c, d)) == (a * d < c * b));
            CHECK((Ratio(a, b) == Ratio(c, d)) == (a * d == c * b));
        }
    }
}

TEST_SUITE("classify") {
    TEST_CASE("class boundaries") {
        CHECK(classify(Job{0, 1, 4}, 12) == JobClass::kLight);
        CHECK(classify(Job{0, 1, 6}, 12) == JobClass::kMedium);
        CHECK(classify(Job{0, 1, 7}, 12) == JobClass::kHeavy);
        CHECK(classify(Job{0, 1, 0}, 12) == JobClass::kLight);
        CHECK(classify(Job{0, 1, 5}, 12) == JobClass::kMedium);
        CHECK_THROWS_AS(classify(Job{0, 1, 13}, 12), std::invalid_argument);
    }

    TEST_CASE("exactly one class per job") {
        SplitMix64 rng(11);
        for (int i = 0; i < 5000; ++i) {
            const Units cap = rng.between(1, 500);
            const Units req = rng.between(0, cap);
            const bool light = 3 * req <= cap;
            const bool medium = 3 * req > cap && 2 * req <= cap;
            const bool heavy = 2 * req > cap;
            CHECK(light + medium + heavy == 1);
            const JobClass expected = light ? JobClass::kLight : medium ? JobClass::kMedium : JobClass::kHeavy;
            CHECK(classify(Job{0, 1, req}, cap) == expected);
        }
    }
}

TEST_SUITE("requirements") {
    TEST_CASE("total requirement") {
        CHECK(total_requirement(jobs_with_reqs({6, 3}), 12) == Ratio(3, 4));
        CHECK(total_requirement({}, 12) == Ratio(0));
        CHECK(total_requirement(jobs_with_reqs({12}), 12) == Ratio(1));
    }

    TEST_CASE("top m requirement") {
        CHECK(top_m_requirement(jobs_with_reqs({6, 5, 4}), 2, 12) == Ratio(11, 12));
        CHECK(top_m_requirement(jobs_with_reqs({6, 5, 4}), 5, 12) == Ratio(15, 12));
        CHECK(top_m_requirement({}, 3, 12) == Ratio(0));
    }

    TEST_CASE("top m is monotone in m and subadditive under union") {
        SplitMix64 rng(13);
        for (int i = 0; i < 1000; ++i) {
            const Units cap = rng.between(1, 100);
            std::vector<Job> a, b;
            const auto na = rng.between(0, 10), nb = rng.between(0, 10);
            for (int k = 0; k < na; ++k) a.push_back(Job{k, 1, rng.between(0, cap)});
            for (int k = 0; k < nb; ++k) b.push_back(Job{100 + k, 1, rng.between(0, cap)});
            const int m = static_cast<int>(rng.between(1, 8));
            std::vector<Job> both = a;
            both.insert(both.end(), b.begin(), b.end());
            CHECK(top_m_requirement(both, m, cap) <= top_m_requirement(both, m + 1, cap));
            CHECK(top_m_requirement(both, m, cap) <= top_m_requirement(a, m, cap) + top_m_requirement(b, m, cap));
            // Brute force: best subset of size <= m.
            if (both.size() <= 12) {
                Units best = 0;
                for (std::uint32_t mask = 0; mask < (1u << both.size()); ++mask) {
                    if (std::popcount(mask) > m) continue;
                    Units s = 0;
                    for (std::size_t k = 0; k < both.size(); ++k) {
                        if (mask >> k & 1u) s += both[k].req;
                    }
                    best = std::max(best, s);
                }
                CHECK(top_m_requirement(both, m, cap) == Ratio(best, cap));
            }
        }
    }
}

TEST_SUITE("profile") {
    TEST_CASE("single job") {
        Instance inst = Instance::from_pairs(1, 10, {{3, 5}});
        Schedule s(inst);
        s.add(0, 0, 2);
        const auto prof = resource_profile(s);
        CHECK(prof.usage_at(0) == 0);
        CHECK(prof.usage_at(1) == 0);
        CHECK(prof.usage_at(2) == 5);
        CHECK(prof.usage_at(4) == 5);
        CHECK(prof.usage_at(5) == 0);
        CHECK(prof.usage_at(100) == 0);
        CHECK(prof.breakpoints().size() == 2);
    }

    TEST_CASE("overlap arithmetic") {
        Instance inst = Instance::from_pairs(2, 10, {{2, 6}, {2, 3}});
        Schedule s(inst);
        s.add(0, 0, 0);
        s.add(1, 1, 1);
        const auto prof = resource_profile(s);
        CHECK(prof.usage_at(0) == 6);
        CHECK(prof.usage_at(1) == 9);
        CHECK(prof.usage_at(2) == 3);
        CHECK(prof.usage_at(3) == 0);
        CHECK(prof.peak() == 9);
    }

    TEST_CASE("empty schedule and unknown jobs") {
        Schedule empty(w1());
        CHECK(resource_profile(empty).usage_at(5) == 0);
        CHECK(resource_profile(empty).breakpoints().empty());
        Schedule bad(w1());
        bad.add(Assignment{42, 0, 0, 1});
        CHECK_THROWS_AS(resource_profile(bad), std::invalid_argument);
    }

    TEST_CASE("profile agrees with active job sums at breakpoints and midpoints") {
        SplitMix64 rng(17);
        for (int i = 0; i < 300; ++i) {
            testing::Shape shape;
            shape.n_max = 15;
            const Instance inst = testing::random_instance(rng, shape);
            const Schedule s = list::list_schedule(inst, list::OrderPolicy::rand(rng.next()));
            const auto prof = resource_profile(s);
            for (const auto& bp : prof.breakpoints()) {
                CHECK(bp.usage == testing::usage_at(s, bp.time));
                Units from_active = 0;
                for (JobId id : active_jobs(s, bp.time)) from_active += inst.find(id)->req;
                CHECK(bp.usage == from_active);
            }
            // Midpoints: scale time by 2 so that midpoints are integers.
            std::vector<Job> doubled;
            for (const Job& j : inst.jobs()) doubled.push_back(Job{j.id, 2 * j.p, j.req});
            Schedule s2(inst.with_jobs(doubled));
            for (const Assignment& a : s.assignments()) s2.add(a.job_id, a.machine, 2 * a.start);
            const auto prof2 = resource_profile(s2);
            const auto bps = prof2.breakpoints();
            for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
                const Time mid = (bps[k].time + bps[k + 1].time) / 2;
                CHECK(prof2.usage_at(mid) == testing::usage_at(s2, mid));
            }
        }
    }
}

TEST_SUITE("queries") {
    TEST_CASE("active jobs are half open") {
        Instance inst = Instance::from_pairs(1, 10, {{3, 1}});
        Schedule s(inst);
        s.add(0, 0, 2);
        CHECK(active_jobs(s, 2) == std::vector<JobId>{0});
        CHECK(active_jobs(s, 5).empty());
        CHECK(active_jobs(Schedule(inst), 3).empty());
    }

    TEST_CASE("makespan") {
        Instance inst = Instance::from_pairs(2, 10, {{4, 1}, {5, 1}});
        Schedule s(inst);
        s.add(0, 0, 0);
        s.add(1, 1, 1);
        CHECK(makespan(s) == 6);
        CHECK(makespan(Schedule(inst)) == 0);
        Instance one = Instance::from_pairs(1, 10, {{5, 1}});
        Schedule s1(one);
        s1.add(0, 0, 0);
        CHECK(makespan(s1) == 5);
    }

    TEST_CASE("lower bound") {
        CHECK(lower_bound(w1()) == Ratio(3));
        CHECK(lower_bound(Instance::from_pairs(3, 10, {{7, 0}})) == Ratio(7, 3));
        CHECK(lower_bound(Instance()) == Ratio(0));
        // Resource term dominates.
        CHECK(lower_bound(Instance::from_pairs(4, 10, {{10, 9}, {10, 9}})) == Ratio(18));
    }

    TEST_CASE("lower bound never exceeds a feasible makespan") {
        SplitMix64 rng(19);
        for (int i = 0; i < 500; ++i) {
            testing::Shape shape;
            shape.n_max = 30;
            const Instance inst = testing::random_instance(rng, shape);
            for (auto policy : {list::OrderPolicy::lpt(), list::OrderPolicy::hrr(), list::OrderPolicy::rand(i)}) {
                const Schedule s = list::list_schedule(inst, policy);
                REQUIRE(validate(s).ok());
                CHECK(Ratio(makespan(s)) >= lower_bound(inst));
            }
        }
    }
}

TEST_SUITE("instance") {
    TEST_CASE("construction checks") {
        CHECK_THROWS_AS(Instance(0, 10, {}), std::invalid_argument);
        CHECK_THROWS_AS(Instance(1, 0, {}), std::invalid_argument);
        CHECK_THROWS_AS(Instance::from_pairs(1, 10, {{0, 1}}), std::invalid_argument);
        CHECK_THROWS_AS(Instance::from_pairs(1, 10, {{1, 11}}), std::invalid_argument);
        CHECK_THROWS_AS(Instance::from_pairs(1, 10, {{1, -1}}), std::invalid_argument);
        CHECK_THROWS_AS(Instance(1, 10, {Job{3, 1, 1}, Job{3, 2, 1}}), std::invalid_argument);
        CHECK_THROWS_AS(Instance(1, 10, {Job{-1, 1, 1}}), std::invalid_argument);
        const Instance inst(1, 10, {Job{5, 1, 1}, Job{2, 2, 1}});
        CHECK(inst.index_of(2) == 1u);
        CHECK_FALSE(inst.index_of(3).has_value());
    }
}

TEST_SUITE("validate") {
    TEST_CASE("clean schedule") {
        Schedule s(w1());
        s.add(0, 0, 0);
        s.add(1, 0, 2);
        s.add(2, 1, 0);
        CHECK(validate(s).ok());
        CHECK(s.covers_all_jobs());
    }

    TEST_CASE("machine overlap") {
        Schedule s(w1());
        s.add(0, 0, 0);
        s.add(2, 0, 1);
        const auto r = validate(s);
        CHECK(r.has(ViolationKind::kMachineOverlap));
        CHECK(r.violations.front().time == 1);
    }

    TEST_CASE("resource overflow") {
        Instance inst = Instance::from_pairs(2, 12, {{2, 7}, {2, 6}});
        Schedule s(inst);
        s.add(0, 0, 0);
        s.add(1, 1, 1);
        const auto r = validate(s);
        REQUIRE(r.has(ViolationKind::kResourceOverflow));
        CHECK(r.violations.size() == 1);
        CHECK(r.violations.front().time == 1);
        CHECK(std::string(to_string(ViolationKind::kResourceOverflow)) == "RESOURCE_OVERFLOW");
    }

    TEST_CASE("machine count, unknown and duplicate jobs") {
        Schedule s(w1());
        s.add(0, 2, 0);
        CHECK(validate(s).has(ViolationKind::kMachineCountExceeded));

        Instance zero = Instance::from_pairs(1, 10, {{2, 0}, {2, 0}});
        Schedule stacked(zero);
        stacked.add(Assignment{0, 0, 0, 2});
        stacked.add(Assignment{1, 0, 0, 2});
        CHECK(validate(stacked).has(ViolationKind::kMachineCountExceeded));

        Schedule unknown(w1());
        unknown.add(Assignment{9, 0, 0, 1});
        CHECK(validate(unknown).has(ViolationKind::kUnknownJob));

        Schedule dup(w1());
        dup.add(2, 0, 0);
        dup.add(2, 1, 5);
        CHECK(validate(dup).has(ViolationKind::kDuplicateJob));
        CHECK_FALSE(dup.covers_all_jobs());
    }

    TEST_CASE("injected violations are always flagged with the right kind") {
        SplitMix64 rng(23);
        int injected = 0;
        for (int i = 0; i < 600; ++i) {
            testing::Shape shape;
            shape.n_min = 2;
            shape.n_max = 12;
            const Instance inst = testing::random_instance(rng, shape);
            const Schedule clean = list::list_schedule(inst, list::OrderPolicy::rand(rng.next()));
            REQUIRE(validate(clean).ok());
            std::vector<Assignment> as(clean.assignments().begin(), clean.assignments().end());
            const auto kind = rng.below(5);
            const auto victim = static_cast<std::size_t>(rng.below(as.size()));
            ViolationKind expected{};
            switch (kind) {
                case 0: {  // put two jobs on the same machine at the same start
                    const auto other = (victim + 1) % as.size();
                    as[other].machine = as[victim].machine;
                    as[other].completion = as[victim].start + (as[other].completion - as[other].start);
                    as[other].start = as[victim].start;
                    expected = ViolationKind::kMachineOverlap;
                    break;
                }
                case 1: {  // add a phantom full-capacity copy on top of a running job
                    const Job* job = inst.find(as[victim].job_id);
                    Instance bigger = inst.with_jobs([&] {
                        std::vector<Job> js(inst.jobs().begin(), inst.jobs().end());
                        js.push_back(Job{1000, job->p, inst.capacity()});
                        return js;
                    }());
                    Schedule s(bigger);
                    for (const Assignment& a : as) s.add(a);
                    s.add(Assignment{1000, as[victim].machine == 0 ? 1 : 0, as[victim].start,
                                     as[victim].start + job->p});
                    if (job->req == 0) continue;  // no overflow in this draw
                    CHECK(validate(s).has(ViolationKind::kResourceOverflow));
                    ++injected;
                    continue;
                }
                case 2:
                    as[victim].machine = inst.machines();
                    expected = ViolationKind::kMachineCountExceeded;
                    break;
                case 3:
                    as[victim].job_id = 5000;
                    expected = ViolationKind::kUnknownJob;
                    break;
                default:
                    as.push_back(as[victim]);
                    as.back().start += 1000;
                    as.back().completion += 1000;
                    expected = ViolationKind::kDuplicateJob;
                    break;
            }
            Schedule broken(inst);
            for (const Assignment& a : as) broken.add(a);
            CHECK(validate(broken).has(expected));
            ++injected;
        }
        CHECK(injected > 400);
    }
}

TEST_SUITE("io") {
    TEST_CASE("instance text round trip with comments") {
        std::istringstream in("# header comment\nm 2 R 10\n\n3\n2 6\n# inline\n2 6\n2 3\n");
        const Instance inst = read_instance(in);
        CHECK(inst.machines() == 2);
        CHECK(inst.capacity() == 10);
        REQUIRE(inst.size() == 3);
        CHECK(inst.job(2) == Job{2, 2, 3});
        std::ostringstream out;
        write_instance(out, inst);
        std::istringstream again(out.str());
        const Instance back = read_instance(again);
        CHECK(std::equal(back.jobs().begin(), back.jobs().end(), inst.jobs().begin(), inst.jobs().end()));
    }

    TEST_CASE("format errors carry line numbers") {
        auto line_of = [](const std::string& text) -> std::size_t {
            std::istringstream in(text);
            try {
                read_instance(in);
            } catch (const FormatError& e) {
                return e.line();
            }
            return 0;
        };
        CHECK(line_of("m 2 R 10\n2\n1 1\nx 1\n") == 4);
        CHECK(line_of("m 2 Q 10\n0\n") == 1);
        CHECK(line_of("m 2 R 10\n1\n0 1\n") == 3);
        CHECK(line_of("m 2 R 10\n1\n1 11\n") == 3);
        CHECK(line_of("m 2 R 10\n1\n1 1\n1 1\n") == 4);
        CHECK(line_of("m 2 R 10\n2\n1 1\n") == 3);
    }

    TEST_CASE("schedule CSV round trip") {
        Schedule s(w1());
        s.add(2, 1, 0);
        s.add(0, 0, 0);
        s.add(1, 0, 2);
        std::ostringstream out;
        write_schedule_csv(out, s);
        CHECK(out.str() == "job_id,machine,start,completion\n0,0,0,2\n1,0,2,4\n2,1,0,2\n");
        std::istringstream in(out.str());
        const Schedule back = read_schedule_csv(in, w1());
        CHECK(validate(back).ok());
        CHECK(back.covers_all_jobs());
        CHECK(makespan(back) == 4);
    }

    TEST_CASE("schedule CSV rejects bad rows") {
        std::istringstream header("job,machine,start,completion\n");
        CHECK_THROWS_AS(read_schedule_csv(header, w1()), FormatError);
        std::istringstream wrong_c("job_id,machine,start,completion\n0,0,0,3\n");
        CHECK_THROWS_AS(read_schedule_csv(wrong_c, w1()), FormatError);
        std::istringstream negative("job_id,machine,start,completion\n0,0,-2,0\n");
        CHECK_THROWS_AS(read_schedule_csv(negative, w1()), FormatError);
    }
}
