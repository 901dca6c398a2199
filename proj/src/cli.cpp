#include "orsched/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "orsched/approx.hpp"
#include "orsched/bench.hpp"
#include "orsched/io.hpp"
#include "orsched/oracle.hpp"
#include "orsched/profile.hpp"
#include "orsched/validate.hpp"
#include "orsched/workload.hpp"

namespace orsched::cli {

namespace {

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string algo;
    std::string input;
    std::string schedule;
    std::string out;
    std::string trace;
    std::string config;
    std::uint64_t seed = 0;
    std::uint64_t budget = oracle::kDefaultNodeBudget;
    std::size_t n = 0;
    int m = 0;
    bool show_trace = false;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text)) throw IoError("cannot write " + path);
}

int cmd_solve(const Options& o, std::ostream& out) {
    if (!bench::is_algorithm(o.algo)) throw UsageError("unknown algorithm '" + o.algo + "'");
    const Instance inst = load_instance(o.input);
    Schedule schedule;
    std::string trace;
    if (o.algo == "apalg" || o.algo == "apalg-s" || o.algo == "apalg-h") {
        auto result = o.algo == "apalg"     ? approx::apalg(inst)
                      : o.algo == "apalg-s" ? approx::apalg_s(inst)
                                            : approx::apalg_h(inst);
        schedule = std::move(result.schedule);
        trace = result.trace.to_key_value();
    } else {
        schedule = bench::solve(o.algo, inst, o.seed);
    }
    std::ostringstream csv;
    write_schedule_csv(csv, schedule);
    if (o.out.empty()) {
        out << csv.str();
    } else {
        write_text(o.out, csv.str());
    }
    out << "cmax=" << makespan(schedule) << "\n";
    if (o.show_trace) out << trace;
    return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.input);
    const Schedule schedule = load_schedule(o.schedule, inst);
    const auto report = validate(schedule);
    out << report.to_string();
    out << "complete=" << (schedule.covers_all_jobs() ? "yes" : "no") << "\n";
    if (report.ok()) out << "cmax=" << makespan(schedule) << "\n";
    return report.ok() ? kOk : kValidationFailed;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    if (o.budget == 0) throw UsageError("--budget must be positive");
    const Instance inst = load_instance(o.input);
    const auto result = oracle::optimal_makespan(inst, o.budget);
    out << "opt=" << result.opt << "\n"
        << "exhausted=" << (result.exhausted ? "yes" : "no") << "\n"
        << "nodes=" << result.nodes_explored << "\n"
        << "lower_bound=" << lower_bound(inst).to_decimal(6) << "\n";
    if (!o.out.empty()) save_schedule(o.out, result.optimal_schedule);
    return result.exhausted ? kOk : kBudgetOrRejection;
}

workload::JobPool pool_from(const std::string& path, std::ostream& out) {
    const auto trace = workload::load_trace(path);
    if (!trace.errors.empty()) out << "skipped_rows=" << trace.errors.size() << "\n";
    return workload::build_pool(trace.records);
}

int cmd_gen(const Options& o, std::ostream& out) {
    if (o.n < 1 || o.m < 1) throw UsageError("--n and --m must be positive");
    const auto pool = pool_from(o.trace, out);
    const Instance inst = workload::sample_instance(pool, o.n, o.m, o.seed);
    std::ostringstream text;
    write_instance(text, inst);
    write_text(o.out, text.str());
    out << "n=" << inst.size() << "\n"
        << "m=" << inst.machines() << "\n"
        << "capacity=" << inst.capacity() << "\n"
        << "lower_bound=" << lower_bound(inst).to_decimal(6) << "\n";
    return kOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
    const auto trace = workload::load_trace(o.trace);
    out << "records=" << trace.records.size() << "\n"
        << "malformed_rows=" << trace.errors.size() << "\n";
    for (const auto& e : trace.errors) out << "# line " << e.line << ": " << e.message << "\n";
    if (trace.records.empty()) return kOk;

    std::vector<std::int64_t> durations;
    std::vector<std::int64_t> memories;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (const auto& r : trace.records) {
        durations.push_back(r.duration);
        memories.push_back(r.memory);
        pairs.emplace_back(r.duration, r.memory);
    }
    for (int q : {25, 50, 75, 99}) {
        out << "duration_p" << q << "=" << workload::percentile(durations, q) << "\n"
            << "memory_p" << q << "=" << workload::percentile(memories, q) << "\n";
    }
    try {
        out << "spearman=" << std::fixed << std::setprecision(5) << workload::spearman(pairs) << "\n";
        out.unsetf(std::ios::floatfield);
    } catch (const std::invalid_argument& e) {
        out << "spearman=undefined\n";
    }
    try {
        out << workload::pool_summary(workload::build_pool(trace.records));
    } catch (const std::invalid_argument& e) {
        out << "# no pool: " << e.what() << "\n";
    }
    return kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
    const auto config = bench::load_bench_config(o.config);
    const auto rows = bench::run_bench(config);
    if (!config.out.empty()) {
        std::ostringstream csv;
        bench::write_csv(csv, rows);
        write_text(config.out.string(), csv.str());
    }
    bench::write_summary(out, bench::summarize(rows));
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Makespan scheduling with one shared renewable resource", "orsched"};
    app.require_subcommand(1);
    Options o;

    std::string algo_help = "algorithm:";
    for (const auto& name : bench::algorithm_names()) algo_help += " " + name;

    auto* solve = app.add_subcommand("solve", "schedule an instance");
    solve->add_option("--algo", o.algo, algo_help)->required();
    solve->add_option("--input", o.input, "instance file")->required();
    solve->add_option("--seed", o.seed, "seed for rand");
    solve->add_option("--out", o.out, "schedule CSV path (default: stdout)");
    solve->add_flag("--trace", o.show_trace, "print the approximation milestones");

    auto* check = app.add_subcommand("validate", "check a schedule against an instance");
    check->add_option("--input", o.input, "instance file")->required();
    check->add_option("--schedule", o.schedule, "schedule CSV")->required();

    auto* exact = app.add_subcommand("oracle", "optimal makespan by branch and bound");
    exact->add_option("--input", o.input, "instance file")->required();
    exact->add_option("--budget", o.budget, "node budget");
    exact->add_option("--out", o.out, "write the best schedule here");

    auto* gen = app.add_subcommand("gen", "sample an instance from a trace");
    gen->add_option("--trace", o.trace, "trace CSV")->required();
    gen->add_option("--n", o.n, "job count")->required();
    gen->add_option("--m", o.m, "machine count")->required();
    gen->add_option("--seed", o.seed, "sampling seed")->required();
    gen->add_option("--out", o.out, "instance file to write")->required();

    auto* stats = app.add_subcommand("stats", "trace statistics");
    stats->add_option("--trace", o.trace, "trace CSV")->required();

    auto* run_bench = app.add_subcommand("bench", "run an experiment matrix");
    run_bench->add_option("--config", o.config, "key=value config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*solve) return cmd_solve(o, out);
        if (*check) return cmd_validate(o, out);
        if (*exact) return cmd_oracle(o, out);
        if (*gen) return cmd_gen(o, out);
        if (*stats) return cmd_stats(o, out);
        if (*run_bench) return cmd_bench(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << "\n";
        return kIoOrFormat;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIoOrFormat;
    } catch (const workload::RejectionError& e) {
        err << "rejected: " << e.what() << "\n";
        return kBudgetOrRejection;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kIoOrFormat;
    }
    return kUsage;
}

}  // namespace orsched::cli
