#include "orsched/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <tuple>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "orsched/approx.hpp"
#include "orsched/io.hpp"
#include "orsched/list.hpp"
#include "orsched/profile.hpp"
#include "orsched/splitmix.hpp"
#include "orsched/validate.hpp"

namespace orsched::bench {

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::int64_t need_int(const std::string& text, std::size_t line, const std::string& key, std::int64_t min) {
    auto v = parse_int(text);
    if (!v || *v < min) {
        throw FormatError(line, "'" + key + "' needs integers >= " + std::to_string(min) + ", got '" + text + "'");
    }
    return *v;
}

std::string format_ms(double ms) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << ms;
    return os.str();
}

Ratio median_of(std::vector<Ratio> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return v[mid];
    return (v[mid - 1] + v[mid]) / Ratio(2);
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return v[mid];
    return (v[mid - 1] + v[mid]) / 2.0;
}

void run_cell(std::vector<BenchRow>& rows, const BenchConfig& config, const Instance& inst, BenchRow base) {
    const Ratio lb = lower_bound(inst);
    for (const std::string& algo : config.algos) {
        const auto begin = std::chrono::steady_clock::now();
        Schedule schedule = solve(algo, inst, base.seed);
        const auto end = std::chrono::steady_clock::now();

        if (auto report = validate(schedule); !report.ok() || !schedule.covers_all_jobs()) {
            throw std::logic_error(algo + " produced an invalid schedule on instance " +
                                   std::to_string(base.instance_id) + ":\n" + report.to_string());
        }
        BenchRow row = base;
        row.algorithm = algo;
        row.cmax = makespan(schedule);
        row.lower_bound = lb;
        row.normalized = lb.is_zero() ? Ratio(1) : Ratio(*row.cmax) / lb;
        row.runtime_ms = std::chrono::duration<double, std::milli>(end - begin).count();
        rows.push_back(std::move(row));
    }
}

}  // namespace

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names{"apalg", "apalg-s", "apalg-h", "lpt", "hrr", "lrr", "rand"};
    return names;
}

bool is_algorithm(const std::string& name) {
    const auto& names = algorithm_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Schedule solve(const std::string& algorithm, const Instance& instance, std::uint64_t seed) {
    if (algorithm == "apalg") return approx::apalg(instance).schedule;
    if (algorithm == "apalg-s") return approx::apalg_s(instance).schedule;
    if (algorithm == "apalg-h") return approx::apalg_h(instance).schedule;
    if (algorithm == "lpt") return list::list_schedule(instance, list::OrderPolicy::lpt());
    if (algorithm == "hrr") return list::list_schedule(instance, list::OrderPolicy::hrr());
    if (algorithm == "lrr") return list::list_schedule(instance, list::OrderPolicy::lrr());
    if (algorithm == "rand") return list::list_schedule(instance, list::OrderPolicy::rand(seed));
    throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
}

BenchConfig parse_bench_config(std::istream& in, const std::filesystem::path& base_dir) {
    BenchConfig config;
    std::map<std::string, bool> seen;
    std::string raw;
    std::size_t number = 0;
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };
    while (std::getline(in, raw)) {
        ++number;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError(number, "expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (seen[key]) throw FormatError(number, "duplicate key '" + key + "'");
        seen[key] = true;

        if (key == "trace") {
            config.trace = resolve(value);
        } else if (key == "instance") {
            config.instance = resolve(value);
        } else if (key == "out") {
            config.out = resolve(value);
        } else if (key == "ns") {
            for (const auto& item : split_list(value)) {
                config.ns.push_back(static_cast<std::size_t>(need_int(item, number, key, 1)));
            }
        } else if (key == "ms") {
            for (const auto& item : split_list(value)) {
                const auto m = need_int(item, number, key, 1);
                if (m > std::numeric_limits<int>::max()) throw FormatError(number, "machine count too large");
                config.ms.push_back(static_cast<int>(m));
            }
        } else if (key == "reps") {
            const auto reps = need_int(value, number, key, 1);
            if (reps > std::numeric_limits<int>::max()) throw FormatError(number, "reps too large");
            config.reps = static_cast<int>(reps);
        } else if (key == "seed") {
            auto seed = parse_uint(value);
            if (!seed) throw FormatError(number, "seed must be an unsigned 64-bit integer");
            config.seed = *seed;
        } else if (key == "algos") {
            for (const auto& item : split_list(value)) {
                if (!is_algorithm(item)) throw FormatError(number, "unknown algorithm '" + item + "'");
                config.algos.push_back(item);
            }
        } else {
            throw FormatError(number, "unknown key '" + key + "'");
        }
    }
    if (config.trace.empty() == config.instance.empty()) {
        throw FormatError(0, "config needs exactly one of 'trace' and 'instance'");
    }
    if (!config.trace.empty() && (config.ns.empty() || config.ms.empty())) {
        throw FormatError(0, "config with a trace needs non-empty 'ns' and 'ms'");
    }
    if (config.algos.empty()) throw FormatError(0, "config needs a non-empty 'algos' list");
    return config;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_bench_config(in, path.parent_path());
}

std::uint64_t instance_seed(std::uint64_t base, std::size_t n, int m, int rep) {
    std::uint64_t s = splitmix64_mix(base);
    s = splitmix64_mix(s ^ static_cast<std::uint64_t>(n));
    s = splitmix64_mix(s ^ static_cast<std::uint64_t>(m));
    return splitmix64_mix(s ^ static_cast<std::uint64_t>(rep));
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    if (!config.instance.empty()) {
        const Instance inst = load_instance(config.instance);
        std::vector<BenchRow> rows;
        for (int rep = 0; rep < config.reps; ++rep) {
            BenchRow base;
            base.instance_id = static_cast<std::size_t>(rep);
            base.n = inst.size();
            base.m = inst.machines();
            base.seed = instance_seed(config.seed, inst.size(), inst.machines(), rep);
            run_cell(rows, config, inst, base);
        }
        return rows;
    }
    const auto trace = workload::load_trace(config.trace);
    return run_bench(config, workload::build_pool(trace.records));
}

std::vector<BenchRow> run_bench(const BenchConfig& config, const workload::JobPool& pool) {
    std::vector<BenchRow> rows;
    std::size_t next_id = 0;
    for (std::size_t n : config.ns) {
        for (int m : config.ms) {
            for (int rep = 0; rep < config.reps; ++rep) {
                BenchRow base;
                base.instance_id = next_id++;
                base.n = n;
                base.m = m;
                base.seed = instance_seed(config.seed, n, m, rep);
                std::optional<Instance> inst;
                try {
                    inst = workload::sample_instance(pool, n, m, base.seed);
                } catch (const workload::RejectionError&) {
                    base.algorithm = "skipped:rejection";
                    rows.push_back(base);
                    continue;
                }
                run_cell(rows, config, *inst, base);
            }
        }
    }
    return rows;
}

std::string csv_line(const BenchRow& row) {
    std::ostringstream os;
    os << row.instance_id << "," << row.n << "," << row.m << "," << row.seed << "," << row.algorithm << ",";
    if (row.skipped()) {
        os << ",,,";
    } else {
        os << *row.cmax << "," << row.lower_bound.to_decimal(6) << "," << row.normalized.to_decimal(6) << ","
           << format_ms(row.runtime_ms);
    }
    return os.str();
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << kCsvHeader << "\n";
    for (const BenchRow& row : rows) out << csv_line(row) << "\n";
}

std::vector<SummaryRow> summarize(const std::vector<BenchRow>& rows) {
    struct Group {
        std::vector<Ratio> values;
        std::vector<double> runtimes;
    };
    std::vector<std::tuple<std::size_t, int, std::string>> keys;
    std::map<std::tuple<std::size_t, int, std::string>, Group> groups;
    for (const BenchRow& row : rows) {
        if (row.skipped()) continue;
        auto key = std::make_tuple(row.n, row.m, row.algorithm);
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) keys.push_back(key);
        it->second.values.push_back(row.normalized);
        it->second.runtimes.push_back(row.runtime_ms);
    }
    std::vector<SummaryRow> out;
    for (const auto& key : keys) {
        const Group& g = groups.at(key);
        SummaryRow s;
        std::tie(s.n, s.m, s.algorithm) = key;
        s.count = g.values.size();
        s.min = *std::min_element(g.values.begin(), g.values.end());
        s.max = *std::max_element(g.values.begin(), g.values.end());
        s.median = median_of(g.values);
        s.median_runtime_ms = median_of(g.runtimes);
        out.push_back(std::move(s));
    }
    return out;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& summary, bool with_runtime) {
    out << "n,m,algorithm,count,min_normalized,median_normalized,max_normalized";
    if (with_runtime) out << ",median_runtime_ms";
    out << "\n";
    for (const SummaryRow& s : summary) {
        out << s.n << "," << s.m << "," << s.algorithm << "," << s.count << "," << s.min.to_decimal(6) << ","
            << s.median.to_decimal(6) << "," << s.max.to_decimal(6);
        if (with_runtime) out << "," << format_ms(s.median_runtime_ms);
        out << "\n";
    }
}

}  // namespace orsched::bench
