#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "orsched/model.hpp"
#include "orsched/ratio.hpp"
#include "orsched/workload.hpp"

namespace orsched::bench {

/// Names accepted by solve(): apalg, apalg-s, apalg-h, lpt, hrr, lrr, rand.
const std::vector<std::string>& algorithm_names();
bool is_algorithm(const std::string& name);

/// Runs one algorithm; `seed` only matters for rand. Throws std::invalid_argument
/// for an unknown name.
Schedule solve(const std::string& algorithm, const Instance& instance, std::uint64_t seed);

struct BenchConfig {
    std::filesystem::path trace;     // trace CSV to build the pool from
    std::filesystem::path instance;  // alternatively, one fixed instance for every cell
    std::vector<std::size_t> ns;
    std::vector<int> ms;
    int reps = 30;
    std::uint64_t seed = 0;
    std::vector<std::string> algos;
    std::filesystem::path out;  // empty: no file
};

/// Flat key=value lines; lists are comma separated; '#' starts a comment line.
/// Keys: trace, instance, ns, ms, reps, seed, algos, out. Exactly one of trace
/// and instance is required; ns and ms are required with trace. Relative paths
/// resolve against `base_dir`. Throws FormatError.
BenchConfig parse_bench_config(std::istream& in, const std::filesystem::path& base_dir = {});
BenchConfig load_bench_config(const std::filesystem::path& path);

/// Per-instance seed: base seed mixed with n, m and rep through SplitMix64.
std::uint64_t instance_seed(std::uint64_t base, std::size_t n, int m, int rep);

struct BenchRow {
    std::size_t instance_id = 0;
    std::size_t n = 0;
    int m = 0;
    std::uint64_t seed = 0;
    std::string algorithm;      // "skipped:<reason>" for an instance that could not be drawn
    std::optional<Time> cmax;   // empty on skipped rows
    Ratio lower_bound;
    Ratio normalized;           // cmax / lower bound
    double runtime_ms = 0;

    bool skipped() const { return !cmax.has_value(); }
};

inline constexpr const char* kCsvHeader =
    "instance_id,n,m,seed,algorithm,cmax,lower_bound,normalized_cmax,runtime_ms";

/// Cells run in (n, m, rep, algorithm) order. Every schedule is validated;
/// an invalid one throws std::logic_error.
std::vector<BenchRow> run_bench(const BenchConfig& config);
/// Same, over an explicit pool instead of config.trace.
std::vector<BenchRow> run_bench(const BenchConfig& config, const workload::JobPool& pool);

std::string csv_line(const BenchRow& row);
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

struct SummaryRow {
    std::size_t n = 0;
    int m = 0;
    std::string algorithm;
    std::size_t count = 0;
    Ratio min;
    Ratio median;
    Ratio max;
    double median_runtime_ms = 0;
};

/// Per (n, m, algorithm), ordered by first appearance; skipped rows are left
/// out. Medians of an even count average the two central values.
std::vector<SummaryRow> summarize(const std::vector<BenchRow>& rows);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& summary, bool with_runtime = true);

}  // namespace orsched::bench
