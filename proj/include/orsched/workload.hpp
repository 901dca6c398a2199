#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orsched/model.hpp"

namespace orsched::workload {

struct TraceRecord {
    std::int64_t duration = 0;  // seconds
    std::int64_t memory = 0;    // bytes

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct RowError {
    std::size_t line = 0;
    std::string message;
};

struct ParsedTrace {
    std::vector<TraceRecord> records;  // file order
    std::vector<RowError> errors;      // malformed rows, skipped
};

/// CSV whose header names at least `duration_s` and `memory_bytes`; other
/// columns are ignored. Throws FormatError if either column is missing.
ParsedTrace parse_trace(std::istream& in);
/// Throws IoError if the file cannot be opened.
ParsedTrace load_trace(const std::filesystem::path& path);

/// Nearest rank: the ceil(q*N/100)-th smallest value, q in [1, 100].
/// Throws std::invalid_argument for empty input or q out of range.
std::int64_t percentile(std::vector<std::int64_t> values, int q);

struct JobPool {
    std::vector<std::pair<Time, Units>> jobs;  // (p, req)
    Units capacity = 1;
    std::size_t dropped_zero_duration = 0;
    std::size_t dropped_outliers = 0;
};

/// Drops zero-duration records, then every record above the 99th percentile of
/// duration or of memory (both taken over the non-zero records); the capacity is
/// the largest surviving memory value. Throws std::invalid_argument if nothing
/// usable remains.
JobPool build_pool(std::span<const TraceRecord> records);

/// Pool with p in [1, 10000] and a skewed requirement mix over capacity 1000
/// (80% in [1, 50], 15% in [50, 400], 5% in [400, 1000]); one job has r = 1.
JobPool synthetic_pool(std::size_t size, std::uint64_t seed);

/// Spearman rank correlation: Pearson correlation of average ranks. Throws
/// std::invalid_argument for fewer than two pairs or a constant coordinate.
double spearman(std::span<const std::pair<std::int64_t, std::int64_t>> pairs);

class RejectionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultRetries = 1000;

/// n jobs drawn uniformly with replacement (index = SplitMix64(seed).next() % size).
/// A draw with max p >= lower bound is rejected and redrawn with seed + 1, at
/// most `retries` times; then RejectionError.
Instance sample_instance(const JobPool& pool, std::size_t n, int m, std::uint64_t seed,
                         int retries = kDefaultRetries);

/// key=value lines: count, capacity, dropped counts, r_p25, r_p50, r_p75.
std::string pool_summary(const JobPool& pool);

}  // namespace orsched::workload
