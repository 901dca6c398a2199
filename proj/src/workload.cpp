#include "orsched/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "orsched/io.hpp"
#include "orsched/profile.hpp"
#include "orsched/ratio.hpp"
#include "orsched/splitmix.hpp"

namespace orsched::workload {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::vector<double> average_ranks(const std::vector<std::int64_t>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
        i = j + 1;
    }
    return rank;
}

}  // namespace

ParsedTrace parse_trace(std::istream& in) {
    std::string line;
    std::size_t number = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++number;
        if (!trim(line).empty()) {
            header = split_csv(trim(line));
            break;
        }
    }
    auto column = [&](const char* name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw FormatError(number, std::string("trace header lacks column '") + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t dur_col = column("duration_s");
    const std::size_t mem_col = column("memory_bytes");

    ParsedTrace out;
    while (std::getline(in, line)) {
        ++number;
        const std::string row = trim(line);
        if (row.empty()) continue;
        const auto cells = split_csv(row);
        if (cells.size() <= std::max(dur_col, mem_col)) {
            out.errors.push_back({number, "expected at least " + std::to_string(std::max(dur_col, mem_col) + 1) +
                                              " columns"});
            continue;
        }
        const auto duration = parse_int(cells[dur_col]);
        const auto memory = parse_int(cells[mem_col]);
        if (!duration || *duration < 0) {
            out.errors.push_back({number, "bad duration_s '" + cells[dur_col] + "'"});
            continue;
        }
        if (!memory || *memory < 0) {
            out.errors.push_back({number, "bad memory_bytes '" + cells[mem_col] + "'"});
            continue;
        }
        out.records.push_back({*duration, *memory});
    }
    if (in.bad()) throw IoError("error while reading trace");
    return out;
}

ParsedTrace load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_trace(in);
}

std::int64_t percentile(std::vector<std::int64_t> values, int q) {
    if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
    if (q < 1 || q > 100) throw std::invalid_argument("percentile rank must lie in [1, 100]");
    const std::size_t n = values.size();
    const std::size_t rank = (static_cast<std::size_t>(q) * n + 99) / 100;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1), values.end());
    return values[rank - 1];
}

JobPool build_pool(std::span<const TraceRecord> records) {
    std::vector<TraceRecord> base;
    JobPool pool;
    for (const TraceRecord& r : records) {
        if (r.duration == 0) {
            ++pool.dropped_zero_duration;
        } else {
            base.push_back(r);
        }
    }
    if (base.empty()) throw std::invalid_argument("trace has no record with a positive duration");

    std::vector<std::int64_t> durations;
    std::vector<std::int64_t> memories;
    for (const TraceRecord& r : base) {
        durations.push_back(r.duration);
        memories.push_back(r.memory);
    }
    const auto dur_cut = percentile(durations, 99);
    const auto mem_cut = percentile(memories, 99);

    Units capacity = 0;
    for (const TraceRecord& r : base) {
        if (r.duration > dur_cut || r.memory > mem_cut) {
            ++pool.dropped_outliers;
            continue;
        }
        pool.jobs.emplace_back(r.duration, r.memory);
        capacity = std::max(capacity, r.memory);
    }
    if (pool.jobs.empty()) throw std::invalid_argument("percentile filter removed every record");
    if (capacity == 0) throw std::invalid_argument("every surviving record has zero memory");
    pool.capacity = capacity;
    return pool;
}

JobPool synthetic_pool(std::size_t size, std::uint64_t seed) {
    if (size == 0) throw std::invalid_argument("synthetic pool needs at least one job");
    constexpr Units kCapacity = 1000;
    SplitMix64 rng(seed);
    JobPool pool;
    pool.capacity = kCapacity;
    pool.jobs.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        const Time p = rng.between(1, 10000);
        const auto bucket = rng.below(100);
        Units req = 0;
        if (bucket < 80) {
            req = rng.between(1, 50);
        } else if (bucket < 95) {
            req = rng.between(50, 400);
        } else {
            req = rng.between(400, kCapacity);
        }
        pool.jobs.emplace_back(p, req);
    }
    pool.jobs.front().second = kCapacity;
    return pool;
}

double spearman(std::span<const std::pair<std::int64_t, std::int64_t>> pairs) {
    if (pairs.size() < 2) throw std::invalid_argument("spearman needs at least two pairs");
    std::vector<std::int64_t> xs;
    std::vector<std::int64_t> ys;
    for (const auto& [x, y] : pairs) {
        xs.push_back(x);
        ys.push_back(y);
    }
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    const double n = static_cast<double>(pairs.size());
    const double mean = (n + 1.0) / 2.0;  // average ranks always sum to n(n+1)/2
    double sxy = 0;
    double sxx = 0;
    double syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) throw std::invalid_argument("spearman is undefined for a constant coordinate");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

Instance sample_instance(const JobPool& pool, std::size_t n, int m, std::uint64_t seed, int retries) {
    if (n == 0 || m < 1) throw std::invalid_argument("sampling needs n >= 1 and m >= 1");
    if (pool.jobs.empty()) throw std::invalid_argument("cannot sample from an empty pool");
    for (int attempt = 0; attempt <= retries; ++attempt) {
        SplitMix64 rng(seed + static_cast<std::uint64_t>(attempt));
        std::vector<Job> jobs;
        jobs.reserve(n);
        Time max_p = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& [p, req] = pool.jobs[static_cast<std::size_t>(rng.next() % pool.jobs.size())];
            jobs.push_back(Job{static_cast<JobId>(i), p, req});
            max_p = std::max(max_p, p);
        }
        Instance inst(m, pool.capacity, std::move(jobs));
        if (Ratio(max_p) < lower_bound(inst)) return inst;
    }
    throw RejectionError("every draw had max p >= lower bound after " + std::to_string(retries) + " retries");
}

std::string pool_summary(const JobPool& pool) {
    std::vector<std::int64_t> reqs;
    for (const auto& job : pool.jobs) reqs.push_back(job.second);
    std::ostringstream os;
    os << "count=" << pool.jobs.size() << "\n"
       << "capacity=" << pool.capacity << "\n"
       << "dropped_zero_duration=" << pool.dropped_zero_duration << "\n"
       << "dropped_outliers=" << pool.dropped_outliers << "\n";
    if (!reqs.empty()) {
        for (int q : {25, 50, 75}) {
            os << "r_p" << q << "=" << Ratio(percentile(reqs, q), pool.capacity).to_decimal(6) << "\n";
        }
    }
    return os.str();
}

}  // namespace orsched::workload
