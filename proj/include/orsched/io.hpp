#pragma once

#include <filesystem>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "orsched/model.hpp"

namespace orsched {

// Instance text format:
//
//   m <machines> R <capacity>
//   <n>
//   <p> <req>        (n lines)
//
// Lines starting with '#' are comments anywhere; blank lines are skipped.
// Job ids are 0..n-1 in file order.

Instance read_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& instance);

/// CSV with header `job_id,machine,start,completion`. Rows must satisfy
/// completion = start + p for jobs known to the instance.
Schedule read_schedule_csv(std::istream& in, const Instance& instance);
/// Rows ordered by job id.
void write_schedule_csv(std::ostream& out, const Schedule& schedule);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& instance);
Schedule load_schedule(const std::filesystem::path& path, const Instance& instance);
void save_schedule(const std::filesystem::path& path, const Schedule& schedule);

/// Whitespace-trimmed copy.
std::string trim(const std::string& s);

/// Strict base-10 parse of a signed 64-bit integer; nullopt on any junk.
std::optional<std::int64_t> parse_int(const std::string& s);
std::optional<std::uint64_t> parse_uint(const std::string& s);

}  // namespace orsched
