#include "orsched/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace orsched {

namespace {

// Yields non-comment, non-blank lines with their 1-based line numbers.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++number_;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            std::string t = trim(raw);
            if (t.empty() || t.front() == '#') continue;
            line = std::move(t);
            return true;
        }
        return false;
    }

    std::size_t number() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::int64_t need_int(const std::string& tok, std::size_t line, const char* what) {
    auto v = parse_int(tok);
    if (!v) throw FormatError(line, std::string("expected integer for ") + what + ", got '" + tok + "'");
    return *v;
}

}  // namespace

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<std::int64_t> parse_int(const std::string& s) {
    std::int64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_uint(const std::string& s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

Instance read_instance(std::istream& in) {
    LineReader reader(in);
    std::string line;

    if (!reader.next(line)) throw FormatError(reader.number(), "missing header line 'm <int> R <int>'");
    auto head = split_ws(line);
    if (head.size() != 4 || head[0] != "m" || head[2] != "R") {
        throw FormatError(reader.number(), "header must read 'm <int> R <int>'");
    }
    const auto machines = need_int(head[1], reader.number(), "m");
    const auto capacity = need_int(head[3], reader.number(), "R");
    if (machines < 1 || machines > std::numeric_limits<int>::max()) throw FormatError(reader.number(), "m must be >= 1");
    if (capacity < 1) throw FormatError(reader.number(), "R must be >= 1");

    if (!reader.next(line)) throw FormatError(reader.number(), "missing job count line");
    const auto n = need_int(line, reader.number(), "job count");
    if (n < 0) throw FormatError(reader.number(), "job count must be non-negative");

    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        if (!reader.next(line)) throw FormatError(reader.number(), "expected " + std::to_string(n) + " job lines");
        auto toks = split_ws(line);
        if (toks.size() != 2) throw FormatError(reader.number(), "job line must be '<p> <req>'");
        const Time p = need_int(toks[0], reader.number(), "p");
        const Units req = need_int(toks[1], reader.number(), "req");
        if (p < 1) throw FormatError(reader.number(), "p must be >= 1");
        if (req < 0 || req > capacity) throw FormatError(reader.number(), "req must lie in [0, R]");
        jobs.push_back(Job{i, p, req});
    }
    if (reader.next(line)) throw FormatError(reader.number(), "trailing content after job list");
    return Instance(static_cast<int>(machines), capacity, std::move(jobs));
}

void write_instance(std::ostream& out, const Instance& instance) {
    out << "m " << instance.machines() << " R " << instance.capacity() << "\n" << instance.size() << "\n";
    for (const Job& j : instance.jobs()) out << j.p << " " << j.req << "\n";
}

Schedule read_schedule_csv(std::istream& in, const Instance& instance) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line) || split_csv(line) != std::vector<std::string>{"job_id", "machine", "start", "completion"}) {
        throw FormatError(reader.number(), "schedule header must be 'job_id,machine,start,completion'");
    }
    Schedule schedule(instance);
    while (reader.next(line)) {
        auto cols = split_csv(line);
        if (cols.size() != 4) throw FormatError(reader.number(), "expected 4 columns");
        Assignment a;
        a.job_id = need_int(cols[0], reader.number(), "job_id");
        const auto machine = need_int(cols[1], reader.number(), "machine");
        a.start = need_int(cols[2], reader.number(), "start");
        a.completion = need_int(cols[3], reader.number(), "completion");
        if (machine < std::numeric_limits<int>::min() || machine > std::numeric_limits<int>::max()) {
            throw FormatError(reader.number(), "machine index out of range");
        }
        a.machine = static_cast<int>(machine);
        if (a.start < 0) throw FormatError(reader.number(), "start must be non-negative");
        if (const Job* job = instance.find(a.job_id); job && a.completion != a.start + job->p) {
            throw FormatError(reader.number(), "completion must equal start + p");
        }
        schedule.add(a);
    }
    return schedule;
}

void write_schedule_csv(std::ostream& out, const Schedule& schedule) {
    out << "job_id,machine,start,completion\n";
    const Schedule ordered = schedule.sorted();
    for (const Assignment& a : ordered.assignments()) {
        out << a.job_id << "," << a.machine << "," << a.start << "," << a.completion << "\n";
    }
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return read_instance(in);
}

void save_instance(const std::filesystem::path& path, const Instance& instance) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_instance(out, instance);
}

Schedule load_schedule(const std::filesystem::path& path, const Instance& instance) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return read_schedule_csv(in, instance);
}

void save_schedule(const std::filesystem::path& path, const Schedule& schedule) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_schedule_csv(out, schedule);
}

}  // namespace orsched
