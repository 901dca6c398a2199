#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace orsched {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Products such as sum(p * req) over a whole trace overflow 64 bits, so the
/// representation is 128-bit. Arithmetic throws std::overflow_error instead of
/// wrapping; comparison never overflows (it uses continued-fraction expansion
/// rather than cross-multiplication).
class Ratio {
public:
    using Int = __int128;

    constexpr Ratio() = default;
    Ratio(std::int64_t value) : num_(value) {}  // NOLINT: implicit from integers is intended
    Ratio(Int numerator, Int denominator);

    Int numerator() const { return num_; }
    Int denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    /// Largest integer not greater than the value.
    Int floor() const;
    /// Smallest integer not less than the value.
    Int ceil() const;

    double to_double() const;

    /// Fixed-point rendering with `places` decimals, rounding half to even.
    std::string to_decimal(int places) const;
    /// "num/den", or just "num" for integers.
    std::string to_string() const;

    friend Ratio operator+(const Ratio& a, const Ratio& b);
    friend Ratio operator-(const Ratio& a, const Ratio& b);
    friend Ratio operator*(const Ratio& a, const Ratio& b);
    friend Ratio operator/(const Ratio& a, const Ratio& b);
    Ratio operator-() const;

    Ratio& operator+=(const Ratio& o) { return *this = *this + o; }
    Ratio& operator-=(const Ratio& o) { return *this = *this - o; }
    Ratio& operator*=(const Ratio& o) { return *this = *this * o; }
    Ratio& operator/=(const Ratio& o) { return *this = *this / o; }

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

private:
    Int num_ = 0;
    Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Ratio& r);

/// Decimal rendering of a 128-bit integer.
std::string int128_to_string(Ratio::Int value);

}  // namespace orsched
