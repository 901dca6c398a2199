#include "orsched/ratio.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace orsched {

namespace {

using Int = Ratio::Int;

Int abs128(Int v) { return v < 0 ? -v : v; }

Int gcd128(Int a, Int b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        a = std::exchange(b, a % b);
    }
    return a;
}

Int checked_mul(Int a, Int b) {
    Int out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("Ratio: multiplication overflow");
    return out;
}

Int checked_add(Int a, Int b) {
    Int out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("Ratio: addition overflow");
    return out;
}

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Compares a/b with c/d for b, d > 0 and a, c >= 0 without forming products.
std::strong_ordering compare_nonnegative(Int a, Int b, Int c, Int d) {
    bool flipped = false;
    for (;;) {
        const Int qa = a / b;
        const Int qc = c / d;
        if (qa != qc) {
            const auto r = qa <=> qc;
            return flipped ? 0 <=> r : r;
        }
        a -= qa * b;
        c -= qc * d;
        if (a == 0 || c == 0) {
            const auto r = a <=> c;
            return flipped ? 0 <=> r : r;
        }
        // a/b vs c/d with both fractional parts in (0,1): compare reciprocals, reversed.
        std::swap(a, b);
        std::swap(c, d);
        flipped = !flipped;
    }
}

}  // namespace

Ratio::Ratio(Int numerator, Int denominator) {
    if (denominator == 0) throw std::invalid_argument("Ratio: zero denominator");
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    const Int g = gcd128(numerator, denominator);
    num_ = g == 0 ? 0 : numerator / g;
    den_ = g == 0 ? 1 : denominator / g;
}

Ratio::Int Ratio::floor() const { return floor_div(num_, den_); }

Ratio::Int Ratio::ceil() const { return -floor_div(-num_, den_); }

double Ratio::to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

std::string Ratio::to_decimal(int places) const {
    const bool negative = num_ < 0;
    const Int n = abs128(num_);
    Int whole = n / den_;
    Int rem = n % den_;

    std::string digits;
    digits.reserve(static_cast<std::size_t>(places));
    for (int i = 0; i < places; ++i) {
        // rem < den_, and den_ fits comfortably below 2^123 for all values we build.
        rem = checked_mul(rem, 10);
        digits.push_back(static_cast<char>('0' + static_cast<int>(rem / den_)));
        rem %= den_;
    }

    // Round half to even on the remaining tail rem/den_.
    const Int twice = checked_mul(rem, 2);
    bool round_up = false;
    if (twice > den_) {
        round_up = true;
    } else if (twice == den_) {
        const int last = digits.empty() ? static_cast<int>(whole % 10) : digits.back() - '0';
        round_up = (last % 2) == 1;
    }
    if (round_up) {
        int i = static_cast<int>(digits.size()) - 1;
        for (; i >= 0; --i) {
            if (digits[static_cast<std::size_t>(i)] == '9') {
                digits[static_cast<std::size_t>(i)] = '0';
            } else {
                ++digits[static_cast<std::size_t>(i)];
                break;
            }
        }
        if (i < 0) whole = checked_add(whole, 1);
    }

    std::string out;
    if (negative && (whole != 0 || digits.find_first_not_of('0') != std::string::npos)) out.push_back('-');
    out += int128_to_string(whole);
    if (places > 0) {
        out.push_back('.');
        out += digits;
    }
    return out;
}

std::string Ratio::to_string() const {
    if (den_ == 1) return int128_to_string(num_);
    return int128_to_string(num_) + "/" + int128_to_string(den_);
}

Ratio operator+(const Ratio& a, const Ratio& b) {
    const Int g = gcd128(a.den_, b.den_);
    const Int lhs = checked_mul(a.num_, b.den_ / g);
    const Int rhs = checked_mul(b.num_, a.den_ / g);
    return Ratio(checked_add(lhs, rhs), checked_mul(a.den_ / g, b.den_));
}

Ratio operator-(const Ratio& a, const Ratio& b) { return a + (-b); }

Ratio operator*(const Ratio& a, const Ratio& b) {
    const Int g1 = std::max<Int>(gcd128(a.num_, b.den_), 1);
    const Int g2 = std::max<Int>(gcd128(b.num_, a.den_), 1);
    return Ratio(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.num_ == 0) throw std::domain_error("Ratio: division by zero");
    return a * Ratio(b.den_, b.num_);
}

Ratio Ratio::operator-() const {
    Ratio out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    const bool a_neg = a.num_ < 0;
    const bool b_neg = b.num_ < 0;
    if (a_neg != b_neg) return a_neg ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!a_neg) return compare_nonnegative(a.num_, a.den_, b.num_, b.den_);
    return compare_nonnegative(-b.num_, b.den_, -a.num_, a.den_);
}

std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.to_string(); }

std::string int128_to_string(Ratio::Int value) {
    if (value == 0) return "0";
    const bool negative = value < 0;
    // Work in the negative range so the minimum value does not overflow.
    Int v = negative ? value : -value;
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
        v /= 10;
    }
    if (negative) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace orsched
