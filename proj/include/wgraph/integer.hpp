#pragma once

// Arbitrary-precision integer with an inline small-value path.
//
// Values in [-2^62, 2^62) are stored inline in a tagged word (low bit set).
// Anything larger spills into a heap-allocated boost::multiprecision::cpp_int.
// The representation is canonical: a value that fits the small range is never
// stored as a big integer, so equality on the small path is a word compare.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace wgraph {

class Integer {
public:
    using Big = boost::multiprecision::cpp_int;

    Integer() noexcept : bits_(1) {}
    Integer(int v) noexcept : bits_(encode(v)) {}
    Integer(long v) { assign(static_cast<std::int64_t>(v)); }
    Integer(long long v) { assign(static_cast<std::int64_t>(v)); }
    explicit Integer(const Big& v) { assign_big(v); }
    explicit Integer(const std::string& decimal) { assign_big(Big(decimal)); }

    Integer(const Integer& o) : bits_(o.bits_) {
        if (!o.is_small()) bits_ = reinterpret_cast<std::int64_t>(new Big(*o.big()));
    }
    Integer(Integer&& o) noexcept : bits_(o.bits_) { o.bits_ = 1; }
    Integer& operator=(const Integer& o) {
        if (this != &o) {
            Integer tmp(o);
            swap(tmp);
        }
        return *this;
    }
    Integer& operator=(Integer&& o) noexcept {
        if (this != &o) {
            release();
            bits_ = o.bits_;
            o.bits_ = 1;
        }
        return *this;
    }
    ~Integer() { release(); }

    void swap(Integer& o) noexcept { std::swap(bits_, o.bits_); }

    bool is_small() const noexcept { return (bits_ & 1) != 0; }
    bool is_zero() const noexcept { return bits_ == 1; }
    bool fits_int64() const { return is_small() || (*big() >= INT64_MIN && *big() <= INT64_MAX); }
    std::int64_t to_int64() const {
        if (is_small()) return small();
        if (!fits_int64()) throw std::overflow_error("Integer does not fit in int64");
        return big()->convert_to<std::int64_t>();
    }
    Big to_big() const { return is_small() ? Big(small()) : *big(); }
    int sign() const noexcept {
        if (is_small()) return (small() > 0) - (small() < 0);
        return big()->sign();
    }
    std::string str() const { return is_small() ? std::to_string(small()) : big()->str(); }

    friend Integer operator+(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small()) return from_int64(a.small() + b.small());
        return Integer(a.to_big() + b.to_big());
    }
    friend Integer operator-(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small()) return from_int64(a.small() - b.small());
        return Integer(a.to_big() - b.to_big());
    }
    friend Integer operator*(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small()) {
            std::int64_t r;
            if (!__builtin_mul_overflow(a.small(), b.small(), &r)) return from_int64(r);
        }
        return Integer(a.to_big() * b.to_big());
    }
    // Truncating division, as for built-in integers.
    friend Integer operator/(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("Integer division by zero");
        if (a.is_small() && b.is_small() && !(a.small() == kMin && b.small() == -1))
            return from_int64(a.small() / b.small());
        return Integer(Big(a.to_big() / b.to_big()));
    }
    friend Integer operator%(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("Integer division by zero");
        if (a.is_small() && b.is_small()) return from_int64(b.small() == -1 ? 0 : a.small() % b.small());
        return Integer(Big(a.to_big() % b.to_big()));
    }
    Integer operator-() const {
        if (is_small()) return from_int64(-small());
        return Integer(Big(-*big()));
    }
    Integer& operator+=(const Integer& o) { return *this = *this + o; }
    Integer& operator-=(const Integer& o) { return *this = *this - o; }
    Integer& operator*=(const Integer& o) { return *this = *this * o; }

    friend bool operator==(const Integer& a, const Integer& b) {
        if (a.is_small() || b.is_small()) return a.bits_ == b.bits_;
        return *a.big() == *b.big();
    }
    friend bool operator<(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small()) return a.small() < b.small();
        return a.to_big() < b.to_big();
    }
    friend bool operator>(const Integer& a, const Integer& b) { return b < a; }
    friend bool operator<=(const Integer& a, const Integer& b) { return !(b < a); }
    friend bool operator>=(const Integer& a, const Integer& b) { return !(a < b); }

    friend Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }
    friend Integer gcd(Integer a, Integer b) {
        a = abs(a);
        b = abs(b);
        if (a.is_small() && b.is_small()) {
            std::int64_t x = a.small(), y = b.small();
            while (y != 0) {
                std::int64_t t = x % y;
                x = y;
                y = t;
            }
            return from_int64(x);
        }
        return Integer(Big(boost::multiprecision::gcd(a.to_big(), b.to_big())));
    }

    friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.str(); }

    std::size_t hash() const {
        if (is_small()) return std::hash<std::int64_t>{}(bits_);
        return std::hash<std::string>{}(big()->str());
    }

private:
    static constexpr std::int64_t kMin = -(std::int64_t{1} << 62);
    static constexpr std::int64_t kMax = (std::int64_t{1} << 62) - 1;

    static constexpr std::int64_t encode(std::int64_t v) noexcept { return (v << 1) | 1; }
    static bool fits_small(std::int64_t v) noexcept { return v >= kMin && v <= kMax; }

    static Integer from_int64(std::int64_t v) {
        Integer r;
        r.assign(v);
        return r;
    }

    std::int64_t small() const noexcept { return bits_ >> 1; }
    Big* big() const noexcept { return reinterpret_cast<Big*>(bits_); }

    void assign(std::int64_t v) {
        if (fits_small(v))
            bits_ = encode(v);
        else
            bits_ = reinterpret_cast<std::int64_t>(new Big(v));
    }
    void assign_big(const Big& v) {
        if (v >= kMin && v <= kMax)
            bits_ = encode(v.convert_to<std::int64_t>());
        else
            bits_ = reinterpret_cast<std::int64_t>(new Big(v));
    }
    void release() noexcept {
        if (!is_small()) delete big();
        bits_ = 1;
    }

    std::int64_t bits_;
};

}  // namespace wgraph

template <>
struct std::hash<wgraph::Integer> {
    std::size_t operator()(const wgraph::Integer& a) const { return a.hash(); }
};
