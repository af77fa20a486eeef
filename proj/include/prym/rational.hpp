#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace prym {

// Exact rational numbers on checked 64-bit integers. All census values stay
// far below the overflow bound at desk scale (p <= 47); any operation that
// would wrap throws instead of returning a wrong exact value.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rat operator+(const Rat& o) const {
        return Rat(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                   checked_mul(den_, o.den_));
    }
    Rat operator-(const Rat& o) const {
        return Rat(checked_sub(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                   checked_mul(den_, o.den_));
    }
    Rat operator*(const Rat& o) const {
        return Rat(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
    }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw std::domain_error("Rat: division by zero");
        return Rat(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) {
            num_ = checked_sub(0, num_);
            den_ = checked_sub(0, den_);
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rat: overflow");
        return r;
    }
    static std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("Rat: overflow");
        return r;
    }
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rat: overflow");
        return r;
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace prym
