#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace kbsym {

// Arbitrary-precision signed integer, base 2^32 limbs, little-endian.
// Covers the coefficient growth of Wronskians and operator ladders; no
// attempt at asymptotically fast multiplication.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v);
    explicit BigInt(const std::string& decimal);

    static BigInt from_uint(unsigned long long v);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return neg_; }
    int sign() const { return limbs_.empty() ? 0 : (neg_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    // Truncated division (C semantics); throws on division by zero.
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    bool operator==(const BigInt& o) const { return neg_ == o.neg_ && limbs_ == o.limbs_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const { return cmp(o) < 0; }
    bool operator<=(const BigInt& o) const { return cmp(o) <= 0; }
    bool operator>(const BigInt& o) const { return cmp(o) > 0; }
    bool operator>=(const BigInt& o) const { return cmp(o) >= 0; }

    int cmp(const BigInt& o) const;

    BigInt abs() const;
    static BigInt gcd(BigInt a, BigInt b);

    double to_double() const;
    // Throws if the value does not fit.
    long long to_ll() const;
    bool fits_ll() const;

    std::string str() const;
    size_t hash() const;

  private:
    bool neg_ = false;
    std::vector<uint32_t> limbs_;

    void trim();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

// Exact rational with canonical form: gcd(num,den)=1, den>0, zero is 0/1.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static Rational parse(const std::string& s);  // "p", "p/q" or decimal "1.25"

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == BigInt(1) && num_ == BigInt(1); }
    bool is_integer() const { return den_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;  // throws on zero divisor
    Rational inv() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    // Integer exponent only.
    Rational pow_int(long long e) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return cmp(o) < 0; }
    bool operator>(const Rational& o) const { return cmp(o) > 0; }
    bool operator<=(const Rational& o) const { return cmp(o) <= 0; }
    bool operator>=(const Rational& o) const { return cmp(o) >= 0; }
    int cmp(const Rational& o) const;

    double to_double() const;
    std::string str() const;  // "p" or "p/q"
    size_t hash() const;

  private:
    BigInt num_, den_;
    void normalize();
};

}  // namespace kbsym
