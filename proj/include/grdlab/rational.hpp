#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grdlab/error.hpp"

namespace grdlab {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. Always kept in lowest terms with a positive
// denominator; zero is represented as 0/1. All arithmetic is exact.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(const BigInt& v) : num_(v), den_(1) {}
    Rational(BigInt num, BigInt den);
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const;
    Rational abs() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    // Integer power; 0^0 = 1. Negative exponents require a nonzero base.
    Rational pow(long long e) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const;

    // "p/q" in lowest terms, or "p" alone when q = 1.
    std::string str() const;

    // Accepts an optional sign and an optional "/q" part.
    static Rational parse(std::string_view text);

    double to_double() const;

    // Exact value of a finite double (doubles are dyadic rationals).
    static Rational from_double(double x);

private:
    void reduce();

    BigInt num_;
    BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

BigInt factorial(int n);
BigInt binomial(int n, int k);
bool is_power_of_two(const BigInt& v);

std::string join_rationals(const std::vector<Rational>& values, const std::string& sep = " ");

} // namespace grdlab
