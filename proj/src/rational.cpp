#include "grdlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

namespace grdlab {

namespace mp = boost::multiprecision;

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::duplicate_nodes: return "DuplicateNodes";
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::invalid_order: return "InvalidOrder";
    case Errc::zero_dilation: return "ZeroDilation";
    case Errc::order_mismatch: return "OrderMismatch";
    case Errc::intersection_not_n: return "IntersectionNotN";
    case Errc::node_not_shared: return "NodeNotShared";
    case Errc::degenerate_combination: return "DegenerateCombination";
    case Errc::row_out_of_range: return "RowOutOfRange";
    case Errc::zero_step: return "ZeroStep";
    case Errc::exact_unavailable: return "ExactUnavailable";
    case Errc::non_positive: return "NonPositive";
    case Errc::replay_mismatch: return "ReplayMismatch";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::parse_error: return "ParseError";
    case Errc::internal: return "Internal";
    }
    return "Unknown";
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) fail(Errc::division_by_zero, "rational with zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = mp::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::abs() const {
    return num_ < 0 ? -*this : *this;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) fail(Errc::division_by_zero, "division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    reduce();
    return *this;
}

Rational Rational::pow(long long e) const {
    if (e == 0) return Rational(1);
    Rational base = *this;
    unsigned long long k;
    if (e < 0) {
        if (num_ == 0) fail(Errc::division_by_zero, "zero to a negative power");
        base = Rational(den_, num_);
        k = static_cast<unsigned long long>(-(e + 1)) + 1; // safe for LLONG_MIN
    } else {
        k = static_cast<unsigned long long>(e);
    }
    Rational acc(1);
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    BigInt lhs = num_ * o.den_;
    BigInt rhs = o.num_ * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    std::string s = num_.str();
    if (den_ != 1) {
        s += '/';
        s += den_.str();
    }
    return s;
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&]() -> Rational {
        fail(Errc::parse_error, "invalid rational \"" + std::string(text) + "\"");
    };
    size_t pos = 0;
    auto read_int = [&](bool allow_sign) -> BigInt {
        bool negative = false;
        if (allow_sign && pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            negative = text[pos] == '-';
            ++pos;
        }
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) bad();
        BigInt value{std::string(text.substr(start, pos - start))};
        return negative ? BigInt(-value) : value;
    };
    if (text.empty()) bad();
    BigInt num = read_int(true);
    BigInt den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_int(false);
        if (den == 0) bad();
    }
    if (pos != text.size()) bad();
    return Rational(std::move(num), std::move(den));
}

double Rational::to_double() const {
    mp::cpp_rational q(num_, den_);
    return q.convert_to<double>();
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) fail(Errc::parse_error, "non-finite double");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);
    // 53 bits of mantissa make m * 2^53 integral.
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant);
    if (exp >= 0) return r * Rational(BigInt(1) << exp);
    return r / Rational(BigInt(1) << -exp);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

BigInt factorial(int n) {
    BigInt acc = 1;
    for (int k = 2; k <= n; ++k) acc *= k;
    return acc;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

bool is_power_of_two(const BigInt& v) {
    return v > 0 && (v & (v - 1)) == 0;
}

std::string join_rationals(const std::vector<Rational>& values, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += values[i].str();
    }
    return out;
}

} // namespace grdlab
