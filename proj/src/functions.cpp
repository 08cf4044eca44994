#include "grdlab/functions.hpp"

#include <cctype>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace grdlab {

namespace mp = boost::multiprecision;

std::optional<std::pair<long long, long long>> in_group_23(const Rational& q) {
    if (q.sign() <= 0) fail(Errc::non_positive, "group membership needs q > 0");
    auto strip = [](BigInt v, int p) -> std::pair<BigInt, long long> {
        long long count = 0;
        while (v % p == 0) {
            v /= p;
            ++count;
        }
        return {std::move(v), count};
    };
    auto [n2, m_num] = strip(q.num(), 2);
    auto [n3, m_den] = strip(q.den(), 2);
    auto [r_num, k_num] = strip(n2, 3);
    auto [r_den, k_den] = strip(n3, 3);
    if (r_num != 1 || r_den != 1) return std::nullopt;
    return std::make_pair(m_num - m_den, k_num - k_den);
}

namespace {

// Exact square root of a nonnegative rational, when it exists.
std::optional<Rational> rational_sqrt(const Rational& x) {
    if (x.is_negative()) return std::nullopt;
    BigInt sn = mp::sqrt(x.num());
    BigInt sd = mp::sqrt(x.den());
    if (sn * sn != x.num() || sd * sd != x.den()) return std::nullopt;
    return Rational(std::move(sn), std::move(sd));
}

// Ascending-degree integer coefficients of the poly mini-language.
std::vector<BigInt> parse_poly_expr(const std::string& expr) {
    std::vector<BigInt> coeffs;
    auto bump = [&](size_t deg, const BigInt& c) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, BigInt(0));
        coeffs[deg] += c;
    };

    size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < expr.size() && std::isspace(static_cast<unsigned char>(expr[pos]))) ++pos;
    };
    auto bad = [&]() { fail(Errc::parse_error, "invalid polynomial \"" + expr + "\""); };

    skip_ws();
    if (pos == expr.size()) bad();
    bool first = true;
    while (pos < expr.size()) {
        int sign = 1;
        skip_ws();
        if (!first || expr[pos] == '+' || expr[pos] == '-') {
            if (pos == expr.size() || (expr[pos] != '+' && expr[pos] != '-')) bad();
            sign = expr[pos] == '-' ? -1 : 1;
            ++pos;
            skip_ws();
        }
        first = false;

        BigInt coeff = 1;
        bool saw_number = false;
        if (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos]))) {
            size_t start = pos;
            while (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos]))) ++pos;
            coeff = BigInt(expr.substr(start, pos - start));
            saw_number = true;
            skip_ws();
            if (pos < expr.size() && expr[pos] == '*') {
                ++pos;
                skip_ws();
            }
        }
        size_t degree = 0;
        if (pos < expr.size() && expr[pos] == 'x') {
            ++pos;
            degree = 1;
            skip_ws();
            if (pos < expr.size() && expr[pos] == '^') {
                ++pos;
                skip_ws();
                if (pos == expr.size() || !std::isdigit(static_cast<unsigned char>(expr[pos])))
                    bad();
                size_t start = pos;
                while (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos])))
                    ++pos;
                const std::string digits = expr.substr(start, pos - start);
                if (digits.size() > 3)
                    fail(Errc::parse_error, "polynomial degree too large in \"" + expr + "\"");
                degree = static_cast<size_t>(std::stoul(digits));
                if (degree > 512)
                    fail(Errc::parse_error, "polynomial degree too large in \"" + expr + "\"");
            }
        } else if (!saw_number) {
            bad();
        }
        bump(degree, sign < 0 ? BigInt(-coeff) : coeff);
        skip_ws();
    }
    if (coeffs.empty()) coeffs.emplace_back(0);
    return coeffs;
}

} // namespace

TestFunction make_poly(const std::string& expr) {
    auto coeffs = parse_poly_expr(expr);
    std::vector<double> fcoeffs;
    fcoeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) fcoeffs.push_back(Rational(c).to_double());

    TestFunction f;
    f.name = "poly:" + expr;
    f.notes = "integer-coefficient polynomial; exact everywhere";
    f.exact = [coeffs](const Rational& x) -> std::optional<Rational> {
        Rational acc;
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + Rational(coeffs[i]);
        return acc;
    };
    f.real = [fcoeffs](double x) {
        double acc = 0.0;
        for (size_t i = fcoeffs.size(); i-- > 0;) acc = acc * x + fcoeffs[i];
        return acc;
    };
    return f;
}

TestFunction make_parity(int n) {
    if (n < 1) fail(Errc::invalid_order, "parity function needs n >= 1");
    TestFunction f;
    f.name = "parity:" + std::to_string(n);
    f.notes = "x^(n-1/2) mirrored with sign (-1)^(n-1); n-1 derivatives vanish at 0, "
              "order n fails there";
    const bool mirror_flip = (n - 1) % 2 == 1;
    const long long e = 2LL * n - 1;
    f.exact = [e, mirror_flip](const Rational& x) -> std::optional<Rational> {
        if (x.is_zero()) return Rational(0);
        Rational mag = x.abs();
        auto root = rational_sqrt(mag);
        if (!root) return std::nullopt;
        Rational value = root->pow(e);
        if (x.is_negative() && mirror_flip) return -value;
        return value;
    };
    f.real = [n, mirror_flip](double x) {
        if (x == 0.0) return 0.0;
        double value = std::pow(std::fabs(x), n - 0.5);
        return (x < 0.0 && mirror_flip) ? -value : value;
    };
    return f;
}

TestFunction sgn_function() {
    TestFunction f;
    f.name = "sgn";
    f.notes = "sign function; even-order symmetric quotients vanish at 0";
    f.exact = [](const Rational& x) -> std::optional<Rational> { return Rational(x.sign()); };
    f.real = [](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); };
    return f;
}

TestFunction x3sin_function() {
    TestFunction f;
    f.name = "x3sin";
    f.notes = "x^3 sin(1/x) with value 0 at 0; twice Peano differentiable at 0 "
              "with vanishing derivatives, no second ordinary derivative";
    f.exact = [](const Rational& x) -> std::optional<Rational> {
        if (x.is_zero()) return Rational(0);
        return std::nullopt;
    };
    f.real = [](double x) { return x == 0.0 ? 0.0 : x * x * x * std::sin(1.0 / x); };
    return f;
}

TestFunction group23_function() {
    TestFunction f;
    f.name = "group23";
    f.notes = "(-1)^(m+k) x^3 on the multiplicative group generated by 2 and 3, "
              "0 elsewhere; exact everywhere";
    f.exact = [](const Rational& x) -> std::optional<Rational> {
        if (x.sign() <= 0) return Rational(0);
        auto mk = in_group_23(x);
        if (!mk) return Rational(0);
        Rational cube = x.pow(3);
        return ((mk->first + mk->second) % 2 != 0) ? -cube : cube;
    };
    f.real = [](double x) {
        if (!std::isfinite(x) || x <= 0) return 0.0;
        auto mk = in_group_23(Rational::from_double(x));
        if (!mk) return 0.0;
        double cube = x * x * x;
        return ((mk->first + mk->second) % 2 != 0) ? -cube : cube;
    };
    return f;
}

TestFunction exp_function() {
    TestFunction f;
    f.name = "exp";
    f.notes = "smooth reference, float only";
    f.exact = [](const Rational&) -> std::optional<Rational> { return std::nullopt; };
    f.real = [](double x) { return std::exp(x); };
    return f;
}

TestFunction lookup_function(const std::string& spec) {
    if (spec == "sgn") return sgn_function();
    if (spec == "x3sin") return x3sin_function();
    if (spec == "group23") return group23_function();
    if (spec == "exp") return exp_function();
    if (spec.rfind("poly:", 0) == 0) return make_poly(spec.substr(5));
    if (spec.rfind("parity:", 0) == 0) {
        const std::string arg = spec.substr(7);
        for (char c : arg)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(Errc::parse_error, "invalid parity parameter \"" + arg + "\"");
        if (arg.empty()) fail(Errc::parse_error, "parity needs a parameter");
        return make_parity(std::stoi(arg));
    }
    fail(Errc::parse_error, "unknown function \"" + spec + "\"");
}

std::vector<TestFunction> builtin_functions() {
    std::vector<TestFunction> fns;
    for (int m = 1; m <= 5; ++m) fns.push_back(make_poly("x^" + std::to_string(m)));
    fns.push_back(sgn_function());
    fns.push_back(x3sin_function());
    for (int n = 2; n <= 4; ++n) fns.push_back(make_parity(n));
    fns.push_back(group23_function());
    fns.push_back(exp_function());
    return fns;
}

} // namespace grdlab
