#include "udense/common.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

namespace udense {

std::string NodeSet::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) os << ',';
        os << members[i];
    }
    os << '}';
    return os.str();
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    NodeSet r;
    r.members.reserve(a.size() + b.size());
    std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                   std::back_inserter(r.members));
    return r;
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
    NodeSet r;
    std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                          b.members.end(), std::back_inserter(r.members));
    return r;
}

namespace {

std::int64_t checked_cast(__int128 x, const char* ctx) {
    if (x > static_cast<__int128>(INT64_MAX) || x < static_cast<__int128>(INT64_MIN))
        throw std::overflow_error(std::string("rational overflow in ") + ctx);
    return static_cast<std::int64_t>(x);
}

Rational make_reduced(__int128 n, __int128 d, const char* ctx) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    Rational r;
    r.num = checked_cast(n, ctx);
    r.den = checked_cast(d, ctx);
    return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    *this = make_reduced(n, d, "ctor");
}

std::string Rational::to_string() const {
    std::ostringstream os;
    os << num;
    if (den != 1) os << '/' << den;
    return os.str();
}

Rational operator+(const Rational& a, const Rational& b) {
    return make_reduced(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                        static_cast<__int128>(a.den) * b.den, "add");
}
Rational operator-(const Rational& a, const Rational& b) {
    return make_reduced(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                        static_cast<__int128>(a.den) * b.den, "sub");
}
Rational operator*(const Rational& a, const Rational& b) {
    return make_reduced(static_cast<__int128>(a.num) * b.num,
                        static_cast<__int128>(a.den) * b.den, "mul");
}
Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::invalid_argument("rational division by zero");
    return make_reduced(static_cast<__int128>(a.num) * b.den,
                        static_cast<__int128>(a.den) * b.num, "div");
}

namespace {

std::int64_t floor_div(std::int64_t n, std::int64_t d) {
    std::int64_t q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return q;
}

}  // namespace

Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw std::invalid_argument("simplest_rational_in: empty interval");
    // Smallest integer >= lo.
    std::int64_t ceil_lo = floor_div(lo.num + lo.den - 1, lo.den);
    if (Rational(ceil_lo) <= hi) return Rational(ceil_lo);
    // Same integer gap: recurse on the fractional parts, flipped.
    std::int64_t fl = floor_div(lo.num, lo.den);
    Rational lo_frac = lo - Rational(fl);
    Rational hi_frac = hi - Rational(fl);
    Rational inner = simplest_rational_in(Rational(1) / hi_frac, Rational(1) / lo_frac);
    return Rational(fl) + Rational(1) / inner;
}

int log_level() {
    static int level = [] {
        const char* env = std::getenv("UDENSE_LOG");
        if (!env) return 0;
        std::string v(env);
        if (v == "debug") return 2;
        if (v == "info") return 1;
        return 0;
    }();
    return level;
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[udense] " << msg << '\n';
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[udense] " << msg << '\n';
}

}  // namespace udense
