#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace udense {

using NodeId = std::uint32_t;

/// Canonical node set: sorted, duplicate-free. Two equal sets compare
/// bit-identical, so NodeSet works as a map key and for lexicographic
/// tie-breaking.
struct NodeSet {
    std::vector<NodeId> members;

    NodeSet() = default;
    explicit NodeSet(std::vector<NodeId> ids) : members(std::move(ids)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
    bool contains(NodeId v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }
    bool is_subset_of(const NodeSet& other) const {
        return std::includes(other.members.begin(), other.members.end(),
                             members.begin(), members.end());
    }

    friend bool operator==(const NodeSet& a, const NodeSet& b) {
        return a.members == b.members;
    }
    friend bool operator!=(const NodeSet& a, const NodeSet& b) { return !(a == b); }
    friend bool operator<(const NodeSet& a, const NodeSet& b) {
        return a.members < b.members;
    }

    std::string to_string() const;
};

NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);

struct NodeSetHash {
    std::size_t operator()(const NodeSet& s) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (NodeId v : s.members) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Exact rational with 64-bit numerator/denominator, always reduced,
/// denominator > 0. Intermediate products go through 128-bit arithmetic;
/// anything that would not fit back into 64 bits throws.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
};

/// Smallest-denominator rational in the closed interval [lo, hi],
/// via the continued-fraction (Stern-Brocot) descent. Requires lo <= hi >= 0.
Rational simplest_rational_in(const Rational& lo, const Rational& hi);

// Counter-based random stream: a pure function of (seed, round, index),
// so per-round substreams never overlap and results are independent of
// worker count. splitmix64 finalizer chain.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_bits(std::uint64_t seed, std::uint64_t round, std::uint64_t index) {
    return mix64(mix64(mix64(seed) ^ round) ^ index);
}

/// Uniform draw in [0, 1), 53-bit resolution.
inline double stream_uniform(std::uint64_t seed, std::uint64_t round, std::uint64_t index) {
    return static_cast<double>(stream_bits(seed, round, index) >> 11) * 0x1.0p-53;
}

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Enumeration produced more densest subgraphs than the configured cap.
struct EnumerationCapError : std::runtime_error {
    std::size_t emitted;
    std::uint64_t round;  // set by the estimator when propagating
    EnumerationCapError(std::size_t emitted_, const std::string& what_)
        : std::runtime_error(what_), emitted(emitted_), round(~0ULL) {}
};

struct TooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Log level from UDENSE_LOG (debug|info|quiet, default quiet).
int log_level();
void log_debug(const std::string& msg);
void log_info(const std::string& msg);

}  // namespace udense
