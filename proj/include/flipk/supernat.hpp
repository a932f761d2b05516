#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace flipk {

bool is_prime(std::uint64_t n);

// exponent value in N ∪ {INF}; INF is a real symbol, not a sentinel integer
class Valuation {
public:
    constexpr Valuation() : inf_(false), val_(0) {}
    static constexpr Valuation inf() { Valuation v; v.inf_ = true; return v; }
    static constexpr Valuation finite(std::uint32_t e) { Valuation v; v.val_ = e; return v; }

    bool is_infinite() const { return inf_; }
    bool is_zero() const { return !inf_ && val_ == 0; }
    std::uint32_t finite_value() const; // throws on INF

    friend bool operator==(const Valuation&, const Valuation&) = default;
    // finite < INF; finite values ordered as integers
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.val_ < b.val_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a == b || a < b; }
    friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }
    friend Valuation max(const Valuation& a, const Valuation& b) { return a < b ? b : a; }

    std::string to_string() const;

private:
    bool inf_;
    std::uint32_t val_;
};

// formal product Π p^{e_p}, e_p ∈ N ∪ {INF}; empty product is 1
class SupernaturalNumber {
public:
    using Factor = std::pair<std::uint64_t, Valuation>;

    SupernaturalNumber() = default; // the number 1
    static SupernaturalNumber one() { return {}; }
    static SupernaturalNumber from_integer(std::uint64_t n);            // n >= 1, trial-factored
    static SupernaturalNumber from_factors(std::vector<Factor> factors); // validates + normalizes
    static SupernaturalNumber prime_power(std::uint64_t p, Valuation e);

    // text form "2^inf*3^2*5"; "1" for the empty product
    static SupernaturalNumber parse(const std::string& text);
    std::string to_string() const;

    Valuation valuation(std::uint64_t p) const; // invalid-argument on non-prime p
    bool divides(const SupernaturalNumber& n) const;
    bool is_one() const { return factors_.empty(); }
    bool is_infinite_type() const; // every stored exponent INF; vacuously true for 1
    SupernaturalNumber truncate(std::uint32_t bound) const; // INF -> bound
    std::set<std::uint64_t> infinite_support() const;
    std::uint64_t to_integer() const; // requires all exponents finite and value < 2^63

    const std::vector<Factor>& factors() const { return factors_; }

    friend SupernaturalNumber gcd(const SupernaturalNumber& m, const SupernaturalNumber& n);
    friend SupernaturalNumber lcm(const SupernaturalNumber& m, const SupernaturalNumber& n);
    friend bool operator==(const SupernaturalNumber&, const SupernaturalNumber&) = default;

private:
    std::vector<Factor> factors_; // strictly ascending primes, no zero exponents
};

} // namespace flipk
