#include "flipk/supernat.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "flipk/errors.hpp"

namespace flipk {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t Valuation::finite_value() const {
    if (inf_) throw std::invalid_argument("finite_value() on INF exponent");
    return val_;
}

std::string Valuation::to_string() const {
    return inf_ ? "inf" : std::to_string(val_);
}

SupernaturalNumber SupernaturalNumber::from_integer(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("supernatural number must be positive");
    std::vector<Factor> fs;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        std::uint32_t e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) fs.emplace_back(p, Valuation::finite(e));
    }
    if (n > 1) fs.emplace_back(n, Valuation::finite(1));
    SupernaturalNumber s;
    s.factors_ = std::move(fs);
    return s;
}

SupernaturalNumber SupernaturalNumber::from_factors(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    std::vector<Factor> merged;
    for (const auto& [p, e] : factors) {
        if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
        if (e.is_zero()) continue;
        if (!merged.empty() && merged.back().first == p)
            throw std::invalid_argument("duplicate prime: " + std::to_string(p));
        merged.emplace_back(p, e);
    }
    SupernaturalNumber s;
    s.factors_ = std::move(merged);
    return s;
}

SupernaturalNumber SupernaturalNumber::prime_power(std::uint64_t p, Valuation e) {
    return from_factors({{p, e}});
}

Valuation SupernaturalNumber::valuation(std::uint64_t p) const {
    if (!is_prime(p)) throw std::invalid_argument("valuation at non-prime " + std::to_string(p));
    for (const auto& [q, e] : factors_)
        if (q == p) return e;
    return Valuation::finite(0);
}

bool SupernaturalNumber::divides(const SupernaturalNumber& n) const {
    for (const auto& [p, e] : factors_)
        if (!(e <= n.valuation(p))) return false;
    return true;
}

bool SupernaturalNumber::is_infinite_type() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const Factor& f) { return f.second.is_infinite(); });
}

SupernaturalNumber SupernaturalNumber::truncate(std::uint32_t bound) const {
    if (bound < 1) throw std::invalid_argument("truncate bound must be >= 1");
    std::vector<Factor> fs;
    for (const auto& [p, e] : factors_)
        fs.emplace_back(p, e.is_infinite() ? Valuation::finite(bound) : e);
    SupernaturalNumber s;
    s.factors_ = std::move(fs);
    return s;
}

std::set<std::uint64_t> SupernaturalNumber::infinite_support() const {
    std::set<std::uint64_t> out;
    for (const auto& [p, e] : factors_)
        if (e.is_infinite()) out.insert(p);
    return out;
}

std::uint64_t SupernaturalNumber::to_integer() const {
    std::uint64_t v = 1;
    const std::uint64_t cap = std::uint64_t(1) << 62;
    for (const auto& [p, e] : factors_) {
        if (e.is_infinite()) throw std::invalid_argument("to_integer() on infinite exponent");
        for (std::uint32_t i = 0; i < e.finite_value(); ++i) {
            if (v > cap / p) throw ResourceLimitError("truncated supernatural exceeds integer range");
            v *= p;
        }
    }
    return v;
}

SupernaturalNumber gcd(const SupernaturalNumber& m, const SupernaturalNumber& n) {
    std::vector<SupernaturalNumber::Factor> fs;
    for (const auto& [p, e] : m.factors_) {
        Valuation g = min(e, n.valuation(p));
        if (!g.is_zero()) fs.emplace_back(p, g);
    }
    return SupernaturalNumber::from_factors(std::move(fs));
}

SupernaturalNumber lcm(const SupernaturalNumber& m, const SupernaturalNumber& n) {
    std::vector<SupernaturalNumber::Factor> fs = m.factors_;
    for (const auto& [p, e] : n.factors_) {
        bool found = false;
        for (auto& [q, f] : fs)
            if (q == p) { f = max(f, e); found = true; }
        if (!found) fs.emplace_back(p, e);
    }
    return SupernaturalNumber::from_factors(std::move(fs));
}

namespace {

std::uint64_t smallest_prime_factor(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return d;
    return n;
}

std::uint64_t parse_uint(const std::string& s, std::size_t& i) {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError("expected number at '" + s.substr(i) + "'");
    std::uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        if (v > (std::uint64_t(1) << 62)) throw ParseError("number too large in '" + s + "'");
        ++i;
    }
    return v;
}

} // namespace

SupernaturalNumber SupernaturalNumber::parse(const std::string& text) {
    std::size_t i = 0;
    auto skip = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    // multiply semantics: composite bases are factorized, repeated primes accumulate
    std::map<std::uint64_t, Valuation> acc;
    auto bump = [&](std::uint64_t p, const Valuation& e) {
        if (e.is_zero()) return;
        auto [it, fresh] = acc.emplace(p, e);
        if (fresh) return;
        if (it->second.is_infinite() || e.is_infinite())
            it->second = Valuation::inf();
        else
            it->second = Valuation::finite(it->second.finite_value() + e.finite_value());
    };
    skip();
    if (i >= text.size()) throw ParseError("empty supernatural literal");
    while (true) {
        skip();
        std::uint64_t base = parse_uint(text, i);
        Valuation e = Valuation::finite(1);
        skip();
        if (i < text.size() && text[i] == '^') {
            ++i;
            skip();
            if (text.compare(i, 3, "inf") == 0) {
                e = Valuation::inf();
                i += 3;
            } else {
                std::uint64_t v = parse_uint(text, i);
                if (v > 0xffffffffull) throw ParseError("exponent too large in '" + text + "'");
                e = Valuation::finite(static_cast<std::uint32_t>(v));
            }
        }
        if (base == 0) throw ParseError("'0' is not a supernatural factor in '" + text + "'");
        // base 1 contributes nothing regardless of exponent
        for (std::uint64_t b = base; b > 1;) {
            std::uint64_t p = smallest_prime_factor(b);
            std::uint32_t a = 0;
            while (b % p == 0) {
                b /= p;
                ++a;
            }
            if (e.is_infinite()) {
                bump(p, Valuation::inf());
            } else {
                std::uint64_t total = std::uint64_t(a) * e.finite_value();
                if (total > 0xffffffffull) throw ParseError("exponent too large in '" + text + "'");
                bump(p, Valuation::finite(static_cast<std::uint32_t>(total)));
            }
        }
        skip();
        if (i >= text.size()) break;
        if (text[i] != '*') throw ParseError(std::string("unexpected token '") + text[i] + "' in supernatural literal");
        ++i;
    }
    std::vector<Factor> fs(acc.begin(), acc.end());
    return from_factors(std::move(fs));
}

std::string SupernaturalNumber::to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (k) out += '*';
        out += std::to_string(factors_[k].first);
        const Valuation& e = factors_[k].second;
        if (e.is_infinite()) out += "^inf";
        else if (e.finite_value() != 1) out += "^" + std::to_string(e.finite_value());
    }
    return out;
}

} // namespace flipk
