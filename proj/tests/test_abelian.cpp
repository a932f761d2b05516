#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "flipk/abelian.hpp"
#include "flipk/errors.hpp"
#include "flipk/expr.hpp"
#include "flipk/smith.hpp"

using namespace flipk;

namespace {

Decomposition dec(const std::string& s) { return parse_group_expr(s); }

// isomorphism invariants computable without canonical forms: free/divisible
// torsion-free structure plus p^k-torsion growth profiles
struct Fingerprint {
    std::size_t free_rank = 0;
    std::vector<std::vector<std::uint64_t>> qloc_supports;
    std::map<std::uint64_t, std::vector<std::uint64_t>> torsion_profile; // p -> log_p |T_{p^k}|, k=1..6
    auto tie() const { return std::tie(free_rank, qloc_supports, torsion_profile); }
    friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
        return a.tie() == b.tie();
    }
};

Fingerprint fingerprint(const Decomposition& d) {
    Fingerprint f;
    for (const Atom& x : d) {
        if (std::holds_alternative<FreeZ>(x)) {
            ++f.free_rank;
        } else if (const auto* q = std::get_if<QLoc>(&x)) {
            f.qloc_supports.push_back(q->primes);
        } else if (const auto* c = std::get_if<Cyclic>(&x)) {
            auto& prof = f.torsion_profile[c->p];
            prof.resize(6, 0);
            for (std::uint64_t k = 1; k <= 6; ++k) prof[k - 1] += std::min<std::uint64_t>(k, c->a);
        } else {
            const auto& pr = std::get<Prufer>(x);
            auto& prof = f.torsion_profile[pr.p];
            prof.resize(6, 0);
            for (std::uint64_t k = 1; k <= 6; ++k) prof[k - 1] += k;
        }
    }
    std::sort(f.qloc_supports.begin(), f.qloc_supports.end());
    return f;
}

std::string random_expr(std::mt19937& rng) {
    static const std::vector<std::string> atoms = {
        "Z",          "Z/2",        "Z/3",          "Z/4",          "Z/8",
        "Z/6",        "Z/12",       "Z/18",         "Z/20",         "Z/27",
        "Q[2^inf]",   "Q[3^inf*5]", "Q[2^inf*3^inf]", "Q[12]",      "QZ[2^inf]",
        "QZ[2^inf*3]", "QZ[3^2]",   "QZ[2*3*5]",    "QZ[5^inf*7]"};
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
    int n = count(rng);
    if (n == 0) return "0";
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (i) out += " + ";
        out += atoms[pick(rng)];
    }
    return out;
}

} // namespace

TEST_CASE("decompose on pinned examples") {
    CHECK(decompose(cyclic_presentation(6)) == dec("Z/2 + Z/3"));
    CHECK(decompose(free_presentation(2)) == dec("Z + Z"));
    CHECK(decompose(PresentationMatrix{IntMatrix{{2, 0, 0}, {0, 4, 0}}}) ==
          dec("Z/2 + Z/4 + Z"));
}

TEST_CASE("expression canonicalization on pinned examples") {
    CHECK(dec("QZ[2^inf*3]") == Decomposition({make_prufer(2), make_cyclic(3, 1)}));
    CHECK(dec("Q[12]") == Decomposition({FreeZ{}}));
    CHECK(dec("Z/12") == Decomposition({make_cyclic(2, 2), make_cyclic(3, 1)}));
    CHECK(dec("0").is_zero());
    CHECK(dec("Q[2^inf*7]") == Decomposition({make_qloc({2})}));
    CHECK_THROWS_AS(dec("Z/0"), ParseError);
    CHECK_THROWS_AS(dec("Z/1"), ParseError);
    CHECK_THROWS_AS(dec("Z/2 + bogus"), ParseError);
}

TEST_CASE("formatting round-trips canonically") {
    std::mt19937 rng(20240819);
    for (int t = 0; t < 300; ++t) {
        Decomposition d = dec(random_expr(rng));
        std::string printed = format_decomposition(d);
        CHECK(parse_group_expr(printed) == d);
        CHECK(format_decomposition(parse_group_expr(printed)) == printed);
    }
}

TEST_CASE("is_isomorphic on pinned examples") {
    CHECK(is_isomorphic(dec("Z/2 + Z/3"), dec("Z/6")));
    CHECK_FALSE(is_isomorphic(dec("QZ[2^inf]"), dec("Z/18446744073709551616"))); // 2^64
    CHECK(is_isomorphic(dec("Q[2^inf]"), dec("Q[2^inf*7]")));
}

TEST_CASE("exponent_divides_two") {
    CHECK(exponent_divides_two(dec("Z/2 + Z/2")));
    CHECK_FALSE(exponent_divides_two(dec("Z/4")));
    CHECK(exponent_divides_two(dec("0")));
}

TEST_CASE("atoms sort canonically") {
    Decomposition d;
    d.add(make_qloc({2}));
    d.add(make_prufer(3));
    d.add(make_cyclic(5, 1));
    d.add(FreeZ{});
    d.add(make_cyclic(2, 2));
    CHECK(format_decomposition(d) == "Z + Z/4 + Z/5 + QZ[3^inf] + Q[2^inf]");
}

TEST_CASE("decompose is invariant under unimodular row and column operations") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> entry(-6, 6), coef(-3, 3);
    for (int t = 0; t < 120; ++t) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
        Decomposition before = decompose(PresentationMatrix{m});
        std::uniform_int_distribution<std::size_t> ri(0, r - 1), ci(0, c - 1);
        for (int op = 0; op < 12; ++op) {
            std::size_t a = ri(rng), b = ri(rng), x = ci(rng), y = ci(rng);
            switch (op % 4) {
                case 0:
                    if (a != b) m.add_row_multiple(a, b, coef(rng));
                    break;
                case 1:
                    if (x != y) m.add_col_multiple(x, y, coef(rng));
                    break;
                case 2:
                    m.swap_rows(a, b);
                    break;
                default:
                    m.negate_col(x);
            }
        }
        CHECK(decompose(PresentationMatrix{m}) == before);
    }
}

TEST_CASE("finite group order equals the product of invariant factors") {
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int t = 0; t < 100; ++t) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        std::size_t n = dim(rng);
        IntMatrix m(n + 1, n); // overdetermined to make finite groups likely
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
        Decomposition d = decompose(PresentationMatrix{m});
        if (!d.finitely_generated() || d.torsion_free_rank() != 0) continue;
        Int order = 1;
        for (const Atom& x : d) order *= cyclic_order(std::get<Cyclic>(x));
        Int diag_product = 1;
        for (const Int& v : smith_normal_form(m).diagonal()) diag_product *= v;
        CHECK(order == diag_product);
    }
}

TEST_CASE("isomorphism agrees with structure fingerprints") {
    std::mt19937 rng(20240820);
    std::vector<Decomposition> pool;
    for (int t = 0; t < 120; ++t) pool.push_back(dec(random_expr(rng)));
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i; j < pool.size(); ++j)
            CHECK(is_isomorphic(pool[i], pool[j]) == (fingerprint(pool[i]) == fingerprint(pool[j])));
}

TEST_CASE("presentation_of realizes finitely generated decompositions") {
    std::mt19937 rng(13);
    for (int t = 0; t < 100; ++t) {
        Decomposition d = dec(random_expr(rng));
        if (!d.finitely_generated()) {
            CHECK_THROWS_AS(presentation_of(d), UnsupportedInputError);
            continue;
        }
        CHECK(decompose(presentation_of(d)) == d);
    }
}
