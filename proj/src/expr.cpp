#include "flipk/expr.hpp"

#include <cctype>

#include "flipk/errors.hpp"

namespace flipk {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    bool eat(const std::string& word) {
        skip_ws();
        if (s.compare(i, word.size(), word) == 0) { i += word.size(); return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& expected) {
        std::string tok = i < s.size() ? s.substr(i, 8) : "<end>";
        throw ParseError("expected " + expected + " at '" + tok + "' in \"" + s + "\"");
    }
    Int number() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("number");
        Int v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            ++i;
        }
        return v;
    }
    std::string bracketed() {
        if (!eat('[')) fail("'['");
        std::size_t start = i;
        while (i < s.size() && s[i] != ']') ++i;
        if (i >= s.size()) fail("']'");
        std::string body = s.substr(start, i - start);
        ++i;
        return body;
    }
};

void append_term(Decomposition& out, Cursor& c) {
    c.skip_ws();
    if (c.eat('0')) return; // zero summand
    if (c.eat("QZ")) {
        // Q_m/Z: Prufer for infinite exponents, primary cyclic for finite ones
        SupernaturalNumber m = SupernaturalNumber::parse(c.bracketed());
        for (const auto& [p, e] : m.factors())
            out.add(e.is_infinite() ? make_prufer(p) : make_cyclic(p, e.finite_value()));
        return;
    }
    if (c.eat('Q')) {
        SupernaturalNumber n = SupernaturalNumber::parse(c.bracketed());
        out.add(make_qloc(n.infinite_support())); // finite part shifts by finite index only
        return;
    }
    if (c.eat('Z')) {
        if (c.eat('/')) {
            Int k = c.number();
            if (k < 2) throw ParseError("Z/" + k.str() + " is malformed (use 0 for the zero group)");
            for (auto [p, a] : factorize(k)) out.add(make_cyclic(p, a));
            return;
        }
        out.add(FreeZ{});
        return;
    }
    c.fail("a group term (0, Z, Z/k, Q[..], QZ[..])");
}

} // namespace

Decomposition parse_group_expr(const std::string& text) {
    Cursor c{text};
    Decomposition out;
    if (c.done()) throw ParseError("empty group expression");
    append_term(out, c);
    while (!c.done()) {
        if (!c.eat('+')) c.fail("'+'");
        append_term(out, c);
    }
    return out;
}

std::string format_decomposition(const Decomposition& d) {
    if (d.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out += " + ";
        out += atom_name(d[i]);
    }
    return out;
}

GradedGroup parse_graded(const std::string& k0, const std::string& k1) {
    return GradedGroup{parse_group_expr(k0), parse_group_expr(k1)};
}

} // namespace flipk
