#include "gtcf/parse.hpp"

#include "gtcf/errors.hpp"

#include <cctype>

namespace gtcf::algebra {

namespace {

constexpr unsigned kMaxExponent = 65535;

struct Parser {
    const RingPtr& ring;
    const std::string& text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError("parse error at position " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }

    std::string read_digits() {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return text.substr(start, pos - start);
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
    }

    Poly parse_expr() {
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Poly p = parse_term();
        if (neg) p = -p;
        while (true) {
            if (accept('+'))
                p = p + parse_term();
            else if (accept('-'))
                p = p - parse_term();
            else
                break;
        }
        return p;
    }

    Poly parse_term() {
        Poly p = parse_factor();
        while (accept('*')) p = p * parse_factor();
        return p;
    }

    Poly parse_factor() {
        bool neg = accept('-');
        Poly p = parse_power();
        return neg ? -p : p;
    }

    Poly parse_power() {
        Poly base = parse_atom();
        if (accept('^')) {
            skip_ws();
            std::string digits = read_digits();
            if (digits.size() > 5) fail("exponent too large");
            unsigned long e = std::stoul(digits);
            if (e > kMaxExponent) fail("exponent too large");
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Poly parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Poly p = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                std::string den = read_digits();
                if (rat_from_string(den) == 0) fail("zero denominator");
                return Poly::constant(ring, rat_from_string(num + "/" + den));
            }
            return Poly::constant(ring, rat_from_string(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size() && ident_char(text[pos])) ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "zeta") {
                if (ring->field().is_rational()) {
                    pos = start;
                    fail("'zeta' requires a cyclotomic base field");
                }
                return Poly::constant(ring, ring->field().zeta());
            }
            int idx = ring->var_index(name);
            if (idx < 0) {
                pos = start;
                fail("unknown variable '" + name + "'");
            }
            return Poly::variable(ring, static_cast<size_t>(idx));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

Poly parse_poly(const RingPtr& ring, const std::string& text) {
    Parser p{ring, text};
    Poly result = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return result;
}

} // namespace gtcf::algebra
