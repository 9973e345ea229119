#include "modgb/io.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace modgb {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t line;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line, pos + 1, what); }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    mpz_class integer() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return mpz_class(text.substr(start, pos - start));
    }

    std::string ident() {
        skip_ws();
        const std::size_t start = pos;
        if (pos >= text.size() ||
            !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            fail("expected a variable name");
        ++pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }
};

unsigned var_index(Cursor& cur, const std::string& name, const std::vector<std::string>& vars) {
    for (std::size_t v = 0; v < vars.size(); ++v)
        if (vars[v] == name) return static_cast<unsigned>(v);
    cur.fail("unknown variable '" + name + "'");
}

}  // namespace

RatPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                         std::size_t line_no) {
    Cursor cur{text, line_no};
    std::vector<Term<mpq_class>> terms;
    const RatRing ring;

    bool first = true;
    while (!cur.done()) {
        int sign = 1;
        if (cur.eat('-'))
            sign = -1;
        else if (cur.eat('+')) {
            if (first) cur.fail("unexpected '+'");
        } else if (!first) {
            cur.fail("expected '+' or '-' between terms");
        }
        first = false;

        mpq_class coeff(sign);
        bool saw_number = false;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            saw_number = true;
            const mpz_class num = cur.integer();
            mpz_class den = 1;
            if (cur.eat('/')) {
                den = cur.integer();
                if (den == 0) cur.fail("zero denominator");
            }
            coeff *= mpq_class(num, den);
            coeff.canonicalize();
        }

        std::vector<unsigned long> exps(vars.size(), 0);
        bool saw_factor = false;
        for (;;) {
            if (saw_number || saw_factor) {
                if (!cur.eat('*')) break;
            } else if (!(std::isalpha(static_cast<unsigned char>(cur.peek())) ||
                         cur.peek() == '_')) {
                break;
            }
            const std::string name = cur.ident();
            const unsigned v = var_index(cur, name, vars);
            unsigned long e = 1;
            if (cur.eat('^')) {
                const mpz_class ez = cur.integer();
                if (ez > Monomial::max_degree) throw DegreeOverflow("exponent exceeds 16 bits");
                e = ez.get_ui();
            }
            exps[v] += e;
            if (exps[v] > Monomial::max_degree) throw DegreeOverflow("exponent exceeds 16 bits");
            saw_factor = true;
        }
        if (!saw_number && !saw_factor) cur.fail("expected a term");

        std::vector<unsigned> packed(exps.begin(), exps.end());
        terms.push_back({Monomial::pack(std::span<const unsigned>(packed.data(), packed.size())),
                         std::move(coeff)});
    }
    if (terms.empty()) cur.fail("empty polynomial");
    return normalize(ring, std::move(terms));
}

IdealSpec parse_ideal(std::istream& in) {
    IdealSpec ideal;
    std::string line;
    std::size_t line_no = 0;
    bool have_vars = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);

        if (!have_vars) {
            if (line.rfind("vars:", 0) != 0)
                throw ParseError(line_no, 1, "expected 'vars:' as the first content line");
            std::stringstream vs(line.substr(5));
            std::string name;
            while (std::getline(vs, name, ',')) {
                const std::size_t s = name.find_first_not_of(" \t");
                if (s == std::string::npos) throw ParseError(line_no, 1, "empty variable name");
                const std::size_t e = name.find_last_not_of(" \t");
                ideal.vars.push_back(name.substr(s, e - s + 1));
            }
            if (ideal.vars.empty()) throw ParseError(line_no, 1, "no variables declared");
            if (ideal.vars.size() > Monomial::max_vars)
                throw TooManyVariables("more than 15 variables");
            have_vars = true;
            continue;
        }
        RatPoly g = parse_polynomial(line, ideal.vars, line_no);
        if (g.zero()) throw ParseError(line_no, 1, "generator is zero");
        ideal.generators.push_back(std::move(g));
    }
    if (!have_vars) throw ParseError(line_no, 1, "missing 'vars:' line");
    return ideal;
}

IdealSpec parse_ideal_text(const std::string& text) {
    std::istringstream in(text);
    return parse_ideal(in);
}

namespace {

template <class C>
std::string coeff_str(const C& c);

template <>
std::string coeff_str<mpq_class>(const mpq_class& c) {
    return c.get_str();
}
template <>
std::string coeff_str<mpz_class>(const mpz_class& c) {
    return c.get_str();
}

template <class C>
std::string format_poly(const Polynomial<C>& f, const std::vector<std::string>& vars) {
    if (f.zero()) return "0";
    std::string out;
    for (std::size_t t = 0; t < f.size(); ++t) {
        const C& c = f.coeff(t);
        const bool negative = sgn(c) < 0;
        const C mag = negative ? C(-c) : c;
        if (t == 0) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        const Monomial& m = f.mono(t);
        std::string factors;
        for (unsigned v = 0; v < m.nvars(); ++v) {
            const unsigned e = m.exponent(v);
            if (e == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += vars[v];
            if (e > 1) factors += "^" + std::to_string(e);
        }
        if (factors.empty()) {
            out += coeff_str(mag);
        } else if (mag == 1) {
            out += factors;
        } else {
            out += coeff_str(mag) + "*" + factors;
        }
    }
    return out;
}

}  // namespace

std::string format_polynomial(const RatPoly& f, const std::vector<std::string>& vars) {
    return format_poly(f, vars);
}
std::string format_polynomial(const IntPoly& f, const std::vector<std::string>& vars) {
    return format_poly(f, vars);
}

namespace {

template <class C>
void print_basis_impl(std::ostream& os, const std::vector<Polynomial<C>>& basis,
                      const std::vector<std::string>& vars) {
    os << "vars:";
    for (std::size_t v = 0; v < vars.size(); ++v) os << (v ? ", " : " ") << vars[v];
    os << '\n';
    for (const auto& g : basis) os << format_poly(g, vars) << '\n';
}

}  // namespace

void print_basis(std::ostream& os, const std::vector<RatPoly>& basis,
                 const std::vector<std::string>& vars) {
    print_basis_impl(os, basis, vars);
}
void print_basis(std::ostream& os, const std::vector<IntPoly>& basis,
                 const std::vector<std::string>& vars) {
    print_basis_impl(os, basis, vars);
}

}  // namespace modgb
