#include "flowinc/poly.hpp"

#include <cctype>
#include <stdexcept>

namespace flowinc {

unsigned total_degree(const Exponent& e) {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
}

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("Poly::variable: index out of range");
    Exponent e(nvars, 0);
    e[index] = 1;
    return monomial(std::move(e), Rational(1));
}

Poly Poly::monomial(Exponent e, const Rational& c) {
    Poly p(e.size());
    p.add_term(e, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && flowinc::total_degree(terms_.begin()->first) == 0);
}

Rational Poly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

Rational Poly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(flowinc::total_degree(terms_.begin()->first));
}

unsigned Poly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_) throw std::invalid_argument("Poly::add_term: exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Poly: nvars mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Poly: nvars mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("Poly: nvars mismatch");
    Poly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [e, v] : out.terms_) v = -v;
    return out;
}

Poly Poly::pow(unsigned k) const {
    Poly result = constant(nvars_, Rational(1));
    Poly base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

Poly Poly::derivative(std::size_t var) const {
    if (var >= nvars_) throw std::out_of_range("Poly::derivative: variable out of range");
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent d = e;
        --d[var];
        out.add_term(d, c * e[var]);
    }
    return out;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("Poly::evaluate: point dimension mismatch");
    return evaluate_in<Rational>(*this, point, Rational(1), Rational(0));
}

Poly Poly::compose(std::span<const Poly> subs) const {
    if (subs.size() != nvars_) throw std::invalid_argument("Poly::compose: substitution count mismatch");
    std::size_t target = subs.empty() ? 0 : subs[0].nvars();
    for (auto& s : subs)
        if (s.nvars() != target) throw std::invalid_argument("Poly::compose: substitutions disagree on nvars");
    return evaluate_in<Poly>(*this, subs, constant(target, Rational(1)), Poly(target));
}

Poly Poly::embed(std::size_t new_nvars, std::span<const std::size_t> var_map) const {
    if (var_map.size() != nvars_) throw std::invalid_argument("Poly::embed: map size mismatch");
    Poly out(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponent ne(new_nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (var_map[i] >= new_nvars) throw std::out_of_range("Poly::embed: target out of range");
            ne[var_map[i]] += e[i];
        }
        out.add_term(ne, c);
    }
    return out;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += flowinc::to_string(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            out += "*x" + std::to_string(i + 1) + "^" + std::to_string(e[i]);
        }
    }
    return out;
}

namespace {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    std::string digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError("expected digits at offset " + std::to_string(start) + " in '" + std::string(s) + "'");
        return std::string(s.substr(start, pos - start));
    }
};

}  // namespace

Poly Poly::parse(std::string_view text, std::size_t nvars) {
    Cursor cur{text};
    Poly out(nvars);
    if (cur.peek() == '0' && text.find_first_not_of(" \t0") == std::string_view::npos) return out;
    if (cur.done()) throw ParseError("empty polynomial text");
    bool first_term = true;
    while (!cur.done()) {
        Rational coef(1);
        bool saw_sign = false;
        while (cur.peek() == '+' || cur.peek() == '-') {
            if (cur.peek() == '-') coef = -coef;
            ++cur.pos;
            saw_sign = true;
        }
        if (!first_term && !saw_sign) throw ParseError("expected '+' or '-' between terms in '" + std::string(text) + "'");
        first_term = false;
        Exponent e(nvars, 0);
        bool any_factor = false;
        while (true) {
            char c = cur.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                Integer num(cur.digits());
                Integer den(1);
                if (cur.peek() == '/') {
                    ++cur.pos;
                    den = Integer(cur.digits());
                    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
                }
                Rational q(num, den);
                q.canonicalize();
                coef *= q;
            } else if (c == 'x') {
                ++cur.pos;
                std::size_t idx = std::stoul(cur.digits());
                if (idx == 0 || idx > nvars)
                    throw ParseError("variable x" + std::to_string(idx) + " out of range for " + std::to_string(nvars) + " variables");
                unsigned power = 1;
                if (cur.peek() == '^') {
                    ++cur.pos;
                    power = static_cast<unsigned>(std::stoul(cur.digits()));
                }
                e[idx - 1] += power;
            } else {
                throw ParseError("unexpected character '" + std::string(1, c) + "' in '" + std::string(text) + "'");
            }
            any_factor = true;
            if (cur.peek() == '*') {
                ++cur.pos;
                continue;
            }
            break;
        }
        if (!any_factor) throw ParseError("empty term in '" + std::string(text) + "'");
        out.add_term(e, coef);
    }
    return out;
}

}  // namespace flowinc
