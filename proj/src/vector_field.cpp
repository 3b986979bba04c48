#include "flowinc/vector_field.hpp"

#include "flowinc/linalg.hpp"

#include <map>
#include <stdexcept>

namespace flowinc {

VectorField::VectorField(std::vector<Poly> components) : comps_(std::move(components)) {
    for (auto& c : comps_)
        if (c.nvars() != comps_.size())
            throw std::invalid_argument("VectorField: component nvars " + std::to_string(c.nvars()) + " != field dimension " +
                                        std::to_string(comps_.size()));
}

VectorField VectorField::zero(std::size_t n) { return VectorField(std::vector<Poly>(n, Poly(n))); }

VectorField VectorField::coordinate(std::size_t n, std::size_t index) {
    std::vector<Poly> c(n, Poly(n));
    c.at(index) = Poly::constant(n, Rational(1));
    return VectorField(std::move(c));
}

bool VectorField::is_zero() const {
    for (auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    if (o.nvars() != nvars()) throw std::invalid_argument("VectorField: dimension mismatch");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    if (o.nvars() != nvars()) throw std::invalid_argument("VectorField: dimension mismatch");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
}

VectorField operator*(const Rational& c, VectorField a) {
    for (auto& p : a.comps_) p *= c;
    return a;
}

VectorField operator*(const Poly& f, VectorField a) {
    for (auto& p : a.comps_) p = f * p;
    return a;
}

VectorField VectorField::operator-() const {
    VectorField r = *this;
    for (auto& p : r.comps_) p = -p;
    return r;
}

RationalVector VectorField::evaluate(std::span<const Rational> point) const {
    RationalVector out;
    out.reserve(comps_.size());
    for (auto& c : comps_) out.push_back(c.evaluate(point));
    return out;
}

std::string VectorField::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (i) s += "; ";
        s += comps_[i].to_string();
    }
    return s + "]";
}

VectorField VectorField::parse(std::string_view text, std::size_t nvars) {
    auto a = text.find('['), b = text.rfind(']');
    if (a == std::string_view::npos || b == std::string_view::npos || b < a)
        throw ParseError("vector field must be bracketed: '" + std::string(text) + "'");
    std::string_view body = text.substr(a + 1, b - a - 1);
    std::vector<Poly> comps;
    std::size_t start = 0;
    while (true) {
        auto semi = body.find(';', start);
        comps.push_back(Poly::parse(body.substr(start, semi - start), nvars));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    if (comps.size() != nvars)
        throw ParseError("vector field has " + std::to_string(comps.size()) + " components, expected " + std::to_string(nvars));
    return VectorField(std::move(comps));
}

Poly apply_field(const VectorField& X, const Poly& f) {
    if (X.nvars() != f.nvars()) throw std::invalid_argument("apply_field: dimension mismatch");
    Poly out(f.nvars());
    for (std::size_t i = 0; i < X.nvars(); ++i) {
        if (X[i].is_zero()) continue;
        Poly d = f.derivative(i);
        if (!d.is_zero()) out += X[i] * d;
    }
    return out;
}

Poly apply_field_power(const VectorField& X, const Poly& f, unsigned k) {
    Poly g = f;
    for (unsigned i = 0; i < k && !g.is_zero(); ++i) g = apply_field(X, g);
    return g;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    if (X.nvars() != Y.nvars()) throw std::invalid_argument("lie_bracket: dimension mismatch");
    std::vector<Poly> c;
    c.reserve(X.nvars());
    for (std::size_t i = 0; i < X.nvars(); ++i) c.push_back(apply_field(X, Y[i]) - apply_field(Y, X[i]));
    return VectorField(std::move(c));
}

std::string BracketWord::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(letters[i]);
    }
    return s + ")";
}

BracketValue iterated_bracket(const std::vector<VectorField>& generators, const BracketWord& w) {
    if (w.letters.empty()) throw std::invalid_argument("iterated_bracket: empty word");
    std::vector<unsigned> deg(generators.size(), 0);
    for (auto l : w.letters) {
        if (l == 0 || l > generators.size())
            throw std::out_of_range("iterated_bracket: letter " + std::to_string(l) + " outside 1.." +
                                    std::to_string(generators.size()));
        ++deg[l - 1];
    }
    VectorField acc = generators[w.letters.back() - 1];
    for (std::size_t k = w.letters.size() - 1; k-- > 0;) {
        if (acc.is_zero()) break;
        acc = lie_bracket(generators[w.letters[k] - 1], acc);
    }
    return {std::move(acc), std::move(deg)};
}

namespace {

// Linear independence of vector fields over Q, in a monomial basis that grows on demand.
class FieldSpan {
public:
    bool add(const VectorField& f) {
        auto v = encode(f);
        reduce(v);
        if (v.empty()) return false;
        Rational inv = 1 / v.begin()->second;
        for (auto& [k, c] : v) c *= inv;
        rows_.emplace(v.begin()->first, std::move(v));
        return true;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    using Sparse = std::map<std::size_t, Rational>;

    Sparse encode(const VectorField& f) {
        Sparse v;
        for (std::size_t i = 0; i < f.nvars(); ++i)
            for (const auto& [e, c] : f[i].terms()) {
                auto [it, fresh] = index_.try_emplace({i, e}, index_.size());
                v[it->second] = c;
            }
        return v;
    }

    void reduce(Sparse& v) const {
        // Pivots are smallest keys, so sweeping in increasing key order clears each once.
        auto it = v.begin();
        while (it != v.end()) {
            auto row = rows_.find(it->first);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            Rational f = it->second;
            std::size_t key = it->first;
            for (const auto& [k, c] : row->second) {
                Rational& slot = v[k];
                slot -= f * c;
            }
            for (auto jt = v.begin(); jt != v.end();) jt = jt->second == 0 ? v.erase(jt) : std::next(jt);
            it = v.upper_bound(key);
        }
    }

    std::map<std::pair<std::size_t, Exponent>, std::size_t> index_;
    std::map<std::size_t, Sparse> rows_;
};

struct Level {
    std::vector<std::pair<VectorField, BracketWord>> span;  // spans all brackets of this length
};

// Spanning sets for brackets of length 1..max_len; stops early once a level is zero.
std::vector<Level> bracket_levels(const std::vector<VectorField>& gens, unsigned max_len) {
    std::vector<Level> levels;
    Level first;
    FieldSpan s1;
    for (unsigned i = 0; i < gens.size(); ++i)
        if (s1.add(gens[i])) first.span.push_back({gens[i], BracketWord{{i + 1}}});
    levels.push_back(std::move(first));
    for (unsigned len = 2; len <= max_len && !levels.back().span.empty(); ++len) {
        Level next;
        FieldSpan s;
        for (unsigned i = 0; i < gens.size(); ++i)
            for (auto& [f, w] : levels.back().span) {
                VectorField b = lie_bracket(gens[i], f);
                if (b.is_zero() || !s.add(b)) continue;
                BracketWord nw{{i + 1}};
                nw.letters.insert(nw.letters.end(), w.letters.begin(), w.letters.end());
                next.span.push_back({std::move(b), std::move(nw)});
            }
        levels.push_back(std::move(next));
    }
    return levels;
}

}  // namespace

GeneratedAlgebra generated_algebra(const std::vector<VectorField>& generators, unsigned step_cap) {
    if (step_cap < 1) throw std::invalid_argument("generated_algebra: step_cap must be >= 1");
    auto levels = bracket_levels(generators, step_cap + 1);
    GeneratedAlgebra out;
    FieldSpan all;
    for (unsigned len = 1; len <= levels.size(); ++len) {
        const auto& lv = levels[len - 1];
        if (lv.span.empty()) break;
        if (len == step_cap + 1) {
            out.cap_exceeded = true;
            break;
        }
        out.step = len;
        for (auto& fw : lv.span)
            if (all.add(fw.first)) out.basis.push_back(fw);
    }
    return out;
}

HormanderResult hormander_check(const std::vector<VectorField>& fields, std::span<const Rational> point,
                                unsigned order_cap) {
    HormanderResult out;
    if (fields.empty()) return out;
    const std::size_t n = fields[0].nvars();
    if (point.size() != n) throw std::invalid_argument("hormander_check: point dimension mismatch");
    auto levels = bracket_levels(fields, order_cap);
    SpanTracker values(n);
    for (unsigned len = 1; len <= levels.size(); ++len) {
        for (auto& [f, w] : levels[len - 1].span) values.add(f.evaluate(point));
        out.rank = values.rank();
        if (out.rank == n && !out.order) out.order = len;
    }
    return out;
}

ExponentResult continuum_exponents(const std::vector<BracketWord>& words, unsigned m) {
    if (words.empty()) throw std::invalid_argument("continuum_exponents: no words");
    std::vector<unsigned> deg(m, 0);
    unsigned total = 0;
    for (auto& w : words)
        for (auto l : w.letters) {
            if (l == 0 || l > m) throw std::out_of_range("continuum_exponents: letter outside 1..m");
            ++deg[l - 1];
            ++total;
        }
    ExponentResult out;
    out.degenerate = total == 1;
    for (unsigned j = 0; j < m; ++j) {
        if (deg[j] == 0)
            throw std::domain_error("continuum_exponents: generator " + std::to_string(j + 1) + " unused (zero denominator)");
        Rational p(Integer(total - 1), Integer(deg[j]));
        p.canonicalize();
        out.p.push_back(p);
    }
    return out;
}

}  // namespace flowinc
