#include "flowinc/liealg.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace flowinc {

NilpotentAlgebra::NilpotentAlgebra(std::size_t dim, unsigned step)
    : dim_(dim), step_(step), c_(dim * dim * dim, Rational(0)) {}

NilpotentAlgebra NilpotentAlgebra::heisenberg() {
    NilpotentAlgebra A(3, 2);
    A.c(0, 1, 2) = 1;
    A.c(1, 0, 2) = -1;
    return A;
}

NilpotentAlgebra NilpotentAlgebra::abelian(std::size_t dim) { return NilpotentAlgebra(dim, 1); }

NilpotentAlgebra NilpotentAlgebra::free_nilpotent(std::size_t r, unsigned step) {
    if (r == 0 || step == 0) throw std::invalid_argument("free_nilpotent: need at least one generator and step >= 1");
    // Lie elements inside the truncated tensor algebra, one coordinate block per word length.
    struct Element {
        unsigned len;
        RationalVector words;  // indexed by the base-r value of the word
    };
    auto power = [&](unsigned k) {
        std::size_t p = 1;
        for (unsigned i = 0; i < k; ++i) p *= r;
        return p;
    };
    auto mul = [&](const Element& a, const Element& b) {
        Element out{a.len + b.len, RationalVector(power(a.len + b.len), Rational(0))};
        const std::size_t shift = power(b.len);
        for (std::size_t i = 0; i < a.words.size(); ++i) {
            if (a.words[i] == 0) continue;
            for (std::size_t j = 0; j < b.words.size(); ++j)
                if (b.words[j] != 0) out.words[i * shift + j] += a.words[i] * b.words[j];
        }
        return out;
    };
    auto commutator = [&](const Element& a, const Element& b) {
        Element ab = mul(a, b), ba = mul(b, a);
        for (std::size_t i = 0; i < ab.words.size(); ++i) ab.words[i] -= ba.words[i];
        return ab;
    };

    std::vector<std::vector<Element>> levels(step + 1);
    for (std::size_t i = 0; i < r; ++i) {
        Element e{1, RationalVector(r, Rational(0))};
        e.words[i] = 1;
        levels[1].push_back(e);
    }
    for (unsigned k = 2; k <= step; ++k) {
        SpanTracker span(power(k));
        for (auto& x : levels[1])
            for (auto& y : levels[k - 1]) {
                Element b = commutator(x, y);
                if (span.add(b.words)) levels[k].push_back(b);
            }
    }
    std::vector<Element> basis;
    std::vector<std::size_t> offset(step + 2, 0);
    for (unsigned k = 1; k <= step; ++k) {
        offset[k] = basis.size();
        basis.insert(basis.end(), levels[k].begin(), levels[k].end());
    }
    offset[step + 1] = basis.size();

    NilpotentAlgebra A(basis.size(), step);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            unsigned len = basis[i].len + basis[j].len;
            if (i == j || len > step) continue;
            Element b = commutator(basis[i], basis[j]);
            RationalMatrix lvl;
            for (auto& e : levels[len]) lvl.push_back(e.words);
            RationalVector co = coordinates_in(lvl, b.words);
            for (std::size_t k = 0; k < co.size(); ++k) A.c(i, j, offset[len] + k) = co[k];
        }
    return A;
}

NilpotentAlgebra NilpotentAlgebra::in_basis(const RationalMatrix& basis) const {
    if (basis.size() != dim_ || rank(basis, dim_) != dim_)
        throw std::invalid_argument("in_basis: need " + std::to_string(dim_) + " independent vectors");
    NilpotentAlgebra B(dim_, step_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            RationalVector co = coordinates_in(basis, bracket(basis[i], basis[j]));
            for (std::size_t k = 0; k < dim_; ++k) B.c(i, j, k) = co[k];
        }
    return B;
}

NilpotentAlgebra NilpotentAlgebra::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<NilpotentAlgebra> A;
    std::map<std::array<std::size_t, 3>, Rational> listed;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto count = [&](const std::string& s) -> std::size_t {
            std::size_t pos = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(s, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != s.size() || s.empty() || s[0] == '-') throw ParseError("expected a count, got '" + s + "'", line_no);
            return v;
        };
        if (!A) {
            if (tok.size() != 2) throw ParseError("header must be 'dim step'", line_no);
            A.emplace(count(tok[0]), static_cast<unsigned>(count(tok[1])));
            if (A->step() == 0) throw ParseError("step must be >= 1", line_no);
            continue;
        }
        if (tok.size() != 4) throw ParseError("expected 'i j k p/q'", line_no);
        std::array<std::size_t, 3> idx{};
        for (int m = 0; m < 3; ++m) {
            idx[m] = count(tok[m]);
            if (idx[m] < 1 || idx[m] > A->dim())
                throw ParseError("index " + tok[m] + " outside 1.." + std::to_string(A->dim()), line_no);
            --idx[m];
        }
        Rational v;
        try {
            v = parse_rational(tok[3]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
        if (listed.count(idx)) throw ParseError("entry listed twice", line_no);
        listed[idx] = v;
    }
    if (!A) throw ParseError("empty algebra description", line_no);
    for (auto& [idx, v] : listed) {
        A->c(idx[0], idx[1], idx[2]) = v;
        if (!listed.count({idx[1], idx[0], idx[2]})) A->c(idx[1], idx[0], idx[2]) = -v;
    }
    return *A;
}

NilpotentAlgebra NilpotentAlgebra::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string NilpotentAlgebra::to_string() const {
    std::ostringstream os;
    os << dim_ << " " << step_ << "\n";
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                if (c(i, j, k) != 0) os << i + 1 << " " << j + 1 << " " << k + 1 << " " << flowinc::to_string(c(i, j, k)) << "\n";
    return os.str();
}

std::string AlgebraReport::to_string() const {
    std::ostringstream os;
    os << (valid() ? "valid" : "invalid");
    if (step)
        os << " step " << *step << " (declared " << declared_step << ")";
    else
        os << " not nilpotent";
    if (antisymmetry_violation) {
        auto& v = *antisymmetry_violation;
        os << "; antisymmetry fails at c(" << v[0] + 1 << "," << v[1] + 1 << "," << v[2] + 1 << ")";
    }
    if (jacobi_violation) {
        auto& v = *jacobi_violation;
        os << "; Jacobi fails for (" << v[0] + 1 << "," << v[1] + 1 << "," << v[2] + 1 << ")";
    }
    return os.str();
}

namespace {

RationalVector unit(std::size_t n, std::size_t i) {
    RationalVector v(n, Rational(0));
    v[i] = 1;
    return v;
}

bool is_zero(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

AlgebraReport check_algebra(const NilpotentAlgebra& A) {
    AlgebraReport r;
    r.declared_step = A.step();
    const std::size_t n = A.dim();
    for (std::size_t i = 0; i < n && !r.antisymmetry_violation; ++i)
        for (std::size_t j = i; j < n && !r.antisymmetry_violation; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (A.c(i, j, k) + A.c(j, i, k) != 0) {
                    r.antisymmetry_violation = {i, j, k};
                    break;
                }
    for (std::size_t i = 0; i < n && !r.jacobi_violation; ++i)
        for (std::size_t j = i + 1; j < n && !r.jacobi_violation; ++j)
            for (std::size_t l = j + 1; l < n; ++l) {
                auto ei = unit(n, i), ej = unit(n, j), el = unit(n, l);
                auto s = A.bracket(ei, A.bracket(ej, el));
                auto t = A.bracket(ej, A.bracket(el, ei));
                auto u = A.bracket(el, A.bracket(ei, ej));
                for (std::size_t k = 0; k < n; ++k) s[k] += t[k] + u[k];
                if (!is_zero(s)) {
                    r.jacobi_violation = {i, j, l};
                    break;
                }
            }
    // Lower central series.
    RationalMatrix cur;
    for (std::size_t i = 0; i < n; ++i) cur.push_back(unit(n, i));
    std::size_t cur_rank = n;
    for (unsigned k = 1; k <= n + 1; ++k) {
        if (cur_rank == 0) {
            r.step = k > 1 ? k - 1 : 0;
            break;
        }
        RationalMatrix next;
        for (std::size_t i = 0; i < n; ++i)
            for (auto& x : cur) next.push_back(A.bracket(unit(n, i), x));
        auto re = reduced_row_echelon(next, n);
        if (re.rows.size() == cur_rank) break;  // series stalled: not nilpotent
        cur = re.rows;
        cur_rank = re.rows.size();
    }
    return r;
}

const std::vector<std::pair<std::vector<int>, Rational>>& bch_table() {
    static const auto table = [] {
        std::map<std::vector<int>, Rational> acc;
        const unsigned cap = kBchStepCap;
        // Blocks X^{r_i} Y^{s_i}; weight (-1)^{k-1} / (k * n * prod r_i! s_i!).
        std::function<void(std::vector<int>&, unsigned, Integer, unsigned)> rec = [&](std::vector<int>& word, unsigned k,
                                                                                       Integer fact, unsigned len) {
            if (k > 0) {
                std::size_t m = word.size();
                bool vanishes = m >= 2 && word[m - 1] == word[m - 2];
                if (!vanishes) {
                    Rational w(Integer(1), Integer(k) * Integer(len) * fact);
                    w.canonicalize();
                    if (k % 2 == 0) w = -w;
                    acc[word] += w;
                }
            }
            for (unsigned rr = 0; len + rr <= cap; ++rr)
                for (unsigned ss = rr == 0 ? 1 : 0; len + rr + ss <= cap; ++ss) {
                    for (unsigned q = 0; q < rr; ++q) word.push_back(0);
                    for (unsigned q = 0; q < ss; ++q) word.push_back(1);
                    rec(word, k + 1, fact * factorial(rr) * factorial(ss), len + rr + ss);
                    word.resize(word.size() - rr - ss);
                }
        };
        std::vector<int> word;
        rec(word, 0, Integer(1), 0);
        std::vector<std::pair<std::vector<int>, Rational>> out;
        for (auto& [w, c] : acc)
            if (c != 0) out.emplace_back(w, c);
        return out;
    }();
    return table;
}

template <class S>
std::vector<S> bch_product(const NilpotentAlgebra& A, const std::vector<S>& u, const std::vector<S>& v, const S& zero) {
    if (A.step() > kBchStepCap)
        throw std::invalid_argument("bch_product: step " + std::to_string(A.step()) + " exceeds the supported " +
                                    std::to_string(kBchStepCap));
    if (u.size() != A.dim() || v.size() != A.dim()) throw std::invalid_argument("bch_product: coordinate length mismatch");
    std::map<std::vector<int>, std::vector<S>> memo;
    std::function<const std::vector<S>&(const std::vector<int>&)> value = [&](const std::vector<int>& w) -> const std::vector<S>& {
        if (auto it = memo.find(w); it != memo.end()) return it->second;
        std::vector<S> val;
        const auto& head = w[0] == 0 ? u : v;
        if (w.size() == 1) {
            val = head;
        } else {
            std::vector<int> tail(w.begin() + 1, w.end());
            val = A.bracket(head, value(tail), zero);
        }
        return memo.emplace(w, std::move(val)).first->second;
    };
    std::vector<S> out(A.dim(), zero);
    for (auto& [w, c] : bch_table()) {
        if (w.size() > A.step()) continue;
        const auto& val = value(w);
        for (std::size_t k = 0; k < A.dim(); ++k)
            if (!(val[k] == zero)) out[k] += val[k] * c;
    }
    return out;
}

template std::vector<Rational> bch_product(const NilpotentAlgebra&, const std::vector<Rational>&,
                                           const std::vector<Rational>&, const Rational&);
template std::vector<Poly> bch_product(const NilpotentAlgebra&, const std::vector<Poly>&, const std::vector<Poly>&,
                                       const Poly&);

RationalVector bch_product(const NilpotentAlgebra& A, const RationalVector& u, const RationalVector& v) {
    return bch_product<Rational>(A, u, v, Rational(0));
}

namespace {

// {X in span(t) : [X, h] inside span(h)}.
RationalMatrix normalizer(const NilpotentAlgebra& A, const RationalMatrix& h, const RationalMatrix& t) {
    if (h.empty()) return t;
    const std::size_t n = A.dim();
    RationalMatrix annihilator = nullspace(h, n);
    if (annihilator.empty()) return t;
    RationalMatrix conds;
    for (auto& hj : h)
        for (auto& w : annihilator) {
            RationalVector row;
            for (auto& ti : t) {
                auto b = A.bracket(ti, hj);
                Rational s(0);
                for (std::size_t k = 0; k < n; ++k) s += w[k] * b[k];
                row.push_back(s);
            }
            conds.push_back(row);
        }
    RationalMatrix out;
    for (auto& x : nullspace(conds, t.size())) {
        RationalVector X(n, Rational(0));
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t k = 0; k < n; ++k) X[k] += x[i] * t[i][k];
        out.push_back(X);
    }
    return out;
}

// Grows the subalgebra h inside t one normalizing vector at a time, preferring `candidates` in order.
void grow(const NilpotentAlgebra& A, RationalMatrix& h, const RationalMatrix& t, const RationalMatrix& candidates,
          RationalMatrix& added) {
    while (h.size() < t.size()) {
        RationalMatrix N = normalizer(A, h, t);
        std::optional<RationalVector> pick;
        for (auto& c : candidates)
            if (in_span(t, c) && in_span(N, c) && !in_span(h, c)) {
                pick = c;
                break;
            }
        if (!pick)
            for (auto& c : N)
                if (!in_span(h, c)) {
                    pick = c;
                    break;
                }
        if (!pick) throw std::logic_error("weak_malcev_basis: normalizer chain stalled; algebra not nilpotent");
        h.push_back(*pick);
        added.push_back(*pick);
    }
}

}  // namespace

bool tails_closed(const NilpotentAlgebra& A, const RationalMatrix& basis) {
    for (std::size_t k = basis.size(); k-- > 0;) {
        RationalMatrix tail(basis.begin() + static_cast<std::ptrdiff_t>(k), basis.end());
        for (std::size_t i = 0; i < tail.size(); ++i)
            for (std::size_t j = i + 1; j < tail.size(); ++j)
                if (!in_span(tail, A.bracket(tail[i], tail[j]))) return false;
    }
    return true;
}

MalcevBasis weak_malcev_basis(const NilpotentAlgebra& A, const RationalMatrix& z) {
    const std::size_t n = A.dim();
    RationalMatrix zb;
    SpanTracker span(n);
    for (auto& v : z) {
        if (v.size() != n) throw std::invalid_argument("weak_malcev_basis: vector of wrong length in z");
        if (span.add(v)) zb.push_back(v);
    }
    for (std::size_t i = 0; i < zb.size(); ++i)
        for (std::size_t j = i + 1; j < zb.size(); ++j)
            if (!in_span(zb, A.bracket(zb[i], zb[j])))
                throw std::invalid_argument("weak_malcev_basis: z is not a subalgebra");

    RationalMatrix standard;
    for (std::size_t k = n; k-- > 0;) standard.push_back(unit(n, k));
    RationalMatrix candidates(zb.rbegin(), zb.rend());
    candidates.insert(candidates.end(), standard.begin(), standard.end());

    RationalMatrix h, added;
    grow(A, h, zb, candidates, added);
    grow(A, h, standard, standard, added);

    MalcevBasis B;
    B.vectors.assign(added.rbegin(), added.rend());
    B.split = n - zb.size();
    if (!tails_closed(A, B.vectors)) throw std::logic_error("weak_malcev_basis: produced a tail that is not closed");
    return B;
}

std::vector<VectorField> pushforward_fields(const NilpotentAlgebra& A, const MalcevBasis& B) {
    const NilpotentAlgebra C = A.in_basis(B.vectors);
    const std::size_t N = C.dim(), n = B.split;
    const std::size_t s_var = n;
    const Poly zero(n + 1);
    auto axis = [&](std::size_t k, const Poly& coeff) {
        std::vector<Poly> v(N, zero);
        v[k] = coeff;
        return v;
    };
    // First-kind coordinates of exp(t_1 Y_1) ... exp(t_n Y_n).
    std::vector<Poly> g(N, zero);
    for (std::size_t k = n; k-- > 0;) g = bch_product(C, axis(k, Poly::variable(n + 1, k)), g, zero);

    std::vector<Poly> at_s0;
    for (std::size_t i = 0; i < n; ++i) at_s0.push_back(Poly::variable(n, i));
    at_s0.push_back(Poly(n));

    std::vector<VectorField> out;
    for (std::size_t j = 0; j < N; ++j) {
        std::vector<Poly> w = bch_product(C, axis(j, Poly::variable(n + 1, s_var)), g, zero);
        std::vector<Poly> comps;
        for (std::size_t k = 0; k < n; ++k) {
            Poly ck = w[k];
            comps.push_back(ck.derivative(s_var).compose(at_s0));
            w = bch_product(C, axis(k, -ck), w, zero);
        }
        out.emplace_back(std::move(comps));
    }
    return out;
}

std::optional<int> bracket_sign(const NilpotentAlgebra& A, const MalcevBasis& B, const std::vector<VectorField>& fields) {
    const NilpotentAlgebra C = A.in_basis(B.vectors);
    if (fields.size() != C.dim()) throw std::invalid_argument("bracket_sign: one field per basis vector expected");
    bool plus = true, minus = true;
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            VectorField lhs = lie_bracket(fields[i], fields[j]);
            VectorField rhs = VectorField::zero(lhs.nvars());
            for (std::size_t k = 0; k < fields.size(); ++k)
                if (C.c(i, j, k) != 0) rhs += C.c(i, j, k) * fields[k];
            plus = plus && lhs == rhs;
            minus = minus && lhs == -rhs;
        }
    if (minus) return -1;
    if (plus) return 1;
    return std::nullopt;
}

}  // namespace flowinc
