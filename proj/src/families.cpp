#include "flowinc/families.hpp"

#include "flowinc/builtin_fields.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace flowinc {

long long FamilySpec::get_int(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ValidationError(kind + ": missing parameter '" + key + "'");
    try {
        std::size_t pos = 0;
        long long v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::logic_error&) {
        throw ValidationError(kind + ": parameter '" + key + "' is not an integer: '" + it->second + "'");
    }
}

long long FamilySpec::get_int(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

RationalVector FamilySpec::get_rationals(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ValidationError(kind + ": missing parameter '" + key + "'");
    try {
        return parse_rational_list(it->second);
    } catch (const ParseError& e) {
        throw ValidationError(kind + ": parameter '" + key + "': " + e.what());
    }
}

namespace {

std::string trim(std::string s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

FamilySpec parse_family_spec(std::string_view text) {
    FamilySpec spec;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", no);
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", no);
        if (key == "kind") {
            spec.kind = value;
        } else if (key == "seed") {
            try {
                spec.seed = std::stoull(value);
            } catch (const std::logic_error&) {
                throw ParseError("seed is not an unsigned integer: '" + value + "'", no);
            }
        } else {
            spec.params[key] = value;
        }
    }
    return spec;
}

FamilySpec load_family_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_family_spec(ss.str());
}

std::vector<VectorField> family_basis(const std::string& kind, unsigned dim) {
    using namespace builtin;
    if (kind.rfind("heisenberg", 0) == 0 || kind == "parabola_grid" || kind == "point_grid")
        return {heisenberg_X(), heisenberg_Y(), heisenberg_T()};
    if (kind == "moment_translates") return {moment_X1(dim - 1), moment_X2(dim - 1)};
    if (kind == "xray") return {xray_X1(dim), xray_X2(dim)};
    if (kind == "axis_parallel") {
        std::vector<VectorField> b;
        for (unsigned i = 0; i < dim; ++i) b.push_back(VectorField::coordinate(dim, i));
        return b;
    }
    throw ValidationError("no field basis for kind '" + kind + "'");
}

namespace {

// Flow of one field, reusable across many base points.
class FlowTemplate {
public:
    explicit FlowTemplate(const VectorField& X) : n_(X.nvars()), map_(flow_map(X)) {}

    Curve at(const RationalVector& base) const {
        std::vector<UPoly> args;
        for (auto& b : base) args.push_back(UPoly::constant(b));
        args.push_back(UPoly::x());
        std::span<const UPoly> sp(args);
        Curve c;
        c.ambient_dim = n_;
        c.base_point = base;
        for (auto& m : map_) c.param.push_back(evaluate_in<UPoly>(m, sp, UPoly::constant(Rational(1)), UPoly()));
        return c;
    }

private:
    std::size_t n_;
    std::vector<Poly> map_;
};

std::string num(long long v) { return std::to_string(v); }

struct Range {
    long long lo, hi;
};

Range range(const FamilySpec& s, const std::string& lo_key, const std::string& hi_key, long long N) {
    Range r{s.get_int(lo_key, 0), s.get_int(hi_key, N)};
    if (r.lo > r.hi) throw ValidationError(s.kind + ": empty range " + lo_key + ".." + hi_key);
    return r;
}

long long need_positive(const FamilySpec& s, const std::string& key, long long min = 1) {
    long long v = s.get_int(key);
    if (v < min) throw ValidationError(s.kind + ": " + key + " must be >= " + num(min));
    return v;
}

Curve named(Curve c, std::string id, const std::string& tag, RationalVector coords) {
    c.id = std::move(id);
    c.family_tag = tag;
    c.generator_coords = std::move(coords);
    return c;
}

RationalVector ints(std::initializer_list<long long> v) {
    RationalVector out;
    for (auto x : v) out.emplace_back(static_cast<long>(x));
    return out;
}

// Visits every point of {0..k}^n in lexicographic order.
template <class F>
void for_each_grid(unsigned n, long long k, F&& f) {
    std::vector<long long> idx(n, 0);
    while (true) {
        f(idx);
        std::size_t i = n;
        while (i > 0) {
            if (++idx[i - 1] <= k) break;
            idx[i - 1] = 0;
            --i;
        }
        if (i == 0) return;
    }
}

std::vector<Curve> generate_full(const FamilySpec& s) {
    using namespace builtin;
    std::vector<Curve> out;
    const std::string& k = s.kind;
    if (k == "heisenberg_x" || k == "heisenberg_y") {
        long long N = need_positive(s, "N");
        bool is_x = k == "heisenberg_x";
        Range a = is_x ? range(s, "y0", "y1", N) : range(s, "x0", "x1", N);
        Range t = range(s, "t0", "t1", N);
        FlowTemplate ft(is_x ? heisenberg_X() : heisenberg_Y());
        for (long long u = a.lo; u <= a.hi; ++u)
            for (long long v = t.lo; v <= t.hi; ++v) {
                RationalVector base = is_x ? ints({0, u, v}) : ints({u, 0, v});
                out.push_back(named(ft.at(base), (is_x ? "hx_" : "hy_") + num(u) + "_" + num(v), k,
                                    is_x ? ints({1, 0, 0}) : ints({0, 1, 0})));
            }
    } else if (k == "heisenberg_omega") {
        long long N = need_positive(s, "N");
        RationalVector slopes = s.has("slopes") ? s.get_rationals("slopes") : ints({0, 1});
        Range x = range(s, "x0", "x1", N), t = range(s, "t0", "t1", N);
        for (std::size_t j = 0; j < slopes.size(); ++j) {
            FlowTemplate ft(heisenberg_omega(slopes[j], 1));
            for (long long u = x.lo; u <= x.hi; ++u)
                for (long long v = t.lo; v <= t.hi; ++v)
                    out.push_back(named(ft.at(ints({u, 0, v})), "hw" + num(j) + "_" + num(u) + "_" + num(v), k,
                                        {slopes[j], Rational(1), Rational(0)}));
        }
    } else if (k == "parabola_grid") {
        long long N = need_positive(s, "N");
        for (long long a = 0; a <= N * N * N; ++a)
            for (long long b = 0; b <= N * N; ++b)
                for (long long c = 0; c <= N; ++c) {
                    Curve cv;
                    cv.ambient_dim = 2;
                    cv.param = {UPoly::x(), UPoly(ints({a, b, c}))};
                    cv.base_point = ints({0, a});
                    out.push_back(named(std::move(cv), "p_" + num(a) + "_" + num(b) + "_" + num(c), k, ints({2 * c, 1, 0})));
                }
    } else if (k == "moment_translates") {
        long long d = need_positive(s, "d", 2), K = s.get_int("k");
        if (K < 0) throw ValidationError(k + ": k must be >= 0");
        bool lift = s.get_int("lift", 0) != 0;
        auto gamma = moment_gamma(static_cast<unsigned>(d));
        for_each_grid(static_cast<unsigned>(d), K, [&](const std::vector<long long>& y) {
            Curve cv;
            std::string id = "mt";
            for (long long i = 0; i < d; ++i) {
                cv.param.push_back(UPoly::constant(Rational(static_cast<long>(y[i]))) - gamma[i]);
                cv.base_point.emplace_back(static_cast<long>(y[i]));
                id += "_" + num(y[i]);
            }
            if (lift) {
                cv.param.push_back(UPoly::x());
                cv.base_point.emplace_back(0);
            }
            cv.ambient_dim = cv.param.size();
            out.push_back(named(std::move(cv), id, k, ints({0, 1})));
        });
    } else if (k == "xray") {
        long long n = need_positive(s, "n", 3), N = s.get_int("N");
        long long field = s.get_int("field", 1);
        if (N < 0) throw ValidationError(k + ": N must be >= 0");
        if (field != 1 && field != 2) throw ValidationError(k + ": field must be 1 or 2");
        FlowTemplate ft(field == 1 ? xray_X1(n) : xray_X2(n));
        for_each_grid(static_cast<unsigned>(n), N, [&](const std::vector<long long>& b) {
            RationalVector base;
            std::string id = "xr" + num(field);
            for (auto v : b) {
                base.emplace_back(static_cast<long>(v));
                id += "_" + num(v);
            }
            out.push_back(named(ft.at(base), id, k, field == 1 ? ints({1, 0}) : ints({0, 1})));
        });
    } else if (k == "axis_parallel") {
        long long n = need_positive(s, "n", 2), K = need_positive(s, "k");
        long long only = s.get_int("direction", 0);
        if (only < 0 || only > n) throw ValidationError(k + ": direction must be in 1..n");
        for (long long dir = 0; dir < n; ++dir) {
            if (only && dir + 1 != only) continue;
            for_each_grid(static_cast<unsigned>(n - 1), K - 1, [&](const std::vector<long long>& rest) {
                Curve cv;
                cv.ambient_dim = n;
                std::string id = "ax" + num(dir + 1);
                RationalVector coords(n, Rational(0));
                coords[dir] = 1;
                for (long long i = 0, r = 0; i < n; ++i) {
                    if (i == dir) {
                        cv.param.push_back(UPoly::x());
                        cv.base_point.emplace_back(0);
                    } else {
                        cv.param.push_back(UPoly::constant(Rational(static_cast<long>(rest[r]))));
                        cv.base_point.emplace_back(static_cast<long>(rest[r]));
                        id += "_" + num(rest[r++]);
                    }
                }
                out.push_back(named(std::move(cv), id, k + "_" + num(dir + 1), coords));
            });
        }
    } else if (k == "point_grid") {
        long long N = need_positive(s, "N");
        for (long long p = 0; p <= N; ++p)
            for (long long q = 0; q <= 3 * N * N * N; ++q) {
                Curve cv;
                cv.ambient_dim = 2;
                cv.param = {UPoly::constant(Rational(static_cast<long>(p))), UPoly::constant(Rational(static_cast<long>(q)))};
                cv.base_point = ints({p, q});
                out.push_back(named(std::move(cv), "pt_" + num(p) + "_" + num(q), k, ints({1, 0, 0})));
            }
    } else if (k == "custom_file") {
        if (!s.has("path")) throw ValidationError(k + ": missing parameter 'path'");
        out = load_family(s.params.at("path"));
    } else {
        throw ValidationError("unknown family kind '" + k + "'");
    }
    return out;
}

}  // namespace

std::vector<Curve> generate(const FamilySpec& spec) {
    auto full = generate_full(spec);
    if (!spec.has("count")) return full;
    long long c = spec.get_int("count");
    if (c < 0) throw ValidationError(spec.kind + ": count must be >= 0");
    if (static_cast<std::size_t>(c) >= full.size()) return full;
    std::vector<std::size_t> idx(full.size()), pick;
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::mt19937_64 rng(spec.seed);
    std::sample(idx.begin(), idx.end(), std::back_inserter(pick), c, rng);
    std::vector<Curve> out;
    out.reserve(pick.size());
    for (auto i : pick) out.push_back(std::move(full[i]));
    return out;
}

std::uint64_t grid_family_size(const FamilySpec& s) {
    const std::string& k = s.kind;
    auto span = [](long long lo, long long hi) { return static_cast<std::uint64_t>(hi - lo + 1); };
    if (k == "heisenberg_x" || k == "heisenberg_y") {
        long long N = s.get_int("N");
        bool is_x = k == "heisenberg_x";
        Range a = is_x ? range(s, "y0", "y1", N) : range(s, "x0", "x1", N);
        Range t = range(s, "t0", "t1", N);
        return span(a.lo, a.hi) * span(t.lo, t.hi);
    }
    if (k == "parabola_grid") {
        std::uint64_t N = s.get_int("N");
        return (N * N * N + 1) * (N * N + 1) * (N + 1);
    }
    if (k == "axis_parallel") {
        std::uint64_t n = s.get_int("n"), K = s.get_int("k"), r = 1;
        for (std::uint64_t i = 0; i + 1 < n; ++i) r *= K;
        return (s.get_int("direction", 0) ? 1 : n) * r;
    }
    if (k == "point_grid") {
        std::uint64_t N = s.get_int("N");
        return (N + 1) * (3 * N * N * N + 1);
    }
    if (k == "moment_translates" || k == "xray") {
        std::uint64_t dim = k == "xray" ? s.get_int("n") : s.get_int("d");
        std::uint64_t side = (k == "xray" ? s.get_int("N") : s.get_int("k")) + 1, r = 1;
        for (std::uint64_t i = 0; i < dim; ++i) r *= side;
        return r;
    }
    throw ValidationError("no closed-form size for kind '" + k + "'");
}

std::uint64_t squarefree_part(std::uint64_t c) {
    if (c == 0) throw std::invalid_argument("squarefree_part: c must be positive");
    std::uint64_t out = 1;
    for (std::uint64_t p = 2; p * p <= c; ++p) {
        unsigned e = 0;
        while (c % p == 0) {
            c /= p;
            ++e;
        }
        if (e % 2) out *= p;
    }
    return out * c;
}

SquareTriples count_square_triples(std::uint64_t N, bool keep_list) {
    if (N == 0) throw std::invalid_argument("count_square_triples: N must be >= 1");
    SquareTriples r;
    const std::uint64_t A = N * N * N, B = N * N;
    for (std::uint64_t a = 0; a <= A; ++a)
        for (std::uint64_t c = 0; c <= N; ++c) {
            std::uint64_t v = 4 * a * c;
            if (!is_perfect_square(v)) continue;
            std::uint64_t b = isqrt(v);
            if (b > B) continue;
            ++r.count;
            if (keep_list) r.triples.push_back({a, b, c});
        }
    std::sort(r.triples.begin(), r.triples.end());
    return r;
}

std::vector<Curve> load_family(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open curve file '" + path.string() + "'");
    std::vector<Curve> out;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(from_record(line, no));
    }
    return out;
}

void save_family(const std::vector<Curve>& curves, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write curve file '" + path.string() + "'");
    for (auto& c : curves) out << to_record(c) << '\n';
}

}  // namespace flowinc
