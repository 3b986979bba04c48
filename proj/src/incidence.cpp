#include "flowinc/incidence.hpp"

#include "flowinc/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace flowinc {

bool AlgebraicPoint::is_rational() const {
    return std::all_of(coords.begin(), coords.end(), [](const AlgebraicNumber& a) { return a.is_rational(); });
}

std::string AlgebraicPoint::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ";";
        s += coords[i].to_string();
    }
    return s;
}

int compare(const AlgebraicPoint& a, const AlgebraicPoint& b) {
    const std::size_t n = std::min(a.coords.size(), b.coords.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(a.coords[i], b.coords[i])) return c;
    return a.coords.size() < b.coords.size() ? -1 : (a.coords.size() > b.coords.size() ? 1 : 0);
}

namespace {

// Res over the variable y of (a(x) - b(y), c(x) - d(y)), as a polynomial in x.
// b or d must be nonconstant; their leading coefficients are constants, so specialising x is safe.
UPoly eliminate(const UPoly& a, const UPoly& b, const UPoly& c, const UPoly& d) {
    const int D = std::max(0, d.degree()) * std::max(0, a.degree()) + std::max(0, b.degree()) * std::max(0, c.degree());
    RationalVector xs, ys;
    for (int k = 0; k <= D; ++k) {
        Rational x(k);
        xs.push_back(x);
        ys.push_back(resultant(UPoly::constant(a.evaluate(x)) - b, UPoly::constant(c.evaluate(x)) - d));
    }
    return interpolate(xs, ys);
}

UPoly gcd_with(const UPoly& g, const UPoly& h) { return g.is_zero() ? h.monic() : gcd(g, h); }

std::vector<AlgebraicNumber> params_through(const std::vector<UPoly>& param, std::span<const Rational> p) {
    UPoly G;
    for (std::size_t i = 0; i < param.size(); ++i) {
        UPoly h = param[i] - UPoly::constant(p[i]);
        if (h.is_zero()) continue;
        if (h.is_constant()) return {};
        G = gcd_with(G, h);
    }
    if (G.is_zero()) return {AlgebraicNumber(Rational(0))};
    return real_roots(G);
}

RationalVector constant_point(const Curve& c) {
    RationalVector p;
    for (auto& q : c.param) p.push_back(q[0]);
    return p;
}

AlgebraicPoint rational_point(std::span<const Rational> p) {
    AlgebraicPoint out;
    for (auto& x : p) out.coords.emplace_back(x);
    return out;
}

std::pair<Rational, Rational> interval_mul(std::pair<Rational, Rational> a, std::pair<Rational, Rational> b) {
    Rational v[4] = {a.first * b.first, a.first * b.second, a.second * b.first, a.second * b.second};
    return {*std::min_element(v, v + 4), *std::max_element(v, v + 4)};
}

// Velocities c1'(s) and c2'(t) are parallel.
bool parallel_velocities(const Curve& c1, const Curve& c2, const AlgebraicNumber& s, const AlgebraicNumber& t) {
    const std::size_t n = c1.ambient_dim;
    std::vector<UPoly> d1, d2;
    for (std::size_t i = 0; i < n; ++i) {
        d1.push_back(c1.param[i].derivative());
        d2.push_back(c2.param[i].derivative());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (s.is_rational()) {
                UPoly m = d2[j] * d1[i].evaluate(s.rational()) - d2[i] * d1[j].evaluate(s.rational());
                if (t.sign_of(m) != 0) return false;
            } else if (t.is_rational()) {
                UPoly m = d1[i] * d2[j].evaluate(t.rational()) - d1[j] * d2[i].evaluate(t.rational());
                if (s.sign_of(m) != 0) return false;
            } else {
                // Both parameters irrational: separate the minor from zero by interval refinement.
                bool separated = false;
                for (int round = 0; round < 256 && !separated; ++round) {
                    auto a = interval_mul(interval_evaluate(d1[i], s.lo(), s.hi()), interval_evaluate(d2[j], t.lo(), t.hi()));
                    auto b = interval_mul(interval_evaluate(d1[j], s.lo(), s.hi()), interval_evaluate(d2[i], t.lo(), t.hi()));
                    separated = a.second < b.first || b.second < a.first;
                    s.refine();
                    t.refine();
                }
                if (separated) return false;
            }
        }
    return true;
}

IncidenceRecord make_record(const Curve& c1, const Curve& c2, AlgebraicPoint p, AlgebraicNumber s, AlgebraicNumber t) {
    IncidenceRecord r{c1.id, c2.id, std::move(p), std::move(s), std::move(t), false};
    if (c1.is_singleton() || c2.is_singleton())
        r.tangential = true;
    else if (is_planar_graph(c1) && is_planar_graph(c2))
        r.tangential = r.s.sign_of(c1.param[1].derivative() - c2.param[1].derivative()) == 0;
    else
        r.tangential = parallel_velocities(c1, c2, r.s, r.t);
    return r;
}

}  // namespace

bool is_planar_graph(const Curve& c) { return c.ambient_dim == 2 && c.param.size() == 2 && c.param[0] == UPoly::x(); }

std::vector<IncidenceRecord> intersect_curves(const Curve& c1, const Curve& c2) {
    if (c1.ambient_dim != c2.ambient_dim || c1.param.size() != c2.param.size())
        throw std::invalid_argument("intersect_curves: dimension mismatch between " + c1.id + " and " + c2.id);
    const std::size_t n = c1.ambient_dim;
    std::vector<IncidenceRecord> out;
    const bool s1 = c1.is_singleton(), s2 = c2.is_singleton();
    if (s1 && s2) {
        if (constant_point(c1) == constant_point(c2))
            out.push_back(make_record(c1, c2, rational_point(constant_point(c1)), AlgebraicNumber(), AlgebraicNumber()));
        return out;
    }
    if (s1 || s2) {
        const Curve& pt = s1 ? c1 : c2;
        const Curve& cv = s1 ? c2 : c1;
        RationalVector p = constant_point(pt);
        for (auto& root : params_through(cv.param, p)) {
            AlgebraicNumber zero;
            out.push_back(s1 ? make_record(c1, c2, rational_point(p), zero, root)
                             : make_record(c1, c2, rational_point(p), root, zero));
        }
        return out;
    }

    // Constraint G(s) from t-free components and pairwise eliminations of t.
    UPoly G;
    std::vector<std::size_t> tdep;
    for (std::size_t i = 0; i < n; ++i) {
        if (c2.param[i].is_constant()) {
            UPoly h = c1.param[i] - UPoly::constant(c2.param[i][0]);
            if (h.is_zero()) continue;
            if (h.is_constant()) return out;
            G = gcd_with(G, h);
        } else {
            tdep.push_back(i);
        }
    }
    for (std::size_t a = 0; a < tdep.size(); ++a)
        for (std::size_t b = a + 1; b < tdep.size(); ++b) {
            UPoly r = eliminate(c1.param[tdep[a]], c2.param[tdep[a]], c1.param[tdep[b]], c2.param[tdep[b]]);
            if (r.is_zero()) continue;
            G = gcd_with(G, r);
            if (G.is_constant()) return out;
        }
    if (G.is_zero()) throw InfiniteIntersection("infinite intersection between " + c1.id + " and " + c2.id);
    if (G.is_constant()) return out;
    G = squarefree_part(G);

    std::optional<std::vector<AlgebraicNumber>> t_candidates;
    for (auto& sigma : real_roots(G)) {
        if (sigma.is_rational()) {
            RationalVector p;
            for (std::size_t i = 0; i < n; ++i) p.push_back(c1.param[i].evaluate(sigma.rational()));
            for (auto& tau : params_through(c2.param, p)) out.push_back(make_record(c1, c2, rational_point(p), sigma, tau));
            continue;
        }
        if (!t_candidates) {
            UPoly H;
            for (auto j : tdep) H = gcd_with(H, eliminate(UPoly(), -G, c2.param[j], c1.param[j]));
            t_candidates = H.is_zero() ? std::vector<AlgebraicNumber>{} : real_roots(H);
        }
        AlgebraicPoint p;
        for (std::size_t i = 0; i < n; ++i) p.coords.push_back(image_of(sigma, c1.param[i]));
        for (auto& tau : *t_candidates) {
            bool match = true;
            for (std::size_t i = 0; i < n && match; ++i) match = image_of(tau, c2.param[i]) == p.coords[i];
            if (match) out.push_back(make_record(c1, c2, p, sigma, tau));
        }
    }
    return out;
}

namespace {

struct PairHit {
    std::size_t i, j;
    std::vector<IncidenceRecord> records;
};

// Intersects L1[i] with L2[j]; with `triangular` only j > i (L1 == L2).
// Pairs sharing an id are skipped when `skip_same_id`.
std::vector<PairHit> pair_hits(const std::vector<Curve>& L1, const std::vector<Curve>& L2, bool triangular, bool skip_same_id,
                               unsigned workers) {
    workers = std::max(1u, workers);
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<PairHit>> local(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&](unsigned w) {
        try {
            for (std::size_t i; (i = next.fetch_add(1)) < L1.size();) {
                for (std::size_t j = triangular ? i + 1 : 0; j < L2.size(); ++j) {
                    if (skip_same_id && L1[i].id == L2[j].id) continue;
                    auto recs = intersect_curves(L1[i], L2[j]);
                    if (!recs.empty()) local[w].push_back({i, j, std::move(recs)});
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = L1.size();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    std::vector<PairHit> all;
    for (auto& v : local)
        for (auto& h : v) all.push_back(std::move(h));
    std::sort(all.begin(), all.end(), [](const PairHit& a, const PairHit& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    return all;
}

void normalize(IncidenceRecord& r) {
    if (r.id2 < r.id1) {
        std::swap(r.id1, r.id2);
        std::swap(r.s, r.t);
    }
}

bool record_less(const IncidenceRecord& a, const IncidenceRecord& b) {
    if (a.id1 != b.id1) return a.id1 < b.id1;
    if (a.id2 != b.id2) return a.id2 < b.id2;
    return a.point < b.point;
}

}  // namespace

IncidenceSet incidence_set(const std::vector<Curve>& L1, const std::vector<Curve>& L2, unsigned workers) {
    IncidenceSet out;
    for (auto& h : pair_hits(L1, L2, false, true, workers))
        for (auto& r : h.records) {
            normalize(r);
            out.records.push_back(std::move(r));
        }
    std::sort(out.records.begin(), out.records.end(), record_less);
    auto last = std::unique(out.records.begin(), out.records.end(), [](const IncidenceRecord& a, const IncidenceRecord& b) {
        return a.id1 == b.id1 && a.id2 == b.id2 && a.point == b.point;
    });
    out.records.erase(last, out.records.end());
    return out;
}

std::string incidences_csv(const IncidenceSet& set) {
    std::string s = "id1,id2,point_repr,tangential\n";
    for (auto& r : set.records)
        s += r.id1 + "," + r.id2 + "," + r.point.to_string() + "," + (r.tangential ? "1" : "0") + "\n";
    return s;
}

struct GraphIncidenceCounter::Column {
    Rational x;
    std::int64_t xi = 0;
    std::vector<std::int64_t> yi;
    std::vector<Rational> yr;
};

GraphIncidenceCounter::~GraphIncidenceCounter() = default;
GraphIncidenceCounter::GraphIncidenceCounter(GraphIncidenceCounter&&) noexcept = default;
GraphIncidenceCounter& GraphIncidenceCounter::operator=(GraphIncidenceCounter&&) noexcept = default;


GraphIncidenceCounter::GraphIncidenceCounter(const std::vector<RationalVector>& points) {
    std::map<Rational, std::vector<Rational>> by_x;
    for (auto& p : points) {
        if (p.size() != 2) throw std::invalid_argument("GraphIncidenceCounter: points must be planar");
        by_x[p[0]].push_back(p[1]);
    }
    for (auto& [x, ys] : by_x) {
        Column c;
        c.x = x;
        std::sort(ys.begin(), ys.end());
        for (auto& y : ys)
            if (y.get_den() != 1 || !y.get_num().fits_slong_p()) integral_ = false;
        if (x.get_den() != 1 || !x.get_num().fits_slong_p() || abs(x.get_num()) > 1000000) integral_ = false;
        c.yr = std::move(ys);
        cols_.push_back(std::move(c));
    }
    if (integral_)
        for (auto& c : cols_) {
            c.xi = c.x.get_num().get_si();
            for (auto& y : c.yr) c.yi.push_back(y.get_num().get_si());
        }
}

std::uint64_t GraphIncidenceCounter::count(std::span<const std::int64_t> coeffs) const {
    if (!integral_) {
        RationalVector r;
        for (auto c : coeffs) r.emplace_back(static_cast<long>(c));
        return count(UPoly(std::move(r)));
    }
    std::uint64_t total = 0;
    for (auto& c : cols_) {
        __int128 y = 0;
        bool overflow = false;
        for (std::size_t k = coeffs.size(); k-- > 0;) {
            y = y * c.xi + coeffs[k];
            if (y > (__int128(1) << 100) || y < -(__int128(1) << 100)) {
                overflow = true;
                break;
            }
        }
        if (overflow || y > INT64_MAX || y < INT64_MIN) continue;
        auto [lo, hi] = std::equal_range(c.yi.begin(), c.yi.end(), static_cast<std::int64_t>(y));
        total += hi - lo;
    }
    return total;
}

std::uint64_t GraphIncidenceCounter::count(const UPoly& p) const {
    if (integral_) {
        std::vector<std::int64_t> ci;
        bool ok = true;
        for (auto& c : p.coeffs()) {
            if (c.get_den() != 1 || !c.get_num().fits_slong_p()) {
                ok = false;
                break;
            }
            ci.push_back(c.get_num().get_si());
        }
        if (ok) return count(ci);
    }
    std::uint64_t total = 0;
    for (auto& c : cols_) {
        auto [lo, hi] = std::equal_range(c.yr.begin(), c.yr.end(), p.evaluate(c.x));
        total += hi - lo;
    }
    return total;
}

std::uint64_t count_graph_incidences(const std::vector<Curve>& points, const std::vector<Curve>& graphs) {
    std::vector<RationalVector> pts;
    for (auto& c : points) {
        if (!c.is_singleton() || c.ambient_dim != 2)
            throw std::invalid_argument("count_graph_incidences: " + c.id + " is not a planar point");
        pts.push_back(constant_point(c));
    }
    GraphIncidenceCounter counter(pts);
    std::uint64_t total = 0;
    for (auto& g : graphs) {
        if (!is_planar_graph(g)) throw std::invalid_argument("count_graph_incidences: " + g.id + " is not a graph curve");
        total += counter.count(g.param[1]);
    }
    return total;
}

bool tangent_pair(const Curve& c1, const Curve& c2) {
    if (!is_planar_graph(c1) || !is_planar_graph(c2)) throw std::invalid_argument("tangent_pair: graph curves required");
    UPoly d = c1.param[1] - c2.param[1];
    if (d.is_zero()) throw InfiniteIntersection("infinite intersection between " + c1.id + " and " + c2.id);
    UPoly g = gcd(d, d.derivative());
    return g.degree() >= 1 && !real_roots(g).empty();
}

std::uint64_t count_tangent_pairs(std::uint64_t N) {
    if (N == 0) throw std::invalid_argument("count_tangent_pairs: N must be >= 1");
    const std::int64_t A = N * N * N, B = N * N, C = N;
    unsigned __int128 ordered = 0;
    for (std::int64_t dc = -C; dc <= C; ++dc) {
        if (dc == 0) continue;  // then the difference is linear: no double root
        for (std::int64_t da = -A; da <= A; ++da) {
            std::int64_t v = 4 * da * dc;
            if (v < 0 || !is_perfect_square(static_cast<std::uint64_t>(v))) continue;
            std::int64_t b = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(v)));
            if (b > B) continue;
            unsigned __int128 w = static_cast<unsigned __int128>(A + 1 - std::abs(da)) * (B + 1 - b) * (C + 1 - std::abs(dc));
            ordered += b == 0 ? w : 2 * w;
        }
    }
    return static_cast<std::uint64_t>(ordered / 2);
}

namespace {

const RationalVector& coords_of(const Curve& c, std::size_t dim) {
    if (!c.generator_coords) throw std::invalid_argument("curve " + c.id + " has no generator_coords");
    if (c.generator_coords->size() != dim)
        throw std::invalid_argument("curve " + c.id + " generator_coords have dimension " +
                                    std::to_string(c.generator_coords->size()) + ", expected " + std::to_string(dim));
    return *c.generator_coords;
}

struct PointHit {
    AlgebraicPoint point;
    std::size_t family, index;
};

// Groups hits by point; calls f(point, hits-at-point) in ascending point order.
template <class F>
void for_each_point(std::vector<PointHit>& hits, F&& f) {
    std::sort(hits.begin(), hits.end(), [](const PointHit& a, const PointHit& b) {
        if (int c = compare(a.point, b.point)) return c < 0;
        return std::tie(a.family, a.index) < std::tie(b.family, b.index);
    });
    for (std::size_t a = 0; a < hits.size();) {
        std::size_t b = a;
        while (b < hits.size() && hits[b].point == hits[a].point) ++b;
        std::vector<std::pair<std::size_t, std::size_t>> members;
        for (std::size_t k = a; k < b; ++k) members.emplace_back(hits[k].family, hits[k].index);
        members.erase(std::unique(members.begin(), members.end()), members.end());
        f(hits[a].point, members);
        a = b;
    }
}

}  // namespace

std::vector<Joint> detect_joints(const std::vector<Curve>& L, std::size_t V_dim, unsigned workers) {
    for (auto& c : L) coords_of(c, V_dim);
    std::vector<PointHit> hits;
    for (auto& h : pair_hits(L, L, true, false, workers))
        for (auto& r : h.records) {
            hits.push_back({r.point, 0, h.i});
            hits.push_back({r.point, 0, h.j});
        }
    std::vector<Joint> out;
    for_each_point(hits, [&](const AlgebraicPoint& p, const std::vector<std::pair<std::size_t, std::size_t>>& members) {
        RationalMatrix m;
        for (auto& [f, i] : members) m.push_back(coords_of(L[i], V_dim));
        if (rank(m, V_dim) < V_dim) return;
        Joint j;
        j.point = p;
        for (auto& [f, i] : members) j.curves.push_back(L[i].id);
        std::sort(j.curves.begin(), j.curves.end());
        // Spanning V_dim-subsets, by enumerating index combinations.
        const std::size_t k = m.size();
        std::vector<std::size_t> pick(V_dim);
        for (std::size_t a = 0; a < V_dim; ++a) pick[a] = a;
        while (true) {
            RationalMatrix sub;
            for (auto a : pick) sub.push_back(m[a]);
            if (rank(sub, V_dim) == V_dim) ++j.multiplicity;
            std::size_t a = V_dim;
            while (a > 0 && pick[a - 1] == k - V_dim + a - 1) --a;
            if (a == 0) break;
            ++pick[a - 1];
            for (std::size_t b = a; b < V_dim; ++b) pick[b] = pick[b - 1] + 1;
        }
        out.push_back(std::move(j));
    });
    return out;
}

MultijointResult multijoint_sum(const std::vector<std::vector<Curve>>& families, std::size_t n, unsigned workers) {
    if (n < 2) throw std::invalid_argument("multijoint_sum: n must be >= 2");
    if (families.size() != n) throw std::invalid_argument("multijoint_sum: expected " + std::to_string(n) + " families");
    MultijointResult out;
    for (auto& f : families)
        if (f.empty()) return out;
    const std::size_t dim = families[0][0].generator_coords ? families[0][0].generator_coords->size() : 0;
    for (auto& f : families)
        for (auto& c : f) coords_of(c, dim);
    std::vector<PointHit> hits;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (auto& h : pair_hits(families[a], families[b], false, false, workers))
                for (auto& r : h.records) {
                    hits.push_back({r.point, a, h.i});
                    hits.push_back({r.point, b, h.j});
                }
    const Decimal50 root = Decimal50(1) / Decimal50(n - 1);
    for_each_point(hits, [&](const AlgebraicPoint& p, const std::vector<std::pair<std::size_t, std::size_t>>& members) {
        std::vector<std::vector<std::size_t>> per(n);
        for (auto& [f, i] : members) per[f].push_back(i);
        for (auto& v : per)
            if (v.empty()) return;
        // Ordered tuples, one curve per family, whose coords span.
        std::uint64_t m = 0;
        std::vector<std::size_t> pos(n, 0);
        while (true) {
            RationalMatrix rows;
            for (std::size_t f = 0; f < n; ++f) rows.push_back(*families[f][per[f][pos[f]]].generator_coords);
            if (rank(rows, dim) == dim) ++m;
            std::size_t f = n;
            while (f > 0 && ++pos[f - 1] == per[f - 1].size()) pos[--f] = 0;
            if (f == 0) break;
        }
        if (m == 0) return;
        out.joints.emplace_back(p, m);
        out.sum += boost::multiprecision::pow(Decimal50(m), root);
    });
    return out;
}

}  // namespace flowinc
