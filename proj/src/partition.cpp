#include "flowinc/partition.hpp"

#include "flowinc/algebraic.hpp"
#include "flowinc/incidence.hpp"
#include "flowinc/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace flowinc {

std::uint64_t WeightedPoints::total_weight() const {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < points.size(); ++i) w += weight(i);
    return w;
}

void WeightedPoints::validate() const {
    if (!weights.empty() && weights.size() != points.size())
        throw std::invalid_argument("WeightedPoints: " + std::to_string(weights.size()) + " weights for " +
                                    std::to_string(points.size()) + " points");
    for (auto w : weights)
        if (w < 1) throw std::invalid_argument("WeightedPoints: weights must be >= 1");
    for (auto& p : points)
        if (p.size() != dim) throw std::invalid_argument("WeightedPoints: point of dimension " + std::to_string(p.size()) +
                                                         ", expected " + std::to_string(dim));
}

namespace {

void monomials_of_degree(std::size_t dim, unsigned deg, std::size_t pos, Exponent& cur, std::vector<Exponent>& out) {
    if (pos + 1 == dim) {
        cur[pos] = deg;
        out.push_back(cur);
        return;
    }
    for (unsigned k = deg + 1; k-- > 0;) {
        cur[pos] = k;
        monomials_of_degree(dim, deg - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

RationalVector lift(const RationalVector& p, const std::vector<Exponent>& mons) {
    RationalVector v;
    v.reserve(mons.size());
    for (auto& e : mons) {
        Rational x(1);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) x *= p[i];
        v.push_back(x);
    }
    return v;
}

Poly from_coeffs(std::size_t dim, const std::vector<Exponent>& mons, const RationalVector& a) {
    Poly f(dim);
    for (std::size_t k = 0; k < mons.size(); ++k) f.add_term(mons[k], a[k]);
    return f;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

// Scales to coprime integers.
void make_primitive(RationalVector& a) {
    Integer l(1), g(0);
    for (auto& x : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (auto& x : a) {
        x *= l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    if (g != 0 && g != 1)
        for (auto& x : a) x /= g;
}

}  // namespace

std::vector<Exponent> monomials_up_to(std::size_t dim, unsigned deg) {
    std::vector<Exponent> out;
    Exponent cur(dim, 0);
    for (unsigned k = 0; k <= deg; ++k) {
        if (dim == 0) {
            if (k == 0) out.push_back(cur);
            continue;
        }
        monomials_of_degree(dim, k, 0, cur, out);
    }
    return out;
}

std::optional<Poly> vanishing_poly(const WeightedPoints& P, unsigned max_degree) {
    P.validate();
    auto mons = monomials_up_to(P.dim, max_degree);
    RationalMatrix m;
    for (auto& p : P.points) m.push_back(lift(p, mons));
    auto re = reduced_row_echelon(m, mons.size());
    std::size_t free_col = 0;
    while (free_col < re.pivots.size() && re.pivots[free_col] == free_col) ++free_col;
    if (free_col >= mons.size()) return std::nullopt;
    RationalVector x(mons.size(), Rational(0));
    x[free_col] = 1;
    for (std::size_t r = 0; r < re.rows.size(); ++r)
        if (re.pivots[r] < free_col) x[re.pivots[r]] = -re.rows[r][free_col];
    make_primitive(x);
    return from_coeffs(P.dim, mons, x);
}

unsigned cut_degree(std::size_t classes, std::size_t dim) {
    unsigned d = 0;
    while (binomial(d + dim, dim) <= classes) ++d;
    return d;
}

namespace {

struct Location {
    RationalVector phi;
    std::vector<std::pair<std::size_t, std::int64_t>> mass;  // (class, weight)
    bool forced = false;
};

struct Score {
    std::int64_t excess = 0;     // total weight above half, both sides, all classes
    std::int64_t imbalance = 0;  // sum |pos - neg|
    friend bool operator<(const Score& a, const Score& b) {
        return std::tie(a.excess, a.imbalance) < std::tie(b.excess, b.imbalance);
    }
    friend bool operator==(const Score&, const Score&) = default;
};

class Tally {
public:
    Tally(const std::vector<Location>& locs, const std::vector<std::int64_t>& totals)
        : locs_(locs), totals_(totals), pos_(totals.size(), 0), neg_(totals.size(), 0) {}

    void set(std::size_t u, int from, int to) {
        if (from == to) return;
        for (auto [c, w] : locs_[u].mass) {
            if (from > 0) pos_[c] -= w;
            if (from < 0) neg_[c] -= w;
            if (to > 0) pos_[c] += w;
            if (to < 0) neg_[c] += w;
        }
    }

    Score score() const {
        Score s;
        for (std::size_t c = 0; c < totals_.size(); ++c) {
            s.excess += std::max<std::int64_t>(0, 2 * pos_[c] - totals_[c]) + std::max<std::int64_t>(0, 2 * neg_[c] - totals_[c]);
            s.imbalance += std::abs(pos_[c] - neg_[c]);
        }
        return s;
    }

private:
    const std::vector<Location>& locs_;
    const std::vector<std::int64_t>& totals_;
    std::vector<std::int64_t> pos_, neg_;
};

Rational simplest_in(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    if (lo && hi) return simplest_between(*lo, *hi);
    if (!lo && !hi) return Rational(0);
    if (hi) {
        if (*hi > 0) return Rational(0);
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
        return Rational(f == *hi ? Integer(f - 1) : f);
    }
    if (*lo < 0) return Rational(0);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
    return Rational(Integer(f + 1));
}

class CutSearch {
public:
    CutSearch(const std::vector<Location>& locs, const std::vector<std::int64_t>& totals, std::size_t M,
              std::mt19937_64& rng)
        : locs_(locs), totals_(totals), M_(M), rng_(rng) {}

    Score score_of(const RationalVector& a) const {
        std::vector<Rational> f(locs_.size());
        for (std::size_t u = 0; u < locs_.size(); ++u) f[u] = dot(a, locs_[u].phi);
        return evaluate(f);
    }

    // Cut vanishing on `pins` closest (in least squares) to the numeric vector `a`.
    std::optional<RationalVector> pin_round(const Eigen::VectorXd& a, const std::vector<std::size_t>& pins,
                                            unsigned bits = 40) const {
        RationalMatrix basis = null_basis(pins);
        if (basis.empty()) return std::nullopt;
        Eigen::MatrixXd B(M_, basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Eigen::VectorXd col(M_);
            for (std::size_t k = 0; k < M_; ++k) col[k] = basis[j][k].get_d();
            B.col(j) = col / col.norm();
            for (std::size_t k = 0; k < M_; ++k) basis[j][k] /= Rational(col.norm());
        }
        Eigen::VectorXd c = B.colPivHouseholderQr().solve(a);
        RationalVector v(M_, Rational(0));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Rational cj(Integer(static_cast<long>(std::llround(std::ldexp(c[j], static_cast<int>(bits))))));
            cj /= Rational(Integer(1) << bits);
            if (cj != 0)
                for (std::size_t k = 0; k < M_; ++k) v[k] += cj * basis[j][k];
        }
        if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) return std::nullopt;
        make_primitive(v);
        return v;
    }

    // Exact local search from `a`; gives up after `patience` steps without progress.
    std::optional<RationalVector> polish(RationalVector a, std::size_t& budget, std::size_t patience) {
        std::size_t since_improvement = 0;
        std::int64_t best_excess = INT64_MAX;
        while (budget > 0) {
            --budget;
            std::vector<Rational> f0(locs_.size());
            std::vector<std::size_t> zeros;
            for (std::size_t u = 0; u < locs_.size(); ++u) {
                f0[u] = dot(a, locs_[u].phi);
                if (f0[u] == 0) zeros.push_back(u);
            }
            Score cur = evaluate(f0);
            if (cur.excess == 0) return a;
            if (cur.excess < best_excess) {
                best_excess = cur.excess;
                since_improvement = 0;
            } else if (++since_improvement > patience) {
                return std::nullopt;
            }
            // Keep the current zero set pinned, minus an occasional dropped pin.
            std::vector<std::size_t> pins = zeros;
            std::vector<std::size_t> droppable;
            for (auto u : pins)
                if (!locs_[u].forced) droppable.push_back(u);
            RationalMatrix basis;
            while (true) {
                if (!droppable.empty() && coin(0.2)) drop(pins, droppable);
                basis = null_basis(pins);
                if (basis.size() >= 2 || droppable.empty()) break;
                drop(pins, droppable);
            }
            if (basis.size() < 2) return std::nullopt;
            RationalVector b = random_combination(basis);
            std::vector<Rational> f1(locs_.size());
            for (std::size_t u = 0; u < locs_.size(); ++u) f1[u] = dot(b, locs_[u].phi);
            auto [score, lambda] = line_search(f0, f1);
            if (score < cur || (score == cur && coin(0.5))) {
                for (std::size_t k = 0; k < M_; ++k) a[k] += lambda * b[k];
                if (std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; })) return std::nullopt;
                make_primitive(a);
            }
        }
        return std::nullopt;
    }

private:
    bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    void drop(std::vector<std::size_t>& pins, std::vector<std::size_t>& droppable) {
        std::size_t k = pick(droppable.size());
        pins.erase(std::find(pins.begin(), pins.end(), droppable[k]));
        droppable.erase(droppable.begin() + static_cast<std::ptrdiff_t>(k));
    }

    RationalMatrix null_basis(const std::vector<std::size_t>& rows) const {
        RationalMatrix m;
        for (auto u : rows) m.push_back(locs_[u].phi);
        return nullspace(m, M_);
    }

    RationalVector random_combination(const RationalMatrix& basis) {
        std::uniform_int_distribution<int> d(-3, 3);
        while (true) {
            RationalVector v(M_, Rational(0));
            for (auto& row : basis) {
                int r = d(rng_);
                if (r)
                    for (std::size_t k = 0; k < M_; ++k) v[k] += r * row[k];
            }
            if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; })) {
                make_primitive(v);
                return v;
            }
        }
    }

    Score evaluate(const std::vector<Rational>& f) const {
        Tally t(locs_, totals_);
        for (std::size_t u = 0; u < locs_.size(); ++u) t.set(u, 0, sgn(f[u]));
        return t.score();
    }

    // Best (score, lambda) along f0 + lambda f1, trying every breakpoint and one value per open interval.
    std::pair<Score, Rational> line_search(const std::vector<Rational>& f0, const std::vector<Rational>& f1) {
        struct Event {
            Rational lambda;
            std::size_t u;
        };
        std::vector<Event> ev;
        Tally t(locs_, totals_);
        std::vector<int> sign(locs_.size());
        for (std::size_t u = 0; u < locs_.size(); ++u) {
            if (f1[u] != 0) {
                ev.push_back({-f0[u] / f1[u], u});
                sign[u] = -sgn(f1[u]);
            } else {
                sign[u] = sgn(f0[u]);
            }
            t.set(u, 0, sign[u]);
        }
        std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) { return x.lambda < y.lambda; });

        Score best = t.score();
        std::optional<Rational> lo, hi;
        if (!ev.empty()) hi = ev.front().lambda;
        Rational best_lambda = simplest_in(lo, hi);
        std::size_t ties = 1;
        auto consider = [&](const Score& s, auto&& lambda_fn) {
            if (s < best) {
                best = s;
                best_lambda = lambda_fn();
                ties = 1;
            } else if (s == best && pick(++ties) == 0) {
                best_lambda = lambda_fn();
            }
        };
        for (std::size_t g = 0; g < ev.size();) {
            std::size_t h = g;
            const Rational lam = ev[g].lambda;
            while (h < ev.size() && ev[h].lambda == lam) {
                t.set(ev[h].u, sign[ev[h].u], 0);
                sign[ev[h].u] = 0;
                ++h;
            }
            consider(t.score(), [&] { return lam; });
            for (std::size_t k = g; k < h; ++k) {
                int s = sgn(f1[ev[k].u]);
                t.set(ev[k].u, 0, s);
                sign[ev[k].u] = s;
            }
            std::optional<Rational> next;
            if (h < ev.size()) next = ev[h].lambda;
            consider(t.score(), [&] { return simplest_in(lam, next); });
            g = h;
        }
        return {best, best_lambda};
    }

    const std::vector<Location>& locs_;
    const std::vector<std::int64_t>& totals_;
    std::size_t M_;
    std::mt19937_64& rng_;
};

// Continuation on the smoothed sign balance sum_u m_uc tanh(f(u)/tau) = 0, tau shrinking.
class SmoothSearch {
public:
    SmoothSearch(const std::vector<Location>& locs, std::size_t K, std::size_t M) {
        std::vector<std::size_t> forced;
        for (std::size_t u = 0; u < locs.size(); ++u) (locs[u].forced ? forced : free_).push_back(u);
        Eigen::MatrixXd all(locs.size(), M);
        for (std::size_t u = 0; u < locs.size(); ++u)
            for (std::size_t k = 0; k < M; ++k) all(u, k) = locs[u].phi[k].get_d();
        if (forced.empty()) {
            Q_ = Eigen::MatrixXd::Identity(M, M);
        } else {
            Eigen::MatrixXd Fr(forced.size(), M);
            for (std::size_t i = 0; i < forced.size(); ++i) Fr.row(i) = all.row(forced[i]);
            Eigen::MatrixXd ker = Eigen::FullPivLU<Eigen::MatrixXd>(Fr).kernel();
            Q_ = Eigen::HouseholderQR<Eigen::MatrixXd>(ker).householderQ() * Eigen::MatrixXd::Identity(M, ker.cols());
        }
        phi_ = all * Q_;
        full_ = all;
        mass_ = Eigen::MatrixXd::Zero(locs.size(), K);
        for (std::size_t u = 0; u < locs.size(); ++u)
            if (!locs[u].forced)
                for (auto [c, w] : locs[u].mass) mass_(u, c) = static_cast<double>(w);
    }

    std::size_t free_dims() const { return static_cast<std::size_t>(Q_.cols()); }

    /// Snapshots (coefficients in the monomial basis, tau) from one continuation run.
    std::vector<std::pair<Eigen::VectorXd, double>> run(std::mt19937_64& rng) const {
        std::normal_distribution<double> nd;
        Eigen::VectorXd z(Q_.cols());
        for (auto& x : z) x = nd(rng);
        z.normalize();
        std::vector<std::pair<Eigen::VectorXd, double>> out;
        double mu = 1e-3;
        for (double tau = 0.5; tau > 1e-7; tau *= 0.5) {
            Eigen::VectorXd F = balance(z, tau);
            for (int it = 0; it < 40 && F.norm() > 1e-9; ++it) {
                Eigen::VectorXd g = phi_ * z;
                Eigen::VectorXd d = (g / tau).array().tanh().square();
                d = (1.0 - d.array()) / tau;
                Eigen::MatrixXd J = mass_.transpose() * d.asDiagonal() * phi_;
                J -= (J * z) * z.transpose();
                Eigen::MatrixXd A = J * J.transpose();
                A.diagonal().array() += mu * (1 + A.diagonal().maxCoeff());
                Eigen::VectorXd step = -J.transpose() * A.ldlt().solve(F);
                Eigen::VectorXd z2 = (z + step).normalized();
                Eigen::VectorXd F2 = balance(z2, tau);
                if (F2.norm() < F.norm()) {
                    z = z2;
                    F = F2;
                    mu = std::max(mu / 3, 1e-12);
                } else {
                    mu = std::min(mu * 4, 1e6);
                }
            }
            if (tau < 0.05) out.emplace_back(Q_ * z, tau);
        }
        return out;
    }

    /// |f(u)| at every location for monomial coefficients a.
    Eigen::VectorXd magnitudes(const Eigen::VectorXd& a) const { return (full_ * a).cwiseAbs(); }

private:
    Eigen::VectorXd balance(const Eigen::VectorXd& z, double tau) const {
        Eigen::VectorXd s = (phi_ * z / tau).array().tanh();
        return mass_.transpose() * s;
    }

    std::vector<std::size_t> free_;
    Eigen::MatrixXd Q_, phi_, full_, mass_;
};

}  // namespace

Poly ham_sandwich_cut(const std::vector<WeightedPoints>& classes, const CutOptions& opt) {
    if (classes.empty()) throw std::invalid_argument("ham_sandwich_cut: no classes");
    const std::size_t dim = classes[0].dim;
    if (dim == 0) throw std::invalid_argument("ham_sandwich_cut: dimension must be >= 1");
    for (auto& c : classes) {
        if (c.dim != dim) throw std::invalid_argument("ham_sandwich_cut: classes disagree on dimension");
        c.validate();
        if (c.size() > opt.max_points)
            throw SearchExhausted("search exhausted: class of " + std::to_string(c.size()) + " points exceeds cap " +
                                  std::to_string(opt.max_points));
    }
    if (classes.size() > opt.max_classes)
        throw SearchExhausted("search exhausted: " + std::to_string(classes.size()) + " classes exceed cap " +
                              std::to_string(opt.max_classes));
    const unsigned deg = cut_degree(classes.size(), dim);
    const auto mons = monomials_up_to(dim, deg);
    const std::size_t M = mons.size();

    // Work in coordinates rescaled to [-1, 1] and substitute back at the end.
    RationalVector center(dim, Rational(0)), half(dim, Rational(1));
    {
        bool first = true;
        RationalVector lo(dim), hi(dim);
        for (auto& c : classes)
            for (auto& p : c.points)
                for (std::size_t i = 0; i < dim; ++i) {
                    if (first || p[i] < lo[i]) lo[i] = p[i];
                    if (first || p[i] > hi[i]) hi[i] = p[i];
                    if (i + 1 == dim) first = false;
                }
        if (!first)
            for (std::size_t i = 0; i < dim; ++i) {
                center[i] = (lo[i] + hi[i]) / 2;
                if (hi[i] > lo[i]) half[i] = (hi[i] - lo[i]) / 2;
            }
    }
    auto normalise = [&](const RationalVector& p) {
        RationalVector q(dim);
        for (std::size_t i = 0; i < dim; ++i) q[i] = (p[i] - center[i]) / half[i];
        return q;
    };

    std::map<RationalVector, std::size_t> where;
    std::vector<Location> locs;
    std::vector<std::int64_t> totals;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        totals.push_back(static_cast<std::int64_t>(classes[c].total_weight()));
        for (std::size_t i = 0; i < classes[c].size(); ++i) {
            auto [it, fresh] = where.try_emplace(classes[c].points[i], locs.size());
            if (fresh) locs.push_back({lift(normalise(classes[c].points[i]), mons), {}, false});
            auto& mass = locs[it->second].mass;
            auto w = static_cast<std::int64_t>(classes[c].weight(i));
            auto m = std::find_if(mass.begin(), mass.end(), [&](auto& p) { return p.first == c; });
            if (m == mass.end())
                mass.emplace_back(c, w);
            else
                m->second += w;
        }
    }
    // An atom holding more than half of some class can only sit on the cut.
    std::vector<std::size_t> forced;
    for (std::size_t u = 0; u < locs.size(); ++u) {
        for (auto [c, w] : locs[u].mass)
            if (2 * w > totals[c]) locs[u].forced = true;
        if (locs[u].forced) forced.push_back(u);
    }

    auto finish = [&](const RationalVector& a) {
        Poly f = from_coeffs(dim, mons, a);
        std::vector<Poly> subs;
        for (std::size_t i = 0; i < dim; ++i)
            subs.push_back((Poly::variable(dim, i) - Poly::constant(dim, center[i])) * Poly::constant(dim, 1 / half[i]));
        f = f.compose(subs);
        RationalVector coeffs;
        for (auto& [e, c] : f.terms()) coeffs.push_back(c);
        make_primitive(coeffs);
        Poly g(dim);
        std::size_t k = 0;
        for (auto& [e, c] : f.terms()) g.add_term(e, coeffs[k++]);
        return g;
    };

    std::mt19937_64 rng(opt.seed);
    CutSearch exact(locs, totals, M, rng);
    if (locs.empty() || forced.size() >= M) {
        if (auto a = exact.pin_round(Eigen::VectorXd::Ones(M), forced); a && exact.score_of(*a).excess == 0)
            return finish(*a);
        throw SearchExhausted("search exhausted: no cut through the forced points");
    }
    SmoothSearch smooth(locs, totals.size(), M);
    std::size_t budget = opt.max_iterations;
    while (budget > 0) {
        std::optional<RationalVector> best;
        Score best_score{INT64_MAX, INT64_MAX};
        for (auto& [a, tau] : smooth.run(rng)) {
            Eigen::VectorXd mag = smooth.magnitudes(a);
            std::vector<std::size_t> order;
            for (std::size_t u = 0; u < locs.size(); ++u)
                if (!locs[u].forced) order.push_back(u);
            std::sort(order.begin(), order.end(), [&](auto x, auto y) { return mag[x] < mag[y]; });
            std::size_t near = 0;
            while (near < order.size() && mag[order[near]] < 2 * tau) ++near;
            for (std::size_t k = near > 0 ? near - 1 : 0; k <= near + 2 && forced.size() + k < M && k <= order.size(); ++k) {
                if (budget == 0) break;
                --budget;
                std::vector<std::size_t> pins = forced;
                pins.insert(pins.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
                auto v = exact.pin_round(a, pins);
                if (!v) continue;
                Score s = exact.score_of(*v);
                if (s.excess == 0) {
                    // Coarser rounding often survives and reads better.
                    for (unsigned bits = 0; bits < 40; bits += 4)
                        if (auto w = exact.pin_round(a, pins, bits); w && exact.score_of(*w).excess == 0) return finish(*w);
                    return finish(*v);
                }
                if (s < best_score) {
                    best_score = s;
                    best = v;
                }
            }
        }
        if (budget > 0) --budget;
        if (best)
            if (auto a = exact.polish(*best, budget, 200)) return finish(*a);
    }
    throw SearchExhausted("search exhausted after " + std::to_string(opt.max_iterations) + " iterations");
}

int PartitionResult::degree() const {
    int d = 0;
    for (auto& c : cuts) d += std::max(0, c.total_degree());
    return d;
}

std::uint64_t PartitionResult::max_class_weight() const {
    std::uint64_t m = 0;
    for (auto& [k, c] : classes) m = std::max(m, c.weight);
    return m;
}

nlohmann::json PartitionResult::to_json() const {
    nlohmann::json j;
    j["cuts"] = nlohmann::json::array();
    for (auto& c : cuts) j["cuts"].push_back(c.to_string());
    j["degree"] = degree();
    j["classes"] = nlohmann::json::array();
    for (auto& [sign, c] : classes) j["classes"].push_back({{"sign", sign}, {"weight", c.weight}, {"indices", c.indices}});
    j["wall"] = wall;
    j["wall_weight"] = wall_weight;
    return j;
}

PartitionResult partition_points(const WeightedPoints& P, unsigned rounds, const CutOptions& opt) {
    P.validate();
    if (rounds < 1) throw std::invalid_argument("partition_points: rounds must be >= 1");
    PartitionResult R;
    if (P.size()) {
        SignClass all;
        for (std::size_t i = 0; i < P.size(); ++i) all.indices.push_back(i);
        all.weight = P.total_weight();
        R.classes[""] = std::move(all);
    }
    for (unsigned round = 1; round <= rounds && !R.classes.empty(); ++round) {
        std::vector<WeightedPoints> cls;
        for (auto& [key, c] : R.classes) {
            WeightedPoints w{P.dim, {}, {}};
            for (auto i : c.indices) {
                w.points.push_back(P.points[i]);
                w.weights.push_back(P.weight(i));
            }
            cls.push_back(std::move(w));
        }
        CutOptions o = opt;
        o.seed = opt.seed * 1000003 + round;
        Poly cut = ham_sandwich_cut(cls, o);
        std::map<std::string, SignClass> next;
        for (auto& [key, c] : R.classes) {
            for (auto i : c.indices) {
                int s = sgn(cut.evaluate(P.points[i]));
                if (s == 0) {
                    R.wall.push_back(i);
                    R.wall_weight += P.weight(i);
                    continue;
                }
                auto& target = next[key + (s > 0 ? "+" : "-")];
                target.indices.push_back(i);
                target.weight += P.weight(i);
            }
            for (const char* side : {"+", "-"}) {
                auto it = next.find(key + side);
                if (it != next.end() && 2 * it->second.weight > c.weight)
                    throw std::logic_error("partition_points: cut failed to halve class '" + key + "'");
            }
        }
        R.cuts.push_back(std::move(cut));
        R.classes = std::move(next);
    }
    std::sort(R.wall.begin(), R.wall.end());
    return R;
}

unsigned scheduled_degree(unsigned rounds, std::size_t dim) {
    unsigned total = 0;
    for (unsigned i = 1; i <= rounds; ++i) total += cut_degree(std::size_t(1) << (i - 1), dim);
    return total;
}

unsigned optimal_rounds(std::uint64_t L1, std::uint64_t L2, unsigned n) {
    if (n < 3) throw std::invalid_argument("optimal_rounds: n must be >= 3");
    if (L1 == 0 || L2 == 0) return 0;
    using boost::multiprecision::pow;
    Decimal50 e1 = Decimal50(2 * (n - 1)) / Decimal50(2 * n - 3), e2 = Decimal50(2 * (n - 2)) / Decimal50(2 * n - 3);
    Decimal50 D2 = pow(Decimal50(L1), e1) / pow(Decimal50(L2), e2);
    unsigned j = 0;
    Decimal50 p = 1;
    while (p < D2) {
        p *= 2;
        ++j;
    }
    return j;
}

CrossingCount curve_class_crossings(const Curve& c, const PartitionResult& R) {
    std::vector<UPoly> q;
    CrossingCount out;
    out.bound = 1;
    std::span<const UPoly> args(c.param);
    for (auto& cut : R.cuts) {
        if (cut.nvars() != c.ambient_dim) throw std::invalid_argument("curve_class_crossings: dimension mismatch");
        UPoly g = evaluate_in<UPoly>(cut, args, UPoly::constant(Rational(1)), UPoly());
        if (g.is_zero()) throw WallCurve("wall curve: " + c.id + " lies in the zero set of cut " + cut.to_string());
        out.bound += std::max(0, g.degree());
        q.push_back(std::move(g));
    }
    std::vector<AlgebraicNumber> roots;
    for (auto& g : q)
        if (g.degree() > 0)
            for (auto& r : real_roots(g)) roots.push_back(r);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    std::vector<Rational> samples;
    if (roots.empty()) {
        samples.emplace_back(0);
    } else {
        samples.push_back(roots.front().lo() - 1);
        for (std::size_t k = 0; k + 1 < roots.size(); ++k) {
            const auto &l = roots[k], &r = roots[k + 1];
            while (!(l.hi() < r.lo() || (l.hi() == r.lo() && !l.is_rational() && !r.is_rational()))) {
                l.refine();
                r.refine();
            }
            samples.push_back(l.hi() < r.lo() ? simplest_between(l.hi(), r.lo()) : l.hi());
        }
        samples.push_back(roots.back().hi() + 1);
    }
    std::set<std::string> seen;
    for (auto& t : samples) {
        std::string sv;
        for (auto& g : q) sv += g.evaluate(t) > 0 ? '+' : '-';
        seen.insert(sv);
    }
    out.arcs = samples.size();
    out.classes = seen.size();
    return out;
}

}  // namespace flowinc
