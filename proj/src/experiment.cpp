#include "flowinc/experiment.hpp"

#include "flowinc/incidence.hpp"
#include "flowinc/liealg.hpp"
#include "flowinc/partition.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace flowinc {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_count(std::string_view s, const std::string& what) {
    std::string t = trim(s);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        if (t.empty() || t[0] == '-') throw std::invalid_argument(t);
        v = std::stoull(t, &pos);
    } catch (const std::exception&) {
        throw ValidationError(what + ": expected a nonnegative integer, got '" + t + "'");
    }
    if (pos != t.size()) throw ValidationError(what + ": expected a nonnegative integer, got '" + t + "'");
    return v;
}

const std::string& option(const ExperimentConfig& cfg, const std::string& key) {
    auto it = cfg.options.find(key);
    if (it == cfg.options.end()) throw ValidationError(cfg.subcommand + ": missing option '" + key + "'");
    return it->second;
}

std::string opt_or(const ExperimentConfig& cfg, const std::string& key, const std::string& fallback) {
    auto it = cfg.options.find(key);
    return it == cfg.options.end() ? fallback : it->second;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string dec(const Decimal50& x, unsigned digits) { return decimal_string(x, digits); }

std::string scale_key(const std::string& kind) {
    if (kind == "moment_translates" || kind == "axis_parallel") return "k";
    if (kind == "custom_file") throw ValidationError("custom_file families cannot be rescaled");
    return "N";
}

FamilySpec at_scale(FamilySpec s, std::uint64_t v) {
    s.params[scale_key(s.kind)] = std::to_string(v);
    return s;
}

std::vector<Curve> generate_capped(const FamilySpec& s) {
    if (s.kind != "custom_file" && !s.has("count")) {
        std::uint64_t n = 0;
        try {
            n = grid_family_size(s);
        } catch (const ValidationError&) {
            n = 0;
        }
        if (n > kMaxPairs)
            throw ScaleCapExceeded(s.kind + ": " + std::to_string(n) + " members exceed the cap " + std::to_string(kMaxPairs));
    }
    return generate(s);
}

void check_pairs(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kMaxPairs / a)
        throw ScaleCapExceeded(std::to_string(a) + " x " + std::to_string(b) + " curve pairs exceed the cap " +
                               std::to_string(kMaxPairs));
}

unsigned ambient(const std::vector<Curve>& L, const ExperimentConfig& cfg) {
    if (cfg.options.count("n")) return static_cast<unsigned>(parse_count(cfg.options.at("n"), "n"));
    return L.empty() ? 2 : static_cast<unsigned>(L.front().ambient_dim);
}

// --- subcommands -----------------------------------------------------------------------------

Report run_gen(const ExperimentConfig& cfg) {
    Report r;
    r.header = {"id", "family_tag", "ambient_dim", "degree", "record"};
    auto L = generate_capped(cfg.families[0]);
    for (auto& c : L)
        r.rows.push_back({c.id, c.family_tag, std::to_string(c.ambient_dim), std::to_string(c.degree()), to_record(c)});
    r.summary["count"] = L.size();
    return r;
}

Report run_incidences(const ExperimentConfig& cfg) {
    Report r;
    const FamilySpec& s1 = cfg.families[0];
    const FamilySpec& s2 = cfg.families.size() > 1 ? cfg.families[1] : cfg.families[0];
    if (cfg.scales.empty()) {
        auto L1 = generate_capped(s1), L2 = generate_capped(s2);
        check_pairs(L1.size(), L2.size());
        auto I = incidence_set(L1, L2, cfg.workers);
        r.header = {"id1", "id2", "point_repr", "tangential"};
        for (auto& rec : I.records)
            r.rows.push_back({rec.id1, rec.id2, rec.point.to_string(), rec.tangential ? "1" : "0"});
        BoundCounts bc{L1.size(), L2.size(), I.count(), std::nullopt, ambient(L1, cfg)};
        r.summary["incidences"] = I.count();
        r.summary["bounds"] = bound_report(bc, cfg.precision).to_json();
        return r;
    }
    r.header = {"scale", "L1", "L2", "incidences", "simple_rhs", "I/simple"};
    for (auto v : cfg.scales) {
        auto L1 = generate_capped(at_scale(s1, v)), L2 = generate_capped(at_scale(s2, v));
        check_pairs(L1.size(), L2.size());
        auto I = incidence_set(L1, L2, cfg.workers);
        auto rep = bound_report({L1.size(), L2.size(), I.count(), std::nullopt, ambient(L1, cfg)}, cfg.precision);
        auto& t = rep.term("simple");
        r.rows.push_back({std::to_string(v), std::to_string(L1.size()), std::to_string(L2.size()), std::to_string(I.count()),
                          dec(t.rhs, cfg.precision), t.ratio ? dec(*t.ratio, cfg.precision) : ""});
    }
    return r;
}

Report run_joints(const ExperimentConfig& cfg) {
    Report r;
    auto one_scale = [&](std::optional<std::uint64_t> v) {
        std::vector<std::vector<Curve>> fams;
        for (auto& s : cfg.families) fams.push_back(generate_capped(v ? at_scale(s, *v) : s));
        std::uint64_t total = 0;
        for (auto& f : fams) total += f.size();
        check_pairs(total, total);
        return std::make_pair(std::move(fams), total);
    };
    const bool multi = cfg.families.size() > 1;
    if (cfg.scales.empty()) {
        auto [fams, total] = one_scale(std::nullopt);
        unsigned n = ambient(fams[0], cfg);
        if (multi) {
            auto M = multijoint_sum(fams, n, cfg.workers);
            r.header = {"point_repr", "m"};
            for (auto& [p, m] : M.joints) r.rows.push_back({p.to_string(), std::to_string(m)});
            r.summary["joints"] = M.joints.size();
            r.summary["sum"] = dec(M.sum, cfg.precision);
            return r;
        }
        auto J = detect_joints(fams[0], n, cfg.workers);
        r.header = {"point_repr", "multiplicity", "curves"};
        std::uint64_t msum = 0;
        for (auto& j : J) {
            std::string ids;
            for (auto& id : j.curves) ids += (ids.empty() ? "" : ";") + id;
            r.rows.push_back({j.point.to_string(), std::to_string(j.multiplicity), ids});
            msum += j.multiplicity;
        }
        r.summary["joints"] = J.size();
        r.summary["multiplicity_sum"] = msum;
        r.summary["bounds"] = bound_report({total, total, std::nullopt, J.size(), n}, cfg.precision).to_json();
        return r;
    }
    r.header = multi ? std::vector<std::string>{"scale", "L", "joints", "sum", "rhs", "sum/rhs"}
                     : std::vector<std::string>{"scale", "L", "joints", "rhs", "J/rhs"};
    for (auto v : cfg.scales) {
        auto [fams, total] = one_scale(v);
        unsigned n = ambient(fams[0], cfg);
        auto rep = bound_report({total, total, std::nullopt, std::nullopt, n}, cfg.precision);
        const Decimal50 rhs = rep.term("joints").rhs;
        if (multi) {
            auto M = multijoint_sum(fams, n, cfg.workers);
            r.rows.push_back({std::to_string(v), std::to_string(total), std::to_string(M.joints.size()),
                              dec(M.sum, cfg.precision), dec(rhs, cfg.precision), dec(M.sum / rhs, cfg.precision)});
        } else {
            auto J = detect_joints(fams[0], n, cfg.workers);
            r.rows.push_back({std::to_string(v), std::to_string(total), std::to_string(J.size()), dec(rhs, cfg.precision),
                              dec(Decimal50(J.size()) / rhs, cfg.precision)});
        }
    }
    return r;
}

Report run_tangent_scan(const ExperimentConfig& cfg) {
    Report r;
    r.header = {"N", "curves", "T", "T/C^(4/3)", "T/C^(3/2)"};
    std::vector<std::pair<Decimal50, Decimal50>> series;
    for (auto N : cfg.scales) {
        if (N > kMaxTangentN)
            throw ScaleCapExceeded("tangent-scan: N = " + std::to_string(N) + " exceeds the cap " + std::to_string(kMaxTangentN));
        FamilySpec s{"parabola_grid", {{"N", std::to_string(N)}}, 0};
        std::uint64_t C = grid_family_size(s), T = count_tangent_pairs(N);
        Decimal50 c(C), t(T);
        r.rows.push_back({std::to_string(N), std::to_string(C), std::to_string(T),
                          dec(t / rational_power(c, Rational(Integer(4), Integer(3))), cfg.precision),
                          dec(t / rational_power(c, Rational(Integer(3), Integer(2))), cfg.precision)});
        if (T > 0) series.emplace_back(Decimal50(N), t);
    }
    if (series.size() >= 3) {
        auto f = fit_exponent(series);
        r.summary["slope_T_vs_N"] = dec(f.slope, cfg.precision);
        r.summary["residual"] = dec(f.residual, cfg.precision);
    }
    return r;
}

Report run_n7_grid(const ExperimentConfig& cfg) {
    Report r;
    r.header = {"N", "points", "curves", "incidences", "I/(P*C)^(2/3)"};
    for (auto N : cfg.scales) {
        if (N > kMaxGridN)
            throw ScaleCapExceeded("n7-grid: N = " + std::to_string(N) + " exceeds the cap " + std::to_string(kMaxGridN));
        const std::int64_t n = static_cast<std::int64_t>(N);
        std::vector<RationalVector> pts;
        for (std::int64_t p = 0; p <= n; ++p)
            for (std::int64_t q = 0; q <= 3 * n * n * n; ++q) pts.push_back({Rational(static_cast<long>(p)), Rational(static_cast<long>(q))});
        GraphIncidenceCounter counter(pts);
        std::uint64_t I = 0, C = 0;
        std::int64_t coeffs[3];
        for (std::int64_t a = 0; a <= n * n * n; ++a)
            for (std::int64_t b = 0; b <= n * n; ++b)
                for (std::int64_t c = 0; c <= n; ++c) {
                    coeffs[0] = a, coeffs[1] = b, coeffs[2] = c;
                    I += counter.count(std::span<const std::int64_t>(coeffs, 3));
                    ++C;
                }
        const std::uint64_t P = pts.size();
        Decimal50 pc = Decimal50(P) * Decimal50(C);
        r.rows.push_back({std::to_string(N), std::to_string(P), std::to_string(C), std::to_string(I),
                          dec(Decimal50(I) / rational_power(pc, Rational(Integer(2), Integer(3))), cfg.precision)});
    }
    return r;
}

Report run_square_sieve(const ExperimentConfig& cfg) {
    Report r;
    const bool list = opt_or(cfg, "list", "0") == "1";
    r.header = list ? std::vector<std::string>{"N", "a", "b", "c"} : std::vector<std::string>{"N", "triples"};
    for (auto N : cfg.scales) {
        if (N > kMaxSieveN)
            throw ScaleCapExceeded("square-sieve: N = " + std::to_string(N) + " exceeds the cap " + std::to_string(kMaxSieveN));
        auto S = count_square_triples(N, list);
        if (list)
            for (auto& t : S.triples)
                r.rows.push_back({std::to_string(N), std::to_string(t[0]), std::to_string(t[1]), std::to_string(t[2])});
        else
            r.rows.push_back({std::to_string(N), std::to_string(S.count)});
        r.summary["N" + std::to_string(N)] = S.count;
    }
    return r;
}

WeightedPoints partition_input(const ExperimentConfig& cfg) {
    WeightedPoints P;
    P.dim = 2;
    if (cfg.options.count("points")) {
        std::ifstream in(cfg.options.at("points"));
        if (!in) throw ValidationError("partition: cannot open '" + cfg.options.at("points") + "'");
        std::string line;
        std::size_t no = 0;
        bool weighted = false;
        while (std::getline(in, line)) {
            ++no;
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            RationalVector v;
            try {
                v = parse_rational_list(line);
            } catch (const ParseError& e) {
                throw ValidationError("partition: line " + std::to_string(no) + ": " + e.what());
            }
            if (v.size() != 2 && v.size() != 3)
                throw ValidationError("partition: line " + std::to_string(no) + ": expected x,y or x,y,weight");
            if (P.points.empty()) weighted = v.size() == 3;
            if (weighted != (v.size() == 3))
                throw ValidationError("partition: line " + std::to_string(no) + ": mixed weighted and unweighted rows");
            P.points.push_back({v[0], v[1]});
            if (weighted) {
                if (v[2].get_den() != 1 || v[2] < 1)
                    throw ValidationError("partition: line " + std::to_string(no) + ": weight must be a positive integer");
                P.weights.push_back(v[2].get_num().get_ui());
            }
        }
    } else {
        std::uint64_t n = parse_count(opt_or(cfg, "random", "128"), "random");
        std::uint64_t box = parse_count(opt_or(cfg, "box", "1000"), "box");
        std::uint64_t wmax = parse_count(opt_or(cfg, "max-weight", "1"), "max-weight");
        if (wmax < 1) throw ValidationError("partition: max-weight must be >= 1");
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<long> d(0, static_cast<long>(box));
        std::uniform_int_distribution<std::uint64_t> w(1, wmax);
        for (std::uint64_t i = 0; i < n; ++i) {
            long x = d(rng), y = d(rng);
            P.points.push_back({Rational(x), Rational(y)});
            if (wmax > 1) P.weights.push_back(w(rng));
        }
    }
    return P;
}

Report run_partition(const ExperimentConfig& cfg) {
    WeightedPoints P = partition_input(cfg);
    unsigned rounds = static_cast<unsigned>(parse_count(opt_or(cfg, "rounds", "5"), "rounds"));
    if (rounds < 1) throw ValidationError("partition: rounds must be >= 1");
    CutOptions o;
    o.seed = cfg.seed;
    auto R = partition_points(P, rounds, o);
    Report r;
    r.header = {"sign", "weight", "points"};
    for (auto& [sign, c] : R.classes) r.rows.push_back({sign, std::to_string(c.weight), std::to_string(c.indices.size())});
    r.rows.push_back({"wall", std::to_string(R.wall_weight), std::to_string(R.wall.size())});
    r.summary = R.to_json();
    r.summary["scheduled_degree"] = scheduled_degree(rounds, 2);
    r.summary["total_weight"] = P.total_weight();
    return r;
}

Report run_bounds(const ExperimentConfig& cfg) {
    BoundCounts c;
    c.L1 = parse_count(option(cfg, "L1"), "L1");
    c.L2 = parse_count(opt_or(cfg, "L2", cfg.options.at("L1")), "L2");
    c.n = static_cast<unsigned>(parse_count(opt_or(cfg, "n", "3"), "n"));
    if (cfg.options.count("I")) c.incidences = parse_count(cfg.options.at("I"), "I");
    if (cfg.options.count("J")) c.joints = parse_count(cfg.options.at("J"), "J");
    BoundReport rep;
    try {
        rep = bound_report(c, cfg.precision);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    Report r;
    r.header = {"bound", "formula", "rhs", "lhs", "ratio", "flag"};
    for (auto& t : rep.terms)
        r.rows.push_back({t.name, t.formula, t.flag.empty() ? dec(t.rhs, cfg.precision) : "",
                          t.lhs ? dec(*t.lhs, cfg.precision) : "", t.ratio ? dec(*t.ratio, cfg.precision) : "", t.flag});
    r.summary = rep.to_json();
    return r;
}

NilpotentAlgebra algebra_from(const std::string& spec) {
    if (spec == "heisenberg") return NilpotentAlgebra::heisenberg();
    if (spec.rfind("abelian:", 0) == 0) return NilpotentAlgebra::abelian(parse_count(spec.substr(8), "abelian dimension"));
    if (spec.rfind("free:", 0) == 0) {
        auto rest = spec.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw ValidationError("algebra: expected free:<generators>:<step>");
        return NilpotentAlgebra::free_nilpotent(parse_count(rest.substr(0, colon), "generators"),
                                                static_cast<unsigned>(parse_count(rest.substr(colon + 1), "step")));
    }
    try {
        return NilpotentAlgebra::load(spec);
    } catch (const ParseError& e) {
        throw ValidationError("algebra '" + spec + "': " + e.what());
    } catch (const std::runtime_error& e) {
        throw ValidationError(e.what());
    }
}

std::string vector_string(const RationalVector& v) {
    std::string s;
    for (auto& x : v) s += (s.empty() ? "" : ",") + to_string(x);
    return s;
}

Report run_lift_demo(const ExperimentConfig& cfg) {
    NilpotentAlgebra A = algebra_from(opt_or(cfg, "algebra", "heisenberg"));
    auto check = check_algebra(A);
    if (!check.valid()) throw ValidationError("algebra: " + check.to_string());
    if (A.step() > kBchStepCap)
        throw ScaleCapExceeded("lift-demo: step " + std::to_string(A.step()) + " exceeds the cap " + std::to_string(kBchStepCap));
    RationalMatrix z;
    if (auto zs = opt_or(cfg, "z", ""); !zs.empty()) {
        std::istringstream in(zs);
        for (std::string part; std::getline(in, part, ';');) {
            if (trim(part).empty()) continue;
            try {
                z.push_back(parse_rational_list(trim(part)));
            } catch (const ParseError& e) {
                throw ValidationError(std::string("z: ") + e.what());
            }
        }
    }
    MalcevBasis B;
    try {
        B = weak_malcev_basis(A, z);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    auto F = pushforward_fields(A, B);
    auto sigma = bracket_sign(A, B, F);
    Report r;
    r.header = {"index", "basis_vector", "field", "flow_degree"};
    RationalVector origin(B.split, Rational(0));
    for (std::size_t j = 0; j < F.size(); ++j) {
        RationalVector base(B.split);
        for (std::size_t i = 0; i < B.split; ++i) base[i] = Rational(static_cast<long>(i + 1));
        int deg = exp_flow(F[j], base, A.step() + 2).degree();
        r.rows.push_back({std::to_string(j + 1), vector_string(B.vectors[j]), F[j].to_string(), std::to_string(deg)});
    }
    r.summary["algebra"] = check.to_string();
    r.summary["split"] = B.split;
    r.summary["sigma"] = sigma ? nlohmann::json(*sigma) : nlohmann::json(nullptr);
    r.summary["tails_closed"] = tails_closed(A, B.vectors);
    return r;
}

Report run_fit(const ExperimentConfig& cfg) {
    std::vector<std::pair<Decimal50, Decimal50>> series;
    auto add = [&](const std::string& xs, const std::string& ys) {
        try {
            series.emplace_back(Decimal50(trim(xs)), Decimal50(trim(ys)));
        } catch (const std::exception&) {
            throw ValidationError("fit: cannot read '" + xs + "', '" + ys + "' as decimals");
        }
    };
    if (cfg.options.count("series")) {
        std::istringstream in(cfg.options.at("series"));
        for (std::string part; std::getline(in, part, ',');) {
            auto colon = part.find(':');
            if (colon == std::string::npos) throw ValidationError("fit: series entries are x:y");
            add(part.substr(0, colon), part.substr(colon + 1));
        }
    } else {
        const std::string& path = option(cfg, "input");
        std::ifstream in(path);
        if (!in) throw ValidationError("fit: cannot open '" + path + "'");
        std::string line;
        std::vector<std::string> head;
        std::size_t xi = 0, yi = 1;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> cells;
            std::istringstream ls(line);
            for (std::string c; std::getline(ls, c, ',');) cells.push_back(trim(c));
            if (head.empty()) {
                head = cells;
                auto find = [&](const std::string& key, std::size_t fallback) {
                    if (!cfg.options.count(key)) return fallback;
                    auto it = std::find(head.begin(), head.end(), cfg.options.at(key));
                    if (it == head.end()) throw ValidationError("fit: no column '" + cfg.options.at(key) + "'");
                    return static_cast<std::size_t>(it - head.begin());
                };
                xi = find("xcol", 0);
                yi = find("ycol", 1);
                continue;
            }
            if (std::max(xi, yi) >= cells.size()) throw ValidationError("fit: short row '" + line + "'");
            add(cells[xi], cells[yi]);
        }
    }
    auto f = fit_exponent(series);
    Report r;
    r.header = {"points", "slope", "intercept", "residual"};
    r.rows.push_back({std::to_string(series.size()), dec(f.slope, cfg.precision), dec(f.intercept, cfg.precision),
                      dec(f.residual, cfg.precision)});
    return r;
}

}  // namespace

void ExperimentConfig::validate() const {
    const auto& names = experiment_subcommands();
    if (std::find(names.begin(), names.end(), subcommand) == names.end())
        throw ValidationError("unknown subcommand '" + subcommand + "'");
    if (precision < 15 || precision > 50) throw ValidationError("precision must be in 15..50, got " + std::to_string(precision));
    if (workers < 1) throw ValidationError("workers must be >= 1");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (scales[i] <= scales[i - 1]) throw ValidationError("scale values must be strictly increasing");
    const bool needs_scales = subcommand == "tangent-scan" || subcommand == "n7-grid" || subcommand == "square-sieve";
    if (needs_scales && scales.empty()) throw ValidationError(subcommand + ": empty scale list");
    for (auto v : scales)
        if (v == 0) throw ValidationError("scale values must be >= 1");
    const bool needs_family = subcommand == "gen" || subcommand == "incidences" || subcommand == "joints";
    if (needs_family && families.empty()) throw ValidationError(subcommand + ": no family given");
    if (subcommand == "gen" && families.size() != 1) throw ValidationError("gen: exactly one family expected");
    if (subcommand == "incidences" && families.size() > 2) throw ValidationError("incidences: at most two families");
}

std::vector<std::uint64_t> parse_range(std::string_view text) {
    std::string t = trim(text);
    if (t.empty()) return {};
    std::vector<std::uint64_t> out;
    if (auto dots = t.find(".."); dots != std::string::npos) {
        std::string rest = t.substr(dots + 2);
        std::uint64_t step = 1;
        if (auto colon = rest.find(':'); colon != std::string::npos) {
            step = parse_count(rest.substr(colon + 1), "range step");
            rest = rest.substr(0, colon);
        }
        std::uint64_t lo = parse_count(t.substr(0, dots), "range start"), hi = parse_count(rest, "range end");
        if (step == 0) throw ValidationError("range step must be >= 1");
        if (lo > hi) throw ValidationError("range '" + t + "' is empty");
        for (std::uint64_t v = lo; v <= hi; v += step) out.push_back(v);
        return out;
    }
    std::istringstream in(t);
    for (std::string part; std::getline(in, part, ',');) out.push_back(parse_count(part, "scale value"));
    return out;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError("config line " + std::to_string(no) + ": expected key=value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "subcommand")
            cfg.subcommand = value;
        else if (key == "n-range")
            cfg.scales = parse_range(value);
        else if (key == "out")
            cfg.out = value;
        else if (key == "precision")
            cfg.precision = static_cast<unsigned>(parse_count(value, "precision"));
        else if (key == "workers")
            cfg.workers = static_cast<unsigned>(parse_count(value, "workers"));
        else if (key == "seed")
            cfg.seed = parse_count(value, "seed");
        else if (key == "family")
            cfg.families.push_back(load_family_spec(value));
        else
            cfg.options[key] = value;
    }
    return cfg;
}

std::string Report::to_csv() const {
    std::string s;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + csv_cell(cells[i]);
        s += "\n";
    };
    line(header);
    for (auto& r : rows) line(r);
    return s;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["header"] = header;
    j["rows"] = rows;
    j["summary"] = summary;
    return j;
}

Report run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::string& s = cfg.subcommand;
    if (s == "gen") return run_gen(cfg);
    if (s == "incidences") return run_incidences(cfg);
    if (s == "joints") return run_joints(cfg);
    if (s == "tangent-scan") return run_tangent_scan(cfg);
    if (s == "n7-grid") return run_n7_grid(cfg);
    if (s == "square-sieve") return run_square_sieve(cfg);
    if (s == "partition") return run_partition(cfg);
    if (s == "bounds") return run_bounds(cfg);
    if (s == "lift-demo") return run_lift_demo(cfg);
    return run_fit(cfg);
}

void write_report(const Report& r, const std::string& out) {
    auto put = [](const std::string& path, const std::string& body) {
        const std::string tmp = path + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + tmp);
            f << body;
            if (!f) throw std::runtime_error("write failed for " + tmp);
        }
        std::filesystem::rename(tmp, path);
    };
    put(out + ".csv", r.to_csv());
    put(out + ".json", r.to_json().dump(2) + "\n");
}

ExponentFit fit_exponent(const std::vector<std::pair<Decimal50, Decimal50>>& series) {
    if (series.size() < 3) throw ValidationError("fit_exponent: need at least 3 points, got " + std::to_string(series.size()));
    std::vector<Decimal50> lx, ly;
    for (auto& [x, y] : series) {
        if (x <= 0 || y <= 0) throw ValidationError("fit_exponent: values must be positive");
        lx.push_back(boost::multiprecision::log(x));
        ly.push_back(boost::multiprecision::log(y));
    }
    const Decimal50 n(series.size());
    Decimal50 mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
    mx /= n;
    my /= n;
    Decimal50 sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0) throw ValidationError("fit_exponent: all x values coincide");
    ExponentFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.residual = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        Decimal50 e = ly[i] - (f.intercept + f.slope * lx[i]);
        f.residual += e * e;
    }
    return f;
}

}  // namespace flowinc
