#include "flowinc/bounds.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace flowinc {

Decimal50 rational_power(const Decimal50& x, const Rational& e) {
    if (x == 0) return Decimal50(0);
    if (e.get_den() == 1 && e.get_num().fits_slong_p()) {
        long k = e.get_num().get_si();
        Decimal50 r = 1, b = k < 0 ? Decimal50(1) / x : x;
        for (unsigned long m = static_cast<unsigned long>(k < 0 ? -k : k); m; m >>= 1) {
            if (m & 1) r *= b;
            b *= b;
        }
        return r;
    }
    Decimal50 p(e.get_num().get_str()), q(e.get_den().get_str());
    return boost::multiprecision::pow(x, p / q);
}

std::string decimal_string(const Decimal50& x, unsigned digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

const BoundTerm& BoundReport::term(const std::string& name) const {
    for (auto& t : terms)
        if (t.name == name) return t;
    throw std::out_of_range("BoundReport: no term '" + name + "'");
}

nlohmann::json BoundReport::to_json() const {
    nlohmann::json j;
    j["counts"] = {{"L1", counts.L1}, {"L2", counts.L2}, {"n", counts.n}};
    if (counts.incidences) j["counts"]["I"] = *counts.incidences;
    if (counts.joints) j["counts"]["J"] = *counts.joints;
    j["digits"] = digits;
    j["terms"] = nlohmann::json::array();
    for (auto& t : terms) {
        nlohmann::json e{{"name", t.name}, {"formula", t.formula}, {"rhs", decimal_string(t.rhs, digits)}};
        if (t.lhs) e["lhs"] = decimal_string(*t.lhs, digits);
        if (t.ratio) e["ratio"] = decimal_string(*t.ratio, digits);
        if (!t.flag.empty()) e["flag"] = t.flag;
        j["terms"].push_back(std::move(e));
    }
    return j;
}

std::string BoundReport::table() const {
    std::ostringstream os;
    os << "L1=" << counts.L1 << " L2=" << counts.L2 << " n=" << counts.n;
    if (counts.incidences) os << " I=" << *counts.incidences;
    if (counts.joints) os << " J=" << *counts.joints;
    os << "\n";
    os << std::left << std::setw(12) << "bound" << std::setw(44) << "rhs formula" << std::setw(24) << "rhs" << "lhs/rhs\n";
    for (auto& t : terms) {
        os << std::setw(12) << t.name << std::setw(44) << t.formula << std::setw(24) << decimal_string(t.rhs, 12);
        if (!t.flag.empty())
            os << t.flag;
        else if (t.ratio)
            os << decimal_string(*t.ratio, 12);
        else
            os << "-";
        os << "\n";
    }
    return os.str();
}

BoundReport bound_report(const BoundCounts& c, unsigned digits) {
    if (c.n < 2) throw std::invalid_argument("bound_report: n must be >= 2");
    BoundReport r;
    r.counts = c;
    r.digits = digits;
    const Decimal50 L1(c.L1), L2(c.L2);
    const unsigned n = c.n;
    auto finish = [](BoundTerm t, std::optional<std::uint64_t> lhs) {
        if (lhs) {
            t.lhs = Decimal50(*lhs);
            if (t.rhs != 0) t.ratio = *t.lhs / t.rhs;
        }
        return t;
    };

    Rational jexp(Integer(n), Integer(n - 1));
    jexp.canonicalize();
    r.terms.push_back(finish({"joints", "L1^(n/(n-1))", rational_power(L1, jexp), {}, {}, {}}, c.joints));

    BoundTerm mj{"multijoint", "L1 + L2 + (L1*L2)^((n-1)/(2n-3))", Decimal50(0), {}, {}, {}};
    if (n < 3) {
        mj.flag = "n < 3: exponent (n-1)/(2n-3) undefined for the theorem";
    } else {
        Rational e(Integer(n - 1), Integer(2 * n - 3));
        e.canonicalize();
        mj.rhs = L1 + L2 + rational_power(L1 * L2, e);
    }
    r.terms.push_back(mj.flag.empty() ? finish(mj, c.incidences) : mj);

    Rational inv(Integer(1), Integer(n - 1));
    inv.canonicalize();
    Decimal50 a = L1 + rational_power(L1, inv) * L2, b = L2 + L1 * rational_power(L2, inv);
    r.terms.push_back(finish({"simple", "min(L1 + L1^(1/(n-1))*L2, L2 + L1*L2^(1/(n-1)))", a < b ? a : b, {}, {}, {}},
                             c.incidences));
    return r;
}

}  // namespace flowinc
