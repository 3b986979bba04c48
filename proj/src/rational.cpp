#include "flowinc/rational.hpp"

#include <cmath>

namespace flowinc {

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(std::span<const Rational> v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += to_string(v[i]);
    }
    return out;
}

namespace {

bool valid_integer(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("not a rational: '" + std::string(text) + "'");
    std::string n(num.front() == '+' ? num.substr(1) : num);
    Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    Rational q(Integer(n), d);
    q.canonicalize();
    return q;
}

RationalVector parse_rational_list(std::string_view text, char sep) {
    RationalVector out;
    text = trim(text);
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.push_back(parse_rational(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

Integer factorial(unsigned k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(std::uint64_t n) {
    auto r = isqrt(n);
    return r * r == n;
}

// Stern-Brocot descent on the open interval.
Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
    if (lo < 0 && hi > 0) return Rational(0);
    if (hi <= 0) return -simplest_between(-hi, -lo);
    // 0 <= lo < hi
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    Rational candidate(fl + 1);
    if (candidate < hi) return candidate;
    // lo and hi share integer part fl (hi may equal fl+1).
    Rational a = lo - fl, b = hi - fl;
    if (a == 0) {
        // interval (0, b): 1/k with k = floor(1/b)+1
        Rational inv = 1 / b;
        Integer k;
        mpz_fdiv_q(k.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
        Rational step{Integer(1), Integer(k + 1)};
        step.canonicalize();
        return Rational(fl) + step;
    }
    // reciprocal interval (1/b, 1/a)
    Rational r = simplest_between(1 / b, 1 / a);
    return Rational(fl) + 1 / r;
}

int sign(const Rational& q) { return sgn(q); }

}  // namespace flowinc
