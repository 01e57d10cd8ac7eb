#include "polysum/rational.hpp"

#include "polysum/errors.hpp"

#include <algorithm>
#include <cctype>

namespace polysum {

Rational::Rational(long num, long den) {
    if (den == 0) throw ContractError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ContractError("division by zero rational");
    q_ /= o.q_;
    return *this;
}

std::optional<Rational> Rational::parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    auto digits = [&](std::string& out) {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out += s[i++];
        return i > start;
    };
    std::string num, den;
    if (!digits(num)) return std::nullopt;
    if (i < s.size()) {
        if (s[i] != '/') return std::nullopt;
        ++i;
        if (!digits(den)) return std::nullopt;
        if (i != s.size()) return std::nullopt;
    }
    mpq_class q;
    mpz_class n(num, 10);
    if (den.empty()) {
        q = n;
    } else {
        mpz_class d(den, 10);
        if (d == 0) return std::nullopt;
        q = mpq_class(n, d);
        q.canonicalize();
    }
    if (neg) q = -q;
    return Rational(q);
}

std::string Rational::str() const {
    return q_.get_str();
}

Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ContractError("dot: length mismatch");
    Rational r;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ContractError("vec add: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ContractError("vec sub: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale(const Rational& s, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

std::vector<std::size_t> support_of(const Vec& v) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.push_back(i);
    return s;
}

} // namespace polysum
