#include "xprod/rational.hpp"

#include <algorithm>
#include <cctype>

namespace xprod {

Q parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw PreconditionError("empty rational literal");
    if (s.front() == '+') s.erase(s.begin());
    auto valid = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = part[0] == '-' ? 1 : 0;
        if (i == part.size()) return false;
        return std::all_of(part.begin() + static_cast<long>(i), part.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid(num) || !valid(den) || den[0] == '-')
        throw PreconditionError("malformed rational literal '" + std::string(text) + "'");
    Z n(num), d(den);
    if (d == 0) throw ArithmeticError("zero denominator in '" + std::string(text) + "'");
    Q q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) { return q.get_str(); }
std::string to_string(const Z& z) { return z.get_str(); }

namespace {
std::optional<Z> integer_root(const Z& n, unsigned k) {
    if (n < 0) {
        if (k % 2 == 0) return std::nullopt;
        auto r = integer_root(-n, k);
        if (!r) return std::nullopt;
        return Z(-*r);
    }
    Z r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) == 0) return std::nullopt;
    return r;
}
}  // namespace

std::optional<Q> rational_root(const Q& q, unsigned k) {
    if (k == 0) throw PreconditionError("zeroth root");
    auto n = integer_root(q.get_num(), k);
    if (!n) return std::nullopt;
    auto d = integer_root(q.get_den(), k);
    if (!d) return std::nullopt;
    Q r(*n, *d);
    r.canonicalize();
    return r;
}

std::vector<Z> positive_divisors(const Z& n, const Z& limit) {
    Z m = abs(n);
    if (m == 0 || m > limit) return {};
    std::vector<Z> small, large;
    for (Z d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            small.push_back(d);
            if (d * d != m) large.push_back(m / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Z lcm_of_denominators(const std::vector<Q>& values) {
    Z l = 1;
    for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    return l;
}

}  // namespace xprod
