#pragma once
// Brute-force cohomology: every element of A is listed and every subgroup is
// a std::set closed by repeated addition.

#include "xprod/tate.hpp"

#include <map>
#include <set>
#include <vector>

namespace oracle {

using xprod::Coords;

struct Elements {
    std::vector<long long> moduli;
    std::vector<Coords> all;

    explicit Elements(std::vector<long long> m) : moduli(std::move(m)) {
        all.push_back(Coords(moduli.size(), 0));
        for (std::size_t i = 0; i < moduli.size(); ++i) {
            std::vector<Coords> next;
            for (const auto& x : all)
                for (long long v = 0; v < moduli[i]; ++v) {
                    Coords y = x;
                    y[i] = v;
                    next.push_back(y);
                }
            all = std::move(next);
        }
    }
    Coords add(const Coords& a, const Coords& b) const {
        Coords r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % moduli[i];
        return r;
    }
    Coords neg(const Coords& a) const {
        Coords r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = (moduli[i] - a[i]) % moduli[i];
        return r;
    }
    Coords times(long long n, const Coords& a) const {
        Coords r(a.size(), 0);
        for (long long k = 0; k < n; ++k) r = add(r, a);
        return r;
    }
    Coords apply(const xprod::IntMatrix& m, const Coords& x) const {
        Coords r(x.size(), 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            long long acc = 0;
            for (std::size_t j = 0; j < x.size(); ++j) acc = (acc + (m[i][j] % moduli[i] + moduli[i]) * x[j]) % moduli[i];
            r[i] = acc;
        }
        return r;
    }
    std::set<Coords> span(const std::vector<Coords>& gens) const {
        std::set<Coords> s{Coords(moduli.size(), 0)};
        std::vector<Coords> frontier(s.begin(), s.end());
        while (!frontier.empty()) {
            std::vector<Coords> next;
            for (const auto& x : frontier)
                for (const auto& g : gens) {
                    Coords y = add(x, g);
                    if (s.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
        return s;
    }
};

// Structure of z/b from the number of cosets killed by each prime power.
inline xprod::FiniteAbelianGroup quotient(const Elements& el, const std::set<Coords>& z, const std::set<Coords>& b) {
    const long long qsize = static_cast<long long>(z.size() / b.size());
    std::vector<long long> orders;
    long long rest = qsize;
    for (long long p = 2; rest > 1; ++p) {
        if (rest % p) continue;
        while (rest % p == 0) rest /= p;
        // log_p #{x in z/b : p^j x = 0} = sum_i min(a_i, j)
        std::vector<int> logs{0};
        for (int j = 1;; ++j) {
            long long pj = 1;
            for (int k = 0; k < j; ++k) pj *= p;
            long long count = 0;
            for (const auto& x : z)
                if (b.count(el.times(pj, x))) ++count;
            count /= static_cast<long long>(b.size());
            int lg = 0;
            while (count > 1) {
                count /= p;
                ++lg;
            }
            logs.push_back(lg);
            if (logs[static_cast<std::size_t>(j)] == logs[static_cast<std::size_t>(j) - 1]) break;
        }
        // #{i : a_i >= j} = logs[j] - logs[j-1]
        for (std::size_t j = 1; j < logs.size(); ++j) {
            const int at_least = logs[j] - logs[j - 1];
            const int at_least_next = j + 1 < logs.size() ? logs[j + 1] - logs[j] : 0;
            long long pj = 1;
            for (std::size_t k = 0; k < j; ++k) pj *= p;
            for (int c = 0; c < at_least - at_least_next; ++c) orders.push_back(pj);
        }
    }
    return xprod::FiniteAbelianGroup::from_cyclic_orders(orders);
}

struct LowDegrees {
    xprod::FiniteAbelianGroup minus_one;
    xprod::FiniteAbelianGroup zero;
};

inline LowDegrees low_degrees(const xprod::FiniteGModule& m) {
    const Elements el(m.module().moduli());
    const std::size_t n = m.group().order();
    std::set<Coords> ker_norm, fixed, norms;
    std::vector<Coords> aug;
    for (const auto& x : el.all) {
        Coords s(x.size(), 0);
        bool is_fixed = true;
        for (std::size_t g = 0; g < n; ++g) {
            Coords gx = el.apply(m.matrix(static_cast<int>(g)), x);
            s = el.add(s, gx);
            if (gx != x) is_fixed = false;
            aug.push_back(el.add(gx, el.neg(x)));
        }
        if (s == Coords(x.size(), 0)) ker_norm.insert(x);
        if (is_fixed) fixed.insert(x);
        norms.insert(s);
    }
    std::set<Coords> aug_set = el.span(aug);
    return {quotient(el, ker_norm, aug_set), quotient(el, fixed, norms)};
}

// H^1 from all normalized crossed homomorphisms
inline xprod::FiniteAbelianGroup first_degree(const xprod::FiniteGModule& m) {
    const Elements el(m.module().moduli());
    const auto& g = m.group();
    const std::size_t n = g.order();
    std::vector<long long> big;
    for (std::size_t i = 1; i < n; ++i) big.insert(big.end(), el.moduli.begin(), el.moduli.end());
    const Elements cochains(big);
    const std::size_t dim = el.moduli.size();
    auto value = [&](const Coords& f, int x) {
        if (x == 0) return Coords(dim, 0);
        return Coords(f.begin() + static_cast<long>((x - 1) * dim), f.begin() + static_cast<long>(x * dim));
    };
    std::set<Coords> z, b;
    for (const auto& f : cochains.all) {
        bool ok = true;
        for (std::size_t x = 1; x < n && ok; ++x)
            for (std::size_t y = 1; y < n && ok; ++y) {
                const int xy = g.mul(static_cast<int>(x), static_cast<int>(y));
                Coords lhs = value(f, xy);
                Coords rhs = el.add(value(f, static_cast<int>(x)), el.apply(m.matrix(static_cast<int>(x)), value(f, static_cast<int>(y))));
                ok = lhs == rhs;
            }
        if (ok) z.insert(f);
    }
    for (const auto& a : el.all) {
        Coords f;
        for (std::size_t x = 1; x < n; ++x) {
            Coords d = el.add(el.apply(m.matrix(static_cast<int>(x)), a), el.neg(a));
            f.insert(f.end(), d.begin(), d.end());
        }
        b.insert(f);
    }
    return quotient(cochains, z, b);
}

}  // namespace oracle
