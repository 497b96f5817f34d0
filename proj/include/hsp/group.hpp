#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hsp/error.hpp"

namespace hsp {

using Element = std::size_t;

inline constexpr std::size_t kDefaultSizeCap = 200;

// A finite group stored as its Cayley table. Element 0 is always the
// identity. Instances are immutable and only obtainable through the
// validating factories below, so every Group satisfies the group axioms.
class Group {
public:
    using Table = std::vector<std::vector<Element>>;

    std::size_t order() const noexcept { return cayley_.size(); }
    static constexpr Element identity() noexcept { return 0; }

    Element mul(Element a, Element b) const { return cayley_[a][b]; }
    Element inv(Element a) const { return inverse_[a]; }
    // x a x^-1
    Element conj(Element x, Element a) const { return mul(mul(x, a), inv(x)); }

    const Table& cayley() const noexcept { return cayley_; }
    const std::vector<Element>& inverses() const noexcept { return inverse_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(Element a) const { return labels_[a]; }
    const std::string& origin() const noexcept { return origin_; }

    bool is_abelian() const {
        for (Element a = 0; a < order(); ++a)
            for (Element b = a + 1; b < order(); ++b)
                if (cayley_[a][b] != cayley_[b][a]) return false;
        return true;
    }

    std::size_t element_order(Element a) const {
        std::size_t k = 1;
        for (Element x = a; x != identity(); x = mul(x, a)) ++k;
        return k;
    }

    // Validates the table exhaustively. Throws NotAGroup naming the first
    // violated axiom together with a witness.
    static Group from_cayley(Table table, std::string origin = "cayley",
                             std::vector<std::string> labels = {},
                             std::size_t cap = kDefaultSizeCap);

private:
    Group() = default;

    Table cayley_;
    std::vector<Element> inverse_;
    std::vector<std::string> labels_;
    std::string origin_;
};

namespace detail {

inline void check_cap(std::size_t order, std::size_t cap, const std::string& what) {
    if (order > cap) {
        std::ostringstream os;
        os << what << ": order " << order << " exceeds size cap " << cap;
        throw CapExceeded(os.str());
    }
}

[[noreturn]] inline void not_a_group(const std::string& axiom, const std::string& witness) {
    throw NotAGroup("not a group: " + axiom + " fails at " + witness);
}

inline std::string triple(std::size_t a, std::size_t b, std::size_t c) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

inline bool is_prime(std::size_t p) {
    if (p < 2) return false;
    for (std::size_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace detail

inline Group Group::from_cayley(Table table, std::string origin,
                                std::vector<std::string> labels, std::size_t cap) {
    const std::size_t n = table.size();
    if (n == 0) detail::not_a_group("non-empty", "empty table");
    detail::check_cap(n, cap, origin);

    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n) {
            std::ostringstream os;
            os << "row " << a << " has " << table[a].size() << " entries, expected " << n;
            detail::not_a_group("square table", os.str());
        }
        for (std::size_t b = 0; b < n; ++b)
            if (table[a][b] >= n)
                detail::not_a_group("closure", detail::triple(a, b, table[a][b]));
    }

    // Latin square: rows and columns are permutations.
    std::vector<char> seen(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < n; ++b) {
            if (seen[table[a][b]]) {
                std::ostringstream os;
                os << "row " << a << " repeats " << table[a][b];
                detail::not_a_group("row permutation", os.str());
            }
            seen[table[a][b]] = 1;
        }
    }
    for (std::size_t b = 0; b < n; ++b) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t a = 0; a < n; ++a) {
            if (seen[table[a][b]]) {
                std::ostringstream os;
                os << "column " << b << " repeats " << table[a][b];
                detail::not_a_group("column permutation", os.str());
            }
            seen[table[a][b]] = 1;
        }
    }

    for (std::size_t a = 0; a < n; ++a) {
        if (table[0][a] != a || table[a][0] != a)
            detail::not_a_group("identity at index 0", detail::triple(0, a, table[0][a]));
    }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    detail::not_a_group("associativity", detail::triple(a, b, c));

    Group g;
    g.inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (table[a][b] == 0) g.inverse_[a] = b;

    if (labels.empty()) {
        labels.reserve(n);
        for (std::size_t a = 0; a < n; ++a) labels.push_back(a == 0 ? "e" : "g" + std::to_string(a));
    } else if (labels.size() != n) {
        throw ParseError("label count does not match group order");
    }

    g.cayley_ = std::move(table);
    g.labels_ = std::move(labels);
    g.origin_ = std::move(origin);
    return g;
}

// Z_n: element i stands for i mod n.
inline Group build_cyclic(std::size_t n, std::size_t cap = kDefaultSizeCap) {
    if (n == 0) throw ParseError("cyclic: n must be positive");
    const std::string origin = "cyclic:" + std::to_string(n);
    detail::check_cap(n, cap, origin);
    Group::Table t(n, std::vector<Element>(n));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(i == 0 ? "e" : (i == 1 ? "r" : "r^" + std::to_string(i)));
        for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    }
    return Group::from_cayley(std::move(t), origin, std::move(labels), cap);
}

// Dihedral group of order 2n. Indices 0..n-1 are the rotations r^k, indices
// n..2n-1 the reflections r^k s, with s r s = r^-1.
inline Group build_dihedral(std::size_t n, std::size_t cap = kDefaultSizeCap) {
    if (n == 0) throw ParseError("dihedral: n must be positive");
    const std::string origin = "dihedral:" + std::to_string(n);
    detail::check_cap(2 * n, cap, origin);
    auto index = [n](std::size_t k, std::size_t refl) { return refl * n + k % n; };
    Group::Table t(2 * n, std::vector<Element>(2 * n));
    std::vector<std::string> labels(2 * n);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t a = 0; a < n; ++a) {
            std::string rot = a == 0 ? "" : (a == 1 ? "r" : "r^" + std::to_string(a));
            labels[index(a, i)] = i == 0 ? (a == 0 ? "e" : rot) : rot + "s";
            for (std::size_t j = 0; j < 2; ++j) {
                for (std::size_t b = 0; b < n; ++b) {
                    // r^a s^i r^b s^j = r^(a + (-1)^i b) s^(i+j)
                    std::size_t k = i == 0 ? a + b : a + n - b;
                    t[index(a, i)][index(b, j)] = index(k, (i + j) % 2);
                }
            }
        }
    }
    return Group::from_cayley(std::move(t), origin, std::move(labels), cap);
}

// Symmetric group on {0..n-1}. Elements are the permutations in
// lexicographic order (identity first) and the product is composition,
// (s t)(x) = s(t(x)).
inline Group build_symmetric(std::size_t n, std::size_t cap = kDefaultSizeCap) {
    if (n == 0) throw ParseError("symmetric: n must be positive");
    const std::string origin = "symmetric:" + std::to_string(n);
    if (n > 5) throw CapExceeded(origin + ": only n <= 5 is supported");
    std::size_t order = 1;
    for (std::size_t k = 2; k <= n; ++k) order *= k;
    detail::check_cap(order, cap, origin);

    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    auto encode = [n](const std::vector<std::size_t>& q) {
        std::size_t code = 0;
        for (auto v : q) code = code * n + v;
        return code;
    };
    std::vector<std::pair<std::size_t, Element>> lookup;
    for (Element i = 0; i < perms.size(); ++i) lookup.emplace_back(encode(perms[i]), i);
    std::sort(lookup.begin(), lookup.end());
    auto find = [&](const std::vector<std::size_t>& q) {
        auto it = std::lower_bound(lookup.begin(), lookup.end(), std::make_pair(encode(q), Element{0}));
        return it->second;
    };

    Group::Table t(order, std::vector<Element>(order));
    std::vector<std::string> labels;
    std::vector<std::size_t> comp(n);
    for (Element a = 0; a < order; ++a) {
        std::string lab = "[";
        for (std::size_t x = 0; x < n; ++x) lab += (x ? "," : "") + std::to_string(perms[a][x]);
        labels.push_back(lab + "]");
        for (Element b = 0; b < order; ++b) {
            for (std::size_t x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
            t[a][b] = find(comp);
        }
    }
    return Group::from_cayley(std::move(t), origin, std::move(labels), cap);
}

// Upper unitriangular 3x3 matrices over Z_p. Index a p^2 + b p + c encodes
// (a, b, c) and (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b').
inline Group build_heisenberg(std::size_t p, std::size_t cap = kDefaultSizeCap) {
    const std::string origin = "heisenberg:" + std::to_string(p);
    if (!detail::is_prime(p)) throw ParseError(origin + ": p must be prime");
    const std::size_t n = p * p * p;
    detail::check_cap(n, cap, origin);
    Group::Table t(n, std::vector<Element>(n));
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t a = x / (p * p), b = (x / p) % p, c = x % p;
        labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
            t[x][y] = ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
        }
    }
    return Group::from_cayley(std::move(t), origin, std::move(labels), cap);
}

// Direct product; element (i, j) has index i |b| + j.
inline Group build_product(const Group& a, const Group& b, std::size_t cap = kDefaultSizeCap) {
    const std::string origin = "product:" + a.origin() + "," + b.origin();
    const std::size_t na = a.order(), nb = b.order();
    detail::check_cap(na * nb, cap, origin);
    Group::Table t(na * nb, std::vector<Element>(na * nb));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
            for (std::size_t k = 0; k < na; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    t[i * nb + j][k * nb + l] = a.mul(i, k) * nb + b.mul(j, l);
        }
    }
    return Group::from_cayley(std::move(t), origin, std::move(labels), cap);
}

}  // namespace hsp
