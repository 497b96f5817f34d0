#pragma once

// Brute-force reference computations used only by the tests. None of these
// share code paths with the library routines they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hsp/hsp.hpp"

namespace hsp::oracle {

inline Group quaternion() {
    return parse_group(std::string("cayley:@") + HSP_TEST_DATA_DIR + "/quaternion.json");
}

struct NamedGroup {
    std::string name;
    Group group;
};

// The groups of order <= 27 exercised by the acceptance criteria.
inline std::vector<NamedGroup> acceptance_groups() {
    std::vector<NamedGroup> out;
    for (std::size_t n = 1; n <= 12; ++n) out.push_back({"Z" + std::to_string(n), build_cyclic(n)});
    out.push_back({"Z2xZ2", build_product(build_cyclic(2), build_cyclic(2))});
    out.push_back({"Z2xZ4", build_product(build_cyclic(2), build_cyclic(4))});
    for (std::size_t n = 3; n <= 6; ++n) out.push_back({"D" + std::to_string(n), build_dihedral(n)});
    out.push_back({"S3", build_symmetric(3)});
    out.push_back({"Q8", quaternion()});
    out.push_back({"Heis2", build_heisenberg(2)});
    out.push_back({"Heis3", build_heisenberg(3)});
    return out;
}

// acceptance_groups() plus further groups of order <= 27.
inline std::vector<NamedGroup> small_groups() {
    auto out = acceptance_groups();
    out.push_back({"S4", build_symmetric(4)});
    out.push_back({"Z3xZ3", build_product(build_cyclic(3), build_cyclic(3))});
    out.push_back({"Z2xZ2xZ2", build_product(build_product(build_cyclic(2), build_cyclic(2)), build_cyclic(2))});
    out.push_back({"Z2xS3", build_product(build_cyclic(2), build_symmetric(3))});
    for (std::size_t n = 7; n <= 12; ++n) out.push_back({"D" + std::to_string(n), build_dihedral(n)});
    return out;
}

inline bool commutes(const Group& g, Element a, Element b) { return g.mul(a, b) == g.mul(b, a); }

inline std::size_t center_order(const Group& g) {
    std::size_t z = 0;
    for (Element a = 0; a < g.order(); ++a) {
        bool central = true;
        for (Element b = 0; b < g.order() && central; ++b) central = commutes(g, a, b);
        z += central;
    }
    return z;
}

// Number of conjugacy classes = #{(a, b) : ab = ba} / |G| (Burnside's lemma
// for the conjugation action).
inline std::size_t class_count(const Group& g) {
    std::size_t pairs = 0;
    for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b) pairs += commutes(g, a, b);
    return pairs / g.order();
}

inline std::size_t order_by_powers(const Group& g, Element a) {
    std::size_t k = 1;
    Element x = a;
    while (x != 0) {
        x = g.cayley()[x][a];
        ++k;
    }
    return k;
}

inline std::vector<std::size_t> order_census(const Group& g) {
    std::vector<std::size_t> census(g.order() + 1, 0);
    for (Element a = 0; a < g.order(); ++a) ++census[order_by_powers(g, a)];
    return census;
}

// Closure of a set by naive repeated multiplication of all pairs.
inline std::vector<Element> naive_closure(const Group& g, std::vector<Element> s) {
    std::set<Element> cur(s.begin(), s.end());
    cur.insert(0);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Element> v(cur.begin(), cur.end());
        for (Element a : v)
            for (Element b : v)
                if (cur.insert(g.cayley()[a][b]).second) grew = true;
    }
    return {cur.begin(), cur.end()};
}

// All subgroups, found by closing every subset of at most floor(log2 |G|)
// non-identity elements. Every group of order n is generated by that many
// elements, since each new generator at least doubles the subgroup.
inline std::set<std::vector<Element>> all_subgroups(const Group& g) {
    std::size_t k = 0;
    while ((std::size_t{1} << (k + 1)) <= g.order()) ++k;
    std::set<std::vector<Element>> out;
    out.insert({0});
    std::vector<Element> chosen;
    std::function<void(Element)> rec = [&](Element next) {
        if (!chosen.empty()) out.insert(naive_closure(g, chosen));
        if (chosen.size() == k) return;
        for (Element x = next; x < g.order(); ++x) {
            chosen.push_back(x);
            rec(x + 1);
            chosen.pop_back();
        }
    };
    rec(1);
    return out;
}

// Brute-force isomorphism test: map a greedy generating set of `a` to every
// order-compatible tuple in `b`, extend multiplicatively and check.
inline bool isomorphic(const Group& a, const Group& b) {
    if (a.order() != b.order()) return false;
    if (order_census(a) != order_census(b)) return false;
    const std::size_t n = a.order();
    std::vector<Element> gens;
    std::vector<Element> span{0};
    for (Element x = 1; x < n; ++x) {
        if (std::find(span.begin(), span.end(), x) != span.end()) continue;
        gens.push_back(x);
        span = naive_closure(a, gens);
        if (span.size() == n) break;
    }
    std::vector<Element> img(gens.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == gens.size()) {
            std::vector<Element> phi(n, n);
            phi[0] = 0;
            std::vector<Element> queue{0};
            for (std::size_t q = 0; q < queue.size(); ++q) {
                for (std::size_t s = 0; s < gens.size(); ++s) {
                    const Element x = a.cayley()[queue[q]][gens[s]];
                    const Element y = b.cayley()[phi[queue[q]]][img[s]];
                    if (phi[x] == n) {
                        phi[x] = y;
                        queue.push_back(x);
                    } else if (phi[x] != y) {
                        return false;
                    }
                }
            }
            std::vector<char> hit(n, 0);
            for (Element x = 0; x < n; ++x) {
                if (hit[phi[x]]) return false;
                hit[phi[x]] = 1;
            }
            for (Element x = 0; x < n; ++x)
                for (Element y = 0; y < n; ++y)
                    if (phi[a.cayley()[x][y]] != b.cayley()[phi[x]][phi[y]]) return false;
            return true;
        }
        const std::size_t want = order_by_powers(a, gens[i]);
        for (Element y = 0; y < n; ++y) {
            if (order_by_powers(b, y) != want) continue;
            img[i] = y;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace hsp::oracle
