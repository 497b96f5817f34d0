#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "hsp/error.hpp"
#include "hsp/group.hpp"

namespace hsp {

inline constexpr std::size_t kDefaultSubgroupBudget = 10000;

// A subgroup in canonical form: sorted, duplicate-free element list.
// Equality is list equality.
struct Subgroup {
    std::vector<Element> elements;
    std::size_t group_order = 0;

    std::size_t order() const noexcept { return elements.size(); }
    bool contains(Element x) const {
        return std::binary_search(elements.begin(), elements.end(), x);
    }
    bool is_subset_of(const Subgroup& other) const {
        return std::includes(other.elements.begin(), other.elements.end(),
                             elements.begin(), elements.end());
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
    // Canonical order: by order, then lexicographically by element list.
    friend bool operator<(const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements < b.elements;
    }
};

struct SubgroupClass {
    std::vector<std::size_t> members;  // subgroup indices, ascending
    std::size_t rep = 0;               // lexicographically smallest member
    std::size_t size() const noexcept { return members.size(); }
};

struct SubgroupLattice {
    std::vector<Subgroup> subgroups;                      // canonical order
    std::set<std::pair<std::size_t, std::size_t>> contains;  // (i, j): subgroup i strictly inside j
    std::vector<SubgroupClass> classes;                   // ordered by representative index
    std::vector<std::size_t> class_of;                    // subgroup index -> class index

    std::size_t size() const noexcept { return subgroups.size(); }
    std::size_t trivial_index() const noexcept { return 0; }
    std::size_t whole_index() const noexcept { return subgroups.size() - 1; }
    const Subgroup& rep_of(std::size_t class_index) const { return subgroups[classes[class_index].rep]; }

    std::size_t index_of(const Subgroup& h) const {
        auto it = std::lower_bound(subgroups.begin(), subgroups.end(), h);
        if (it == subgroups.end() || !(*it == h)) throw OutOfRange("subgroup not in lattice");
        return static_cast<std::size_t>(it - subgroups.begin());
    }
};

// Closure of a generating set under the Cayley table.
inline Subgroup generate_subgroup(const Group& g, const std::vector<Element>& generators) {
    std::vector<char> in(g.order(), 0);
    std::vector<Element> members{Group::identity()};
    in[0] = 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (Element s : generators) {
            Element y = g.mul(members[i], s);
            if (!in[y]) {
                in[y] = 1;
                members.push_back(y);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return Subgroup{std::move(members), g.order()};
}

inline Subgroup conjugate_subgroup(const Group& g, const Subgroup& h, Element x) {
    if (x >= g.order()) throw OutOfRange("conjugate_subgroup: element index out of range");
    std::vector<Element> out;
    out.reserve(h.order());
    for (Element a : h.elements) out.push_back(g.conj(x, a));
    std::sort(out.begin(), out.end());
    return Subgroup{std::move(out), g.order()};
}

// Breadth-first closure: start from every cyclic subgroup, then repeatedly
// join each known subgroup with one outside element until no new subgroup
// appears. Every subgroup is reached because it is the join of a chain of
// cyclic subgroups.
inline SubgroupLattice enumerate_subgroups(const Group& g,
                                           std::size_t budget = kDefaultSubgroupBudget) {
    struct Found {
        std::vector<Element> gens;
    };
    std::map<std::vector<Element>, Found> known;
    std::vector<std::vector<Element>> frontier;

    auto add = [&](Subgroup h, std::vector<Element> gens) {
        auto [it, inserted] = known.emplace(h.elements, Found{std::move(gens)});
        if (inserted) {
            frontier.push_back(h.elements);
            if (known.size() > budget)
                throw BudgetExceeded("subgroup enumeration exceeded budget of " + std::to_string(budget));
        }
    };

    add(Subgroup{{Group::identity()}, g.order()}, {});
    for (Element x = 1; x < g.order(); ++x) add(generate_subgroup(g, {x}), {x});

    while (!frontier.empty()) {
        auto current = std::move(frontier);
        frontier.clear();
        for (const auto& elems : current) {
            const std::vector<Element> gens = known.at(elems).gens;
            std::vector<char> in(g.order(), 0);
            for (Element a : elems) in[a] = 1;
            for (Element x = 1; x < g.order(); ++x) {
                if (in[x]) continue;
                auto ext = gens;
                ext.push_back(x);
                Subgroup joined = generate_subgroup(g, ext);
                add(std::move(joined), std::move(ext));
            }
        }
    }

    SubgroupLattice lat;
    lat.subgroups.reserve(known.size());
    for (auto& [elems, found] : known) lat.subgroups.push_back(Subgroup{elems, g.order()});
    std::sort(lat.subgroups.begin(), lat.subgroups.end());

    const std::size_t n = lat.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& a = lat.subgroups[i];
            const auto& b = lat.subgroups[j];
            if (a.order() < b.order() && b.order() % a.order() == 0 && a.is_subset_of(b))
                lat.contains.emplace(i, j);
        }

    lat.class_of.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (lat.class_of[i] != n) continue;
        SubgroupClass cls;
        std::set<std::size_t> members;
        for (Element x = 0; x < g.order(); ++x)
            members.insert(lat.index_of(conjugate_subgroup(g, lat.subgroups[i], x)));
        cls.members.assign(members.begin(), members.end());
        // Members share one order, so the smallest index is also the
        // lexicographically smallest element list.
        cls.rep = cls.members.front();
        for (auto m : cls.members) lat.class_of[m] = lat.classes.size();
        lat.classes.push_back(std::move(cls));
    }
    return lat;
}

// Every j with subgroup i strictly contained in subgroup j, ascending.
inline std::vector<std::size_t> maximal_proper_supergroups(const SubgroupLattice& lat, std::size_t i) {
    if (i >= lat.size()) throw OutOfRange("maximal_proper_supergroups: index out of range");
    std::vector<std::size_t> out;
    for (auto it = lat.contains.lower_bound({i, 0}); it != lat.contains.end() && it->first == i; ++it)
        out.push_back(it->second);
    return out;
}

}  // namespace hsp
