#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hsp/character_table.hpp"
#include "hsp/error.hpp"
#include "hsp/group.hpp"
#include "hsp/linalg.hpp"
#include "hsp/subgroup_lattice.hpp"

namespace hsp {

// A priori probability p_H of each subgroup, indexed like the lattice.
struct Prior {
    std::vector<double> probs;

    std::size_t size() const noexcept { return probs.size(); }
    double operator[](std::size_t i) const { return probs[i]; }

    static Prior uniform(const SubgroupLattice& lat) {
        return Prior{std::vector<double>(lat.size(), 1.0 / double(lat.size()))};
    }

    // One weight per conjugacy class of subgroups; every member of class C
    // receives class_weights[C] / |C| after normalization of the class totals.
    static Prior from_class_totals(const SubgroupLattice& lat, const std::vector<double>& class_totals) {
        if (class_totals.size() != lat.classes.size())
            throw DimensionMismatch("prior: expected one weight per subgroup class");
        double total = 0;
        for (double w : class_totals) {
            if (!(w >= 0)) throw OutOfRange("prior: weights must be non-negative");
            total += w;
        }
        if (!(total > 0)) throw OutOfRange("prior: weights sum to zero");
        Prior p{std::vector<double>(lat.size(), 0.0)};
        for (std::size_t c = 0; c < lat.classes.size(); ++c)
            for (auto m : lat.classes[c].members)
                p.probs[m] = class_totals[c] / total / double(lat.classes[c].size());
        return p;
    }

    void validate(const SubgroupLattice& lat, double tol = 1e-12) const {
        if (probs.size() != lat.size()) throw DimensionMismatch("prior: size does not match subgroup count");
        double total = 0;
        for (double p : probs) {
            if (!(p >= 0)) throw OutOfRange("prior: probabilities must be non-negative");
            total += p;
        }
        if (std::abs(total - 1.0) > tol) throw OutOfRange("prior: probabilities must sum to 1");
    }

    bool is_conjugation_invariant(const SubgroupLattice& lat, double tol = 1e-12) const {
        for (const auto& cls : lat.classes)
            for (auto m : cls.members)
                if (std::abs(probs[m] - probs[cls.rep]) > tol) return false;
        return true;
    }
};

struct WeightedState {
    double weight = 0;
    Operator state;
};

// The ensemble {(p_H, rho_H)} over every subgroup in the lattice.
inline std::vector<WeightedState> hsp_ensemble(const Group& g, const SubgroupLattice& lat, const Prior& prior) {
    if (prior.size() != lat.size()) throw DimensionMismatch("ensemble: prior size does not match lattice");
    std::vector<WeightedState> out;
    out.reserve(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) out.push_back({prior[i], hidden_state(g, lat.subgroups[i])});
    return out;
}

enum class Method { pgm, ip, optimal };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::pgm: return "pgm";
        case Method::ip: return "ip";
        case Method::optimal: return "optimal";
    }
    return "?";
}

inline Method parse_method(const std::string& s) {
    if (s == "pgm") return Method::pgm;
    if (s == "ip") return Method::ip;
    if (s == "optimal") return Method::optimal;
    throw ParseError("unknown method '" + s + "'");
}

// Measurement operators, one per hypothesis (subgroup index).
struct Povm {
    std::vector<Operator> operators;
    Method method = Method::optimal;

    std::size_t size() const noexcept { return operators.size(); }
};

// Pretty good measurement E_i = p_i M^-1/2 rho_i M^-1/2 with M = sum_i p_i rho_i,
// the inverse square root taken on the support of M. The projector onto
// ker M is added to the first operator so the operators sum to I.
inline Povm pgm(const std::vector<WeightedState>& states) {
    if (states.empty()) throw DimensionMismatch("pgm: empty ensemble");
    const auto n = states.front().state.dim();
    Matrix m = Matrix::Zero(n, n);
    for (const auto& s : states) {
        if (s.state.dim() != n) throw DimensionMismatch("pgm: states differ in dimension");
        m += s.weight * s.state.entries;
    }
    const auto [inv_sqrt, kernel] = support_inverse_sqrt(m);
    Povm povm{{}, Method::pgm};
    povm.operators.reserve(states.size());
    for (const auto& s : states)
        povm.operators.push_back({s.weight * inv_sqrt * s.state.entries * inv_sqrt, Tag::hermitian});
    povm.operators.front().entries += kernel;
    return povm;
}

// Ip's recursion E_H = P_H - sum_{J strictly containing H} E_J, evaluated from
// the largest subgroups down. The operators always sum to I; positivity is
// only guaranteed for abelian groups and is left to verification.
inline Povm ip_measurement(const Group& g, const SubgroupLattice& lat) {
    Povm povm{std::vector<Operator>(lat.size()), Method::ip};
    // Canonical order sorts by subgroup order, so walking it backwards visits
    // every strict supergroup before its subgroups.
    for (std::size_t i = lat.size(); i-- > 0;) {
        Matrix e = subgroup_projector(g, lat.subgroups[i]).entries;
        for (auto j : maximal_proper_supergroups(lat, i)) e -= povm.operators[j].entries;
        povm.operators[i] = Operator{std::move(e), Tag::hermitian};
    }
    return povm;
}

struct IrrepPlan {
    std::vector<std::size_t> multiplicity;  // per subgroup class, trivial multiplicity on H_C
    std::vector<double> s;                  // per subgroup class, s_mu(H_C)
    std::vector<double> c;                  // per subgroup class, c_{mu,C}
    std::vector<std::size_t> candidates;    // classes tied for the selection maximum
    std::size_t chosen_class = 0;
    double score = 0;                       // p_{H_*} |H_*| of the chosen class
    double e = 0;                           // e_{mu,H} for every H in the chosen class
    bool skip = false;
};

struct MeasurementPlan {
    std::vector<IrrepPlan> irreps;
    std::vector<std::vector<double>> e;  // e[mu][subgroup index]

    // Left-hand side of the validity condition sum_C s_mu(H_C) c_{mu,C}.
    double validity_sum(std::size_t mu) const {
        const auto& ip = irreps[mu];
        double total = 0;
        for (std::size_t c = 0; c < ip.s.size(); ++c) total += ip.s[c] * ip.c[c];
        return total;
    }
};

struct PlanOptions {
    // Per irrep, a class to use instead of the default tie-break. It must be
    // one of the tied candidates.
    std::vector<std::optional<std::size_t>> forced_class;
    double tie_tol = 1e-12;
    double class_function_tol = 1e-9;
};

// Coefficients of the optimal measurement. For each irrep mu, among the
// subgroup classes whose projector block is nonzero, pick the class
// maximizing p_H |H| (with a uniform prior this is the largest such
// subgroup); ties go to the smallest class index. On that class
// c = 1/s_mu(H_C); elsewhere c = 0.
inline MeasurementPlan build_plan(const Group& g, const SubgroupLattice& lat, const CharacterTable& ct,
                                  const Prior& prior, const PlanOptions& opt = {}) {
    prior.validate(lat);
    if (!prior.is_conjugation_invariant(lat))
        throw NonInvariantPrior("prior is not constant on conjugacy classes of subgroups");
    if (ct.group_order != g.order()) throw DimensionMismatch("character table belongs to another group");

    const std::size_t nclass = lat.classes.size();
    MeasurementPlan plan;
    plan.e.assign(ct.num_irreps(), std::vector<double>(lat.size(), 0.0));

    for (std::size_t mu = 0; mu < ct.num_irreps(); ++mu) {
        const double d = double(ct.dims[mu]);
        IrrepPlan ip;
        ip.multiplicity.resize(nclass);
        ip.s.resize(nclass);
        ip.c.assign(nclass, 0.0);
        std::vector<double> sums(nclass);

        for (std::size_t c = 0; c < nclass; ++c) {
            const auto& cls = lat.classes[c];
            const Subgroup& rep = lat.subgroups[cls.rep];
            const cdouble sum = ct.character_sum(mu, rep);
            for (auto m : cls.members) {
                if (std::abs(ct.character_sum(mu, lat.subgroups[m]) - sum) > opt.class_function_tol)
                    throw Error("character sums differ across conjugate subgroups");
            }
            ip.multiplicity[c] = trivial_multiplicity(ct, mu, rep);
            sums[c] = sum.real();
            ip.s[c] = double(cls.size()) * sum.real() / (d * double(rep.order()));
        }

        double best = -1;
        for (std::size_t c = 0; c < nclass; ++c) {
            if (ip.multiplicity[c] == 0) continue;
            const double score = prior[lat.classes[c].rep] * double(lat.rep_of(c).order());
            if (score > best + opt.tie_tol) {
                best = score;
                ip.candidates.assign(1, c);
            } else if (std::abs(score - best) <= opt.tie_tol) {
                ip.candidates.push_back(c);
            }
        }
        // The trivial subgroup always carries multiplicity d_mu > 0.
        if (ip.candidates.empty()) throw Error("build_plan: no subgroup class qualifies for an irrep");

        ip.chosen_class = ip.candidates.front();
        if (mu < opt.forced_class.size() && opt.forced_class[mu]) {
            const auto f = *opt.forced_class[mu];
            if (std::find(ip.candidates.begin(), ip.candidates.end(), f) == ip.candidates.end())
                throw OutOfRange("build_plan: forced class is not a tied candidate");
            ip.chosen_class = f;
        }

        const std::size_t cs = ip.chosen_class;
        const auto& chosen = lat.classes[cs];
        ip.score = best;
        ip.c[cs] = 1.0 / ip.s[cs];
        ip.e = double(lat.rep_of(cs).order()) / double(chosen.size()) * d / sums[cs];
        for (auto m : chosen.members) plan.e[mu][m] = ip.e;
        plan.irreps.push_back(std::move(ip));
    }
    return plan;
}

// E_H = sum_mu e_{mu,H} Pi_mu P_H: in the Fourier picture, e_{mu,H} times the
// mu-block of the subgroup projector.
inline Povm optimal_measurement(const Group& g, const SubgroupLattice& lat, const CharacterTable& ct,
                                const MeasurementPlan& plan) {
    const auto pis = central_projectors(g, ct);
    const auto n = Eigen::Index(g.order());
    Povm povm{{}, Method::optimal};
    povm.operators.reserve(lat.size());
    for (std::size_t h = 0; h < lat.size(); ++h) {
        Matrix weight = Matrix::Zero(n, n);
        bool any = false;
        for (std::size_t mu = 0; mu < ct.num_irreps(); ++mu) {
            if (plan.e[mu][h] == 0.0) continue;
            weight += plan.e[mu][h] * pis[mu].entries;
            any = true;
        }
        Matrix e = any ? Matrix(weight * subgroup_projector(g, lat.subgroups[h]).entries) : Matrix::Zero(n, n);
        povm.operators.push_back({std::move(e), Tag::hermitian});
    }
    return povm;
}

inline Povm optimal_measurement(const Group& g, const SubgroupLattice& lat, const CharacterTable& ct,
                                const Prior& prior, const PlanOptions& opt = {}) {
    return optimal_measurement(g, lat, ct, build_plan(g, lat, ct, prior, opt));
}

}  // namespace hsp
