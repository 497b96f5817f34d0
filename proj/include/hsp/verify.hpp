#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "hsp/character_table.hpp"
#include "hsp/error.hpp"
#include "hsp/linalg.hpp"
#include "hsp/measurements.hpp"
#include "hsp/subgroup_lattice.hpp"

namespace hsp {

struct Tolerances {
    double psd = 1e-8;           // smallest admissible eigenvalue is -psd
    double completeness = 1e-8;  // max |sum E - I| entry
    double commutation = 1e-8;   // max |A - A^dagger| entry, A = sum p E rho
    double margin = 1e-8;        // smallest admissible eigenvalue of A - p rho
    double probability = 1e-9;   // clamp window for success probabilities
};

struct ValiditySection {
    std::vector<double> min_eigenvalues;
    std::vector<double> hermitian_residuals;
    double completeness_residual = 0;

    double min_eigenvalue() const {
        double m = std::numeric_limits<double>::infinity();
        for (double v : min_eigenvalues) m = std::min(m, v);
        return m;
    }
    double max_hermitian_residual() const {
        double m = 0;
        for (double v : hermitian_residuals) m = std::max(m, v);
        return m;
    }
};

struct OptimalitySection {
    double commutation_residual = 0;
    std::vector<double> margins;  // per hypothesis H'

    double min_margin() const {
        double m = std::numeric_limits<double>::infinity();
        for (double v : margins) m = std::min(m, v);
        return m;
    }
};

struct VerificationReport {
    ValiditySection validity;
    OptimalitySection optimality;
    double success_probability = 0;
    std::optional<double> closed_form_success;
    Tolerances tolerances;
    bool valid = false;
    bool certified_optimal = false;
};

inline ValiditySection check_validity(const Povm& povm) {
    if (povm.operators.empty()) throw DimensionMismatch("check_validity: empty POVM");
    const auto n = povm.operators.front().dim();
    ValiditySection out;
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& op : povm.operators) {
        if (op.dim() != n || op.entries.cols() != n) throw DimensionMismatch("check_validity: operators differ in dimension");
        out.min_eigenvalues.push_back(min_eigenvalue(op.entries));
        out.hermitian_residuals.push_back(hermitian_residual(op.entries));
        sum += op.entries;
    }
    out.completeness_residual = (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    return out;
}

// Holevo / Yuen-Kennedy-Lax conditions. Condition (i) is measured as the
// non-hermiticity of A = sum_H p_H E_H rho_H; condition (ii) as the smallest
// eigenvalue of herm(A) - p_H' rho_H' for every H'.
inline OptimalitySection check_optimality(const Povm& povm, const std::vector<WeightedState>& states) {
    if (povm.size() != states.size()) throw DimensionMismatch("check_optimality: hypothesis counts differ");
    if (states.empty()) throw DimensionMismatch("check_optimality: empty ensemble");
    const auto n = states.front().state.dim();
    Matrix a = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (povm.operators[i].dim() != n || states[i].state.dim() != n)
            throw DimensionMismatch("check_optimality: operators differ in dimension");
        a += states[i].weight * povm.operators[i].entries * states[i].state.entries;
    }
    OptimalitySection out;
    out.commutation_residual = hermitian_residual(a);
    const Matrix ah = hermitian_part(a);
    out.margins.reserve(states.size());
    for (const auto& s : states) out.margins.push_back(min_eigenvalue(ah - s.weight * s.state.entries));
    return out;
}

// sum_H p_H Re Tr(rho_H E_H). Values within tol outside [0, 1] are clamped.
inline double success_probability(const Povm& povm, const std::vector<WeightedState>& states,
                                  double tol = 1e-9) {
    if (povm.size() != states.size()) throw DimensionMismatch("success_probability: hypothesis counts differ");
    double p = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& rho = states[i].state.entries;
        const auto& e = povm.operators[i].entries;
        if (rho.rows() != e.rows()) throw DimensionMismatch("success_probability: operators differ in dimension");
        // Tr(rho E) = sum_jk rho_jk E_kj
        p += states[i].weight * (rho.cwiseProduct(e.transpose())).sum().real();
    }
    if (p < -tol || p > 1 + tol) throw OutOfRange("success probability " + std::to_string(p) + " outside [0, 1]");
    return std::clamp(p, 0.0, 1.0);
}

// p_succ = sum_mu d_mu^2 p_{H_*(mu)} |H_*(mu)| / |G|, which follows from the
// block form of the optimal measurement.
inline double closed_form_success(const MeasurementPlan& plan, const SubgroupLattice& lat,
                                  const CharacterTable& ct, const Prior& prior) {
    double total = 0;
    for (std::size_t mu = 0; mu < plan.irreps.size(); ++mu) {
        const auto c = plan.irreps[mu].chosen_class;
        const auto& rep = lat.rep_of(c);
        const double d = double(ct.dims[mu]);
        total += d * d * prior[lat.classes[c].rep] * double(rep.order());
    }
    return total / double(ct.group_order);
}

inline VerificationReport verify(const Povm& povm, const std::vector<WeightedState>& states,
                                 const Tolerances& tol = {}) {
    VerificationReport r;
    r.tolerances = tol;
    r.validity = check_validity(povm);
    r.optimality = check_optimality(povm, states);
    r.valid = r.validity.min_eigenvalue() >= -tol.psd && r.validity.completeness_residual < tol.completeness &&
              r.validity.max_hermitian_residual() < tol.completeness;
    r.certified_optimal = r.valid && r.optimality.commutation_residual < tol.commutation &&
                          r.optimality.min_margin() >= -tol.margin;
    // An invalid POVM can have a "probability" outside [0, 1]; report it raw.
    try {
        r.success_probability = success_probability(povm, states, tol.probability);
    } catch (const OutOfRange&) {
        if (r.valid) throw;
        double p = 0;
        for (std::size_t i = 0; i < states.size(); ++i)
            p += states[i].weight *
                 (states[i].state.entries.cwiseProduct(povm.operators[i].entries.transpose())).sum().real();
        r.success_probability = p;
    }
    return r;
}

}  // namespace hsp
