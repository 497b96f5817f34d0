#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hsp/error.hpp"
#include "hsp/group.hpp"
#include "hsp/subgroup_lattice.hpp"

namespace hsp {

using cdouble = std::complex<double>;

// Partition of G into conjugacy classes. Class 0 is {e}; remaining classes
// are ordered by their smallest element.
struct ClassData {
    std::vector<std::vector<Element>> classes;
    std::vector<Element> reps;
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> class_of;

    std::size_t count() const noexcept { return classes.size(); }
};

inline ClassData element_classes(const Group& g) {
    const std::size_t n = g.order();
    ClassData cd;
    cd.class_of.assign(n, n);
    for (Element a = 0; a < n; ++a) {
        if (cd.class_of[a] != n) continue;
        std::vector<Element> orbit;
        for (Element x = 0; x < n; ++x) {
            Element b = g.conj(x, a);
            if (cd.class_of[b] == n) {
                cd.class_of[b] = cd.classes.size();
                orbit.push_back(b);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        cd.reps.push_back(orbit.front());
        cd.sizes.push_back(orbit.size());
        cd.classes.push_back(std::move(orbit));
    }
    return cd;
}

struct CharacterTableOptions {
    std::uint64_t seed = 20070730;
    int max_retries = 20;
    double collision_tol = 1e-6;
    double orthogonality_tol = 1e-8;
    double integrality_tol = 1e-6;
};

// Irreducible characters of G. chi(mu, k) is the value of irrep mu on
// class k. Irreps are sorted by dimension, then by character vector
// (real parts, then imaginary parts) in descending lexicographic order, so
// irrep 0 is always the trivial representation.
struct CharacterTable {
    ClassData class_data;
    Eigen::MatrixXcd chi;
    std::vector<std::size_t> dims;
    std::size_t group_order = 0;

    std::size_t num_irreps() const noexcept { return dims.size(); }

    cdouble value(std::size_t mu, Element x) const { return chi(mu, class_data.class_of[x]); }

    cdouble character_sum(std::size_t mu, const Subgroup& h) const {
        cdouble s = 0;
        for (Element x : h.elements) s += value(mu, x);
        return s;
    }

    // Largest deviation from the row and column orthogonality relations.
    double row_orthogonality_residual() const {
        const auto& sz = class_data.sizes;
        double worst = 0;
        for (std::size_t mu = 0; mu < num_irreps(); ++mu)
            for (std::size_t nu = 0; nu < num_irreps(); ++nu) {
                cdouble s = 0;
                for (std::size_t k = 0; k < sz.size(); ++k)
                    s += double(sz[k]) * chi(mu, k) * std::conj(chi(nu, k));
                worst = std::max(worst, std::abs(s - (mu == nu ? double(group_order) : 0.0)));
            }
        return worst;
    }

    double column_orthogonality_residual() const {
        const auto& sz = class_data.sizes;
        double worst = 0;
        for (std::size_t k = 0; k < sz.size(); ++k)
            for (std::size_t l = 0; l < sz.size(); ++l) {
                cdouble s = 0;
                for (std::size_t mu = 0; mu < num_irreps(); ++mu)
                    s += chi(mu, k) * std::conj(chi(mu, l));
                worst = std::max(worst, std::abs(s - (k == l ? double(group_order) / sz[k] : 0.0)));
            }
        return worst;
    }
};

namespace detail {

// Class multiplication constants: K_k K_l = sum_m n[k][l][m] K_m.
inline std::vector<Eigen::MatrixXd> class_matrices(const Group& g, const ClassData& cd) {
    const std::size_t r = cd.count();
    std::vector<Eigen::MatrixXd> mats(r, Eigen::MatrixXd::Zero(r, r));
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t m = 0; m < r; ++m) {
            const Element z = cd.reps[m];
            for (Element x : cd.classes[k]) mats[k](cd.class_of[g.mul(g.inv(x), z)], m) += 1.0;
        }
    return mats;
}

inline bool lex_greater(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double tol) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (std::abs(a[i].real() - b[i].real()) > tol) return a[i].real() > b[i].real();
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (std::abs(a[i].imag() - b[i].imag()) > tol) return a[i].imag() > b[i].imag();
    return false;
}

}  // namespace detail

// Burnside's method. The central characters omega_mu(k) = |C_k| chi_mu(k) / d_mu
// are the common eigenvectors of the class matrices, so they are read off
// from the eigenvectors of a random real combination of them. Each attempt
// is certified against the orthogonality relations before it is accepted.
inline CharacterTable character_table(const Group& g, const CharacterTableOptions& opt = {}) {
    ClassData cd = element_classes(g);
    const std::size_t r = cd.count();
    const double order = double(g.order());
    const auto mats = detail::class_matrices(g, cd);

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> coeff(0.5, 1.5);

    for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
        Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(r, r);
        for (std::size_t k = 0; k < r; ++k) combo += coeff(rng) * mats[k];

        Eigen::EigenSolver<Eigen::MatrixXd> es(combo);
        if (es.info() != Eigen::Success) continue;
        const Eigen::VectorXcd lambda = es.eigenvalues();
        bool collided = false;
        for (std::size_t i = 0; i < r && !collided; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                if (std::abs(lambda[i] - lambda[j]) < opt.collision_tol) {
                    collided = true;
                    break;
                }
        if (collided) continue;

        CharacterTable ct;
        ct.group_order = g.order();
        ct.chi.resize(r, r);
        std::vector<Eigen::VectorXcd> rows;
        std::vector<std::size_t> dims;
        bool ok = true;
        for (std::size_t i = 0; i < r && ok; ++i) {
            Eigen::VectorXcd v = es.eigenvectors().col(i);
            if (std::abs(v[0]) < 1e-12) {
                ok = false;
                break;
            }
            Eigen::VectorXcd omega = v / v[0];
            double norm = 0;
            for (std::size_t k = 0; k < r; ++k) norm += std::norm(omega[k]) / double(cd.sizes[k]);
            const double d = std::sqrt(order / norm);
            const double d_round = std::round(d);
            if (std::abs(d - d_round) > opt.integrality_tol || d_round < 1) {
                ok = false;
                break;
            }
            Eigen::VectorXcd row(r);
            for (std::size_t k = 0; k < r; ++k) row[k] = d_round * omega[k] / double(cd.sizes[k]);
            rows.push_back(row);
            dims.push_back(static_cast<std::size_t>(d_round));
        }
        if (!ok) continue;

        std::vector<std::size_t> perm(r);
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            if (dims[a] != dims[b]) return dims[a] < dims[b];
            return detail::lex_greater(rows[a], rows[b], opt.integrality_tol);
        });
        for (std::size_t i = 0; i < r; ++i) {
            ct.chi.row(i) = rows[perm[i]].transpose();
            ct.dims.push_back(dims[perm[i]]);
        }
        ct.class_data = std::move(cd);

        std::size_t dim_sq = 0;
        for (auto d : ct.dims) dim_sq += d * d;
        if (dim_sq == g.order() && ct.row_orthogonality_residual() < opt.orthogonality_tol &&
            ct.column_orthogonality_residual() < opt.orthogonality_tol)
            return ct;
        cd = std::move(ct.class_data);
    }
    throw ConvergenceFailure("character table: class matrices not separated after " +
                             std::to_string(opt.max_retries) + " attempts (" + g.origin() + ")");
}

// Multiplicity of the trivial representation of H inside irrep mu restricted
// to H, i.e. (1/|H|) sum_{h in H} chi_mu(h). Nonzero iff the irrep block of
// the subgroup projector is nonzero.
inline std::size_t trivial_multiplicity(const CharacterTable& ct, std::size_t mu, const Subgroup& h,
                                        double tol = 1e-6) {
    if (mu >= ct.num_irreps()) throw OutOfRange("trivial_multiplicity: irrep index out of range");
    const cdouble s = ct.character_sum(mu, h);
    const double m = s.real() / double(h.order());
    const double rounded = std::round(m);
    if (std::abs(s.imag()) > tol || std::abs(s.real() - rounded * double(h.order())) > tol || rounded < 0)
        throw NonIntegerCharacter("character sum over subgroup is not a non-negative multiple of |H|");
    return static_cast<std::size_t>(rounded);
}

}  // namespace hsp
