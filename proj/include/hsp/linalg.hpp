#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hsp/character_table.hpp"
#include "hsp/group.hpp"
#include "hsp/subgroup_lattice.hpp"

// Dense operators on C[G] written in the group-element basis {|g>}. The irrep
// block structure is reached only through central projectors, never through
// an explicit Fourier transform.
namespace hsp {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Ket {
    Vector amplitudes;
};

enum class Tag : std::uint8_t {
    none = 0,
    hermitian = 1,
    projector = 2,
    density = 4,
};

constexpr Tag operator|(Tag a, Tag b) { return Tag(std::uint8_t(a) | std::uint8_t(b)); }
constexpr bool has_tag(Tag set, Tag t) { return (std::uint8_t(set) & std::uint8_t(t)) != 0; }

// Tags record what the constructor intends; they are never trusted by the
// verification code, which recomputes everything from the entries.
struct Operator {
    Matrix entries;
    Tag tags = Tag::none;

    Eigen::Index dim() const noexcept { return entries.rows(); }
};

enum class Side { left, right };

// Largest |A - A^dagger| entry.
inline double hermitian_residual(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline double projector_residual(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return (a * a - a).cwiseAbs().maxCoeff();
}

inline Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

// Eigenvalues of the hermitian part, ascending.
inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double min_eigenvalue(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return hermitian_eigenvalues(a)[0];
}

inline bool is_density(const Operator& op, double tol = 1e-10) {
    const Matrix& a = op.entries;
    return hermitian_residual(a) < tol && std::abs(a.trace() - cdouble(1.0)) < tol &&
           min_eigenvalue(a) >= -tol;
}

// D_L(x)|g> = |x g>,  D_R(x)|g> = |g x^-1>.
inline Operator regular_rep(const Group& g, Element x, Side side) {
    if (x >= g.order()) throw OutOfRange("regular_rep: element index out of range");
    const auto n = Eigen::Index(g.order());
    Operator op{Matrix::Zero(n, n), Tag::none};
    for (Element col = 0; col < g.order(); ++col) {
        const Element row = side == Side::left ? g.mul(x, col) : g.mul(col, g.inv(x));
        op.entries(Eigen::Index(row), Eigen::Index(col)) = 1.0;
    }
    return op;
}

// |xH> = |H|^-1/2 sum_{h in H} |x h>.
inline Ket coset_state(const Group& g, Element x, const Subgroup& h) {
    if (x >= g.order()) throw OutOfRange("coset_state: element index out of range");
    Ket k{Vector::Zero(Eigen::Index(g.order()))};
    const double amp = 1.0 / std::sqrt(double(h.order()));
    for (Element a : h.elements) k.amplitudes[Eigen::Index(g.mul(x, a))] = amp;
    return k;
}

namespace detail {

// sum_{h in H} D_R(h), built directly: column c has ones at rows c h^-1.
inline Matrix right_sum(const Group& g, const Subgroup& h) {
    const auto n = Eigen::Index(g.order());
    Matrix m = Matrix::Zero(n, n);
    for (Element col = 0; col < g.order(); ++col)
        for (Element a : h.elements) m(Eigen::Index(g.mul(col, g.inv(a))), Eigen::Index(col)) += 1.0;
    return m;
}

}  // namespace detail

// rho_H = (1/|G|) sum_{h in H} D_R(h).
inline Operator hidden_state(const Group& g, const Subgroup& h) {
    return Operator{detail::right_sum(g, h) / double(g.order()), Tag::hermitian | Tag::density};
}

// rho_H = (|H|/|G|) sum over distinct left cosets of |xH><xH|. Independent
// route to hidden_state(), used as its oracle.
inline Operator hidden_state_from_cosets(const Group& g, const Subgroup& h) {
    const auto n = Eigen::Index(g.order());
    Matrix m = Matrix::Zero(n, n);
    std::vector<char> covered(g.order(), 0);
    for (Element x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        const Ket k = coset_state(g, x, h);
        m += k.amplitudes * k.amplitudes.adjoint();
        for (Element a : h.elements) covered[g.mul(x, a)] = 1;
    }
    return Operator{m * (double(h.order()) / double(g.order())), Tag::hermitian | Tag::density};
}

// P_H = (1/|H|) sum_{h in H} D_R(h) = (|G|/|H|) rho_H.
inline Operator subgroup_projector(const Group& g, const Subgroup& h) {
    return Operator{detail::right_sum(g, h) / double(h.order()), Tag::hermitian | Tag::projector};
}

// Central idempotent Pi_mu = (d_mu/|G|) sum_x conj(chi_mu(x)) D_R(x): the
// projector onto the mu-isotypic block of C[G].
inline Operator central_projector(const Group& g, const CharacterTable& ct, std::size_t mu) {
    if (mu >= ct.num_irreps()) throw OutOfRange("central_projector: irrep index out of range");
    const auto n = Eigen::Index(g.order());
    Matrix m = Matrix::Zero(n, n);
    for (Element x = 0; x < g.order(); ++x) {
        const cdouble w = std::conj(ct.value(mu, x));
        for (Element col = 0; col < g.order(); ++col)
            m(Eigen::Index(g.mul(col, g.inv(x))), Eigen::Index(col)) += w;
    }
    m *= double(ct.dims[mu]) / double(g.order());
    return Operator{m, Tag::hermitian | Tag::projector};
}

inline std::vector<Operator> central_projectors(const Group& g, const CharacterTable& ct) {
    std::vector<Operator> out;
    out.reserve(ct.num_irreps());
    for (std::size_t mu = 0; mu < ct.num_irreps(); ++mu) out.push_back(central_projector(g, ct, mu));
    return out;
}

// A^-1/2 on the support of a positive semidefinite A, plus the projector onto
// its kernel. Eigenvalues below rel_tol * max are treated as zero.
struct SupportInverseSqrt {
    Matrix inv_sqrt;
    Matrix kernel;
};

inline SupportInverseSqrt support_inverse_sqrt(const Matrix& a, double rel_tol = 1e-10) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Matrix& u = es.eigenvectors();
    const double cutoff = rel_tol * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
    Eigen::VectorXd inv(ev.size()), ker(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const bool on = ev[i] > cutoff;
        inv[i] = on ? 1.0 / std::sqrt(ev[i]) : 0.0;
        ker[i] = on ? 0.0 : 1.0;
    }
    const Eigen::VectorXcd inv_c = inv.cast<cdouble>(), ker_c = ker.cast<cdouble>();
    return {u * inv_c.asDiagonal() * u.adjoint(), u * ker_c.asDiagonal() * u.adjoint()};
}

}  // namespace hsp
