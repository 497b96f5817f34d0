#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hsp;
using oracle::max_abs;

namespace {

Matrix ket_projector(double a, double b) {
    Vector v(2);
    v << a, b;
    return v * v.adjoint();
}

const double r2 = 1 / std::sqrt(2.0);

struct Case {
    Group g;
    SubgroupLattice lat;
    CharacterTable ct;
    Prior prior;
    std::vector<WeightedState> states;

    explicit Case(Group grp) : g(std::move(grp)), lat(enumerate_subgroups(g)), ct(character_table(g)),
                                prior(Prior::uniform(lat)), states(hsp_ensemble(g, lat, prior)) {}
};

}  // namespace

TEST(Prior, UniformAndClassTotals) {
    auto lat = enumerate_subgroups(build_symmetric(3));
    auto u = Prior::uniform(lat);
    for (double p : u.probs) EXPECT_DOUBLE_EQ(p, 1.0 / 6);
    EXPECT_TRUE(u.is_conjugation_invariant(lat));
    // one class per order: 1, 2 (three members), 3, 6
    auto w = Prior::from_class_totals(lat, {0.1, 0.3, 0.2, 0.4});
    for (auto m : lat.classes[1].members) EXPECT_NEAR(w[m], 0.1, 1e-15);
    EXPECT_TRUE(w.is_conjugation_invariant(lat));
    EXPECT_NO_THROW(w.validate(lat));
}

TEST(Prior, RejectsBadInput) {
    auto lat = enumerate_subgroups(build_symmetric(3));
    Prior skew = Prior::uniform(lat);
    skew.probs[1] += 0.05;
    skew.probs[2] -= 0.05;
    EXPECT_FALSE(skew.is_conjugation_invariant(lat));
    Prior wrong_size{{1.0}};
    EXPECT_ANY_THROW(wrong_size.validate(lat));
}

TEST(Method, RoundTrip) {
    for (auto m : {Method::pgm, Method::ip, Method::optimal}) EXPECT_EQ(parse_method(to_string(m)), m);
    EXPECT_THROW(parse_method("best"), ParseError);
}

TEST(Pgm, Z2Operators) {
    Case s(build_cyclic(2));
    auto povm = pgm(s.states);
    ASSERT_EQ(povm.size(), 2u);
    // hypothesis 0 is {e}, hypothesis 1 is Z2
    const Matrix plus = ket_projector(r2, r2), minus = ket_projector(r2, -r2);
    EXPECT_LT(max_abs(povm.operators[1].entries - 2.0 / 3 * plus), 1e-10);
    EXPECT_LT(max_abs(povm.operators[0].entries - (1.0 / 3 * plus + minus)), 1e-10);
}

TEST(Pgm, SingleStateIsIdentity) {
    auto g = build_cyclic(3);
    std::vector<WeightedState> one{{1.0, hidden_state(g, Subgroup{{0}, 3})}};
    auto povm = pgm(one);
    EXPECT_LT(max_abs(povm.operators[0].entries - Matrix::Identity(3, 3)), 1e-10);
}

TEST(Pgm, RankDeficientSupportStillComplete) {
    // Single pure state: the kernel goes to the first operator.
    auto g = build_cyclic(4);
    std::vector<WeightedState> one{{1.0, hidden_state(g, Subgroup{{0, 1, 2, 3}, 4})}};
    auto povm = pgm(one);
    EXPECT_LT(max_abs(povm.operators[0].entries - Matrix::Identity(4, 4)), 1e-10);
}

TEST(Ip, Z2MatchesOptimal) {
    Case s(build_cyclic(2));
    auto ip = ip_measurement(s.g, s.lat);
    EXPECT_LT(max_abs(ip.operators[1].entries - ket_projector(r2, r2)), 1e-12);
    EXPECT_LT(max_abs(ip.operators[0].entries - ket_projector(r2, -r2)), 1e-12);
}

TEST(Ip, Z4Structure) {
    Case s(build_cyclic(4));
    auto ip = ip_measurement(s.g, s.lat);
    Matrix sum = Matrix::Zero(4, 4);
    for (const auto& e : ip.operators) {
        sum += e.entries;
        EXPECT_GT(min_eigenvalue(e.entries), -1e-10);
        EXPECT_LT(projector_residual(e.entries), 1e-10);
    }
    EXPECT_LT(max_abs(sum - Matrix::Identity(4, 4)), 1e-12);
    // Z4 itself and {0,2} each get rank 1, the trivial subgroup the remaining 2
    EXPECT_NEAR(ip.operators[2].entries.trace().real(), 1, 1e-12);
    EXPECT_NEAR(ip.operators[1].entries.trace().real(), 1, 1e-12);
    EXPECT_NEAR(ip.operators[0].entries.trace().real(), 2, 1e-12);
}

TEST(Ip, AlwaysComplete) {
    for (const auto& [name, g] : oracle::acceptance_groups()) {
        auto lat = enumerate_subgroups(g);
        auto ip = ip_measurement(g, lat);
        EXPECT_LT(check_validity(ip).completeness_residual, 1e-9) << name;
    }
}

TEST(Plan, Z2) {
    Case s(build_cyclic(2));
    auto plan = build_plan(s.g, s.lat, s.ct, s.prior);
    ASSERT_EQ(plan.irreps.size(), 2u);
    EXPECT_EQ(s.lat.rep_of(plan.irreps[0].chosen_class).order(), 2u);
    EXPECT_EQ(s.lat.rep_of(plan.irreps[1].chosen_class).order(), 1u);
    EXPECT_DOUBLE_EQ(plan.e[0][1], 1.0);
    EXPECT_DOUBLE_EQ(plan.e[1][0], 1.0);
}

TEST(Plan, TrivialGroup) {
    Case s(build_cyclic(1));
    auto povm = optimal_measurement(s.g, s.lat, s.ct, s.prior);
    ASSERT_EQ(povm.size(), 1u);
    EXPECT_NEAR(povm.operators[0].entries(0, 0).real(), 1.0, 1e-12);
}

TEST(Plan, S3ChoosesLargestQualifyingClass) {
    Case s(build_symmetric(3));
    auto plan = build_plan(s.g, s.lat, s.ct, s.prior);
    ASSERT_EQ(plan.irreps.size(), 3u);
    auto order_of = [&](std::size_t mu) { return s.lat.rep_of(plan.irreps[mu].chosen_class).order(); };
    EXPECT_EQ(order_of(0), 6u);
    EXPECT_EQ(order_of(1), 3u);  // sign is trivial on A3 only
    EXPECT_EQ(order_of(2), 2u);  // the 2-dim irrep fixes a vector of each transposition subgroup
    EXPECT_EQ(s.lat.classes[plan.irreps[2].chosen_class].size(), 3u);
}

TEST(Plan, RejectsNonInvariantPrior) {
    Case s(build_symmetric(3));
    Prior skew = s.prior;
    skew.probs[1] += 0.05;
    skew.probs[2] -= 0.05;
    EXPECT_THROW(build_plan(s.g, s.lat, s.ct, skew), NonInvariantPrior);
}

TEST(Plan, ValiditySumAndNonnegativeCoefficients) {
    for (const auto& [name, g] : oracle::small_groups()) {
        Case s(g);
        auto plan = build_plan(s.g, s.lat, s.ct, s.prior);
        for (std::size_t mu = 0; mu < plan.irreps.size(); ++mu) {
            EXPECT_NEAR(plan.validity_sum(mu), 1.0, 1e-12) << name;
            EXPECT_GT(plan.irreps[mu].e, 0.0) << name;
            for (double e : plan.e[mu]) EXPECT_GE(e, 0.0);
        }
    }
}

TEST(Optimal, Z2Operators) {
    Case s(build_cyclic(2));
    auto povm = optimal_measurement(s.g, s.lat, s.ct, s.prior);
    EXPECT_LT(max_abs(povm.operators[1].entries - ket_projector(r2, r2)), 1e-10);
    EXPECT_LT(max_abs(povm.operators[0].entries - ket_projector(r2, -r2)), 1e-10);
}

TEST(Optimal, CommutationHoldsByConstruction) {
    for (const auto& [name, g] : oracle::acceptance_groups()) {
        Case s(g);
        auto povm = optimal_measurement(s.g, s.lat, s.ct, s.prior);
        EXPECT_LT(check_optimality(povm, s.states).commutation_residual, 1e-9) << name;
    }
}

TEST(Optimal, EqualsIpOnAbelianGroups) {
    for (auto g : {build_cyclic(2), build_cyclic(3), build_cyclic(4), build_cyclic(6), build_cyclic(12),
                   build_product(build_cyclic(2), build_cyclic(2)), build_product(build_cyclic(2), build_cyclic(4))}) {
        Case s(g);
        auto opt = optimal_measurement(s.g, s.lat, s.ct, s.prior);
        auto ip = ip_measurement(s.g, s.lat);
        for (std::size_t h = 0; h < s.lat.size(); ++h)
            EXPECT_LT(max_abs(opt.operators[h].entries - ip.operators[h].entries), 1e-9) << g.origin() << " H" << h;
    }
}

TEST(Optimal, TieBreakDoesNotChangeOptimality) {
    // D4 has two non-conjugate classes of reflection subgroups on which the
    // 2-dimensional irrep has a fixed vector.
    Case s(build_dihedral(4));
    auto plan = build_plan(s.g, s.lat, s.ct, s.prior);
    std::size_t tied = s.ct.num_irreps();
    for (std::size_t mu = 0; mu < plan.irreps.size(); ++mu)
        if (plan.irreps[mu].candidates.size() > 1) tied = mu;
    ASSERT_LT(tied, s.ct.num_irreps());
    const double p_default = success_probability(optimal_measurement(s.g, s.lat, s.ct, plan), s.states);
    for (auto c : plan.irreps[tied].candidates) {
        PlanOptions opt;
        opt.forced_class.assign(s.ct.num_irreps(), std::nullopt);
        opt.forced_class[tied] = c;
        auto povm = optimal_measurement(s.g, s.lat, s.ct, s.prior, opt);
        auto r = verify(povm, s.states);
        EXPECT_TRUE(r.certified_optimal) << "class " << c;
        EXPECT_NEAR(r.success_probability, p_default, 1e-9);
    }
    PlanOptions bad;
    bad.forced_class.assign(s.ct.num_irreps(), std::nullopt);
    bad.forced_class[tied] = s.lat.classes.size() - 1;  // the whole group has no fixed vector here
    EXPECT_THROW(build_plan(s.g, s.lat, s.ct, s.prior, bad), OutOfRange);
}
