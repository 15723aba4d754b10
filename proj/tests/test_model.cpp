#include "homlab/errors.hpp"
#include "homlab/homcount.hpp"
#include "homlab/model.hpp"
#include "homlab/spectrum.hpp"

#include <gtest/gtest.h>

using namespace homlab;

namespace {

Model matrix_model(int q, std::vector<Rational> w) {
    return Model(q, std::move(w), std::vector<Rational>(static_cast<std::size_t>(q), Rational(1)), 0);
}

}  // namespace

TEST(Model, NamedFamilies) {
    EXPECT_EQ(hom(complete_graph(2), model_complete_looped(2, 1)), 3);
    EXPECT_EQ(hom(complete_graph(2), model_complete_looped(3, 0)), 6);
    EXPECT_EQ(hom(cycle_graph(5), model_complete_looped(1, 1)), 1);
    EXPECT_EQ(model_h_eps(Rational(1, 10)).weight(0, 0), Rational(6, 5));
    EXPECT_EQ(model_h_eps(Rational(1, 2)).weight(1, 1), 2);
    EXPECT_EQ(hom(petersen_graph(), model_h_eps(0)), 1);
}

TEST(Model, Validation) {
    EXPECT_THROW(matrix_model(2, {1, 2, 3, 1}), Error);
    EXPECT_THROW(matrix_model(2, {1, -1, -1, 1}), Error);
    EXPECT_THROW(model_two_spin(1, -1, 1, 1, 1), Error);
    EXPECT_THROW(load_model("nonsense"), Error);
}

TEST(Model, LoadNamedAndJsonRoundTrip) {
    for (const char* name : {"Kq:3", "Kq-looped:5,2", "hardcore", "wr", "heps:1/10", "ising:2,1,3",
                             "random:psd:3:7", "random:general:4:1"}) {
        const Model m = load_model(name);
        EXPECT_EQ(model_from_json(model_to_json(m)), m) << name;
    }
    EXPECT_EQ(load_model("Kq-looped:3,1").looped(), ColorSet{1});
}

TEST(Model, RandomIsDeterministic) {
    for (auto kind : {RandomModelKind::General, RandomModelKind::Psd, RandomModelKind::Antiferro2Spin,
                      RandomModelKind::Ferro2Spin})
        for (std::uint64_t s = 0; s < 20; ++s) {
            const int q = kind == RandomModelKind::Antiferro2Spin || kind == RandomModelKind::Ferro2Spin ? 2 : 3;
            EXPECT_EQ(random_model(q, s, kind), random_model(q, s, kind));
        }
}

TEST(Classification, KnownExamples) {
    const Classification a = classify_model(matrix_model(2, {2, 1, 1, 2}));
    EXPECT_TRUE(a.ferromagnetic);
    EXPECT_EQ(a.positive_eigen_count, 2);
    const Classification k3 = classify_model(model_complete_looped(3, 0));
    EXPECT_TRUE(k3.antiferromagnetic);
    EXPECT_EQ(k3.negative_eigen_count, 2);
    const Classification h = classify_model(matrix_model(3, {1, 1, 1, 1, 1, 0, 1, 0, 0}));
    EXPECT_FALSE(h.antiferromagnetic);
    EXPECT_FALSE(h.ferromagnetic);
    EXPECT_EQ(h.positive_eigen_count, 2);
}

TEST(Classification, CompleteLoopedModelsAreAntiferromagnetic) {
    for (int q = 1; q <= 5; ++q)
        for (int l = 0; l <= q; ++l) {
            const Classification c = classify_model(model_complete_looped(q, l));
            EXPECT_LE(c.positive_eigen_count, 1);
            EXPECT_TRUE(c.antiferromagnetic);
        }
}

TEST(Classification, TwoSpinShortcuts) {
    EXPECT_TRUE(classify_model(model_two_spin(1, 1, 0, 1, 1)).antiferromagnetic);
    EXPECT_TRUE(classify_model(model_two_spin(2, 1, 2, 1, 1)).ferromagnetic);
    const Classification both = classify_model(model_two_spin(1, 1, 1, 1, 1));
    EXPECT_TRUE(both.ferromagnetic);
    EXPECT_TRUE(both.antiferromagnetic);
}

TEST(Classification, DeterminantRuleOnRandomTwoSpin) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const Model m = random_model(2, s, RandomModelKind::General);
        const Rational det = m.weight(0, 0) * m.weight(1, 1) - m.weight(0, 1) * m.weight(0, 1);
        const Classification c = classify_model(m);
        EXPECT_EQ(c.ferromagnetic, det >= 0) << s;
        EXPECT_EQ(c.antiferromagnetic, det <= 0) << s;
    }
}

TEST(Classification, PsdConstructionAndScaling) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const Model m = random_model(1 + static_cast<int>(s % 4), s, RandomModelKind::Psd);
        const Classification c = classify_model(m);
        EXPECT_EQ(c.negative_eigen_count, 0);
        EXPECT_TRUE(c.ferromagnetic);
    }
    for (std::uint64_t s = 0; s < 100; ++s) {
        const Model m = random_model(3, s, RandomModelKind::General);
        const Classification a = classify_model(m);
        const Classification b = classify_model(m.scaled(Rational(7, 3)));
        EXPECT_EQ(a.positive_eigen_count, b.positive_eigen_count);
        EXPECT_EQ(a.negative_eigen_count, b.negative_eigen_count);
    }
    for (std::uint64_t s = 0; s < 50; ++s) {
        EXPECT_TRUE(classify_model(random_model(2, s, RandomModelKind::Antiferro2Spin)).antiferromagnetic);
        EXPECT_TRUE(classify_model(random_model(2, s, RandomModelKind::Ferro2Spin)).ferromagnetic);
    }
}

TEST(Spectrum, CharacteristicPolynomialAndSturm) {
    // [[1,1,1],[1,1,0],[1,0,0]]: det(xI - A) = x^3 - 2x^2 - x + 1
    const Polynomial p = characteristic_polynomial({1, 1, 1, 1, 1, 0, 1, 0, 0}, 3);
    EXPECT_EQ(p, (Polynomial{1, -1, -2, 1}));
    EXPECT_EQ(sturm_positive_root_count(p), 2);
    // (x - 1)^2 (x + 2) has square-free part (x - 1)(x + 2)
    const auto parts = square_free_decomposition({2, -3, 0, 1});
    ASSERT_EQ(parts.size(), 2u);
    const Inertia k4 = symmetric_inertia({0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0}, 4);
    EXPECT_EQ(k4.positive, 1);
    EXPECT_EQ(k4.negative, 3);
    const Inertia zero = symmetric_inertia({0, 0, 0, 0}, 2);
    EXPECT_EQ(zero.zero, 2);
}
