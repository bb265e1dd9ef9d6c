#include <doctest.h>

#include <cmath>

#include "chanthermo/families.hpp"
#include "chanthermo/random.hpp"
#include "chanthermo/thermo.hpp"

using namespace chanthermo;

namespace {

Distribution dist2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return Distribution::validated(v);
}

} // namespace

TEST_CASE("effective_state on the uniform distribution") {
    const ThermoState st = effective_state(Distribution::uniform(2), 1.0);
    CHECK(st.gamma.cwiseAbs().maxCoeff() < 1e-15);
    CHECK(st.beta == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(st.energies.cwiseAbs().maxCoeff() < 1e-15);
    CHECK(st.logZ == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(st.F == doctest::Approx(-std::sqrt(2.0) * std::log(2.0)).epsilon(1e-14));
    CHECK(st.F == doctest::Approx(-0.9802581434685472));
}

TEST_CASE("effective_state scaling in the timescale") {
    const Distribution p = dist2(0.3, 0.7);
    const ThermoState a = effective_state(p, 1.3);
    const ThermoState b = effective_state(p, 2.6);
    CHECK(b.beta == doctest::Approx(2.0 * a.beta).epsilon(1e-14));
    CHECK(b.energies(0) == doctest::Approx(a.energies(0) / 2.0).epsilon(1e-13));
    CHECK((b.gamma - a.gamma).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(b.logZ == doctest::Approx(a.logZ).epsilon(1e-15));
}

TEST_CASE("effective_state rejects degenerate input") {
    CHECK_THROWS_AS(effective_state(dist2(1.0, 0.0), 1.0), Error);
    CHECK_THROWS_AS(effective_state(Distribution::uniform(2),
                                    std::numeric_limits<double>::infinity()),
                    Error);
    CHECK_THROWS_AS(effective_state(Distribution::uniform(2), 0.0), Error);
}

TEST_CASE("inverse_state") {
    SUBCASE("zero energies at beta = 1/sqrt(2) recover the uniform pair") {
        const auto [p, t_inf] = inverse_state(Eigen::VectorXd::Zero(2), 1.0 / std::sqrt(2.0));
        CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(t_inf == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("Gibbs weights depend on beta*E only; the timescale rescales") {
        Eigen::VectorXd E(3);
        E << 0.4, -0.1, -0.3;
        const auto [p1, t1] = inverse_state(E, 2.0);
        const auto [p2, t2] = inverse_state(E / 2.0, 4.0);
        CHECK((p1.weights() - p2.weights()).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(t2 == doctest::Approx(2.0 * t1).epsilon(1e-13));
    }
    SUBCASE("nonpositive beta rejected") {
        CHECK_THROWS_AS(inverse_state(Eigen::VectorXd::Zero(2), 0.0), Error);
    }
}

TEST_CASE("bijection round trip on random instances") {
    Rng rng(41);
    std::uniform_real_distribution<double> tdist(0.1, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const int n = 2 + i % 4;
        const Distribution p = random_distribution(rng, n);
        const double t_inf = tdist(rng);
        const ThermoState st = effective_state(p, t_inf);
        const auto [p2, t2] = inverse_state(st.energies, st.beta);
        worst = std::max(worst, (p2.weights() - p.weights()).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(t2 - t_inf));

        // invariants: gamma centered, Gibbs consistency, Helmholtz, F <= 0
        CHECK(std::abs(st.gamma.sum()) < 1e-12);
        CHECK(st.beta > 0.0);
        const Eigen::VectorXd gibbs =
            (-st.beta * st.energies.array()).exp() / std::exp(st.logZ);
        CHECK((gibbs - p.weights()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(st.F - (st.U_internal - st.H / st.beta)) < 1e-10);
        CHECK(st.F <= 1e-12);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("dmc_thermo") {
    SUBCASE("BSC(0.1): uniform p_star, finite negative free energy") {
        Eigen::MatrixXd w(2, 2);
        w << 0.9, 0.1, 0.1, 0.9;
        const DmcThermo t = dmc_thermo(ChannelMatrix::validated(w));
        CHECK_FALSE(t.degenerate);
        CHECK(t.p_star(0) == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(t.F_mix < 0.0);
        CHECK(t.t_mix > 1.0);
        CHECK(std::isfinite(t.beta_mix));
    }
    SUBCASE("constrained family inside a zero-support region plateaus at F = 0") {
        const ChannelMatrix W = family_constrained(0.06, 0.06);
        const DmcThermo t = dmc_thermo(W, 1e-10, 1e-6);
        CHECK(t.degenerate);
        CHECK(t.F_mix == 0.0);
        CHECK(std::isinf(t.beta_mix));
    }
    SUBCASE("product law: C = 0, t_mix = 1, uniform p_star from the BA start") {
        Eigen::MatrixXd w(2, 2);
        w << 0.2, 0.8, 0.2, 0.8;
        const DmcThermo t = dmc_thermo(ChannelMatrix::validated(w));
        CHECK(t.C == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(t.t_mix == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(t.p_star(0) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK_FALSE(t.degenerate);
        CHECK(t.F_mix < 0.0);
    }
}

TEST_CASE("factoring_work") {
    SUBCASE("independent channel: dW = -F since I = 0") {
        Eigen::MatrixXd w(2, 2);
        w << 0.2, 0.8, 0.2, 0.8;
        const ChannelMatrix W = ChannelMatrix::validated(w);
        const double F = -0.7, beta = 1.3;
        const double dW = factoring_work(W, dist2(0.4, 0.6), beta, F);
        CHECK(dW == doctest::Approx(-F).epsilon(1e-12));
    }
    SUBCASE("noiseless channel at beta = 1, F = 0: dW = -ln n") {
        const ChannelMatrix I3 = ChannelMatrix::validated(Eigen::MatrixXd::Identity(3, 3));
        CHECK(factoring_work(I3, Distribution::uniform(3), 1.0, 0.0) ==
              doctest::Approx(-std::log(3.0)).epsilon(1e-13));
    }
    SUBCASE("Ford identity holds for arbitrary (beta, F)") {
        Rng rng(43);
        std::uniform_real_distribution<double> bdist(0.1, 10.0), fdist(-3.0, 3.0);
        for (int i = 0; i < 200; ++i) {
            const int n = 2 + i % 3;
            const ChannelMatrix W = random_channel(rng, n);
            const Distribution p = random_distribution(rng, n);
            const double beta = bdist(rng), F = fdist(rng);
            const double dW = factoring_work(W, p, beta, F);
            CHECK(std::abs(mutual_information(W, p) + beta * (F + dW)) < 1e-10);
        }
    }
    SUBCASE("nonpositive beta rejected") {
        Eigen::MatrixXd w(2, 2);
        w << 0.5, 0.5, 0.5, 0.5;
        CHECK_THROWS_AS(
            factoring_work(ChannelMatrix::validated(w), dist2(0.5, 0.5), -1.0, 0.0),
            Error);
    }
}
