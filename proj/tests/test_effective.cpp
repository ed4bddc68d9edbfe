#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <vector>

#include "hz/algebraic.hpp"
#include "hz/effective.hpp"
#include "hz/errors.hpp"
#include "hz/logmag.hpp"

using namespace hz;
using cd = std::complex<double>;

TEST_CASE("capital E closed forms") {
    CHECK(eff::capital_E(1, 200, 1.0, 1) == doctest::Approx(std::log(100.0) / 32.0).epsilon(1e-15));

    const double direct = std::pow(3.0, 0.2) / (std::pow(2.0, 3.8) * 0.2) *
                          (std::pow(500.0 / 4.0, 0.2 / 32.0) - 1.0);
    CHECK(eff::capital_E(3, 500, 0.8, 2) == doctest::Approx(direct).epsilon(1e-13));

    // the sub-one branch approaches half the sigma = 1 value
    CHECK(eff::capital_E(1, 200, 1.0 - 1e-8, 1) / eff::capital_E(1, 200, 1.0, 1) ==
          doctest::Approx(0.5).epsilon(1e-6));

    CHECK(std::exp(eff::capital_E_log(1, std::log(200.0), 0.9, 2)) ==
          doctest::Approx(eff::capital_E(1, 200, 0.9, 2)).epsilon(1e-12));

    CHECK_THROWS_AS(eff::capital_E(5, 6, 1.0, 1), DomainError);
    CHECK_THROWS_AS(eff::capital_E(1, 200, 0.3, 1), DomainError);
    CHECK_THROWS_AS(eff::capital_E(1, 200, 1.0, 0), DomainError);
}

TEST_CASE("density lower bound is exact") {
    CHECK(eff::density_lower_bound_exact(2) == BigRat(3, 128));
    CHECK(eff::density_lower_bound_exact(3) == BigRat(4, 6561));
    CHECK(eff::density_lower_bound(2) == doctest::Approx(3.0 / 128.0).epsilon(1e-16));
    CHECK_THROWS_AS(eff::density_lower_bound_exact(1), DomainError);
}

TEST_CASE("constants registry round trip") {
    eff::ConstantsRegistry reg;
    reg.c2 = 1.5;
    reg.C3 = 2.25;
    reg.nu = 0.04;
    const auto back = eff::ConstantsRegistry::from_json_text(reg.to_json());
    CHECK(back.c2 == 1.5);
    CHECK(back.C3 == 2.25);
    CHECK(back.nu == 0.04);
    CHECK(back.h_alpha == reg.h_alpha);
    CHECK(back.log_q0_cap == reg.log_q0_cap);

    eff::ConstantsRegistry bad;
    bad.nu = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    eff::ConstantsRegistry bad2;
    bad2.c0 = -1.0;
    CHECK_THROWS_AS(bad2.validate(), DomainError);

    CHECK_THROWS_AS(eff::ConstantsRegistry::from_json_text("{\"eta\": 5}"), DomainError);
    CHECK_THROWS_AS(eff::ConstantsRegistry::from_json_text("{\"mystery\": 1}"), DomainError);
    CHECK_THROWS_AS(eff::ConstantsRegistry::from_json_text("not json"), DomainError);
}

TEST_CASE("registry file loading") {
    const char* path = "hz_registry_tmp.json";
    {
        eff::ConstantsRegistry reg;
        reg.c1 = 3.0;
        std::ofstream out(path);
        out << reg.to_json();
    }
    const auto reg = eff::ConstantsRegistry::load(path);
    CHECK(reg.c1 == 3.0);
    std::remove(path);
    CHECK_THROWS_AS(eff::ConstantsRegistry::load("definitely_missing.json"), DomainError);
}

TEST_CASE("budget planner tower") {
    const eff::ConstantsRegistry reg;
    const std::vector<cd> targets{{1.0, 1.0}, {0.0, 0.0}, {0.5, 0.0}};
    const double A = alg::preset_sqrt2m1()->approx();
    const auto b = eff::plan_budget(1.0, 2, A, 0.1, targets, 3, reg);

    CHECK(b.R == 10000);
    CHECK(b.Q0.level() == 1);
    CHECK(b.Q0.ln_plain() == doctest::Approx(6106.028137039948).epsilon(1e-12));
    CHECK(b.Q.ln_plain() == doctest::Approx(6106.028137039948).epsilon(1e-12));
    CHECK(b.M.level() == 2);
    CHECK(b.M.ln().ln_plain() == doctest::Approx(12212.749421260456).epsilon(1e-12));
    CHECK(b.T.level() == 3);
    CHECK(b.T.ln().ln().ln_plain() == doctest::Approx(12212.749421260456).epsilon(1e-9));
    CHECK(b.K.level() == 3);
    CHECK(b.E_value == doctest::Approx(23.815694127628799).epsilon(1e-12));
    CHECK(b.E_log == doctest::Approx(std::log(b.E_value)).epsilon(1e-12));

    const auto audit = eff::audit_budget(b, reg);
    CHECK(audit.all_hold);
    CHECK(audit.checks.size() == 8);
    for (const auto& c : audit.checks) {
        CAPTURE(c.name);
        CHECK(c.holds);
    }

    const auto text = b.to_json();
    CHECK(text.find("\"R\"") != std::string::npos);
    CHECK(text.find("iterated") != std::string::npos);
}

TEST_CASE("planner refusals and monotonicity") {
    const eff::ConstantsRegistry reg;
    const std::vector<cd> one{{1.0, 0.0}};
    const std::vector<cd> two{{1.0, 0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(eff::plan_budget(0.5, 1, 0.4, 0.1, two, 3, reg), DomainError);
    CHECK_THROWS_AS(eff::plan_budget(1.0, 0, 0.4, 0.1, one, 3, reg), DomainError);
    CHECK_THROWS_AS(eff::plan_budget(1.0, 2, 0.4, 0.1, one, 3, reg), DomainError);
    CHECK_THROWS_AS(eff::plan_budget(1.0, 1, -0.2, 0.1, two, 3, reg), DomainError);

    CHECK_THROWS_AS(eff::plan_budget(0.9, 1, 0.4, 0.1, two, 3, reg), DomainError);

    const auto loose = eff::plan_budget(1.0, 1, 0.4, 0.2, two, 3, reg);
    const auto tight = eff::plan_budget(1.0, 1, 0.4, 0.1, two, 3, reg);
    CHECK(tight.R >= loose.R);
    CHECK(tight.Q.ln_plain() >= loose.Q.ln_plain());

    const std::vector<cd> big{{50.0, 0.0}, {0.0, 0.0}};
    const auto wild = eff::plan_budget(1.0, 1, 0.4, 0.1, big, 3, reg);
    CHECK(wild.Q0.ln_plain() >= tight.Q0.ln_plain());
}

TEST_CASE("iterated log magnitudes") {
    const auto x = LogMag::from_plain(6.0);
    CHECK(x.level() == 0);
    CHECK(x.plain() == 6.0);
    CHECK(x.exp_().plain() == doctest::Approx(std::exp(6.0)).epsilon(1e-15));

    const auto big = LogMag::from_ln(1e6);
    CHECK(big.level() == 1);
    CHECK(std::isinf(big.plain()));
    CHECK(big.ln_plain() == 1e6);

    CHECK((big * big).ln_plain() == doctest::Approx(2e6).epsilon(1e-12));
    CHECK((big + big).ln_plain() == doctest::Approx(1e6 + std::log(2.0)).epsilon(1e-12));
    CHECK((LogMag::from_plain(2.0) * LogMag::from_plain(3.0)).plain() ==
          doctest::Approx(6.0).epsilon(1e-12));
    CHECK(LogMag::from_plain(1000.0).pow_(2.0).ln_plain() ==
          doctest::Approx(2.0 * std::log(1000.0)).epsilon(1e-12));

    const auto tower = big.exp_();
    CHECK(tower.level() == 2);
    CHECK(tower.ln().ln_plain() == 1e6);
    CHECK(big < tower);
    CHECK(LogMag::from_plain(5.0) < big);
    CHECK(LogMag::zero() < LogMag::from_plain(1e-12));

    CHECK_THROWS_AS(LogMag::from_plain(-1.0), DomainError);
    CHECK_THROWS_AS(LogMag::zero().ln(), DomainError);

    CHECK(eff::logmag_json(LogMag::from_plain(5.0)).find("\"scale\"") != std::string::npos);
    CHECK(eff::logmag_json(big).find("\"scale\"") != std::string::npos);
}
