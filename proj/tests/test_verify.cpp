#include "catch_amalgamated.hpp"

#include "rsdual/verify.hpp"

using namespace rsdual;
using Catch::Matchers::WithinAbs;

TEST_CASE("default suite passes") {
    SuiteConfig cfg;
    cfg.samples = 10;
    const SuiteReport rep = run_suite(cfg);
    for (const auto& r : rep.results) {
        INFO(r.name << " n=" << r.n << " residual=" << r.max_residual << " " << r.error);
        CHECK(r.pass);
    }
    CHECK(rep.all_pass());
    CHECK(rep.results.size() >= check_names().size());
}

TEST_CASE("selectors pick checks and groups") {
    SuiteConfig cfg;
    cfg.samples = 2;
    cfg.n_list = {3};
    cfg.checks = {"duality", "toric"};
    const SuiteReport rep = run_suite(cfg);
    CHECK(rep.results.size() == 5);
    for (const auto& r : rep.results) CHECK((r.name == "toric" || r.name.rfind("duality.", 0) == 0));

    CHECK(checks::selected("lax.unitary", {"lax"}));
    CHECK(!checks::selected("lax.unitary", {"global_lax"}));
    CHECK(checks::selected("anything", {}));
}

TEST_CASE("configuration errors") {
    SuiteConfig cfg;
    cfg.checks = {"nonsense"};
    CHECK_THROWS_AS(run_suite(cfg), ConfigError);
    cfg.checks = {};
    cfg.tolerances["nonsense"] = 1.0;
    CHECK_THROWS_AS(run_suite(cfg), ConfigError);
    cfg.tolerances = {{"constraint", -1.0}};
    CHECK_THROWS_AS(run_suite(cfg), ConfigError);
    cfg.tolerances.clear();
    cfg.y_rule = "explicit";
    CHECK_THROWS_AS(run_suite(cfg), ConfigError);
    cfg.y_values = {1.0};
    cfg.n_list = {4};
    CHECK_THROWS_AS(run_suite(cfg), ConfigError);
}

TEST_CASE("results are deterministic and independent of the job count") {
    SuiteConfig cfg;
    cfg.samples = 6;
    cfg.checks = {"pullback", "commutativity"};
    cfg.n_list = {3};
    const SuiteReport a = run_suite(cfg);
    cfg.jobs = 3;
    const SuiteReport b = run_suite(cfg);
    REQUIRE(a.results.size() == b.results.size());
    for (std::size_t i = 0; i < a.results.size(); ++i)
        CHECK(a.results[i].max_residual == b.results[i].max_residual);
    cfg.seed = 2;
    const SuiteReport d = run_suite(cfg);
    CHECK(d.results[0].max_residual != a.results[0].max_residual);
}

TEST_CASE("a failing check records its first failing sample") {
    SuiteConfig cfg;
    cfg.samples = 3;
    cfg.n_list = {3};
    cfg.checks = {"pullback"};
    cfg.tolerances["pullback"] = 1e-30;
    const SuiteReport rep = run_suite(cfg);
    REQUIRE(rep.results.size() == 1);
    const CheckResult& r = rep.results[0];
    CHECK(!r.pass);
    CHECK(r.first_failure == 0);
    CHECK(r.failing_sample.is_array());
    CHECK(r.failing_sample.size() == 3);
    const json j = to_json(rep);
    CHECK(j["pass"] == false);
    CHECK(j["checks"][0]["first_failure"]["index"] == 0);
}

TEST_CASE("finite differences converge as the step shrinks") {
    SuiteConfig cfg;
    cfg.samples = 5;
    cfg.n_list = {2, 3};
    cfg.checks = {"pullback", "gradient"};
    cfg.fd_step = 1e-4;
    const SuiteReport coarse = run_suite(cfg);
    cfg.fd_step = 1e-5;
    const SuiteReport fine = run_suite(cfg);
    REQUIRE(coarse.all_pass());
    REQUIRE(fine.all_pass());
    for (std::size_t i = 0; i < coarse.results.size(); ++i) {
        INFO(coarse.results[i].name);
        CHECK(fine.results[i].max_residual < coarse.results[i].max_residual);
    }
}

TEST_CASE("Poisson brackets of the rotation Hamiltonians") {
    const Coupling c(3, 0.3);
    Rng rng(3);
    const ProjectivePoint u = random_interior_point(c, rng);
    auto J0 = [&](const ProjectivePoint& p) { return moment_J(p, c)(0); };
    auto J1 = [&](const ProjectivePoint& p) { return moment_J(p, c)(1); };
    auto f = [&](const ProjectivePoint& p) { return std::real(p(0) * std::conj(p(1))); };
    CHECK_THAT(poisson_bracket_fs(J0, J1, u, c), WithinAbs(0.0, 1e-8));
    CHECK_THAT(poisson_bracket_fs(f, f, u, c), WithinAbs(0.0, 1e-12));
    CHECK_THAT(poisson_bracket_fs(J0, f, u, c) + poisson_bracket_fs(f, J0, u, c), WithinAbs(0.0, 1e-12));
    CHECK(std::abs(poisson_bracket_fs(J0, f, u, c)) > 1e-3);
}
