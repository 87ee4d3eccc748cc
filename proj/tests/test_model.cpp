#include <doctest.h>

#include "oposhg/config.hpp"
#include "oposhg/errors.hpp"
#include "oposhg/steady.hpp"
#include "oposhg/types.hpp"

using namespace oposhg;

TEST_CASE("config: threshold-relative pump resolves via the two-term formula") {
    const auto cfg = parse_config(R"({"params": {"gamma1": 1, "gamma2": 1, "gamma3": 1,
        "kappa1": 0.01, "kappa2": 0.01, "eps2_over_threshold": 1.5}})");
    CHECK(cfg.params.eps2.real() == doctest::Approx(225.0).epsilon(1e-14));
    CHECK(cfg.params.eps2.imag() == 0.0);
}

TEST_CASE("config: zero pump is a valid vacuum configuration") {
    const auto cfg = parse_config(R"({"params": {"gamma1": 1, "gamma2": 1, "gamma3": 1,
        "kappa1": 0.01, "kappa2": 0.01, "eps2": 0}})");
    CHECK(cfg.params.eps2 == Complex(0.0));
}

TEST_CASE("config: validation failures") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"params": {"gamma1": 1, "gamma2": -1, "gamma3": 1,
        "kappa1": 0.01, "kappa2": 0.01, "eps2": 0}})"),
                         "non-positive loss rate", ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"params": {"gamma1": 1, "gamma2": 1,
        "kappa1": 0.01, "kappa2": 0.01, "eps2": 0}})"),
                    ConfigError);
    // threshold-relative pump needs kappa1 > 0
    CHECK_THROWS_AS(parse_config(R"({"params": {"gamma1": 1, "gamma2": 1, "gamma3": 1,
        "kappa1": 0, "kappa2": 0.01, "eps2_over_threshold": 1.5}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
}

TEST_CASE("config: complex pumps parse as [re, im] pairs") {
    const auto cfg = parse_config(R"({"params": {"gamma1": 1, "gamma2": 1, "gamma3": 1,
        "kappa1": 0.01, "kappa2": 0.01, "eps2": [3.5, -1.25], "eps1": [0.5, 0.25]}})");
    CHECK(cfg.params.eps2 == Complex(3.5, -1.25));
    CHECK(cfg.params.eps1 == Complex(0.5, 0.25));
}

TEST_CASE("config: arbitrary gamma1 rescales to units of gamma1") {
    const auto cfg = parse_config(R"({"params": {"gamma1": 2, "gamma2": 4, "gamma3": 1,
        "kappa1": 0.02, "kappa2": 0.03, "eps2": 10, "eps1": [2, 2]},
        "run": {"dt": 0.0005}})");
    CHECK(cfg.params.gamma1 == 1.0);
    CHECK(cfg.params.gamma2 == 2.0);
    CHECK(cfg.params.gamma3 == 0.5);
    CHECK(cfg.params.kappa1 == 0.01);
    CHECK(cfg.params.kappa2 == 0.015);
    CHECK(cfg.params.eps2 == Complex(5.0));
    CHECK(cfg.params.eps1 == Complex(1.0, 1.0));
    CHECK(cfg.run.dt == 0.0005);
}

TEST_CASE("config: serialize/parse round trip is bit exact") {
    auto cfg = parse_config(R"({"params": {"gamma1": 1, "gamma2": 0.731, "gamma3": 1.618,
        "kappa1": 0.0123, "kappa2": 0.00456, "eps2": [101.25, -0.5], "eps1": [0.125, 7]},
        "run": {"dt": 0.002, "t_final": 37.5, "n_traj": 777, "seed": 123456789,
                "omega_max": 5.5, "omega_points": 301, "out_stride": 7, "threads": 3,
                "initial": {"alpha2": [1, 2], "alpha3": [1, -2]}}})");
    const std::string text = serialize_config(cfg);
    const auto cfg2 = parse_config(text);
    CHECK(cfg2.params.gamma2 == cfg.params.gamma2);
    CHECK(cfg2.params.gamma3 == cfg.params.gamma3);
    CHECK(cfg2.params.kappa1 == cfg.params.kappa1);
    CHECK(cfg2.params.kappa2 == cfg.params.kappa2);
    CHECK(cfg2.params.eps2 == cfg.params.eps2);
    CHECK(cfg2.params.eps1 == cfg.params.eps1);
    CHECK(cfg2.run.dt == cfg.run.dt);
    CHECK(cfg2.run.t_final == cfg.run.t_final);
    CHECK(cfg2.run.n_traj == cfg.run.n_traj);
    CHECK(cfg2.run.seed == cfg.run.seed);
    CHECK(cfg2.run.out_stride == cfg.run.out_stride);
    CHECK(cfg2.run.initial == cfg.run.initial);
    CHECK(serialize_config(cfg2) == text);
}

TEST_CASE("config: threshold-relative and absolute specifications agree") {
    const auto rel = parse_config(R"({"params": {"gamma1": 1, "gamma2": 1.3, "gamma3": 0.8,
        "kappa1": 0.012, "kappa2": 0.02, "eps2_over_threshold": 0.7}})");
    const double threshold = threshold_pump(rel.params);
    auto abs_doc = parse_config(R"({"params": {"gamma1": 1, "gamma2": 1.3, "gamma3": 0.8,
        "kappa1": 0.012, "kappa2": 0.02, "eps2": 0}})");
    abs_doc.params.eps2 = 0.7 * threshold;
    CHECK(rel.params.eps2 == abs_doc.params.eps2);
    CHECK_THROWS_AS(parse_config(R"({"params": {"gamma1": 1, "gamma2": 1, "gamma3": 1,
        "kappa1": 0.01, "kappa2": 0.01, "eps2": 5, "eps2_over_threshold": 0.5}})"),
                    ConfigError);
}

TEST_CASE("mode indexing covers the six-dimensional vector bijectively") {
    bool seen_fluct[6] = {};
    bool seen_quad[6] = {};
    for (int mode = 1; mode <= 3; ++mode) {
        seen_fluct[alpha_row(mode)] = true;
        seen_fluct[alpha_plus_row(mode)] = true;
        seen_quad[x_row(mode)] = true;
        seen_quad[y_row(mode)] = true;
    }
    for (int r = 0; r < 6; ++r) {
        CHECK(seen_fluct[r]);
        CHECK(seen_quad[r]);
    }
    // round trip state <-> vector preserves the ordering convention
    PhaseSpaceState s;
    s.alpha = {Complex(1, 2), Complex(3, 4), Complex(5, 6)};
    s.alpha_plus = {Complex(7, 8), Complex(9, 10), Complex(11, 12)};
    const SixVector v = s.to_vector();
    for (int mode = 1; mode <= 3; ++mode) {
        CHECK(v[alpha_row(mode)] == s.alpha[mode - 1]);
        CHECK(v[alpha_plus_row(mode)] == s.alpha_plus[mode - 1]);
    }
    const PhaseSpaceState back = PhaseSpaceState::from_vector(v);
    CHECK(back.alpha == s.alpha);
    CHECK(back.alpha_plus == s.alpha_plus);
}
