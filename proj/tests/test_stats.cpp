#include <doctest.h>

#include "monodec/format.hpp"
#include "monodec/stats.hpp"

using namespace monodec;

TEST_CASE("incomplete beta against reference values") {
    CHECK(incomplete_beta(0.5, 0.5, 0.3) == doctest::Approx(0.369010119566).epsilon(1e-10));
    CHECK(incomplete_beta(2, 3, 0.5) == doctest::Approx(0.6875).epsilon(1e-12));
    CHECK(incomplete_beta(5, 1, 0.9) == doctest::Approx(0.59049).epsilon(1e-12));
    CHECK(incomplete_beta(1141, 0.5, 0.999) ==
          doctest::Approx(0.130828874769).epsilon(1e-9));
    CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
    CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
}

TEST_CASE("t quantiles against reference values") {
    CHECK(student_t_975(1) == doctest::Approx(12.706204736432).epsilon(1e-9));
    CHECK(student_t_975(2) == doctest::Approx(4.302652729696).epsilon(1e-10));
    CHECK(student_t_975(5) == doctest::Approx(2.570581835636).epsilon(1e-10));
    CHECK(student_t_975(10) == doctest::Approx(2.228138851965).epsilon(1e-10));
    CHECK(student_t_975(30) == doctest::Approx(2.042272456301).epsilon(1e-10));
    CHECK(student_t_975(100) == doctest::Approx(1.983971518450).epsilon(1e-10));
    CHECK(student_t_975(2282) == doctest::Approx(1.961004084704).epsilon(1e-10));
}

TEST_CASE("t CDF symmetry") {
    for (double dof : {1.0, 3.0, 17.0, 240.0}) {
        for (double t : {0.0, 0.5, 1.7, 4.0}) {
            CHECK(student_t_cdf(t, dof) + student_t_cdf(-t, dof) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    CHECK(student_t_cdf(0.0, 7.0) == doctest::Approx(0.5));
}

TEST_CASE("F tail probabilities against reference values") {
    CHECK(f_sf(3.5, 5, 2282) == doctest::Approx(3.729265047630e-03).epsilon(1e-8));
    CHECK(f_sf(2.84, 3, 40) == doctest::Approx(4.992968080173e-02).epsilon(1e-8));
    CHECK(f_sf(0.0, 3, 40) == 1.0);
}

TEST_CASE("formatting helpers") {
    CHECK(fixed(1.0 / 3.0, 6) == "0.333333");
    CHECK(percent2(68.18499) == "68.18");
    CHECK(percent2(68.1851) == "68.19");
    CHECK(percent2(100.0) == "100.00");
    CHECK(round_half_up_2(0.125) == doctest::Approx(0.13));  // half-up, not banker's
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") != fnv1a64_hex("b"));
}
