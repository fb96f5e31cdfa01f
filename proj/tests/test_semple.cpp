#include <doctest.h>

#include "nilcert/semple.hpp"

using namespace nilcert;

namespace {

SempleResult expect_found(const IntPoly& h) {
    SempleOutcome out = semple_search(h);
    REQUIRE(out.result.has_value());
    CHECK(verify_membership(h, out.result->cert));
    return *out.result;
}

} // namespace

TEST_CASE("separated-power identities within default bounds") {
    IntPoly x = IntPoly::x_power(1), one = IntPoly::constant(1);

    SUBCASE("X - 1") {
        SempleResult r = expect_found(x - one);
        CHECK(r.l == 1);
        CHECK(r.k == 1);
        CHECK(r.q == 1);
    }
    SUBCASE("X") {
        SempleResult r = expect_found(x);
        CHECK(r.l == 1);
        CHECK(r.k == 1);
        CHECK(r.q == 1);
    }
    SUBCASE("X - 2") {
        SempleResult r = expect_found(x - IntPoly::constant(2));
        CHECK(r.l == 1);
        CHECK(r.k == 1);
        CHECK(r.q == 1);
    }
    SUBCASE("X^2 - 1") {
        SempleResult r = expect_found(x.pow(2) - one);
        CHECK(r.l == 1);
        CHECK(r.k == 2);
        CHECK(r.q == 1);
    }
    SUBCASE("X^2 - X - 1") {
        SempleResult r = expect_found(x.pow(2) - x - one);
        CHECK(r.l == 1);
        CHECK(r.k == 1);
        CHECK(r.q == 1);
    }
}

TEST_CASE("certificates re-expand to exactly q X^l (X^k - 1)^l") {
    IntPoly x = IntPoly::x_power(1), one = IntPoly::constant(1);
    for (const IntPoly& h : {x - one, x, x - IntPoly::constant(2), x.pow(2) - one,
                             x.pow(2) - x - one}) {
        SempleOutcome out = semple_search(h);
        REQUIRE(out.result.has_value());
        const MembershipCertificate& cert = out.result->cert;
        IntPoly sum;
        for (size_t t = 0; t < cert.indices.size(); ++t)
            sum = sum + cert.cofactors[t] * h.substitute_power(cert.indices[t]);
        CHECK(sum == separated_power_target(cert.l, cert.k, cert.q));
    }
}

TEST_CASE("tampered certificates are rejected") {
    IntPoly x = IntPoly::x_power(1), one = IntPoly::constant(1);
    SempleOutcome out = semple_search(x.pow(2) - one);
    REQUIRE(out.result.has_value());
    MembershipCertificate cert = out.result->cert;
    cert.q += 1;
    CHECK_FALSE(verify_membership(x.pow(2) - one, cert));
    cert = out.result->cert;
    if (!cert.cofactors.empty()) {
        cert.cofactors[0] = cert.cofactors[0] + one;
        CHECK_FALSE(verify_membership(x.pow(2) - one, cert));
    }
}

TEST_CASE("exhaustion under tight bounds is reported, never a wrong answer") {
    // (X-1)^16 needs l = 16; with param_max = 4 the search must exhaust.
    IntPoly x = IntPoly::x_power(1), one = IntPoly::constant(1);
    IntPoly h = (x - one).pow(16);
    SempleBounds tight;
    tight.i_max = 2;
    tight.deg_max = 8;
    tight.param_max = 4;
    SempleOutcome out = semple_search(h, tight);
    CHECK_FALSE(out.result.has_value());
    CHECK(out.exhausted);

    // With enough room it succeeds: l = 16, k = 1, q = 1.
    SempleBounds wide;
    wide.i_max = 8;
    wide.deg_max = 64;
    wide.param_max = 16;
    SempleOutcome ok = semple_search(h, wide);
    REQUIRE(ok.result.has_value());
    CHECK(ok.result->l == 16);
    CHECK(ok.result->k == 1);
    CHECK(ok.result->q == 1);
    CHECK(verify_membership(h, ok.result->cert));
}

TEST_CASE("lexicographic minimality of (l, k, q) on a two-root example") {
    // X^2 - 1: k = 1 cannot work for any l (X-1 and X+1 are both roots and a
    // q X^l (X-1)^l multiple would need (X+1) | q X^l (X-1)^l), so the least
    // solution has k = 2.
    IntPoly x = IntPoly::x_power(1), one = IntPoly::constant(1);
    SempleOutcome out = semple_search(x.pow(2) - one);
    REQUIRE(out.result.has_value());
    CHECK(out.result->k == 2);
}
