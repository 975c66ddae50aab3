#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "rfqlink/network.hpp"

using namespace rfqlink;
using namespace rfqlink::testing;

namespace {
const std::vector<double> kFreqs{1e9, 2e9, 3e9};
}

TEST_CASE("thru converts to identity ABCD") {
    const auto thru = make_thru(kFreqs);
    const auto abcd = convert(thru, Representation::ABCD);
    for (const auto& m : abcd) CHECK(max_rel_err(m, CMat2::identity()) < 1e-14);
}

TEST_CASE("series 50 ohm impedance at z0=50") {
    // ABCD of a series impedance Z is [[1, Z], [0, 1]]
    const CMat2 abcd(1.0, 50.0, 0.0, 1.0);
    const CMat2 s = abcd_to_s(abcd, 50.0);
    CHECK(s(0, 0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(s(0, 0).imag() == doctest::Approx(0.0));
    // back the other way
    CHECK(max_rel_err(s_to_abcd(s, 50.0), abcd) < 1e-12);
}

TEST_CASE("round trip S -> X -> S on random strictly passive matrices") {
    std::mt19937 rng(42);
    for (int i = 0; i < 2000; ++i) {
        const CMat2 s = random_passive_matrix(rng);
        for (auto kind : {Representation::Z, Representation::Y, Representation::ABCD,
                          Representation::T}) {
            const CMat2 back = to_s(from_s(s, kind, 50.0), kind, 50.0);
            CHECK(max_rel_err(back, s) < 1e-10);
        }
    }
}

TEST_CASE("cascade with thru is the identity") {
    std::mt19937 rng(7);
    const auto net = random_passive_network(rng, 5);
    const auto thru = make_thru(net.freqs);
    const auto out = cascade(net, thru);
    for (size_t i = 0; i < net.size(); ++i) CHECK(max_rel_err(out.s[i], net.s[i]) < 1e-12);
}

TEST_CASE("two matched 3 dB pads cascade to 6 dB") {
    const auto pad = attenuator(kFreqs, 3.0);
    const auto out = cascade(pad, pad);
    const double expect = std::pow(10.0, -6.0 / 20.0);
    for (const auto& s : out.s) {
        CHECK(std::abs(s(1, 0)) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::abs(s(0, 0)) < 1e-12);
    }
}

TEST_CASE("cascade is associative") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_passive_network(rng, 3);
        const auto b = random_passive_network(rng, 3);
        const auto c = random_passive_network(rng, 3);
        const auto left = cascade(cascade(a, b), c);
        const auto right = cascade(a, cascade(b, c));
        for (size_t i = 0; i < left.size(); ++i) CHECK(max_rel_err(left.s[i], right.s[i]) < 1e-10);
    }
}

TEST_CASE("cascade ABCD matches hand-built composite of two elements") {
    // series Z then shunt Y: ABCD = [[1 + Z*Y, Z], [Y, 1]]
    const Complex z(25.0, 10.0);
    const Complex y(0.004, -0.002);
    const auto series = TwoPortNetwork({1e9}, {abcd_to_s(CMat2(1.0, z, 0.0, 1.0), 50.0)});
    const auto shunt = TwoPortNetwork({1e9}, {abcd_to_s(CMat2(1.0, 0.0, y, 1.0), 50.0)});
    const auto out = cascade(series, shunt);
    const CMat2 expect = abcd_to_s(CMat2(1.0 + z * y, z, y, 1.0), 50.0);
    CHECK(max_rel_err(out.s[0], expect) < 1e-12);
}

TEST_CASE("deembed recovers the cascaded partner") {
    std::mt19937 rng(13);
    const auto a = random_passive_network(rng, 4);
    const auto b = random_passive_network(rng, 4);
    const auto meas = cascade(a, b);
    const auto left = deembed_left(meas, a);
    const auto right = deembed_right(meas, b);
    for (size_t i = 0; i < meas.size(); ++i) {
        CHECK(max_rel_err(left.s[i], b.s[i]) < 1e-9);
        CHECK(max_rel_err(right.s[i], a.s[i]) < 1e-9);
    }
}

TEST_CASE("deembed with thru returns the input unchanged") {
    std::mt19937 rng(17);
    const auto net = random_passive_network(rng, 4);
    const auto thru = make_thru(net.freqs);
    const auto out = deembed_left(net, thru);
    for (size_t i = 0; i < net.size(); ++i) CHECK(max_rel_err(out.s[i], net.s[i]) < 1e-12);
}

TEST_CASE("de-embedding a 3 dB pad from a 9 dB cascade leaves 6 dB") {
    const auto pad3 = attenuator(kFreqs, 3.0);
    const auto pad6 = attenuator(kFreqs, 6.0);
    const auto meas = cascade(pad3, pad6);
    const auto out = deembed_left(meas, pad3);
    for (const auto& s : out.s)
        CHECK(-20.0 * std::log10(std::abs(s(1, 0))) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("at_frequency: grid points exact, midpoints linear, range enforced") {
    std::mt19937 rng(23);
    const auto net = random_passive_network(rng, 3);
    CHECK(max_rel_err(at_frequency(net, net.freqs[1]), net.s[1]) == 0.0);
    const CMat2 mid = at_frequency(net, 0.5 * (net.freqs[0] + net.freqs[1]));
    const CMat2 mean = (net.s[0] + net.s[1]) * Complex(0.5);
    CHECK(max_rel_err(mid, mean) < 1e-14);
    CHECK_THROWS_AS(at_frequency(net, 0.5 * net.freqs.front()), std::out_of_range);
    CHECK_THROWS_AS(at_frequency(net, 2.0 * net.freqs.back()), std::out_of_range);
}

TEST_CASE("passivity and reciprocity checks") {
    const auto thru = make_thru(kFreqs);
    CHECK(check_passivity(thru).all_ok);
    CHECK(check_reciprocity(thru).all_ok);

    // gain network: |S21| = 1.5 violates passivity with margin 0.5
    std::vector<CMat2> mats(1, CMat2(0.0, 0.0, 1.5, 0.0));
    const TwoPortNetwork amp({1e9}, std::move(mats));
    const auto pv = check_passivity(amp);
    CHECK_FALSE(pv.all_ok);
    CHECK(pv.worst_margin == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(check_reciprocity(amp).all_ok);

    const auto coupled = coupled_inductor_network({10e9, 20e9}, 100e-12, 100e-12, 0.7);
    CHECK(check_passivity(coupled).all_ok);
    CHECK(check_reciprocity(coupled).all_ok);
}

TEST_CASE("renormalize") {
    std::mt19937 rng(31);
    const auto net = random_passive_network(rng, 5);
    SUBCASE("same z0 is the identity") {
        const auto out = renormalize(net, net.z0);
        for (size_t i = 0; i < net.size(); ++i) CHECK(max_rel_err(out.s[i], net.s[i]) == 0.0);
    }
    SUBCASE("series 50 ohm at z0=25 has S11 = 0.5") {
        const TwoPortNetwork series({1e9}, {abcd_to_s(CMat2(1.0, 50.0, 0.0, 1.0), 50.0)});
        const auto out = renormalize(series, 25.0);
        CHECK(out.s[0](0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("round trip 50 -> 75 -> 50") {
        const auto out = renormalize(renormalize(net, 75.0), 50.0);
        for (size_t i = 0; i < net.size(); ++i) CHECK(max_rel_err(out.s[i], net.s[i]) < 1e-10);
    }
    SUBCASE("nonpositive target rejected") {
        CHECK_THROWS_AS(renormalize(net, 0.0), std::invalid_argument);
    }
}

TEST_CASE("binary operations demand matching grids and z0") {
    std::mt19937 rng(37);
    const auto a = random_passive_network(rng, 4);
    auto b = random_passive_network(rng, 4);
    b.z0 = 75.0;
    CHECK_THROWS_AS(cascade(a, b), std::invalid_argument);
    auto c = random_passive_network(rng, 5);
    CHECK_THROWS_AS(cascade(a, c), std::invalid_argument);
}

TEST_CASE("conversion singularities are reported with the frequency") {
    // S = identity makes (I - S) singular for Z conversion
    const TwoPortNetwork open_ish({5e9}, {CMat2(1.0, 0.0, 0.0, 1.0)});
    CHECK_THROWS_WITH_AS(convert(open_ish, Representation::Z),
                         doctest::Contains("5000000000"), std::runtime_error);
    // S21 = 0 blocks ABCD
    const TwoPortNetwork isolated({1e9}, {CMat2(0.1, 0.0, 0.0, 0.1)});
    CHECK_THROWS_AS(convert(isolated, Representation::ABCD), std::runtime_error);
}
