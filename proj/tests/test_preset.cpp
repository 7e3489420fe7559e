#include <catch_amalgamated.hpp>

#include "cmeis/preset.hpp"

using namespace cmeis;

TEST_CASE("shipped presets load and validate") {
    for (auto name : {"qi", "d7", "d3"}) {
        Preset P = load_preset(name);
        APComplex W = P.omega(256);
        INFO(name << " Omega " << W.to_string());
        REQUIRE(W.rad().to_double() < 1e-60);
        Lattice L = P.lattice(256);
        REQUIRE((L.g2() + APComplex(mpq_class(4 * P.a4), 256)).contains_zero());
    }
}

TEST_CASE("qi preset values") {
    Preset P = load_preset("qi");
    REQUIRE(P.psi.eval(P.K.elem(2, 1)) == P.K.elem(-1, 2));
    REQUIRE(curve_ap(P, 13) == hecke_ap(P, 13));
    REQUIRE(curve_ap(P, 7) == 0);
}

TEST_CASE("broken presets are rejected") {
    const char* bad_twist = R"({"name":"x","d_K":4,"conductor_generator":[-2,2],
      "twist_table":[{"residue":[1,0],"unit_power":0},{"residue":[0,1],"unit_power":1},
                     {"residue":[-1,0],"unit_power":2},{"residue":[0,-1],"unit_power":3}],
      "curve":{"a4":"-1","a6":"0"}})";
    REQUIRE_THROWS_AS(parse_preset(bad_twist), Error);
    const char* wrong_curve = R"({"name":"x","d_K":4,"conductor_generator":[-2,2],
      "twist_table":[{"residue":[1,0],"unit_power":0},{"residue":[0,1],"unit_power":3},
                     {"residue":[-1,0],"unit_power":2},{"residue":[0,-1],"unit_power":1}],
      "curve":{"a4":"-4","a6":"0"}})";
    // y^2 = x^3 - 4x is the quadratic twist by 2: a_p signs flip
    REQUIRE_THROWS_AS(parse_preset(wrong_curve), Error);
    REQUIRE_THROWS_AS(parse_preset("{\"name\": 3"), Error);
    try {
        parse_preset("{}");
    } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::PresetParseError);
    }
}
