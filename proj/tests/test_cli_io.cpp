#include <catch2/catch_amalgamated.hpp>

#include "uniteq/serialize.hpp"

#include <cstdlib>
#include <filesystem>

using namespace uniteq;

namespace {

CyclicField make_field(long N, std::size_t which = 0) {
    auto fields = subfields_of_conductor(5, N);
    REQUIRE(fields.size() > which);
    return fields[which];
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ue-io-" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("poly_to_string") {
    CHECK(poly_to_string(IntPoly({std::vector<Int>{Int(1), Int(3), Int(-4), Int(0), Int(1)}})) ==
          "x^4 - 4*x^2 + 3*x + 1");
    CHECK(poly_to_string(IntPoly({std::vector<Int>{Int(-1), Int(1)}})) == "x - 1");
    CHECK(poly_to_string(IntPoly::constant(0)) == "0");
    CHECK(poly_to_string(IntPoly::constant(-7)) == "-7");
}

TEST_CASE("field JSON round-trip is byte-identical") {
    for (auto [N, which] : {std::pair<long, std::size_t>{11, 0}, {31, 0}, {341, 1}}) {
        CyclicField F = make_field(N, which);
        std::string s1 = json_dump(field_to_json(F));
        CyclicField F2 = field_from_json(json::parse(s1));
        CHECK(json_dump(field_to_json(F2)) == s1);
        CHECK(same_field(F.minpoly, F2.minpoly) == SameField::yes);
    }
}

TEST_CASE("field_from_json rejects tampered payloads") {
    CyclicField F = make_field(11);
    json j = field_to_json(F);

    json bad_schema = j;
    bad_schema["schema"] = "uniteq/field/v0";
    CHECK_THROWS_AS(field_from_json(bad_schema), std::invalid_argument);

    json bad_poly = j;
    bad_poly["minpoly"][0] = "2"; // constant term no longer matches the build
    CHECK_THROWS_AS(field_from_json(bad_poly), std::invalid_argument);
}

TEST_CASE("element JSON round-trip") {
    CyclicField F = make_field(11);
    FieldElement e = F.constant(2) + F.eta();
    e = e * inv(F.constant(3) + F.eta()); // force a nontrivial denominator
    FieldElement e2 = element_from_json(F, element_to_json(e));
    CHECK(e == e2);

    json short_vec = json::array({"1", "2"});
    CHECK_THROWS_AS(element_from_json(F, short_vec), std::invalid_argument);
}

TEST_CASE("unit system import validates generators") {
    CyclicField F = make_field(11);
    UnitSystem U = saturate(cyclotomic_units(F), {2});
    json j;
    j["mode"] = "user-fundamental";
    j["generators"] = json::array();
    for (const auto& g : U.generators) j["generators"].push_back(element_to_json(g));

    UnitSystem U2 = unit_system_from_json(F, j);
    CHECK(U2.mode == "user-fundamental");
    CHECK(U2.generators.size() == U.generators.size());
    // same subgroup, same regulator
    CHECK(std::abs(U2.regulator.mid_d() - U.regulator.mid_d()) < 1e-9);

    json bad = j;
    bad["generators"].push_back(element_to_json(F.constant(3))); // norm 243
    CHECK_THROWS_AS(unit_system_from_json(F, bad), std::invalid_argument);
}

TEST_CASE("solution report round-trip with verification on load") {
    CyclicField F = make_field(11);
    SolveConfig cfg;
    cfg.mode = "heuristic";
    cfg.initial_bound_override = Int(5);
    SolutionReport rep = solve_unit_equation(F, cfg);
    REQUIRE(rep.count > 0);

    std::string s1 = json_dump(report_to_json(rep));
    SolutionReport rep2 = report_from_json(F, json::parse(s1));
    CHECK(json_dump(report_to_json(rep2)) == s1);
    CHECK(rep2.count == rep.count);
    CHECK(rep2.b_final == rep.b_final);
    CHECK(rep2.mode == rep.mode);
    for (std::size_t i = 0; i < rep.solutions.size(); ++i)
        CHECK(rep2.solutions[i] == rep.solutions[i]);

    // a corrupted solution must be rejected, not silently accepted
    json bad = json::parse(s1);
    bad["solutions"][0][0] = "999";
    CHECK_THROWS_AS(report_from_json(F, bad), std::invalid_argument);

    // a report cannot be attached to the wrong field
    CyclicField G = make_field(31);
    CHECK_THROWS_AS(report_from_json(G, json::parse(s1)), std::invalid_argument);

    json bad_count = json::parse(s1);
    bad_count["count"] = rep.count + 1;
    CHECK_THROWS_AS(report_from_json(F, bad_count), std::invalid_argument);
}

TEST_CASE("candidates JSON carries the full sieve output") {
    json j = candidates_to_json(candidate_conductors(Int(5)));
    CHECK(j["rl"] == "-210736858987743");
    CHECK(j["rl_factorization"] == "-3 * 11^9 * 31^3");
    CHECK(j["sl"] == json::array({"11", "31"}));
    CHECK(j["sl_complete"] == true);
    REQUIRE(j["candidates"].size() == 3);
    CHECK(j["candidates"][2]["conductor"] == "341");
    CHECK(j["candidates"][2]["discriminant"] == "13521270961");
}

TEST_CASE("cache keys are stable and sensitive to every part") {
    std::string k1 = cache_key("field", {"5", "11", "v1"});
    CHECK(k1 == cache_key("field", {"5", "11", "v1"})); // deterministic
    CHECK(k1.substr(0, 6) == "field-");
    CHECK(k1.size() == 6 + 16);
    CHECK(k1 != cache_key("field", {"5", "31", "v1"}));
    CHECK(k1 != cache_key("field", {"5", "11", "v2"})); // schema version invalidates
    CHECK(k1 != cache_key("solve", {"5", "11", "v1"}));
    // concatenation ambiguity is not a collision: {"ab","c"} vs {"a","bc"}
    CHECK(cache_key("x", {"ab", "c"}) != cache_key("x", {"a", "bc"}));
}

TEST_CASE("cache store/load round-trip and atomicity") {
    TempDir tmp;
    Cache c = Cache::resolve(tmp.path.string());
    REQUIRE(c.enabled());

    json payload;
    payload["hello"] = "world";
    payload["n"] = 42;
    std::string key = cache_key("test", {"a", "b"});

    CHECK_FALSE(c.load(key).has_value()); // miss before store
    std::string path = c.store(key, payload);
    CHECK(path == c.path_for(key));
    CHECK(std::filesystem::exists(path));
    CHECK_FALSE(std::filesystem::exists(path + ".tmp")); // temp file renamed away

    auto got = c.load(key);
    REQUIRE(got.has_value());
    CHECK(*got == payload);
    CHECK(json_dump(*got) == json_dump(payload)); // byte-identical re-dump

    // corrupt entries are misses, not crashes
    {
        std::ofstream out(path, std::ios::trunc);
        out << "{ not json";
    }
    CHECK_FALSE(c.load(key).has_value());
}

TEST_CASE("cache resolution precedence") {
    CHECK_FALSE(Cache::resolve("", true).enabled()); // disabled wins
    CHECK(Cache::resolve("/x/y").dir == "/x/y");     // explicit flag wins

    setenv("UE_CACHE_DIR", "/from/env", 1);
    CHECK(Cache::resolve().dir == "/from/env");
    CHECK(Cache::resolve("/flag").dir == "/flag"); // flag beats env
    unsetenv("UE_CACHE_DIR");
    CHECK(Cache::resolve().dir == ".ue-cache"); // default
}
