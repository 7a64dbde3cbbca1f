#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace qrep;
using oracle::halves;

namespace {

std::string field_of(const json& j)
{
    try {
        parse_spec(j);
    } catch (const SpecError& e) {
        return e.field();
    }
    return "";
}

} // namespace

TEST_CASE("half-integer JSON")
{
    CHECK(to_json(HalfInt::from_twice(3)) == json("3/2"));
    CHECK(half_int_from_json(json("3/2"), "x") == HalfInt::from_twice(3));
    CHECK(half_int_from_json(json("-1/2"), "x") == HalfInt::from_twice(-1));
    CHECK(half_int_from_json(json(2), "x") == HalfInt(2));
    CHECK(half_int_from_json(json(1.5), "x") == HalfInt::from_twice(3));
    CHECK_THROWS_WITH_AS(half_int_from_json(json(0.3), "m[0]"), "field 'm[0]': expected a half-integer such as \"3/2\"",
                         SpecError);
    CHECK_THROWS_AS(half_int_from_json(json("1/3"), "x"), SpecError);
    CHECK_THROWS_AS(half_int_from_json(json(true), "x"), SpecError);
}

TEST_CASE("complex JSON")
{
    CHECK(complex_from_json(json(0.37), "c") == cplx(0.37, 0.0));
    CHECK(complex_from_json(json("5/2"), "c") == cplx(2.5, 0.0));
    CHECK(complex_from_json(json{{"re", 0.37}, {"im", 0.21}}, "c") == cplx(0.37, 0.21));
    CHECK(complex_from_json(json{{"re", 1.0}}, "c") == cplx(1.0, 0.0));
    CHECK(complex_from_json(to_json(cplx(-0.5, 2.0)), "c") == cplx(-0.5, 2.0));
    CHECK_THROWS_AS(complex_from_json(json{{"im", 1.0}}, "c"), SpecError);
    CHECK_THROWS_AS(complex_from_json(json{{"re", 1.0}, {"x", 1.0}}, "c"), SpecError);
    CHECK_THROWS_AS(complex_from_json(json::array(), "c"), SpecError);
}

TEST_CASE("spec errors name the offending field")
{
    CHECK(field_of(json::array()) == "spec");
    CHECK(field_of(json{{"n", 3}}) == "family");
    CHECK(field_of(json{{"family", "so-weird"}, {"n", 3}, {"q", 1.3}}) == "family");
    CHECK(field_of(json{{"family", "so-classical"}, {"n", 3}, {"q", 1.3}}) == "weight");
    CHECK(field_of(json{{"family", "so-classical"}, {"n", "3"}, {"q", 1.3}, {"weight", {1}}}) == "n");
    CHECK(field_of(json{{"family", "so-classical"}, {"n", 3}, {"weight", {1}}}) == "q");
    CHECK(field_of(json{{"family", "so-classical"}, {"n", 3}, {"q", 1.0}, {"weight", {1}}}) == "q");
    CHECK(field_of(json{{"family", "so-classical"}, {"n", 3}, {"q", 1.3}, {"weight", {1}}, {"extra", 1}}) == "extra");
    CHECK(field_of(json{{"family", "so-classical"}, {"n", 3}, {"q", 1.3}, {"weight", {1}}, {"eps", {1, 1}}}) == "eps");
    CHECK(field_of(json{{"family", "so-nonclassical"}, {"n", 3}, {"q", 1.3}, {"weight", {1}}, {"eps", {1, 1}}}) ==
          "weight");
    CHECK(field_of(json{{"family", "so-nonclassical"}, {"n", 3}, {"q", 1.3}, {"weight", {"3/2"}}, {"eps", {1}}}) ==
          "eps");
    CHECK(field_of(json{{"family", "so-nonclassical"}, {"n", 3}, {"q", 1.3}, {"weight", {"3/2"}}, {"eps", {1, 2}}}) ==
          "eps[1]");
    CHECK(field_of(json{{"family", "so-tprime"}, {"n", 3}, {"q", 1.3}, {"weight", {1}}, {"eps", {1, 1}}}) == "weight");
    CHECK(field_of(json{{"family", "iso-classical"}, {"n", 3}, {"q", 1.3}, {"m", {0}}, {"lambda", 0}, {"cutoff", 6}}) ==
          "lambda");
    CHECK(field_of(json{{"family", "iso-classical"}, {"n", 3}, {"q", 1.3}, {"m", {0}}, {"lambda", 1}, {"cutoff", 2}}) ==
          "cutoff");
    CHECK(field_of(json{{"family", "iso-classical"}, {"n", 3}, {"q", 1.3}, {"m", {0}}, {"lambda", 1}}) == "cutoff");
    CHECK(field_of(json{{"family", "lorentz-classical"},
                        {"n", 3},
                        {"q", 1.3},
                        {"m", {0}},
                        {"c", 0.37},
                        {"cutoff", 8},
                        {"variant", "other"}}) == "variant");
    CHECK(field_of(json{{"family", "lorentz-classical"}, {"n", 3}, {"q", 1.3}, {"m", {0}}, {"c", 0.37}, {"cutoff", 8},
                        {"depth", -1}}) == "depth");

    try {
        parse_spec(json{{"family", "so-classical"}, {"n", 3}, {"q", 1.3}});
        FAIL("expected an error");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()) == "field 'weight': missing");
    }
}

TEST_CASE("spec round trip")
{
    const std::vector<json> specs{
        {{"family", "so-classical"}, {"n", 5}, {"q", 1.3}, {"weight", {2, 1}}},
        {{"family", "so-nonclassical"}, {"n", 4}, {"q", 0.7}, {"weight", {"3/2", "1/2"}}, {"eps", {1, -1, 1}}},
        {{"family", "so-tprime"}, {"n", 5}, {"q", 2.5}, {"weight", {"3/2", "1/2"}}, {"eps", {1, 1, -1, 1}}, {"split", {1, -1}}},
        {{"family", "so-onedim"}, {"n", 3}, {"q", 1.3}, {"eps", {1, -1}}},
        {{"family", "iso-nonclassical"},
         {"n", 3},
         {"q", 1.3},
         {"m", {"1/2"}},
         {"eps", {1, 1, 1}},
         {"lambda", {{"re", 0.5}, {"im", 0.25}}},
         {"cutoff", "17/2"}},
        {{"family", "lorentz-classical"}, {"n", 3}, {"q", 1.3}, {"m", {0}}, {"c", {{"re", 0.37}, {"im", 0.21}}}, {"cutoff", 8}},
        {{"family", "lorentz-nonclassical"},
         {"n", 3},
         {"q", 1.3},
         {"m", {"1/2"}},
         {"eps", {1, -1, 1}},
         {"c", "3/2"},
         {"cutoff", "17/2"},
         {"variant", "literal"}},
    };
    for (const json& j : specs) {
        CAPTURE(j.dump());
        const RunSpec s = parse_spec(j);
        const json normal = spec_to_json(s);
        CHECK(spec_to_json(parse_spec(normal)) == normal);
        CHECK(normal.at("family") == j.at("family"));
    }

    const RunSpec lor = parse_spec(specs[5]);
    CHECK(lor.auto_variant);
    CHECK(spec_to_json(lor).at("variant") == "auto");
    CHECK(depth_of(lor) == kDefaultDepth);
    CHECK_FALSE(parse_spec(specs.back()).auto_variant);
    CHECK(std::get<LorentzRepSpec>(parse_spec(specs.back()).rep).c.exact == HalfInt::from_twice(3));
    CHECK(depth_of(parse_spec(specs[0])) == 0);
    CHECK(q_of(parse_spec(specs[1])).value() == 0.7);
}

TEST_CASE("build from a spec")
{
    const RunSpec s = parse_spec(json{{"family", "so-tprime"}, {"n", 3}, {"q", 1.3}, {"weight", {"3/2"}}, {"eps", {1, 1}},
                                      {"split", {1}}});
    const GeneratorSet half = build(s);
    const GeneratorSet whole = build(parse_spec(json{{"family", "so-tprime"}, {"n", 3}, {"q", 1.3}, {"weight", {"3/2"}},
                                                     {"eps", {1, 1}}}));
    CHECK(half.dim() * 2 == whole.dim());
    CHECK(max_residual(so_relation_residual(half, QParam(1.3))) <= 1e-10);

    const GeneratorSet iso = build(parse_spec(
        json{{"family", "iso-classical"}, {"n", 2}, {"q", 1.3}, {"m", json::array()}, {"lambda", 0.8}, {"cutoff", 6}}));
    CHECK(iso.truncated());
    CHECK(iso.has(iso_generator_name(2)));
}

TEST_CASE("Matrix Market round trip")
{
    const GeneratorSet gs = build(parse_spec(json{{"family", "lorentz-classical"},
                                                  {"n", 3},
                                                  {"q", 1.3},
                                                  {"m", {0}},
                                                  {"c", {{"re", 0.37}, {"im", 0.21}}},
                                                  {"cutoff", 6}}));
    for (const SparseMatrix& m : gs.mats) {
        std::stringstream ss;
        write_matrix_market(ss, m);
        const std::string text = ss.str();
        CHECK(text.rfind("%%MatrixMarket matrix coordinate complex general\n", 0) == 0);
        const SparseMatrix back = read_matrix_market(ss);
        REQUIRE(back.rows() == m.rows());
        REQUIRE(back.cols() == m.cols());
        CHECK(back.nonZeros() == m.nonZeros());
        CHECK(oracle::max_entry_diff(back, oracle::dense(m)) == 0.0);
        std::stringstream again;
        write_matrix_market(again, back);
        CHECK(again.str() == text);
    }

    std::istringstream bad("%%MatrixMarket matrix array real general\n1 1\n1\n");
    CHECK_THROWS_AS(read_matrix_market(bad), Error);
}

TEST_CASE("file stems and number formatting")
{
    CHECK(file_stem("I_{3,2}") == "I_3_2");
    CHECK(file_stem("T_{4}") == "T_4");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("report JSON")
{
    const GeneratorSet gs = build(parse_spec(json{{"family", "so-classical"}, {"n", 3}, {"q", 1.3}, {"weight", {1}}}));
    VerificationReport r = verify_relations(gs, QParam(1.3));
    r.commutant = commutant(gs);
    r.expected_commutant = 1;
    r.finalize();
    const json j = to_json(r);
    CHECK(j.at("pass") == true);
    CHECK(j.at("commutant").at("dim") == 1);
    CHECK(j.at("residuals").contains("rel1[i=3]"));
    CHECK(j.at("tolerances").at("residual") == 1e-9);
}
