#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sstream>

#include "zetalab/report.hpp"

using namespace zetalab;

namespace {

ResultRecord sample_record() {
    ResultRecord r;
    r.id = "zeta-eval";
    r.add_input("t", 37.5);
    r.add_input("method", "euler_maclaurin");
    r.add_output("re", -0.036188834501297316);
    r.add_output("im", -0.16423113092665086);
    r.add_diag("validated_range", 1.0);
    return r;
}

} // namespace

TEST_CASE("empty record list emits a header-only csv") {
    std::ostringstream out;
    emit_results({}, OutputFormat::csv, out);
    CHECK(out.str() == "id\n");
}

TEST_CASE("csv round-trips a record") {
    std::ostringstream out;
    emit_results({sample_record()}, OutputFormat::csv, out);
    std::istringstream in(out.str());
    auto back = parse_results_csv(in);
    REQUIRE(back.size() == 1);
    CHECK(back[0].id == "zeta-eval");
    REQUIRE(back[0].inputs.size() == 2);
    CHECK(back[0].inputs[0].second == format_double(37.5));
    REQUIRE(back[0].outputs.size() == 2);
    CHECK(back[0].outputs[0].second == -0.036188834501297316); // 17 digits survive
    CHECK(back[0].outputs[1].second == -0.16423113092665086);
    CHECK(back[0].diagnostics[0].second == 1.0);
}

TEST_CASE("csv quoting survives commas and quotes") {
    ResultRecord r;
    r.id = "weird";
    r.add_input("path", "a,b\"c");
    r.add_output("v", 1.0);
    std::ostringstream out;
    emit_results({r}, OutputFormat::csv, out);
    std::istringstream in(out.str());
    auto back = parse_results_csv(in);
    REQUIRE(back.size() == 1);
    CHECK(back[0].inputs[0].second == "a,b\"c");
}

TEST_CASE("json-lines output is one parseable object per line") {
    std::vector<ResultRecord> recs{sample_record(), sample_record(), sample_record()};
    recs[1].id = "second";
    recs[2].add_output("extra", 2.5e-11);
    std::ostringstream out;
    emit_results(recs, OutputFormat::json_lines, out);

    std::istringstream in(out.str());
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line); // throws on malformed output
        CHECK(j.contains("id"));
        CHECK(j.contains("outputs"));
        if (count == 0) {
            CHECK(j["id"] == "zeta-eval");
            CHECK(j["outputs"]["re"].get<double>() == -0.036188834501297316);
        }
        if (count == 2) CHECK(j["outputs"]["extra"].get<double>() == 2.5e-11);
        ++count;
    }
    CHECK(count == 3);
}

TEST_CASE("numbers serialize with 17 significant digits") {
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    double v = 0.1 + 0.2;
    std::istringstream in(format_double(v));
    double back;
    in >> back;
    CHECK(back == v);
}

TEST_CASE("identical records serialize to identical bytes") {
    std::ostringstream a, b;
    emit_results({sample_record()}, OutputFormat::csv, a);
    emit_results({sample_record()}, OutputFormat::csv, b);
    CHECK(a.str() == b.str());
    std::ostringstream c, d;
    emit_results({sample_record()}, OutputFormat::json_lines, c);
    emit_results({sample_record()}, OutputFormat::json_lines, d);
    CHECK(c.str() == d.str());
}

TEST_CASE("durations stay out of files unless requested") {
    auto r = sample_record();
    r.duration_seconds = 1.23;
    std::ostringstream without, with;
    emit_results({r}, OutputFormat::csv, without, false);
    emit_results({r}, OutputFormat::csv, with, true);
    CHECK(without.str().find("duration") == std::string::npos);
    CHECK(with.str().find("duration_seconds") != std::string::npos);
}
