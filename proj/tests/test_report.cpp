#include "doctest.h"
#include "support.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace flagflow;

namespace {

struct Marker {
    std::string id;
    double cx;
    double cy;
};

std::vector<Marker> markers(const std::string& svg)
{
    static const std::regex re(R"re(<circle class="equilibrium" id="(\w+)"[^>]*cx="([^"]+)" cy="([^"]+)")re");
    std::vector<Marker> out;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
        out.push_back({(*it)[1], std::stod((*it)[2]), std::stod((*it)[3])});
    }
    return out;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

} // namespace

TEST_SUITE("report")
{
    TEST_CASE("portrait markers, type I m=2 k=2")
    {
        const std::string svg = render_portrait(make_model(Family::TypeI, 2, 2));
        const auto ms = markers(svg);
        REQUIRE(ms.size() == 3);
        const std::array<std::array<double, 2>, 3> expected{{{0.3162, 0.9487}, {0.8944, 0.4472}, {1.0, 0.0}}};
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(std::abs(ms[i].cx - expected[i][0]) < 5e-5);
            CHECK(std::abs(ms[i].cy - expected[i][1]) < 5e-5);
            CHECK(std::abs(std::hypot(ms[i].cx, ms[i].cy) - 1.0) <= 1e-9);
        }
        CHECK(svg.rfind("<?xml", 0) == 0);
        CHECK(svg.find("version=\"1.1\"") != std::string::npos);
        CHECK(count(svg, "class=\"ray\"") == 3);
        CHECK(count(svg, "class=\"equator\"") == 1);
        CHECK(count(svg, "class=\"streamline\"") + count(svg, "omitted") == 24);
        CHECK(svg.find("data-class=\"saddle\"") != std::string::npos);
    }

    TEST_CASE("portrait marker, type II m=1 k=3")
    {
        const auto ms = markers(render_portrait(make_model(Family::TypeII, 1, 3)));
        REQUIRE(ms.size() == 3);
        CHECK(std::abs(ms[0].cx - 0.4706) < 5e-5);
        CHECK(std::abs(ms[0].cy - 0.8824) < 5e-5);
    }

    TEST_CASE("portrait options and determinism")
    {
        const FlagModel md = make_model(Family::TypeI, 3, 2);
        PortraitOptions opts;
        opts.n_stream_seeds = 6;
        opts.draw_rays = false;
        opts.labels = false;
        opts.width_px = 400;
        const std::string a = render_portrait(md, opts);
        const std::string b = render_portrait(md, opts);
        CHECK(a == b);
        CHECK(count(a, "class=\"ray\"") == 0);
        CHECK(count(a, "<text") == 0);
        CHECK(count(a, "class=\"streamline\"") == 6);
        CHECK(a.find("width=\"400\"") != std::string::npos);
        opts.width_px = 10;
        CHECK_THROWS_AS(render_portrait(md, opts), ParameterError);
    }

    TEST_CASE("equilibria JSON")
    {
        const auto j = nlohmann::json::parse(export_equilibria(make_model(Family::TypeI, 2, 2)));
        REQUIRE(j.is_array());
        REQUIRE(j.size() == 3);
        CHECK(j[0]["class"] == "stable_node");
        CHECK(j[1]["class"] == "saddle");
        CHECK(j[2]["class"] == "stable_node");
        CHECK(j[0]["name"] == "p1");
        CHECK(j[0]["chart"] == "U1");
        CHECK(j[0]["sphere"].size() == 3);
        CHECK(j[0]["eigenvalues"].size() == 2);
        CHECK(j[1]["eigenvalues"][0]["re"].get<double>() == doctest::Approx(5.0 / 14).epsilon(1e-12));

        const FlagModel b = make_model(Family::TypeII, 1, 3);
        const auto jb = nlohmann::json::parse(export_equilibria(b));
        CHECK(std::abs(jb[0]["disc"][0].get<double>() - 8.0 / 17) <= 1e-12);
        CHECK(std::abs(jb[0]["disc"][1].get<double>() - 15.0 / 17) <= 1e-12);
        // 17 significant digits round-trip the doubles exactly.
        const NamedEquilibria n = named_equilibria(b);
        CHECK(jb[0]["disc"][0].get<double>() == n.p1.disc.u);
        CHECK(jb[1]["z1"].get<double>() == n.p2.z1);
        CHECK(nlohmann::json::parse(jb.dump()) == jb);
    }

    TEST_CASE("rays and model JSON")
    {
        const FlagModel md = make_model(Family::TypeI, 2, 2);
        const auto r = nlohmann::json::parse(export_rays(md));
        REQUIRE(r.size() == 3);
        CHECK(r[0]["slope_x_over_y"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-12));
        CHECK(r[2]["slope_x_over_y"].is_null());
        const auto m = nlohmann::json::parse(export_model(md));
        CHECK(m["family"] == "I");
        CHECK(m["n"] == 4);
        CHECK(m["polynomial"]["x"] == "(5/14)*x^2 + (2/7)*y^2");
        CHECK(m["polynomial"]["y"] == "-(1/14)*x*y + y^2");
        CHECK(m["gamma1_slope"] == "1/3");
        CHECK(m["fibration"]["fiber"] == "SO(4)/U(2)");
    }

    TEST_CASE("trajectory CSV")
    {
        const std::string empty = export_trajectory(Trajectory{});
        CHECK(empty == "t,u,v,chart,z1,z2\n");
        Trajectory raw_empty;
        raw_empty.raw = true;
        CHECK(export_trajectory(raw_empty) == "t,u,v,chart,z1,z2,x,y\n");

        const FlagModel md = make_model(Family::TypeI, 2, 2);
        const Trajectory t = integrate_compactified(md, 2, 1);
        const std::string csv = export_trajectory(t);
        CHECK(csv.find('\r') == std::string::npos);
        const auto rows = lines(csv);
        CHECK(rows.size() == t.samples.size() + 1);
        std::istringstream first(rows[1]);
        std::vector<std::string> fields;
        for (std::string f; std::getline(first, f, ',');) {
            fields.push_back(f);
        }
        REQUIRE(fields.size() == 6);
        CHECK(std::stod(fields[0]) == 0.0);
        CHECK(std::abs(std::stod(fields[1]) - 0.8165) < 5e-5);
        CHECK(std::abs(std::stod(fields[2]) - 0.4082) < 5e-5);
        CHECK(fields[3] == "U3");

        const Trajectory r = integrate_raw(md, 1, 1);
        const auto raw_rows = lines(export_trajectory(r));
        CHECK(raw_rows[0] == "t,u,v,chart,z1,z2,x,y");
        CHECK(raw_rows.size() == r.samples.size() + 1);
        CHECK(raw_rows[1].substr(raw_rows[1].size() - 4) == ",1,1");
    }

    TEST_CASE("basin CSV")
    {
        const BasinGrid g = basin_sweep(make_model(Family::TypeI, 2, 2), GridSpec{0, 5, 0, 5, 4, 3});
        const auto rows = lines(export_basin(g));
        REQUIRE(rows.size() == 13);
        CHECK(rows[0] == "x,y,region,expected,verdict,omega,final_u,final_v,final_distance,consistent,error");
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].find(",true,") != std::string::npos);
        }
    }

    TEST_CASE("number formatting")
    {
        CHECK(format_number(0.1) == "0.10000000000000001");
        CHECK(format_number(1.0) == "1");
        CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
    }

    TEST_CASE("atomic file write")
    {
        const auto dir = std::filesystem::temp_directory_path() / "flagflow_report_test";
        std::filesystem::create_directories(dir);
        const auto path = dir / "out.txt";
        write_file_atomic(path, "first\n");
        write_file_atomic(path, "second\n");
        std::ifstream in(path);
        std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK(content == "second\n");
        CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
        CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.txt", "x"), ParameterError);
        std::filesystem::remove_all(dir);
    }
}
