#include "doctest.h"

#include "corpus.hpp"
#include "toric/cli_io.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>

using namespace toric;

namespace {

JobSpec job(const std::string& input, Command command)
{
    JobSpec spec;
    parse_input(input, spec);
    spec.command = command;
    return spec;
}

const std::string example = R"({"points": [[0,0,0],[1,0,0],[0,1,0],[0,0,1],[0,0,2]]})";

std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("toricdisc-test-" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("command names")
{
    CHECK(parse_command("discriminant") == Command::discriminant);
    CHECK(parse_command("check") == Command::check);
    CHECK_FALSE(parse_command("volume").has_value());
}

TEST_CASE("input parsing")
{
    JobSpec spec;
    parse_input(R"({"mode": "cone", "points": [[1, 0], [1, "2"]]})", spec);
    CHECK(spec.mode == Mode::cone);
    CHECK(spec.points == test::pts({{1, 0}, {1, 2}}));
    parse_input(R"({"points": [["123456789012345678901234567890"]]})", spec);
    CHECK(spec.mode == Mode::polytope);
    CHECK(spec.points.front().front() == Int("123456789012345678901234567890"));

    for (const char* bad : {"[1, 2]", "{\"points\": []}", "{\"points\": [[1], 2]}", "{\"points\": [[1.5]]}",
                            "{\"mode\": \"fan\", \"points\": [[1]]}", "{\"points\": [[\"x\"]]}", "{"})
        CHECK_THROWS_AS(parse_input(bad, spec), InvalidInput);
}

TEST_CASE("discriminant of the example tetrahedron")
{
    JobResult r = run_job(job(example, Command::discriminant));
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["codim"] == 3);
    CHECK(j["degree"] == 2);
    CHECK(j["deltas"] == nlohmann::json::array({0, 0, 2, -2}));
    CHECK(j["per_face"].size() == 15);
}

TEST_CASE("euler output is keyed by face ids")
{
    JobResult r = run_job(job(R"({"points": [[0],[2],[3]]})", Command::euler));
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.output) == nlohmann::json::parse(R"({"0":2, "0,1,2":1, "2":1})"));

    JobResult cone = run_job(job(R"({"mode":"cone","points": [[1,0],[1,2]]})", Command::euler));
    REQUIRE(cone.status == 0);
    CHECK(nlohmann::json::parse(cone.output) == nlohmann::json::parse(R"({"":0, "0":1, "0,1":1, "1":1})"));
}

TEST_CASE("faces of a single point")
{
    JobResult r = run_job(job(R"({"points": [[7, -3]]})", Command::faces));
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["faces"].size() == 1);
    CHECK(j["faces"][0]["dim"] == 0);
    CHECK(j["faces"][0]["id"] == "0");
}

TEST_CASE("exit statuses")
{
    JobSpec simplex = job(R"({"points": [[0,0],[1,0],[0,1]]})", Command::discriminant);
    CHECK(run_job(simplex).status == exit_inconsistency);

    JobSpec many = job(example, Command::faces);
    many.max_points = 4;
    JobResult guarded = run_job(many);
    CHECK(guarded.status == exit_guard_exceeded);
    CHECK_FALSE(guarded.error.empty());

    JobSpec deep = job(R"({"points": [[0,0,0,0,0],[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1],[1,1,1,1,1]]})",
                       Command::euler);
    deep.route = Route::normal;
    deep.max_dim = 3;
    CHECK(run_job(deep).status == exit_guard_exceeded);

    CHECK(run_job(job(R"({"points": [[0],[0]]})", Command::faces)).status == exit_invalid_input);
    CHECK(run_job(job(R"({"mode":"cone","points": [[1],[-1]]})", Command::faces)).status == exit_invalid_input);
    CHECK(run_job(job(R"({"mode":"cone","points": [[1,0],[0,1]]})", Command::discriminant)).status ==
          exit_invalid_input);
}

TEST_CASE("characteristic cycles from a rho file")
{
    JobSpec spec = job(R"({"points": [[0],[2],[3]]})", Command::charcycle);
    spec.rho_json = R"({"rho": {"0": 1, "2": 1, "0,1,2": 1}})";
    JobResult r = run_job(spec);
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["context"] == "projective");
    CHECK(j["m"]["0,1,2"] == -1);

    spec.oracle = true;
    CHECK(run_job(spec).status == 0);

    spec.rho_json = R"({"rho": {"0": 1, "0,1,2": 1}})";
    CHECK(run_job(spec).status == exit_invalid_input);
    spec.rho_json = R"({"rho": {"0": 1, "1": 1, "2": 1, "0,1,2": 1}})";
    CHECK(run_job(spec).status == exit_invalid_input);
    spec.rho_json.reset();
    CHECK(run_job(spec).status == exit_invalid_input);

    JobSpec cone = job(R"({"mode":"cone","points": [[1,0],[1,2]]})", Command::charcycle);
    cone.context = CycleContext::affine;
    cone.rho_json = R"({"rho": {"": 1, "0": 1, "1": 1, "0,1": 1}})";
    JobResult c = run_job(cone);
    REQUIRE(c.status == 0);
    CHECK(nlohmann::json::parse(c.output)["m"][""] == 1);
}

TEST_CASE("IC multiplicities")
{
    JobSpec spec = job(R"({"points": [[0,0],[1,0],[1,1],[1,2]]})", Command::ic);
    JobResult r = run_job(spec);
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["n"] == 2);
    CHECK(j["m"]["0"] == 1);
    spec.ic_n = 3;
    CHECK(run_job(spec).status == exit_invalid_input);
}

TEST_CASE("check reports every property")
{
    JobResult r = run_job(job(example, Command::check));
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["pass"] == true);
    CHECK(j["checks"].size() >= 10);
    for (const auto& c : j["checks"])
        CHECK_MESSAGE(c["pass"] == true, c["name"]);

    JobResult cone = run_job(job(R"({"mode":"cone","points": [[1,0,0],[0,1,0],[0,0,1],[1,1,-1]]})", Command::check));
    CHECK(cone.status == 0);
}

TEST_CASE("outputs are byte-identical across runs and thread counts")
{
    for (Command command : {Command::faces, Command::volumes, Command::euler, Command::discriminant, Command::check}) {
        JobSpec spec = job(R"({"points": [[0,0,0],[1,0,0],[0,1,0],[0,0,1],[1,1,0],[1,0,1],[0,1,1],[1,1,1]]})", command);
        const std::string first = run_job(spec).output;
        CHECK(run_job(spec).output == first);
        spec.jobs = 4;
        CHECK(run_job(spec).output == first);
    }
}

TEST_CASE("cache never changes outputs")
{
    auto dir = scratch_dir("cache");
    JobSpec spec = job(example, Command::discriminant);
    const std::string plain = run_job(spec).output;
    spec.cache_dir = dir.string();
    CHECK(run_job(spec).output == plain);
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        CHECK(entry.path().extension() == ".json");
        ++files;
    }
    CHECK(files == 1);
    CHECK(run_job(spec).output == plain);

    // A corrupted entry is ignored and rewritten.
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        std::ofstream(entry.path()) << "{\"input\": 3";
    CHECK(run_job(spec).output == plain);

    spec.command = Command::euler;
    spec.route = Route::normal;
    const std::string normal = run_job(spec).output;
    spec.cache_dir.reset();
    CHECK(run_job(spec).output == normal);
    std::filesystem::remove_all(dir);
}

TEST_CASE("oracle mode and region dumps")
{
    auto dir = scratch_dir("dump");
    std::filesystem::create_directories(dir);
    JobSpec spec = job(example, Command::euler);
    spec.oracle = true;
    spec.dump_regions = (dir / "regions.json").string();
    REQUIRE(run_job(spec).status == 0);
    std::ifstream in(*spec.dump_regions);
    auto regions = nlohmann::json::parse(in);
    Polytope p = Polytope::from_points(PointConfiguration(test::stretched_simplex()));
    CHECK(regions.size() == p.faces().order().size());
    for (const auto& r : regions) {
        CHECK(r.contains("cone"));
        CHECK(r.contains("bounded_facets"));
        CHECK(r["volume"].is_number_integer());
    }
    spec.command = Command::volumes;
    CHECK(run_job(spec).status == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("canonical input")
{
    JobSpec a = job(R"({"points": [[0, 1], [2, 3]]})", Command::faces);
    JobSpec b = job(R"({"mode": "polytope", "points": [[0,1],[2,3]]})", Command::euler);
    CHECK(canonical_input(a) == canonical_input(b));
    JobSpec c = job(R"({"mode": "cone", "points": [[0,1],[2,3]]})", Command::faces);
    CHECK(canonical_input(a) != canonical_input(c));
}
