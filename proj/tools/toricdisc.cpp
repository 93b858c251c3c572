#include "toric/cli_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

std::string read_all(std::istream& in)
{
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool read_file(const std::string& path, std::string& out)
{
    std::ifstream in(path);
    if (!in)
        return false;
    out = read_all(in);
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Euler obstructions, dual varieties and characteristic cycles of toric varieties"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string input_path, output_path, rho_path, route_name, context_name = "projective";
    std::string cache_dir, dump_path;
    bool oracle = false;
    std::size_t max_dim = 4, max_points = 64, ic_n = 0;
    unsigned jobs = 1;

    app.add_option("--input", input_path, "Input JSON (default: standard input)");
    app.add_option("--output", output_path, "Write the result here instead of standard output");
    app.add_flag("--oracle", oracle, "Cross-check volumes and subdiagram regions against lattice-point counts");
    app.add_option("--max-dim", max_dim, "Largest cone dimension for Hilbert bases and counting oracles")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-points", max_points, "Largest accepted number of input points")->check(CLI::PositiveNumber);
    app.add_option("--jobs", jobs, "Worker threads for pair tables")->check(CLI::PositiveNumber);
    app.add_option("--cache-dir", cache_dir, "Directory for memoized pair tables");
    app.add_option("--dump-regions", dump_path, "Write every subdiagram region as JSON to this file");

    app.add_subcommand("faces", "Face lattice with face ids and the order relation");
    app.add_subcommand("volumes", "Normalized volume of every face");
    auto* euler = app.add_subcommand("euler", "Euler obstruction on every orbit");
    euler->add_option("--route", route_name, "Recursion weights")->check(CLI::IsMember({"normal", "general"}));
    auto* disc = app.add_subcommand("discriminant", "Codimension and degree of the dual variety");
    disc->add_option("--route", route_name, "Recursion weights")->check(CLI::IsMember({"normal", "general"}));
    auto* cc = app.add_subcommand("charcycle", "Characteristic cycle of a T-invariant constructible function");
    cc->add_option("--rho", rho_path, "JSON file {\"rho\": {face id: int}}")->required();
    cc->add_option("--context", context_name, "Toric variety")->check(CLI::IsMember({"affine", "projective"}));
    auto* ic = app.add_subcommand("ic", "Characteristic cycle of the intersection complex");
    ic->add_option("--n", ic_n, "Dimension of the polytope")->check(CLI::IsMember({2, 3, 4}));
    app.add_subcommand("check", "Run the invariant suite on the input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : toric::exit_invalid_input;
    }

    toric::JobSpec spec;
    spec.command = *toric::parse_command(app.get_subcommands().front()->get_name());
    spec.oracle = oracle;
    spec.max_dim = max_dim;
    spec.max_points = max_points;
    spec.jobs = jobs;
    spec.ic_n = ic_n;
    if (!route_name.empty())
        spec.route = route_name == "normal" ? toric::Route::normal : toric::Route::general;
    spec.context = context_name == "affine" ? toric::CycleContext::affine : toric::CycleContext::projective;
    if (!cache_dir.empty())
        spec.cache_dir = cache_dir;
    if (!dump_path.empty())
        spec.dump_regions = dump_path;

    std::string text;
    if (input_path.empty()) {
        text = read_all(std::cin);
    } else if (!read_file(input_path, text)) {
        std::cerr << "error: cannot read " << input_path << '\n';
        return toric::exit_invalid_input;
    }
    if (!rho_path.empty()) {
        std::string rho;
        if (!read_file(rho_path, rho)) {
            std::cerr << "error: cannot read " << rho_path << '\n';
            return toric::exit_invalid_input;
        }
        spec.rho_json = std::move(rho);
    }

    toric::JobResult result;
    try {
        toric::parse_input(text, spec);
        result = toric::run_job(spec);
    } catch (const toric::InvalidInput& e) {
        result = {toric::exit_invalid_input, {}, e.what()};
    }

    if (!result.output.empty()) {
        if (output_path.empty()) {
            std::cout << result.output;
        } else {
            std::ofstream out(output_path);
            out << result.output;
            if (!out) {
                std::cerr << "error: cannot write " << output_path << '\n';
                return toric::exit_invalid_input;
            }
        }
    }
    if (!result.error.empty())
        std::cerr << "error: " << result.error << '\n';
    return result.status;
}
