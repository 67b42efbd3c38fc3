// minexp: command-line front end. Every subcommand builds a JSON request and
// hands it to minexp::cli::run, so text and --json output share one report.
//
// Exit codes: 0 success or PASS, 1 input error, 2 verification FAIL.

#include "minexp/requests.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using minexp::cli::json;

struct Options {
    int n = 0;
    std::vector<int> degrees;
    std::vector<std::string> weights;
    std::vector<std::string> orders;
    std::vector<std::string> polys;
    std::vector<std::string> vars;
    std::string support;
    int bound = 0;
    int beta_max = -1;
    std::string branch;
    int field = 0;
    long long budget = 0;
    std::string manifest;
};

void put_rationals(json& req, const char* key, const std::vector<std::string>& values)
{
    json arr = json::array();
    for (const auto& v : values)
        arr.push_back(v);
    req[key] = arr;
}

json build_request(const std::string& command, const Options& o)
{
    json req;
    req["command"] = command;
    if (o.n != 0)
        req["n"] = o.n;
    if (!o.degrees.empty())
        req["degrees"] = o.degrees;
    if (!o.weights.empty())
        put_rationals(req, "weights", o.weights);
    if (!o.orders.empty())
        put_rationals(req, "orders", o.orders);
    if (!o.polys.empty())
        req["polys"] = o.polys;
    if (!o.vars.empty())
        req["vars"] = o.vars;
    if (!o.support.empty())
        req["support"] = json::parse(o.support);
    if (o.bound != 0)
        req["bound"] = o.bound;
    if (o.beta_max >= 0)
        req["beta_max"] = o.beta_max;
    if (!o.branch.empty())
        req["branch"] = o.branch;
    if (o.field != 0)
        req["field"] = o.field;
    if (o.budget != 0)
        req["budget"] = o.budget;
    return req;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimal exponents of cones over complete intersections, with certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Print the machine-readable report");

    Options o;
    auto* formula = app.add_subcommand("formula", "Closed-form minimal exponent, lct and singularity predicates");
    formula->add_option("--n", o.n, "Ambient dimension");
    formula->add_option("--degrees", o.degrees, "Equation degrees, e.g. 2,3")->delimiter(',');
    formula->add_option("--poly", o.polys, "Homogeneous equation (repeatable)");
    formula->add_option("--vars", o.vars, "Variable names, e.g. x,y,z")->delimiter(',');
    formula->add_option("--field", o.field, "Prime for the advisory transversality probe");

    auto* weighted = app.add_subcommand("weighted", "Upper bound for weighted homogeneous equations");
    weighted->add_option("--weights", o.weights, "Positive weights, e.g. 1,1/2")->delimiter(',')->required();
    weighted->add_option("--orders", o.orders, "Weighted orders of the equations")->delimiter(',');
    weighted->add_option("--poly", o.polys, "Equation (repeatable)");
    weighted->add_option("--vars", o.vars, "Variable names")->delimiter(',');

    auto* newton = app.add_subcommand("newton", "Minimal exponent of a nondegenerate isolated singularity");
    newton->add_option("--support", o.support, "Support as JSON, e.g. [[2,0],[0,3]]");
    newton->add_option("--poly", o.polys, "Polynomial");
    newton->add_option("--vars", o.vars, "Variable names")->delimiter(',');

    auto* resolve = app.add_subcommand("resolve", "Simulate the scripted resolution and cross-check the formula");
    resolve->add_option("--n", o.n, "Ambient dimension")->required();
    resolve->add_option("--degrees", o.degrees, "Equation degrees (>= 2)")->delimiter(',')->required();

    auto* verify = app.add_subcommand("verify", "Grid checks of the valuation inequalities");
    verify->add_option("--n", o.n, "Ambient dimension")->required();
    verify->add_option("--degrees", o.degrees, "Equation degrees (>= 2)")->delimiter(',')->required();
    verify->add_option("--bound", o.bound, "Valuation grid bound");
    verify->add_option("--beta-max", o.beta_max, "Largest u entry in the beta grid");
    verify->add_option("--branch", o.branch, "auto, threshold or last-vanishing");

    auto* probe = app.add_subcommand("probe", "Finite-field transversality probe");
    probe->add_option("--poly", o.polys, "Homogeneous equation (repeatable)")->required();
    probe->add_option("--vars", o.vars, "Variable names")->delimiter(',')->required();
    probe->add_option("--field", o.field, "Prime q <= 13");
    probe->add_option("--budget", o.budget, "Maximum number of points");

    auto* batch = app.add_subcommand("batch", "Run a JSON manifest of requests");
    batch->add_option("manifest", o.manifest, "Manifest path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return minexp::cli::kInputError;
    }

    minexp::cli::ScanBounds bounds;
    try {
        bounds = minexp::cli::ScanBounds::from_env();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return minexp::cli::kInputError;
    }

    if (batch->parsed()) {
        std::ifstream in(o.manifest);
        if (!in) {
            std::cerr << "error: cannot read manifest '" << o.manifest << "'\n";
            return minexp::cli::kInputError;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        auto result = minexp::cli::run_batch_text(buffer.str(), bounds);
        std::cout << (as_json ? result.to_json().dump(2) + "\n" : result.to_text());
        return result.exit_code();
    }

    std::string command = app.get_subcommands().front()->get_name();
    json request;
    try {
        request = build_request(command, o);
    } catch (const json::parse_error& e) {
        std::cerr << "error: --support is not valid JSON: " << e.what() << '\n';
        return minexp::cli::kInputError;
    }
    auto report = minexp::cli::run(request, bounds);
    std::cout << (as_json ? report.to_json().dump(2) + "\n" : report.to_text());
    return report.exit_code();
}
