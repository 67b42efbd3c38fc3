// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "minexp/minexp.hpp"
#include "minexp/requests.hpp"

#include "oracles.hpp"
#include "trace_format.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace minexp;
using minexp::cli::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

template <class F>
void for_each_profile(int max_n, int max_r, int max_d, F&& body)
{
    for (int n = 1; n <= max_n; ++n)
        for (const auto& d : oracle::degree_lists(max_r, 2, max_d))
            if (static_cast<int>(d.size()) <= n)
                body(DegreeProfile(n, d));
}

Outcome formula_exactness()
{
    Outcome o;
    int count = 0;
    for (int n = 1; n <= 12; ++n)
        for (int d = 2; d <= 8; ++d)
            for (int r = 1; r <= n; ++r) {
                DegreeProfile p(n, std::vector<int>(static_cast<std::size_t>(r), d));
                o.require(minimal_exponent_cone(p) == Rational(n, d), p.str());
                ++count;
            }
    o.require(minimal_exponent_cone(DegreeProfile(6, {2, 3})) == Rational(7, 3), "n=6 d=[2,3]");
    o.require(minimal_exponent_cone(DegreeProfile(3, {2, 3})) == Rational(4, 3), "n=3 d=[2,3]");
    o.require(minimal_exponent_cone(DegreeProfile(4, {2, 3, 4})) == Rational(5, 3), "n=4 d=[2,3,4]");
    if (o.pass)
        o.detail = std::to_string(count) + " equal-degree profiles plus 7/3, 4/3, 5/3";
    return o;
}

Outcome alpha_properties()
{
    Outcome o;
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> rlen(1, 6), deg(1, 9), wnum(-16, 160), wden(1, 4);
    for (int trial = 0; trial < 10000 && o.pass; ++trial) {
        std::vector<Rational> d(static_cast<std::size_t>(rlen(rng)));
        for (auto& x : d)
            x = deg(rng);
        std::sort(d.begin(), d.end());
        Rational w(wnum(rng), wden(rng));
        auto t = alpha_sequence(w, d);
        Rational partial = 0;
        std::size_t p = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            partial += d[i];
            if (p == 0 && partial > w)
                p = i + 1;
            if (i + 1 == d.size())
                break;
            Rational diff = t.alpha(i + 1) - t.alpha(i + 2);
            o.require(diff == (w - partial) * (d[i + 1] - d[i]) / (d[i] * d[i + 1]), "difference identity");
            if (d[i] == d[i + 1])
                o.require(diff == 0, "equal neighbours");
            else
                o.require((diff >= 0) == (partial <= w), "monotonicity criterion");
        }
        if (p == 0)
            p = d.size();
        o.require(t.pivot == p && t.alpha(p) == oracle::alpha_min(w, d), "pivot law");
    }
    if (o.pass)
        o.detail = "10000 random profiles, 0 failures";
    return o;
}

Outcome three_routes()
{
    Outcome o;
    int count = 0;
    for_each_profile(12, 4, 8, [&](const DegreeProfile& p) {
        auto formula = minimal_exponent_cone(p);
        auto ledger = simulate_resolution(p).lower_bound;
        auto weighted =
            weighted_upper_bound(WeightedProfile(WeightVector::ones(static_cast<std::size_t>(p.n())), p.degrees_rational()))
                .value;
        o.require(formula == ledger && formula == weighted, p.str());
        ++count;
    });
    if (o.pass)
        o.detail = std::to_string(count) + " profiles agree exactly";
    return o;
}

Outcome trace_fidelity()
{
    Outcome o;
    const std::string dir = std::string(MINEXP_SOURCE_DIR) + "/tests/golden/";
    auto two = simulate_resolution(DegreeProfile(4, {2, 3}));
    o.require(golden::render(two) == golden::read_file(dir + "resolve_n4_d2_3.txt"), "golden n=4 d=[2,3]");
    o.require(two.trace.size() == 2 && two.trace[1].ideal == "(u0^3*u1, u0^3*u2)", "V0 transform pattern");
    o.require(two.witness && two.witness->factor == "u0^3" && two.witness->residual == std::vector<std::string>{"u1", "u2"},
              "terminal factorization");
    auto four = simulate_resolution(DegreeProfile(5, {2, 3, 3, 5}));
    o.require(golden::render(four) == golden::read_file(dir + "resolve_n5_d2_3_3_5.txt"), "golden n=5 d=[2,3,3,5]");
    if (o.pass)
        o.detail = "2 golden traces match";
    return o;
}

Outcome valuation_scan()
{
    Outcome o;
    int threshold = 0, vanishing = 0;
    std::uint64_t tuples = 0;
    for_each_profile(8, 3, 6, [&](const DegreeProfile& p) {
        auto r = verify_valuation_inequality(p, 8);
        tuples += r.tuples_checked;
        (r.branch == ValuationBranch::Threshold ? threshold : vanishing)++;
        o.require(r.pass(), p.str());
    });
    if (o.pass)
        o.detail = std::to_string(threshold) + " threshold + " + std::to_string(vanishing) +
                   " last-vanishing profiles, " + std::to_string(tuples) + " tuples, 0 violations";
    return o;
}

Outcome beta_scan()
{
    Outcome o;
    std::uint64_t points = 0;
    for_each_profile(8, 3, 6, [&](const DegreeProfile& p) {
        auto r = scan_beta_grid(p, 4, 2);
        points += r.points_checked;
        o.require(r.pass(), p.str());
    });
    if (o.pass)
        o.detail = std::to_string(points) + " grid points, 0 violations";
    return o;
}

std::vector<std::pair<MonomialSupport, DiagonalResult>> newton_cases()
{
    std::vector<std::pair<MonomialSupport, DiagonalResult>> out;
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coord(0, 6), count(1, 6);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
        std::vector<ExponentVector> pts(static_cast<std::size_t>(count(rng)), ExponentVector(n));
        for (auto& u : pts)
            for (auto& e : u)
                e = static_cast<std::uint32_t>(coord(rng));
        MonomialSupport s(n, pts);
        auto r = diagonal_entry(s);
        out.emplace_back(std::move(s), std::move(r));
    }
    return out;
}

Outcome newton_oracle(const std::vector<std::pair<MonomialSupport, DiagonalResult>>& cases)
{
    Outcome o;
    for (std::size_t i = 0; i < cases.size(); ++i)
        o.require(cases[i].second.c == oracle::diagonal_value(cases[i].first.points(), cases[i].first.dimension()),
                  "case " + std::to_string(i));
    auto cusp = parse_poly("x1^2 + x2^3", numbered_names("x", 2));
    auto e = newton_exponent(MonomialSupport::of(cusp));
    o.require(e == Rational(5, 6), "cusp exponent");
    o.require(weighted_order_bound(cusp, WeightVector({Rational(3), Rational(2)})).value == e, "cusp weighted bound");
    if (o.pass)
        o.detail = std::to_string(cases.size()) + " random supports match vertex enumeration; cusp 5/6";
    return o;
}

Outcome certificate_audit(const std::vector<std::pair<MonomialSupport, DiagonalResult>>& cases)
{
    Outcome o;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& [s, r] = cases[i];
        Rational total = 0;
        std::vector<Rational> combo(s.dimension(), Rational(0));
        bool nonneg = true;
        for (std::size_t k = 0; k < r.lambda.size(); ++k) {
            nonneg = nonneg && r.lambda[k] >= 0;
            total += r.lambda[k];
            for (std::size_t j = 0; j < s.dimension(); ++j)
                combo[j] += r.lambda[k] * s.points()[k][j];
        }
        bool bounded = std::all_of(combo.begin(), combo.end(), [&](const Rational& x) { return x <= r.c; });
        o.require(nonneg && total == 1 && bounded && certificate_holds(s, r), "case " + std::to_string(i));
    }
    if (o.pass)
        o.detail = std::to_string(cases.size()) + " certificates re-verified";
    return o;
}

Outcome predicate_scan()
{
    Outcome o;
    int count = 0;
    for_each_profile(12, 4, 8, [&](const DegreeProfile& p) {
        auto pr = predicates(p);
        auto alpha = oracle::alpha_min(p.n(), p.degrees());
        Rational r(p.r());
        o.require(pr.rational_singularities == (p.degree_sum() < p.n()) && pr.rational_singularities == (alpha > r) &&
                      pr.log_canonical == (p.degree_sum() <= p.n()) && pr.log_canonical == (std::min(alpha, r) == r) &&
                      pr.exceeds_lct == (alpha > r),
                  p.str());
        ++count;
    });
    if (o.pass)
        o.detail = std::to_string(count) + " profiles";
    return o;
}

struct Process {
    int code = -1;
    std::string out;
};

Process run_cli(const std::string& args)
{
    Process p;
    std::string cmd = std::string("\"") + MINEXP_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return p;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        p.out.append(buf, got);
    int status = pclose(pipe);
    p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return p;
}

void collect_rationals(const json& j, std::vector<std::string>& out)
{
    if (j.is_object() && j.contains("num") && j.contains("den")) {
        out.push_back(j["text"].get<std::string>() + " (" + j["approx"].get<std::string>() + ")");
        return;
    }
    if (j.is_structured())
        for (const auto& e : j)
            collect_rationals(e, out);
}

Outcome cli_contract()
{
    Outcome o;
    const std::string manifest = std::string(MINEXP_SOURCE_DIR) + "/samples/manifest.json";
    auto as_json = run_cli("--json batch \"" + manifest + "\"");
    o.require(as_json.code == 0, "manifest exit code " + std::to_string(as_json.code));
    json doc;
    try {
        doc = json::parse(as_json.out);
    } catch (const std::exception& e) {
        o.require(false, std::string("manifest JSON does not parse: ") + e.what());
        return o;
    }
    o.require(doc["schema"] == cli::kSchema && doc["reports"].size() == 10, "batch envelope");
    o.require(json::parse(doc.dump()) == doc, "JSON round trip");

    // every rational in the JSON reports appears verbatim in text mode
    auto as_text = run_cli("batch \"" + manifest + "\"");
    o.require(as_text.code == 0, "text mode exit code");
    std::vector<std::string> rationals;
    collect_rationals(doc["reports"], rationals);
    for (const auto& q : rationals)
        o.require(as_text.out.find(q) != std::string::npos, "text mode lacks " + q);

    // the same requests replayed in-process give identical reports
    std::ifstream in(manifest);
    auto requests = json::parse(in);
    for (std::size_t i = 0; i < requests.size(); ++i) {
        auto report = cli::run(requests[i]).to_json();
        o.require(report == doc["reports"][i], "in-process replay differs at request " + std::to_string(i + 1));
    }

    o.require(run_cli("formula --n 2 --degrees 2,2,2").code == 1, "input error exit code");
    o.require(run_cli("probe --poly x1^2 --vars x1,x2 --field 3").code == 2, "verification failure exit code");
    o.require(run_cli("resolve --n 4 --degrees 2,3").code == 0, "success exit code");
    o.require(run_cli("batch /nonexistent/manifest.json").code == 1, "missing manifest exit code");
    o.require(run_cli("--bogus").code == 1, "unknown flag exit code");

    std::string schema_cmd = "python3 \"" + std::string(MINEXP_SOURCE_DIR) + "/tests/validate_reports.py\" \"" +
                             MINEXP_CLI_PATH + "\" \"" + manifest + "\" \"" + MINEXP_SOURCE_DIR +
                             "/docs/report.schema.json\" > /dev/null 2>&1";
    int schema_status = std::system(schema_cmd.c_str());
    o.require(WIFEXITED(schema_status) && WEXITSTATUS(schema_status) == 0, "schema validation");
    if (o.pass)
        o.detail = "10-request manifest validates, round-trips, exit codes 0/1/2 as specified";
    return o;
}

} // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    std::vector<std::pair<MonomialSupport, DiagonalResult>> cases;
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"formula exactness", formula_exactness},
        {"alpha sequence properties", alpha_properties},
        {"three-route agreement", three_routes},
        {"resolution trace fidelity", trace_fidelity},
        {"valuation inequality scan", valuation_scan},
        {"beta chain scan", beta_scan},
        {"newton oracle",
         [&] {
             cases = newton_cases();
             return newton_oracle(cases);
         }},
        {"certificate audit", [&] { return certificate_audit(cases); }},
        {"predicates", predicate_scan},
        {"cli contract", cli_contract},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(clock::now() - start).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": " << o.detail << " ("
             << secs << " s)";
        std::cout << line.str() << std::endl;
        failed += !o.pass;
    }
    std::cout << (failed ? "acceptance: FAIL, " : "acceptance: PASS, ") << criteria.size() - failed << "/"
              << criteria.size() << " criteria" << std::endl;
    return failed ? 1 : 0;
}
