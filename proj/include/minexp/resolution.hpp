#pragma once

// Scripted resolution of a cone over a transversal complete intersection:
// blow up the origin, then for each jump e_m -> e_{m+1} of the degree list
// blow up (e_{m+1} - e_m) times the intersection of the newest exceptional
// divisor with the strict transforms of H_1, ..., H_{p_1 + ... + p_m}.
// Only the monomial model of each chart is tracked.

#include "minexp/chart.hpp"
#include "minexp/exponent.hpp"
#include "minexp/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace minexp {

/// Distinct degree values e_1 < ... < e_k with multiplicities p_1..p_k.
struct GroupedDegrees {
    std::vector<int> values;
    std::vector<int> multiplicities;

    static GroupedDegrees from(const DegreeProfile& profile)
    {
        GroupedDegrees g;
        for (int d : profile.degrees()) {
            if (!g.values.empty() && g.values.back() == d) {
                ++g.multiplicities.back();
            } else {
                g.values.push_back(d);
                g.multiplicities.push_back(1);
            }
        }
        return g;
    }

    std::size_t levels() const { return values.size(); }

    /// p_1 + ... + p_m (1-based m).
    int prefix(std::size_t m) const
    {
        int q = 0;
        for (std::size_t i = 0; i < m; ++i)
            q += multiplicities[i];
        return q;
    }

    std::vector<int> expand() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < values.size(); ++i)
            out.insert(out.end(), static_cast<std::size_t>(multiplicities[i]), values[i]);
        return out;
    }
};

struct LedgerRow {
    int label = 0; ///< E_label
    int a = 0;     ///< coefficient in F
    int k = 0;     ///< coefficient in the relative canonical divisor
    Rational ratio;
};

using DivisorLedger = std::vector<LedgerRow>;

struct BlowupStep {
    int stage = 0; ///< 0 for the origin blow-up
    int label = 0;
    std::vector<std::string> center;
    std::string pivot;
    std::string ideal; ///< transformed ideal in the followed chart
    int a = 0;
    int k = 0;
    /// Every other pivot chart carries a principal exceptional ideal.
    bool side_charts_divisorial = true;
};

struct FactorizationWitness {
    std::string chart_ideal;
    std::string factor;
    std::vector<std::string> residual;
    bool holds = false;
};

/// Follow-up of a chart meeting E_1 where only the first q = p_1 + ... + p_m
/// strict transforms pass through.
struct PartialChain {
    int m = 0;
    int q = 0;
    std::string start_ideal;
    std::vector<BlowupStep> steps;
    std::string terminal_ideal;
    int terminal_exponent = 0;
    bool divisorial = false;
};

struct ResolutionReport {
    DegreeProfile profile;
    bool log_resolution_only = false;
    std::string start_ideal;
    std::vector<BlowupStep> trace;
    DivisorLedger ledger;
    Rational lower_bound;
    int blowup_count = 0;
    std::optional<FactorizationWitness> witness;
    std::vector<PartialChain> partial_chains;
};

inline Rational ledger_lower_bound(const DivisorLedger& ledger)
{
    if (ledger.empty())
        throw std::invalid_argument("empty divisor ledger");
    Rational best = ledger.front().ratio;
    for (const auto& row : ledger)
        best = std::min(best, row.ratio);
    return best;
}

namespace detail {

inline std::vector<Coordinate> start_coordinates(const DegreeProfile& profile, int strict_count)
{
    std::vector<Coordinate> coords(static_cast<std::size_t>(profile.n()));
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i].name = coordinate_prefix(0) + std::to_string(i);
    coords[0].kind = CoordKind::Exceptional;
    coords[0].label = 1;
    coords[0].a = profile.degrees().front();
    coords[0].k = profile.n() - 1;
    for (int j = 1; j <= strict_count; ++j) {
        coords[static_cast<std::size_t>(j)].kind = CoordKind::StrictTransform;
        coords[static_cast<std::size_t>(j)].label = j;
    }
    return coords;
}

/// Runs stages 1..last_stage from `state`, following the chart whose pivot is
/// the newest exceptional coordinate (always coordinate 0).
inline ChartState run_stages(ChartState state, const GroupedDegrees& groups, std::size_t last_stage, int& next_label,
                             std::vector<BlowupStep>& steps, DivisorLedger* ledger)
{
    for (std::size_t m = 1; m <= last_stage; ++m) {
        int q = groups.prefix(m);
        int repeats = groups.values[m] - groups.values[m - 1];
        std::vector<std::size_t> center;
        for (int i = 0; i <= q; ++i)
            center.push_back(static_cast<std::size_t>(i));
        for (int rep = 0; rep < repeats; ++rep) {
            int label = next_label++;
            auto charts = blowup_chart(state, center, label);
            BlowupStep step;
            step.stage = static_cast<int>(m);
            step.label = label;
            for (auto c : center)
                step.center.push_back(state.coords[c].name);
            step.pivot = state.coords[0].name;
            const auto& created = charts.front().coords.front();
            step.a = created.a;
            step.k = created.k;
            for (std::size_t j = 1; j < charts.size(); ++j) {
                const auto& side = charts[j];
                step.side_charts_divisorial = step.side_charts_divisorial && is_divisorial(side) &&
                                              side.coords[center[j]].a == step.a;
            }
            state = std::move(charts.front());
            step.ideal = state.ideal_str();
            if (ledger)
                ledger->push_back({label, step.a, step.k, Rational(step.k + 1, step.a)});
            steps.push_back(std::move(step));
        }
    }
    return state;
}

inline BlowupStep origin_step(const DegreeProfile& profile, std::string ideal)
{
    BlowupStep step;
    step.label = 1;
    step.center = {"origin"};
    step.pivot = "x";
    step.ideal = std::move(ideal);
    step.a = profile.degrees().front();
    step.k = profile.n() - 1;
    return step;
}

inline PartialChain partial_chain(const DegreeProfile& profile, const GroupedDegrees& groups, std::size_t m)
{
    PartialChain chain;
    chain.m = static_cast<int>(m);
    chain.q = groups.prefix(m);
    ChartState state;
    state.coords = start_coordinates(profile, chain.q);
    const auto& d = profile.degrees();
    for (int j = 1; j <= chain.q; ++j) {
        ExponentVector g(static_cast<std::size_t>(profile.n()), 0);
        g[0] = static_cast<std::uint32_t>(d[static_cast<std::size_t>(j - 1)]);
        g[static_cast<std::size_t>(j)] = 1;
        state.ideal.push_back(std::move(g));
    }
    ExponentVector last(static_cast<std::size_t>(profile.n()), 0);
    last[0] = static_cast<std::uint32_t>(d[static_cast<std::size_t>(chain.q)]);
    state.ideal.push_back(std::move(last));
    chain.start_ideal = state.ideal_str();

    int label = 2;
    auto terminal = run_stages(std::move(state), groups, m, label, chain.steps, nullptr);
    auto gens = minimal_generators(terminal.ideal);
    ChartState reduced = terminal;
    reduced.ideal = gens;
    chain.terminal_ideal = reduced.ideal_str();
    chain.divisorial = is_divisorial(terminal);
    if (chain.divisorial) {
        const auto& g = gens.front();
        bool pure_power = std::all_of(g.begin() + 1, g.end(), [](auto e) { return e == 0; });
        chain.terminal_exponent = static_cast<int>(g[0]);
        chain.divisorial = pure_power && chain.terminal_exponent == groups.values[m];
    }
    return chain;
}

inline FactorizationWitness factorization_witness(const ChartState& chart, int r)
{
    FactorizationWitness w;
    w.chart_ideal = chart.ideal_str();
    // only exceptional coordinates may go into the factor; with r = 1 the
    // strict transform also divides every generator
    auto factor = common_factor(chart.ideal, chart.dimension());
    for (std::size_t i = 0; i < factor.size(); ++i)
        if (chart.coords[i].kind != CoordKind::Exceptional)
            factor[i] = 0;
    w.factor = chart.monomial_str(factor);
    bool ok = static_cast<int>(chart.ideal.size()) == r;
    std::vector<std::size_t> used;
    for (const auto& g : chart.ideal) {
        std::optional<std::size_t> single;
        std::uint32_t degree = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto e = g[i] - factor[i];
            degree += e;
            if (e > 0)
                single = i;
        }
        ExponentVector residual(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            residual[i] = g[i] - factor[i];
        w.residual.push_back(chart.monomial_str(residual));
        if (degree != 1 || !single || chart.coords[*single].kind != CoordKind::StrictTransform ||
            std::find(used.begin(), used.end(), *single) != used.end()) {
            ok = false;
            continue;
        }
        used.push_back(*single);
    }
    w.holds = ok;
    return w;
}

} // namespace detail

/// Simulates the scripted resolution on the generic chart through the origin
/// where all r strict transforms meet E_1 (ideal (z0^{d_1} z1, ..., z0^{d_r} zr)),
/// plus the partial charts where only the first p_1 + ... + p_m of them do.
/// With r = n the generic chart does not exist; the ledger is then read off
/// the longest partial chain and the result is a log resolution only.
inline ResolutionReport simulate_resolution(const DegreeProfile& profile)
{
    auto groups = GroupedDegrees::from(profile);
    const std::size_t k = groups.levels();

    ResolutionReport report{profile, false, {}, {}, {}, {}, 0, std::nullopt, {}};
    report.log_resolution_only = profile.r() == profile.n();
    report.ledger.push_back(
        {1, profile.degrees().front(), profile.n() - 1, Rational(profile.n(), profile.degrees().front())});

    for (std::size_t m = 1; m < k; ++m)
        report.partial_chains.push_back(detail::partial_chain(profile, groups, m));

    if (!report.log_resolution_only) {
        ChartState start;
        start.coords = detail::start_coordinates(profile, profile.r());
        for (int j = 1; j <= profile.r(); ++j) {
            ExponentVector g(static_cast<std::size_t>(profile.n()), 0);
            g[0] = static_cast<std::uint32_t>(profile.degrees()[static_cast<std::size_t>(j - 1)]);
            g[static_cast<std::size_t>(j)] = 1;
            start.ideal.push_back(std::move(g));
        }
        report.start_ideal = start.ideal_str();
        report.trace.push_back(detail::origin_step(profile, report.start_ideal));
        int label = 2;
        auto terminal = detail::run_stages(std::move(start), groups, k - 1, label, report.trace, &report.ledger);
        report.witness = detail::factorization_witness(terminal, profile.r());
    } else if (k > 1) {
        const auto& longest = report.partial_chains.back();
        report.start_ideal = longest.start_ideal;
        report.trace.push_back(detail::origin_step(profile, report.start_ideal));
        for (const auto& step : longest.steps) {
            report.ledger.push_back({step.label, step.a, step.k, Rational(step.k + 1, step.a)});
            report.trace.push_back(step);
        }
    } else {
        report.trace.push_back(detail::origin_step(profile, ""));
    }

    for (const auto& row : report.ledger)
        if (row.a < 1 || row.k < 0)
            throw std::logic_error("ledger row E" + std::to_string(row.label) + " has an invalid coefficient");
    report.blowup_count = static_cast<int>(report.ledger.size());
    report.lower_bound = ledger_lower_bound(report.ledger);
    return report;
}

} // namespace minexp
