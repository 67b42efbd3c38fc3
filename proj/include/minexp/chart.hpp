#pragma once

// Monomial ideals on coordinate charts and their transforms under blow-ups
// of coordinate centers.

#include "minexp/poly.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace minexp {

enum class CoordKind { Plain, StrictTransform, Exceptional };

struct Coordinate {
    std::string name;
    CoordKind kind = CoordKind::Plain;
    /// Exceptional: 1-based divisor label E_j. StrictTransform: 1-based index
    /// of the hypersurface H_j.
    int label = 0;
    /// Exceptional only: order of the ideal along the divisor and its
    /// coefficient in the relative canonical divisor.
    int a = 0;
    int k = 0;
};

/// Prefix used for coordinate names after `level` blow-ups.
inline std::string coordinate_prefix(int level)
{
    static const char* names[] = {"z", "u", "v", "w"};
    if (level >= 0 && level < 4)
        return names[level];
    return "c" + std::to_string(level) + "_";
}

struct ChartState {
    std::vector<Coordinate> coords;
    std::vector<ExponentVector> ideal;
    int level = 0;

    std::size_t dimension() const { return coords.size(); }

    std::string monomial_str(const ExponentVector& u) const
    {
        std::string out;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] == 0)
                continue;
            if (!out.empty())
                out += '*';
            out += coords[i].name;
            if (u[i] > 1)
                out += '^' + std::to_string(u[i]);
        }
        return out.empty() ? "1" : out;
    }

    std::string ideal_str() const
    {
        std::string out = "(";
        for (std::size_t g = 0; g < ideal.size(); ++g)
            out += (g ? ", " : "") + monomial_str(ideal[g]);
        return out + ")";
    }
};

/// Drops generators divisible by another generator (and duplicates).
inline std::vector<ExponentVector> minimal_generators(const std::vector<ExponentVector>& ideal)
{
    auto divides = [](const ExponentVector& a, const ExponentVector& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i])
                return false;
        return true;
    };
    std::vector<ExponentVector> out;
    for (std::size_t g = 0; g < ideal.size(); ++g) {
        bool redundant = false;
        for (std::size_t h = 0; h < ideal.size() && !redundant; ++h) {
            if (h == g || !divides(ideal[h], ideal[g]))
                continue;
            // equal generators: keep the first copy
            redundant = ideal[h] != ideal[g] || h < g;
        }
        if (!redundant)
            out.push_back(ideal[g]);
    }
    return out;
}

/// Componentwise minimum over the generators: the largest monomial dividing
/// every generator.
inline ExponentVector common_factor(const std::vector<ExponentVector>& ideal, std::size_t dimension)
{
    if (ideal.empty())
        return ExponentVector(dimension, 0);
    ExponentVector out = ideal.front();
    for (const auto& g : ideal)
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::min(out[i], g[i]);
    return out;
}

/// The ideal is principal and generated by a monomial in exceptional
/// coordinates only.
inline bool is_divisorial(const ChartState& state)
{
    auto gens = minimal_generators(state.ideal);
    if (gens.size() != 1)
        return false;
    for (std::size_t i = 0; i < gens.front().size(); ++i)
        if (gens.front()[i] > 0 && state.coords[i].kind != CoordKind::Exceptional)
            return false;
    return true;
}

/// Blows up the center {coords in `center` = 0} and returns one chart per
/// pivot, in `center` order. In the pivot-j chart z_l = u_j u_l for l in the
/// center other than j; u_j cuts out the new exceptional divisor `label`.
inline std::vector<ChartState> blowup_chart(const ChartState& state, const std::vector<std::size_t>& center, int label)
{
    if (center.size() < 2)
        throw std::invalid_argument("blow-up center must involve at least two coordinates");
    std::set<std::size_t> seen;
    for (auto c : center) {
        if (c >= state.dimension())
            throw std::invalid_argument("center index " + std::to_string(c) + " is not a chart coordinate");
        if (!seen.insert(c).second)
            throw std::invalid_argument("center lists coordinate " + state.coords[c].name + " twice");
    }

    int k_new = static_cast<int>(center.size()) - 1;
    for (auto c : center)
        if (state.coords[c].kind == CoordKind::Exceptional)
            k_new += state.coords[c].k;

    std::vector<ChartState> out;
    for (auto pivot : center) {
        ChartState chart;
        chart.level = state.level + 1;
        chart.coords = state.coords;
        auto prefix = coordinate_prefix(chart.level);
        for (std::size_t i = 0; i < chart.coords.size(); ++i)
            chart.coords[i].name = prefix + std::to_string(i);

        for (auto g : state.ideal) {
            std::uint32_t sum = 0;
            for (auto c : center)
                sum += g[c];
            g[pivot] = sum;
            chart.ideal.push_back(std::move(g));
        }
        int a_new = 0;
        if (!chart.ideal.empty()) {
            a_new = static_cast<int>(chart.ideal.front()[pivot]);
            for (const auto& g : chart.ideal)
                a_new = std::min(a_new, static_cast<int>(g[pivot]));
        }
        auto& created = chart.coords[pivot];
        created.kind = CoordKind::Exceptional;
        created.label = label;
        created.a = a_new;
        created.k = k_new;
        out.push_back(std::move(chart));
    }
    return out;
}

} // namespace minexp
