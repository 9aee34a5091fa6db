#pragma once

// Fixtures shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <vector>

#include "cyclegsp/graph.hpp"
#include "cyclegsp/image.hpp"
#include "cyclegsp/random.hpp"

namespace testing {

using namespace cyclegsp;

inline Graph make_graph(int n, std::initializer_list<std::tuple<int, int, double>> edges)
{
    Graph g(n);
    for (const auto& [u, v, w] : edges)
        g.add_edge(u, v, w);
    return g;
}

inline Graph cycle_graph(int n, double w = 1.0)
{
    Graph g(n);
    for (int i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n, w);
    return g;
}

// Two triangles sharing vertex 2.
inline Graph bowtie()
{
    return make_graph(5, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 1}, {3, 4, 1}, {4, 2, 1}});
}

// Erdos-Renyi graph with integer weights in [lo, hi].
inline Graph random_graph(int n, double p, int lo, int hi, Rng& rng)
{
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform01() < p)
                g.add_edge(u, v, static_cast<double>(lo + static_cast<int>(rng.below(hi - lo + 1))));
    return g;
}

// Random graph that is guaranteed connected: a random spanning tree plus
// extra edges.
inline Graph random_connected_graph(int n, double p, int lo, int hi, Rng& rng)
{
    Graph g(n);
    auto weight = [&] { return static_cast<double>(lo + static_cast<int>(rng.below(hi - lo + 1))); };
    for (int v = 1; v < n; ++v)
        g.add_edge(v, static_cast<int>(rng.below(v)), weight());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v) && rng.uniform01() < p)
                g.add_edge(u, v, weight());
    return g;
}

// 64x64-style test picture: four quadrants at 0, 80, 160, 240.
inline ImageSignal quadrant_image(int size)
{
    ImageSignal img(size, size);
    const int half = size / 2;
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
            img.at(r, c) = 80.0 * ((r >= half) * 2 + (c >= half));
    return img;
}

// Same quadrant layout with a gentle two-dimensional shading added.
inline ImageSignal piecewise_smooth_image(int size)
{
    ImageSignal img = quadrant_image(size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
            img.at(r, c) = std::clamp(
                img.at(r, c) + 6.0 + 6.0 * std::sin(2.0 * M_PI * r / size) * std::cos(2.0 * M_PI * c / size), 0.0,
                255.0);
    return img;
}

}  // namespace testing
