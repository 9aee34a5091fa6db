#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cyclegsp::cli {

/// Every knob of every subcommand. Defaults that depend on the subcommand
/// (weights, quantize) are left empty here and filled in by resolve().
struct RunConfig {
    std::string subcommand;

    std::string image;
    std::string graph;
    std::string cover;
    std::string clean;
    std::string edge_map;

    std::string weights;
    double scale = 255.0 / 8.0;
    double threshold = 32.0;
    std::string quantize;

    bool fallback = false;
    std::uint64_t seed = 1;
    int max_rounds = 64;
    std::optional<double> penalty;

    std::string mode = "vcc-gft";
    double gamma = 1.0;
    std::vector<double> gamma_sweep;
    int cap = 8192;

    int trials = 20;
    double cutoff = 0.25;
    double sigma = 7.0;
    int width = 0;
    int height = 0;

    std::string out;
    std::string stats;
    std::string render;
    std::string reordered;
    std::string report;
    std::string config_out;
};

inline void to_json(nlohmann::ordered_json& j, const RunConfig& c)
{
    j = nlohmann::ordered_json{
        {"subcommand", c.subcommand},
        {"inputs", {{"image", c.image}, {"graph", c.graph}, {"cover", c.cover}, {"clean", c.clean},
                    {"edge_map", c.edge_map}}},
        {"weights", {{"scheme", c.weights}, {"scale", c.scale}, {"threshold", c.threshold}}},
        {"quantize", c.quantize},
        {"fallback", {{"enabled", c.fallback}, {"max_rounds", c.max_rounds}}},
        {"seed", c.seed},
        {"denoise", {{"mode", c.mode}, {"gamma", c.gamma}, {"gamma_sweep", c.gamma_sweep}, {"cap", c.cap}}},
        {"spectrum", {{"trials", c.trials}, {"cutoff", c.cutoff}}},
        {"noise", {{"sigma", c.sigma}}},
        {"raster", {{"width", c.width}, {"height", c.height}}},
        {"outputs", {{"out", c.out}, {"stats", c.stats}, {"render", c.render}, {"reordered", c.reordered},
                     {"report", c.report}, {"config", c.config_out}}},
    };
    if (c.penalty)
        j["fallback"]["penalty"] = *c.penalty;
    else
        j["fallback"]["penalty"] = nullptr;
}

}  // namespace cyclegsp::cli
