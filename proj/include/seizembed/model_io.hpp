#pragma once

// Versioned plain-text serialization for fitted transforms and models.
// Line-oriented `key value...` records; floating-point values are written
// with 17 significant digits so save/load round-trips are bit-exact.

#include <iosfwd>
#include <string>

#include "seizembed/classifiers.hpp"
#include "seizembed/transform.hpp"

namespace seizembed {

void save_quantile_map(std::ostream& out, const QuantileMap& map);
QuantileMap load_quantile_map(std::istream& in);

void save_embedder(std::ostream& out, const PeriodicEmbedder& e);
PeriodicEmbedder load_embedder(std::istream& in);

void save_model(std::ostream& out, const TrainedModel& model);
TrainedModel load_model(std::istream& in);

// convenience string/file wrappers
std::string to_text(const QuantileMap& map);
std::string to_text(const PeriodicEmbedder& e);
std::string to_text(const TrainedModel& model);

void save_model_file(const std::string& path, const TrainedModel& model);
TrainedModel load_model_file(const std::string& path);

// exact round-trip double formatting used across all text outputs
std::string format_double(double v);

}  // namespace seizembed
