#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "frameopt/frames.hpp"
#include "frameopt/weights.hpp"

namespace frameopt::cli {

/// On-disk frame description (UTF-8 JSON):
///
///   {
///     "name": "optional label",
///     "dim": N,
///     "vectors": [ [[re, im], ...N pairs], ...M vectors ],
///     "weights": [q_1, ..., q_M],          // optional
///     "probabilities": [p_1, ..., p_M]     // optional, relative scale
///   }
///
/// At least one of weights/probabilities must be present. When only
/// probabilities are given, weights follow from
/// q_i = [sum p / (sum p - p_i)] (M - 1) / N.
struct FrameDocument {
  std::optional<std::string> name;
  std::size_t dim = 0;
  std::vector<CVector> vectors;
  std::optional<std::vector<double>> weights;
  std::optional<std::vector<double>> probabilities;
};

bool operator==(const FrameDocument& a, const FrameDocument& b);

/// Throws InvalidInput with a "line L, column C" or "field <path>" diagnostic.
FrameDocument parse_document(std::string_view text);
FrameDocument load_document(const std::filesystem::path& path);

nlohmann::json to_json(const FrameDocument& doc);
std::string serialize(const FrameDocument& doc);

struct Problem {
  Frame frame;
  WeightSeq weights;
};

/// Validates the frame and resolves the weight sequence.
Problem resolve(const FrameDocument& doc);

nlohmann::json complex_json(Complex z);
nlohmann::json vector_json(const CVector& v);
nlohmann::json matrix_json(const CMatrix& m);  // array of rows

}  // namespace frameopt::cli
