#include "frameopt/cli/document.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "frameopt/errors.hpp"

namespace frameopt::cli {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw InvalidInput(fmt::format("field '{}': {}", path, what));
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(path, "must be finite");
  return v;
}

std::vector<double> reals_at(const json& j, const std::string& path, std::size_t expected) {
  if (!j.is_array()) field_error(path, "expected an array of numbers");
  if (j.size() != expected) {
    field_error(path, fmt::format("expected {} entries (one per frame vector), got {}", expected, j.size()));
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_at(j[i], fmt::format("{}[{}]", path, i)));
  return out;
}

void locate(std::string_view text, std::size_t byte, std::size_t& line, std::size_t& col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

}  // namespace

bool operator==(const FrameDocument& a, const FrameDocument& b) {
  if (a.name != b.name || a.dim != b.dim || a.weights != b.weights ||
      a.probabilities != b.probabilities || a.vectors.size() != b.vectors.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.vectors.size(); ++i) {
    if (a.vectors[i].size() != b.vectors[i].size() || a.vectors[i] != b.vectors[i]) return false;
  }
  return true;
}

FrameDocument parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 0;
    std::size_t col = 0;
    locate(text, e.byte, line, col);
    throw InvalidInput(fmt::format("line {}, column {}: malformed JSON ({})", line, col, e.what()));
  }
  if (!j.is_object()) field_error("<root>", "expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "name" && key != "dim" && key != "vectors" && key != "weights" && key != "probabilities") {
      field_error(key, "unknown field");
    }
  }

  FrameDocument doc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) field_error("name", "expected a string");
    doc.name = j["name"].get<std::string>();
  }
  if (!j.contains("dim")) field_error("dim", "missing");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    field_error("dim", "expected a positive integer");
  }
  doc.dim = static_cast<std::size_t>(j["dim"].get<long long>());

  if (!j.contains("vectors")) field_error("vectors", "missing");
  const json& vs = j["vectors"];
  if (!vs.is_array() || vs.empty()) field_error("vectors", "expected a nonempty array of vectors");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string vpath = fmt::format("vectors[{}]", i);
    const json& v = vs[i];
    if (!v.is_array() || v.size() != doc.dim) {
      field_error(vpath, fmt::format("expected {} complex entries", doc.dim));
    }
    CVector vec(static_cast<Eigen::Index>(doc.dim));
    for (std::size_t k = 0; k < doc.dim; ++k) {
      const std::string epath = fmt::format("{}[{}]", vpath, k);
      const json& e = v[k];
      if (!e.is_array() || e.size() != 2) field_error(epath, "expected a [re, im] pair");
      vec(static_cast<Eigen::Index>(k)) =
          Complex(number_at(e[0], epath + "[0]"), number_at(e[1], epath + "[1]"));
    }
    doc.vectors.push_back(std::move(vec));
  }

  const std::size_t m = doc.vectors.size();
  if (j.contains("weights")) doc.weights = reals_at(j["weights"], "weights", m);
  if (j.contains("probabilities")) doc.probabilities = reals_at(j["probabilities"], "probabilities", m);
  if (!doc.weights && !doc.probabilities) {
    field_error("weights", "one of 'weights' or 'probabilities' is required");
  }
  return doc;
}

FrameDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const InvalidInput& e) {
    throw InvalidInput(fmt::format("{}: {}", path.string(), e.what()));
  }
}

json complex_json(Complex z) {
  return json::array({z.real(), z.imag()});
}

json vector_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_json(v(k)));
  return out;
}

json matrix_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

json to_json(const FrameDocument& doc) {
  json j;
  if (doc.name) j["name"] = *doc.name;
  j["dim"] = doc.dim;
  j["vectors"] = json::array();
  for (const auto& v : doc.vectors) j["vectors"].push_back(vector_json(v));
  if (doc.weights) j["weights"] = *doc.weights;
  if (doc.probabilities) j["probabilities"] = *doc.probabilities;
  return j;
}

std::string serialize(const FrameDocument& doc) {
  return to_json(doc).dump(2);
}

Problem resolve(const FrameDocument& doc) {
  Frame frame(doc.vectors);
  if (frame.dim() != doc.dim) throw InvalidInput("field 'dim': does not match the vector length");
  std::optional<WeightSeq> derived;
  if (doc.probabilities) {
    derived = weights_from_probabilities(ProbSeq(*doc.probabilities), doc.dim);
  }
  if (doc.weights) {
    WeightSeq given(*doc.weights);
    if (derived) {
      for (std::size_t i = 0; i < given.size(); ++i) {
        if (std::abs(given[i] - (*derived)[i]) > 1e-9 * std::max(1.0, given[i])) {
          field_error(fmt::format("weights[{}]", i),
                      fmt::format("{} disagrees with {} derived from the probabilities", given[i],
                                  (*derived)[i]));
        }
      }
    }
    return Problem{std::move(frame), std::move(given)};
  }
  return Problem{std::move(frame), std::move(*derived)};
}

}  // namespace frameopt::cli
