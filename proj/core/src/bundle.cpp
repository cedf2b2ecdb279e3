#include "spdkit/bundle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace spdkit {

namespace {

using nlohmann::json;

void validate_weights(const std::vector<double>& weights, std::size_t m) {
  if (weights.empty()) return;
  if (weights.size() != m) {
    throw ValidationError("bundle: weights count " +
                          std::to_string(weights.size()) +
                          " does not match item count " + std::to_string(m));
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw ValidationError("bundle: weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("bundle: weights sum to " + std::to_string(sum) +
                          ", expected 1 within 1e-12");
  }
}

// 17 significant decimal digits round-trip an IEEE double exactly.
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string escape_label(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

MatrixBundle make_bundle(std::vector<BundleItem> items,
                         std::vector<double> weights) {
  if (items.empty()) {
    throw ValidationError("bundle: needs at least one item");
  }
  const int n = items.front().matrix.dim();
  std::set<std::string> seen;
  for (const auto& item : items) {
    if (item.matrix.dim() != n) {
      throw ValidationError("bundle: item '" + item.label +
                            "' has dimension " +
                            std::to_string(item.matrix.dim()) + ", expected " +
                            std::to_string(n));
    }
    if (!seen.insert(item.label).second) {
      throw ValidationError("bundle: duplicate label '" + item.label + "'");
    }
  }
  validate_weights(weights, items.size());
  MatrixBundle bundle;
  bundle.n = n;
  bundle.items = std::move(items);
  bundle.weights = std::move(weights);
  return bundle;
}

MatrixBundle parse_bundle_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bundle: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("bundle: top level must be an object");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError("bundle: missing integer field \"n\"");
  }
  const int n = doc["n"].get<int>();
  if (n < 1) {
    throw ParseError("bundle: \"n\" must be a positive integer");
  }
  if (!doc.contains("items") || !doc["items"].is_array() ||
      doc["items"].empty()) {
    throw ParseError("bundle: missing nonempty array field \"items\"");
  }

  std::vector<BundleItem> items;
  items.reserve(doc["items"].size());
  std::size_t index = 0;
  for (const auto& entry : doc["items"]) {
    const std::string locus = "items[" + std::to_string(index) + "]";
    if (!entry.is_object() || !entry.contains("label") ||
        !entry["label"].is_string()) {
      throw ParseError("bundle: " + locus + " needs a string \"label\"");
    }
    const std::string label = entry["label"].get<std::string>();
    if (!entry.contains("rows") || !entry["rows"].is_array() ||
        entry["rows"].size() != static_cast<std::size_t>(n)) {
      throw ParseError("bundle: " + locus + ".rows must be an array of " +
                       std::to_string(n) + " rows");
    }
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      const auto& row = entry["rows"][i];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
        throw ParseError("bundle: " + locus + ".rows[" + std::to_string(i) +
                         "] must hold " + std::to_string(n) + " numbers");
      }
      for (int j = 0; j < n; ++j) {
        if (!row[j].is_number()) {
          throw ParseError("bundle: " + locus + ".rows[" + std::to_string(i) +
                           "][" + std::to_string(j) + "] is not a number");
        }
        m(i, j) = row[j].get<double>();
      }
    }
    try {
      items.push_back({label, make_spd(m)});
    } catch (const InputError& e) {
      throw ValidationError("bundle: matrix '" + label +
                            "' failed validation: " + e.what());
    }
    ++index;
  }

  std::vector<double> weights;
  if (doc.contains("weights")) {
    if (!doc["weights"].is_array()) {
      throw ParseError("bundle: \"weights\" must be an array");
    }
    for (const auto& w : doc["weights"]) {
      if (!w.is_number()) {
        throw ParseError("bundle: weights must be numbers");
      }
      weights.push_back(w.get<double>());
    }
  }
  return make_bundle(std::move(items), std::move(weights));
}

MatrixBundle parse_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("bundle: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_bundle_text(buffer.str());
}

std::string bundle_to_text(const MatrixBundle& bundle) {
  // Hand-rolled emitter so every number carries 17 significant digits.
  std::ostringstream out;
  out << "{\n  \"n\": " << bundle.n << ",\n  \"items\": [\n";
  for (std::size_t k = 0; k < bundle.items.size(); ++k) {
    const auto& item = bundle.items[k];
    out << "    {\"label\": \"" << escape_label(item.label)
        << "\", \"rows\": [\n";
    for (int i = 0; i < bundle.n; ++i) {
      out << "      [";
      for (int j = 0; j < bundle.n; ++j) {
        out << format_double(item.matrix(i, j));
        if (j + 1 < bundle.n) out << ", ";
      }
      out << "]";
      if (i + 1 < bundle.n) out << ",";
      out << "\n";
    }
    out << "    ]}";
    if (k + 1 < bundle.items.size()) out << ",";
    out << "\n";
  }
  out << "  ]";
  if (!bundle.weights.empty()) {
    out << ",\n  \"weights\": [";
    for (std::size_t i = 0; i < bundle.weights.size(); ++i) {
      out << format_double(bundle.weights[i]);
      if (i + 1 < bundle.weights.size()) out << ", ";
    }
    out << "]";
  }
  out << "\n}\n";
  return out.str();
}

void write_bundle(const std::string& path, const MatrixBundle& bundle) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("bundle: cannot write '" + path + "'");
  }
  out << bundle_to_text(bundle);
}

}  // namespace spdkit
