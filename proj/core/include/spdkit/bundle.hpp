#pragma once

#include <string>
#include <vector>

#include "spdkit/spd.hpp"

namespace spdkit {

struct BundleItem {
  std::string label;
  SpdMatrix matrix;
};

// Ordered, labeled collection of same-dimension SPD matrices with optional
// normalized weights. This is the on-disk unit of the CLI: a UTF-8 JSON
// document {"n": int, "items": [{"label": str, "rows": [[...], ...]}, ...],
// "weights": [...]} with numbers written to 17 significant digits so that
// write/parse round-trips are value-exact.
struct MatrixBundle {
  int n = 0;
  std::vector<BundleItem> items;
  std::vector<double> weights;  // empty, or items.size() entries summing to 1
};

// Validating constructor: unique labels, matching dimensions, weight rules.
MatrixBundle make_bundle(std::vector<BundleItem> items,
                         std::vector<double> weights = {});

// Parses and validates a bundle document. ParseError carries the document
// locus of malformed structure; ValidationError names the offending label.
MatrixBundle parse_bundle_text(const std::string& text);
MatrixBundle parse_bundle(const std::string& path);

std::string bundle_to_text(const MatrixBundle& bundle);
void write_bundle(const std::string& path, const MatrixBundle& bundle);

}  // namespace spdkit
