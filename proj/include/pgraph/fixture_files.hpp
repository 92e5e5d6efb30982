#pragma once

#include <string>
#include <vector>

namespace pgraph::fixtures {

struct NamedDocument {
  std::string name;  // file name, e.g. "pentagon.json"
  std::string text;
};

/// Every bundled fixture serialized as a JSON document, in a fixed order.
std::vector<NamedDocument> fixture_documents();

}  // namespace pgraph::fixtures
