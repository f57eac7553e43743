#pragma once

#include <string>
#include <vector>

#include "galstat/permcore.hpp"

namespace galstat {

// Named groups bundled with the tool, constructed from fixed generator lists.

const std::vector<std::string>& catalog_names();
bool catalog_has(const std::string& name);
std::vector<std::string> catalog_names_for_degree(int degree);

// Throws std::invalid_argument for names not in the catalog.
PermGroup catalog_group(const std::string& name);

}  // namespace galstat
